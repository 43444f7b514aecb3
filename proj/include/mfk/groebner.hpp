#pragma once

// Groebner engine over Q(i): division with cofactors, Buchberger with
// full inter-reduction (output is the reduced basis, hence canonical for
// a fixed order), saturation via a fresh inverse variable, block-order
// elimination, and ideal-membership certificates obtained by tracking
// representations of basis elements in terms of the input generators.
//
// Resource budgets abort with ResourceError instead of running unboundedly.

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfk/matrix.hpp"
#include "mfk/poly.hpp"

namespace mfk {

struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

struct Budget {
  long max_pair_reductions = 200000;
  int max_total_degree = 80;
};

inline Budget& default_budget() {
  static Budget b;
  return b;
}

struct Ideal {
  RingPtr ring;
  std::vector<Poly> gens;

  Ideal() = default;
  Ideal(RingPtr r, std::vector<Poly> g) : ring(std::move(r)) {
    for (auto& p : g)
      if (!p.is_zero()) gens.push_back(std::move(p));  // invariant: generators nonzero
  }

  static Ideal of(const RingPtr& r, const std::vector<std::string>& exprs) {
    std::vector<Poly> g;
    g.reserve(exprs.size());
    for (auto& e : exprs) g.push_back(parse_poly(r, e));
    return Ideal(r, std::move(g));
  }

  bool is_zero_ideal() const { return gens.empty(); }
};

struct ReduceResult {
  Poly remainder;
  std::vector<Poly> cofactors;  // one per basis element
};

// Multivariate division: p = sum cofactor_k * basis_k + remainder, no
// remainder monomial divisible by any leading term. Deterministic: the
// first basis element (in the given order of `basis`) whose leading term
// divides is always chosen.
inline ReduceResult reduce(const Poly& p, const std::vector<Poly>& basis, const TermOrder& ord) {
  ReduceResult res;
  res.remainder = Poly(p.ring());
  res.cofactors.assign(basis.size(), Poly(p.ring()));
  std::vector<std::pair<Mono, Scalar>> lts;
  lts.reserve(basis.size());
  for (auto& g : basis) lts.push_back(g.leading_term(ord));

  Poly work = p;
  while (!work.is_zero()) {
    auto [m, c] = work.leading_term(ord);
    bool divided = false;
    for (size_t k = 0; k < basis.size(); ++k) {
      if (!mono_divides(lts[k].first, m)) continue;
      Mono q = mono_div(m, lts[k].first);
      Scalar qc = c / lts[k].second;
      work -= basis[k].mul_mono(q, qc);
      res.cofactors[k].add_term(q, qc);
      divided = true;
      break;
    }
    if (!divided) {
      res.remainder.add_term(m, c);
      work.add_term(m, -c);
    }
  }
  return res;
}

struct GroebnerBasis {
  RingPtr ring;
  TermOrder order;
  std::vector<Poly> basis;               // reduced, monic, sorted by leading term descending
  std::vector<std::vector<Poly>> reps;   // basis[k] = sum_j reps[k][j] * source.gens[j] (if tracked)
  Ideal source;

  bool is_unit() const {
    return basis.size() == 1 && basis[0].is_constant() && !basis[0].is_zero();
  }

  Poly nf(const Poly& p) const { return basis.empty() ? p : reduce(p, basis, order).remainder; }

  bool contains(const Poly& p) const { return nf(p).is_zero(); }
};

namespace detail {

inline void bump(long& count, const Budget& budget) {
  if (++count > budget.max_pair_reductions)
    throw ResourceError("groebner: pair reduction budget exceeded");
}

inline void check_degree(const Poly& p, const Budget& budget) {
  if (p.total_degree() > budget.max_total_degree)
    throw ResourceError("groebner: total degree budget exceeded");
}

}  // namespace detail

inline GroebnerBasis buchberger(const Ideal& ideal, const TermOrder& ord,
                                bool track_reps = false, const Budget& budget = default_budget()) {
  const RingPtr& R = ideal.ring;
  GroebnerBasis out;
  out.ring = R;
  out.order = ord;
  out.source = ideal;

  std::vector<Poly> G;
  std::vector<std::vector<Poly>> reps;
  auto unit_rep = [&](size_t j) {
    std::vector<Poly> r(ideal.gens.size(), Poly(R));
    r[j] = Poly::one(R);
    return r;
  };
  auto rep_combine = [&](std::vector<Poly>& target, const std::vector<Poly>& src, const Poly& factor) {
    for (size_t j = 0; j < target.size(); ++j) target[j] += factor * src[j];
  };

  // Full reduction that also tracks the representation of the result.
  auto reduce_tracked = [&](Poly p, std::vector<Poly> rep) -> std::pair<Poly, std::vector<Poly>> {
    Poly rem(R);
    Poly work = std::move(p);
    while (!work.is_zero()) {
      auto [m, c] = work.leading_term(ord);
      bool divided = false;
      for (size_t k = 0; k < G.size(); ++k) {
        auto lt = G[k].leading_term(ord);
        if (!mono_divides(lt.first, m)) continue;
        Mono q = mono_div(m, lt.first);
        Scalar qc = c / lt.second;
        work -= G[k].mul_mono(q, qc);
        if (track_reps) {
          Poly qp = Poly::term(R, q, -qc);
          rep_combine(rep, reps[k], qp);
        }
        divided = true;
        break;
      }
      if (!divided) {
        rem.add_term(m, c);
        work.add_term(m, -c);
      }
    }
    return {rem, rep};
  };

  long reductions = 0;
  std::deque<std::pair<size_t, size_t>> pairs;

  auto add_poly = [&](Poly p, std::vector<Poly> rep) {
    detail::check_degree(p, budget);
    auto lc = p.leading_term(ord).second;
    p = lc.inv() * p;
    if (track_reps)
      for (auto& r : rep) r = lc.inv() * r;
    size_t idx = G.size();
    G.push_back(std::move(p));
    reps.push_back(std::move(rep));
    for (size_t k = 0; k < idx; ++k) pairs.emplace_back(k, idx);
  };

  for (size_t j = 0; j < ideal.gens.size(); ++j) {
    auto [rem, rep] = reduce_tracked(ideal.gens[j], unit_rep(j));
    if (!rem.is_zero()) add_poly(std::move(rem), std::move(rep));
  }

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    auto lti = G[i].leading_term(ord);
    auto ltj = G[j].leading_term(ord);
    if (mono_coprime(lti.first, ltj.first)) continue;  // product criterion
    detail::bump(reductions, budget);
    Mono l = mono_lcm(lti.first, ltj.first);
    Poly s = G[i].mul_mono(mono_div(l, lti.first), lti.second.inv()) -
             G[j].mul_mono(mono_div(l, ltj.first), ltj.second.inv());
    std::vector<Poly> rep;
    if (track_reps) {
      rep.assign(ideal.gens.size(), Poly(R));
      rep_combine(rep, reps[i], Poly::term(R, mono_div(l, lti.first), lti.second.inv()));
      rep_combine(rep, reps[j], Poly::term(R, mono_div(l, ltj.first), -ltj.second.inv()));
    }
    auto [rem, rrep] = reduce_tracked(std::move(s), std::move(rep));
    if (!rem.is_zero()) add_poly(std::move(rem), std::move(rrep));
  }

  // Inter-reduce to the unique reduced basis.
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < G.size(); ++k) {
      Poly g = G[k];
      std::vector<Poly> rep = track_reps ? reps[k] : std::vector<Poly>{};
      std::vector<Poly> others;
      std::vector<std::vector<Poly>> orep;
      for (size_t m = 0; m < G.size(); ++m)
        if (m != k) {
          others.push_back(G[m]);
          if (track_reps) orep.push_back(reps[m]);
        }
      if (others.empty()) break;
      // reduce g against the others, tracking
      Poly rem(R), work = g;
      while (!work.is_zero()) {
        auto [m, c] = work.leading_term(ord);
        bool divided = false;
        for (size_t t = 0; t < others.size(); ++t) {
          auto lt = others[t].leading_term(ord);
          if (!mono_divides(lt.first, m)) continue;
          Mono q = mono_div(m, lt.first);
          Scalar qc = c / lt.second;
          work -= others[t].mul_mono(q, qc);
          if (track_reps) rep_combine(rep, orep[t], Poly::term(R, q, -qc));
          divided = true;
          break;
        }
        if (!divided) {
          rem.add_term(m, c);
          work.add_term(m, -c);
        }
      }
      if (rem != G[k]) {
        changed = true;
        if (rem.is_zero()) {
          G.erase(G.begin() + k);
          if (track_reps) reps.erase(reps.begin() + k);
          --k;
        } else {
          auto lc = rem.leading_term(ord).second;
          G[k] = lc.inv() * rem;
          if (track_reps) {
            for (auto& r : rep) r = lc.inv() * r;
            reps[k] = std::move(rep);
          }
        }
      }
    }
  }

  // Canonical output order: leading terms descending.
  std::vector<size_t> perm(G.size());
  for (size_t k = 0; k < perm.size(); ++k) perm[k] = k;
  std::sort(perm.begin(), perm.end(), [&](size_t a, size_t b) {
    return ord.less(G[b].leading_term(ord).first, G[a].leading_term(ord).first);
  });
  for (auto k : perm) {
    out.basis.push_back(G[k]);
    if (track_reps) out.reps.push_back(reps[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elimination and saturation.

// I \cap Q(i)[kept vars]  (ideal in the subring on the kept variables).
inline Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop_vars,
                       const Budget& budget = default_budget()) {
  const RingPtr& R = ideal.ring;
  std::vector<std::string> front, back;
  std::vector<int> front_w, back_w;
  for (size_t k = 0; k < R->arity(); ++k) {
    bool dropped = std::find(drop_vars.begin(), drop_vars.end(), R->vars[k]) != drop_vars.end();
    (dropped ? front : back).push_back(R->vars[k]);
    (dropped ? front_w : back_w).push_back(R->wweights[k]);
  }
  if (front.size() != drop_vars.size()) throw std::invalid_argument("eliminate: unknown variable among drop_vars");

  auto vars = front;
  vars.insert(vars.end(), back.begin(), back.end());
  auto wts = front_w;
  wts.insert(wts.end(), back_w.begin(), back_w.end());
  RingPtr P = make_ring(vars, wts);
  RingPtr S = make_ring(back, back_w);

  std::vector<Poly> mapped;
  mapped.reserve(ideal.gens.size());
  for (auto& g : ideal.gens) mapped.push_back(g.into_ring(P));
  auto gb = buchberger(Ideal(P, mapped), TermOrder::block(static_cast<int>(front.size())), false, budget);

  std::vector<Poly> kept;
  size_t nf = front.size();
  for (auto& g : gb.basis) {
    bool uses_front = false;
    for (auto& [m, c] : g.terms())
      for (size_t k = 0; k < nf && !uses_front; ++k)
        if (m[k]) uses_front = true;
    if (uses_front) continue;
    Poly q(S);
    for (auto& [m, c] : g.terms()) q.add_term(Mono(m.begin() + nf, m.end()), c);
    kept.push_back(std::move(q));
  }
  return Ideal(S, std::move(kept));
}

// (I : u^infinity) via the Rabinowitsch trick, returned in the original ring.
inline Ideal saturate(const Ideal& ideal, const Poly& u, const Budget& budget = default_budget()) {
  if (u.is_zero()) throw std::invalid_argument("saturate: u must be nonzero");
  const RingPtr& R = ideal.ring;
  std::string zname = "@s";
  while (R->index_of(zname) >= 0) zname += "s";
  RingPtr E = extend_ring(R, {zname});
  std::vector<Poly> gens;
  gens.reserve(ideal.gens.size() + 1);
  for (auto& g : ideal.gens) gens.push_back(g.into_ring(E));
  gens.push_back(Poly::one(E) - Poly::var(E, zname) * u.into_ring(E));
  Ideal cut = eliminate(Ideal(E, std::move(gens)), {zname}, budget);
  // eliminate() returns the subring on R's variables in original order
  std::vector<Poly> back;
  back.reserve(cut.gens.size());
  for (auto& g : cut.gens) back.push_back(g.into_ring(R));
  return Ideal(R, std::move(back));
}

inline Ideal saturate_product(const Ideal& ideal, const std::vector<Poly>& us,
                              const Budget& budget = default_budget()) {
  Poly prod = Poly::one(ideal.ring);
  for (auto& u : us) prod = prod * u;
  return saturate(ideal, prod, budget);
}

// ---------------------------------------------------------------------------
// Membership certificates.

struct Certificate {
  std::vector<Poly> cofactors;  // target = sum cofactors[k] * gens[k]
  Poly target;
};

inline std::optional<Certificate> membership_certificate(const Poly& f, const Ideal& ideal,
                                                         const Budget& budget = default_budget()) {
  if (f.is_zero()) return Certificate{std::vector<Poly>(ideal.gens.size(), Poly(ideal.ring)), f};
  if (ideal.gens.empty()) return std::nullopt;
  auto gb = buchberger(ideal, TermOrder::grevlex(), /*track_reps=*/true, budget);
  auto red = reduce(f, gb.basis, gb.order);
  if (!red.remainder.is_zero()) return std::nullopt;
  Certificate cert;
  cert.target = f;
  cert.cofactors.assign(ideal.gens.size(), Poly(ideal.ring));
  for (size_t k = 0; k < gb.basis.size(); ++k)
    for (size_t j = 0; j < ideal.gens.size(); ++j) cert.cofactors[j] += red.cofactors[k] * gb.reps[k][j];
  // re-expand exactly
  Poly check(ideal.ring);
  for (size_t j = 0; j < ideal.gens.size(); ++j) check += cert.cofactors[j] * ideal.gens[j];
  if (check != f) throw std::logic_error("membership_certificate: re-expansion failed");
  return cert;
}

// Symmetric matrix c with f = sum c[i][j] g_i g_j, iff f lies in I^2.
inline std::optional<std::vector<std::vector<Poly>>> square_membership_certificate(
    const Poly& f, const Ideal& ideal, const Budget& budget = default_budget()) {
  size_t n = ideal.gens.size();
  const RingPtr& R = ideal.ring;
  std::vector<Poly> prods;
  std::vector<std::pair<size_t, size_t>> idx;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a; b < n; ++b) {
      prods.push_back(ideal.gens[a] * ideal.gens[b]);
      idx.emplace_back(a, b);
    }
  auto cert = membership_certificate(f, Ideal(R, prods), budget);
  if (!cert) return std::nullopt;
  std::vector<std::vector<Poly>> c(n, std::vector<Poly>(n, Poly(R)));
  Scalar half(Rat(1, 2));
  // Some products may coincide (duplicate generators); Ideal() drops zero
  // gens, so recompute positions against the surviving product list.
  size_t live = 0;
  for (size_t k = 0; k < prods.size(); ++k) {
    if (prods[k].is_zero()) continue;
    auto [a, b] = idx[k];
    const Poly& co = cert->cofactors[live++];
    if (a == b)
      c[a][a] += co;
    else {
      c[a][b] += half * co;
      c[b][a] += half * co;
    }
  }
  // verify by exact re-expansion
  Poly check(R);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) check += c[a][b] * ideal.gens[a] * ideal.gens[b];
  if (check != f) throw std::logic_error("square_membership_certificate: re-expansion failed");
  return c;
}

// ---------------------------------------------------------------------------
// Quotient rings R/J with a cached reduced basis; every matrix identity in
// the factorisation layer is checked through nf().

struct QuotientRing {
  RingPtr ring;
  std::vector<Poly> rels;
  GroebnerBasis gb;  // of rels, grevlex

  Poly nf(const Poly& p) const { return gb.nf(p); }
  bool is_zero_mod(const Poly& p) const { return nf(p).is_zero(); }
  bool is_trivial() const { return gb.is_unit(); }
};

using QuotPtr = std::shared_ptr<const QuotientRing>;

inline QuotPtr make_quotient(const RingPtr& r, std::vector<Poly> rels = {},
                             const Budget& budget = default_budget()) {
  auto q = std::make_shared<QuotientRing>();
  q->ring = r;
  q->rels = std::move(rels);
  q->gb = buchberger(Ideal(r, q->rels), TermOrder::grevlex(), false, budget);
  return q;
}

// Monomials of total degree <= bound that are standard (not divisible by
// any leading term of the quotient's basis).
inline std::vector<Mono> std_monomials_up_to(const QuotientRing& qr, int bound) {
  std::vector<Mono> lts;
  for (auto& g : qr.gb.basis) lts.push_back(g.leading_term(qr.gb.order).first);
  std::vector<Mono> out;
  Mono cur = mono_one(qr.ring->arity());
  std::function<void(size_t, int)> rec = [&](size_t k, int left) {
    bool standard = true;
    for (auto& lt : lts)
      if (mono_divides(lt, cur)) {
        standard = false;
        break;
      }
    if (!standard) return;
    if (k == cur.size()) {
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[k] = e;
      rec(k + 1, left - e);
    }
    cur[k] = 0;
  };
  if (qr.ring->arity() == 0) {
    if (lts.empty()) out.push_back(cur);
    return out;
  }
  rec(0, bound);
  return out;
}

}  // namespace mfk
