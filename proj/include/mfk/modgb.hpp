#pragma once

// Groebner bases for submodules of free modules R^r, built on top of the
// polynomial engine: division, Buchberger (no product criterion here; it
// is unsound for modules), kernels of polynomial matrices via component
// elimination, Schreyer-style syzygies of a basis, and standard-monomial
// enumeration of finite-length quotients with equivariant weights.

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mfk/groebner.hpp"

namespace mfk {

using ModVec = std::vector<Poly>;  // one Poly per component

inline ModVec modvec_zero(const RingPtr& r, size_t comps) { return ModVec(comps, Poly(r)); }

inline bool modvec_is_zero(const ModVec& v) {
  for (auto& p : v)
    if (!p.is_zero()) return false;
  return true;
}

inline ModVec modvec_sub(ModVec a, const ModVec& b) {
  for (size_t k = 0; k < a.size(); ++k) a[k] -= b[k];
  return a;
}

inline ModVec modvec_mul(const ModVec& v, const Poly& p) {
  ModVec out(v);
  for (auto& e : out) e = p * e;
  return out;
}

struct ModTerm {
  int comp;
  Mono mono;
  Scalar coef;
};

// Term-over-position order with an optional dominating front block of
// components (for kernel elimination): components < split always beat
// components >= split; within a block, the monomial order decides and the
// lower component index wins ties.
struct ModOrder {
  TermOrder mono_ord = TermOrder::grevlex();
  int split = 0;

  // is (c1,m1) < (c2,m2) ?
  bool less(int c1, const Mono& m1, int c2, const Mono& m2) const {
    bool top1 = c1 < split, top2 = c2 < split;
    if (top1 != top2) return !top1;
    if (int c = mono_ord.cmp(m1, m2)) return c < 0;
    return c1 > c2;
  }
};

inline std::optional<ModTerm> mod_lead(const ModVec& v, const ModOrder& ord) {
  std::optional<ModTerm> best;
  for (size_t k = 0; k < v.size(); ++k) {
    for (auto& [m, c] : v[k].terms()) {
      if (!best || ord.less(best->comp, best->mono, static_cast<int>(k), m))
        best = ModTerm{static_cast<int>(k), m, c};
    }
  }
  return best;
}

struct ModReduceResult {
  ModVec remainder;
  std::vector<Poly> cofactors;
};

inline ModReduceResult mod_reduce(const ModVec& v, const std::vector<ModVec>& basis, const ModOrder& ord,
                                  const Budget& budget = default_budget()) {
  const RingPtr& R = v.empty() ? nullptr : v.front().ring();
  ModReduceResult res;
  res.remainder = modvec_zero(R, v.size());
  res.cofactors.assign(basis.size(), Poly(R));
  std::vector<std::optional<ModTerm>> lts(basis.size());
  for (size_t k = 0; k < basis.size(); ++k) lts[k] = mod_lead(basis[k], ord);

  ModVec work = v;
  long steps = 0;
  while (auto lt = mod_lead(work, ord)) {
    if (++steps > budget.max_pair_reductions) throw ResourceError("mod_reduce: budget exceeded");
    bool divided = false;
    for (size_t k = 0; k < basis.size(); ++k) {
      if (!lts[k] || lts[k]->comp != lt->comp || !mono_divides(lts[k]->mono, lt->mono)) continue;
      Mono q = mono_div(lt->mono, lts[k]->mono);
      Scalar qc = lt->coef / lts[k]->coef;
      for (size_t c = 0; c < work.size(); ++c) work[c] -= basis[k][c].mul_mono(q, qc);
      res.cofactors[k].add_term(q, qc);
      divided = true;
      break;
    }
    if (!divided) {
      res.remainder[lt->comp].add_term(lt->mono, lt->coef);
      work[lt->comp].add_term(lt->mono, -lt->coef);
    }
  }
  return res;
}

struct ModuleGB {
  RingPtr ring;
  ModOrder order;
  size_t comps = 0;
  std::vector<ModVec> basis;  // monic, inter-reduced, lead descending
};

inline ModuleGB module_buchberger(const RingPtr& R, size_t comps, std::vector<ModVec> gens,
                                  const ModOrder& ord, const Budget& budget = default_budget()) {
  ModuleGB out;
  out.ring = R;
  out.order = ord;
  out.comps = comps;

  std::vector<ModVec> G;
  std::deque<std::pair<size_t, size_t>> pairs;
  long reductions = 0;

  auto add_vec = [&](ModVec v) {
    auto lt = mod_lead(v, ord);
    for (auto& p : v) {
      detail::check_degree(p, budget);
      p = lt->coef.inv() * p;
    }
    size_t idx = G.size();
    G.push_back(std::move(v));
    auto ltn = mod_lead(G.back(), ord);
    for (size_t k = 0; k < idx; ++k) {
      auto ltk = mod_lead(G[k], ord);
      if (ltk->comp == ltn->comp) pairs.emplace_back(k, idx);
    }
  };

  for (auto& g : gens) {
    auto red = mod_reduce(g, G, ord, budget);
    if (!modvec_is_zero(red.remainder)) add_vec(std::move(red.remainder));
  }

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    detail::bump(reductions, budget);
    auto li = mod_lead(G[i], ord), lj = mod_lead(G[j], ord);
    if (li->comp != lj->comp) continue;
    Mono l = mono_lcm(li->mono, lj->mono);
    ModVec s = modvec_sub(modvec_mul(G[i], Poly::term(R, mono_div(l, li->mono), li->coef.inv())),
                          modvec_mul(G[j], Poly::term(R, mono_div(l, lj->mono), lj->coef.inv())));
    auto red = mod_reduce(s, G, ord, budget);
    if (!modvec_is_zero(red.remainder)) add_vec(std::move(red.remainder));
  }

  // inter-reduce
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t k = 0; k < G.size(); ++k) {
      std::vector<ModVec> others;
      for (size_t m = 0; m < G.size(); ++m)
        if (m != k) others.push_back(G[m]);
      if (others.empty()) break;
      auto red = mod_reduce(G[k], others, ord, budget);
      if (red.remainder != G[k]) {
        changed = true;
        if (modvec_is_zero(red.remainder)) {
          G.erase(G.begin() + k);
          --k;
        } else {
          auto lt = mod_lead(red.remainder, ord);
          for (auto& p : red.remainder) p = lt->coef.inv() * p;
          G[k] = std::move(red.remainder);
        }
      }
    }
  }

  std::sort(G.begin(), G.end(), [&](const ModVec& a, const ModVec& b) {
    auto la = mod_lead(a, ord), lb = mod_lead(b, ord);
    return ord.less(lb->comp, lb->mono, la->comp, la->mono);
  });
  out.basis = std::move(G);
  return out;
}

// Kernel of the R/J-linear map R^a -> R^b given by a b x a matrix:
// { v : D v = 0 mod J }, returned as a Groebner basis of the kernel
// submodule of R^a (J-multiples of the standard basis included).
inline std::vector<ModVec> kernel_mod(const PolyMat& D, const std::vector<Poly>& rels,
                                      const Budget& budget = default_budget()) {
  const RingPtr& R = D.ring();
  size_t b = D.rows(), a = D.cols();
  std::vector<ModVec> gens;
  for (size_t j = 0; j < a; ++j) {
    ModVec v = modvec_zero(R, b + a);
    for (size_t i = 0; i < b; ++i) v[i] = D.at(i, j);
    v[b + j] = Poly::one(R);
    gens.push_back(std::move(v));
  }
  for (auto& g : rels)
    for (size_t i = 0; i < b; ++i) {
      ModVec v = modvec_zero(R, b + a);
      v[i] = g;
      gens.push_back(std::move(v));
    }
  ModOrder ord{TermOrder::grevlex(), static_cast<int>(b)};
  auto gb = module_buchberger(R, b + a, std::move(gens), ord, budget);
  std::vector<ModVec> out;
  for (auto& v : gb.basis) {
    bool top_zero = true;
    for (size_t i = 0; i < b && top_zero; ++i)
      if (!v[i].is_zero()) top_zero = false;
    if (!top_zero) continue;
    out.emplace_back(v.begin() + b, v.end());
  }
  return out;  // a Groebner basis of the kernel w.r.t. the induced TOP order
}

// Syzygies of a module Groebner basis (Schreyer): every S-vector of the
// basis reduces to zero; the recorded cofactors give one syzygy each.
inline std::vector<ModVec> syzygies_of_gb(const std::vector<ModVec>& gb, const RingPtr& R,
                                          const ModOrder& ord, const Budget& budget = default_budget()) {
  std::vector<ModVec> out;
  for (size_t i = 0; i < gb.size(); ++i)
    for (size_t j = i + 1; j < gb.size(); ++j) {
      auto li = mod_lead(gb[i], ord), lj = mod_lead(gb[j], ord);
      if (li->comp != lj->comp) continue;
      Mono l = mono_lcm(li->mono, lj->mono);
      Poly qi = Poly::term(R, mono_div(l, li->mono), li->coef.inv());
      Poly qj = Poly::term(R, mono_div(l, lj->mono), lj->coef.inv());
      ModVec s = modvec_sub(modvec_mul(gb[i], qi), modvec_mul(gb[j], qj));
      auto red = mod_reduce(s, gb, ord, budget);
      if (!modvec_is_zero(red.remainder))
        throw std::logic_error("syzygies_of_gb: input is not a Groebner basis");
      ModVec syz = modvec_zero(R, gb.size());
      syz[i] += qi;
      syz[j] -= qj;
      for (size_t k = 0; k < gb.size(); ++k) syz[k] -= red.cofactors[k];
      if (!modvec_is_zero(syz)) out.push_back(std::move(syz));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Finite-length quotients R^s / H and their equivariant characters.

struct StdMono {
  int comp;
  Mono mono;
};

struct FiniteQuotient {
  bool finite = false;
  std::vector<StdMono> basis;  // standard monomials (comp, mono)
};

// Standard monomials of R^s modulo the submodule generated by `gens`
// (TOP order). finite == false when some component is infinite-dimensional.
inline FiniteQuotient finite_quotient(const RingPtr& R, size_t comps, const std::vector<ModVec>& gens,
                                      const Budget& budget = default_budget()) {
  auto gb = module_buchberger(R, comps, gens, ModOrder{TermOrder::grevlex(), 0}, budget);
  size_t nv = R->arity();
  std::vector<std::vector<Mono>> lt_by_comp(comps);
  for (auto& v : gb.basis) {
    auto lt = mod_lead(v, gb.order);
    lt_by_comp[lt->comp].push_back(lt->mono);
  }
  FiniteQuotient out;
  out.finite = true;
  for (size_t j = 0; j < comps; ++j) {
    // finite iff each variable has a pure power among this component's leads
    std::vector<int> bound(nv, -1);
    bool unit = false;
    for (auto& m : lt_by_comp[j]) {
      int nz = -1;
      bool pure = true;
      for (size_t v = 0; v < nv; ++v)
        if (m[v]) {
          if (nz >= 0) pure = false;
          nz = static_cast<int>(v);
        }
      if (nz < 0) {
        unit = true;  // constant lead: whole component dies
        break;
      }
      if (pure) bound[nz] = bound[nz] < 0 ? m[nz] : std::min(bound[nz], m[nz]);
    }
    if (unit) continue;
    for (size_t v = 0; v < nv; ++v)
      if (bound[v] < 0) {
        out.finite = false;
        return out;
      }
    // enumerate exponents below the pure-power bounds, filter by all leads
    Mono cur = mono_one(nv);
    std::function<void(size_t)> rec = [&](size_t v) {
      if (v == nv) {
        for (auto& m : lt_by_comp[j])
          if (mono_divides(m, cur)) return;
        out.basis.push_back(StdMono{static_cast<int>(j), cur});
        return;
      }
      for (int e = 0; e < bound[v]; ++e) {
        cur[v] = e;
        rec(v + 1);
      }
      cur[v] = 0;
    };
    if (nv == 0) {
      out.basis.push_back(StdMono{static_cast<int>(j), cur});
    } else {
      rec(0);
    }
  }
  return out;
}

// w-weight of a homogeneous module vector whose components carry twists
// (w-units). nullopt if the vector is not homogeneous.
inline std::optional<int> modvec_wweight(const ModVec& v, const std::vector<int>& twists) {
  std::optional<int> w;
  for (size_t k = 0; k < v.size(); ++k) {
    for (auto& [m, c] : v[k].terms()) {
      int wm = mono_wweight(*v[k].ring(), m) + twists[k];
      if (!w)
        w = wm;
      else if (*w != wm)
        return std::nullopt;
    }
  }
  return w;
}

}  // namespace mfk
