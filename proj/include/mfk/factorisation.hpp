#pragma once

// The Z/2-graded factorisation category over an affine quotient ring:
// objects, graded morphisms with the differential D = [d, -], shift,
// cones, totalisations of split short exact sequences, tensor products
// with Koszul signs, and homotopy certificates found by exact bounded-
// degree linear solves.
//
// All matrix identities are checked modulo the base quotient relations
// through Groebner normal forms; a factorisation is valid iff both square
// identities reduce to zero exactly.

#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "mfk/groebner.hpp"
#include "mfk/matrix.hpp"

namespace mfk {

struct Factorisation {
  QuotPtr base;
  Poly potential;
  size_t rp = 0, rm = 0;      // ranks of F+ and F-
  PolyMat dplus;              // F+ -> F-, shape rm x rp
  PolyMat dminus;             // F- -> F+, shape rp x rm
  std::vector<int> tplus, tminus;  // basis twists in w-units

  Factorisation() = default;
  Factorisation(QuotPtr b, Poly f, PolyMat dp, PolyMat dm, std::vector<int> tp = {},
                std::vector<int> tm = {})
      : base(std::move(b)),
        potential(std::move(f)),
        rp(dp.cols()),
        rm(dp.rows()),
        dplus(std::move(dp)),
        dminus(std::move(dm)),
        tplus(std::move(tp)),
        tminus(std::move(tm)) {
    if (dminus.rows() != rp || dminus.cols() != rm)
      throw std::invalid_argument("Factorisation: structure map shapes do not match");
    if (tplus.empty()) tplus.assign(rp, 0);
    if (tminus.empty()) tminus.assign(rm, 0);
    if (tplus.size() != rp || tminus.size() != rm)
      throw std::invalid_argument("Factorisation: twist arity mismatch");
  }

  const RingPtr& ring() const { return base->ring; }

  static Factorisation unit(const QuotPtr& b) {
    return Factorisation(b, Poly(b->ring), PolyMat(b->ring, 0, 1), PolyMat(b->ring, 1, 0));
  }
};

struct ValidationIssue {
  std::string where;  // "d-.d+" or "d+.d-" or "shape" ...
  size_t i = 0, j = 0;
  Poly remainder;
};

struct ValidationReport {
  bool ok = true;
  std::vector<ValidationIssue> issues;

  std::string str() const {
    if (ok) return "valid";
    std::ostringstream out;
    out << "invalid:";
    for (auto& z : issues)
      out << " [" << z.where << "(" << z.i << "," << z.j << ") rem " << z.remainder.str() << "]";
    return out.str();
  }
};

inline ValidationReport validate(const Factorisation& F) {
  ValidationReport rep;
  auto check = [&](const PolyMat& prod, size_t n, const char* tag) {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        Poly want = (i == j) ? F.potential : Poly(F.ring());
        Poly rem = F.base->nf(prod.at(i, j) - want);
        if (!rem.is_zero()) {
          rep.ok = false;
          rep.issues.push_back({tag, i, j, rem});
        }
      }
  };
  check(F.dminus * F.dplus, F.rp, "d-.d+");
  check(F.dplus * F.dminus, F.rm, "d+.d-");
  return rep;
}

// Weight homogeneity of all structure data (w-units). Only meaningful when
// the instance carries torus data; trivial weights always pass.
inline bool check_equivariant(const Factorisation& F) {
  auto wf = F.potential.wweight();
  if (!wf || (*wf != 0 && !F.potential.is_zero())) return false;
  auto entry_ok = [&](const Poly& e, int src_tw, int tgt_tw) {
    if (e.is_zero()) return true;
    auto w = e.wweight();
    return w && *w == src_tw - tgt_tw;
  };
  for (size_t i = 0; i < F.rm; ++i)
    for (size_t j = 0; j < F.rp; ++j)
      if (!entry_ok(F.dplus.at(i, j), F.tplus[j], F.tminus[i])) return false;
  for (size_t i = 0; i < F.rp; ++i)
    for (size_t j = 0; j < F.rm; ++j)
      if (!entry_ok(F.dminus.at(i, j), F.tminus[j], F.tplus[i])) return false;
  return true;
}

// F[1] = (F-, F+, -d-, -d+)
inline Factorisation shift(const Factorisation& F) {
  return Factorisation(F.base, F.potential, -F.dminus, -F.dplus, F.tminus, F.tplus);
}

inline Factorisation shift_n(Factorisation F, int n) {
  for (int k = 0; k < ((n % 2) + 2) % 2; ++k) F = shift(F);
  return F;
}

inline Factorisation direct_sum(const Factorisation& A, const Factorisation& B) {
  PolyMat zpm(A.ring(), A.rm, B.rp), zmp(A.ring(), B.rm, A.rp);
  PolyMat dp = PolyMat::block2(A.dplus, zpm, zmp, B.dplus);
  PolyMat zpm2(A.ring(), A.rp, B.rm), zmp2(A.ring(), B.rp, A.rm);
  PolyMat dm = PolyMat::block2(A.dminus, zpm2, zmp2, B.dminus);
  auto cat = [](std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  return Factorisation(A.base, A.potential, dp, dm, cat(A.tplus, B.tplus), cat(A.tminus, B.tminus));
}

// ---------------------------------------------------------------------------
// Morphisms.

enum class Parity { Even, Odd };

struct FactMorphism {
  Factorisation source, target;
  Parity parity = Parity::Even;
  // Even: app: F+ -> G+, amm: F- -> G-.
  // Odd:  apm: F+ -> G-, amp: F- -> G+.
  PolyMat a, b;  // even: (app, amm); odd: (apm, amp)

  static FactMorphism identity(const Factorisation& F) {
    return {F, F, Parity::Even, PolyMat::identity(F.ring(), F.rp), PolyMat::identity(F.ring(), F.rm)};
  }
  static FactMorphism even(const Factorisation& F, const Factorisation& G, PolyMat app, PolyMat amm) {
    return {F, G, Parity::Even, std::move(app), std::move(amm)};
  }
  static FactMorphism odd(const Factorisation& F, const Factorisation& G, PolyMat apm, PolyMat amp) {
    return {F, G, Parity::Odd, std::move(apm), std::move(amp)};
  }
};

// D(a) = d a - (-1)^{|a|} a d
inline FactMorphism differential(const FactMorphism& m) {
  const auto& F = m.source;
  const auto& G = m.target;
  if (m.parity == Parity::Even) {
    PolyMat dpm = G.dplus * m.a - m.b * F.dplus;    // F+ -> G-
    PolyMat dmp = G.dminus * m.b - m.a * F.dminus;  // F- -> G+
    return FactMorphism::odd(F, G, std::move(dpm), std::move(dmp));
  }
  PolyMat dpp = G.dminus * m.a + m.b * F.dplus;  // F+ -> G+
  PolyMat dmm = G.dplus * m.b + m.a * F.dminus;  // F- -> G-
  return FactMorphism::even(F, G, std::move(dpp), std::move(dmm));
}

inline bool is_zero_mod(const PolyMat& M, const QuotientRing& qr) {
  for (size_t i = 0; i < M.rows(); ++i)
    for (size_t j = 0; j < M.cols(); ++j)
      if (!qr.is_zero_mod(M.at(i, j))) return false;
  return true;
}

inline bool is_closed(const FactMorphism& m) {
  auto d = differential(m);
  return is_zero_mod(d.a, *m.source.base) && is_zero_mod(d.b, *m.source.base);
}

inline FactMorphism compose(const FactMorphism& g, const FactMorphism& f) {  // g after f
  if (f.parity == Parity::Even && g.parity == Parity::Even)
    return FactMorphism::even(f.source, g.target, g.a * f.a, g.b * f.b);
  if (f.parity == Parity::Even && g.parity == Parity::Odd)
    return FactMorphism::odd(f.source, g.target, g.a * f.a, g.b * f.b);
  if (f.parity == Parity::Odd && g.parity == Parity::Even)
    return FactMorphism::odd(f.source, g.target, g.b * f.a, g.a * f.b);
  return FactMorphism::even(f.source, g.target, g.b * f.a, g.a * f.b);
}

// Cone of a closed even morphism a: F -> G, with the block shapes of the
// standard display: C+ = G+ (+) F-, dC+ = [[dG+, a_mm],[0, -dF-]].
inline Factorisation cone(const FactMorphism& a) {
  if (a.parity != Parity::Even) throw std::invalid_argument("cone: morphism must be even");
  if (!is_closed(a)) throw std::invalid_argument("cone: morphism is not closed");
  const auto& F = a.source;
  const auto& G = a.target;
  const auto& R = F.ring();
  PolyMat dp = PolyMat::block2(G.dplus, a.b, PolyMat(R, F.rp, G.rp), -F.dminus);
  PolyMat dm = PolyMat::block2(G.dminus, a.a, PolyMat(R, F.rm, G.rm), -F.dplus);
  auto cat = [](std::vector<int> x, const std::vector<int>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  return Factorisation(F.base, F.potential, dp, dm, cat(G.tplus, F.tminus), cat(G.tminus, F.tplus));
}

// Tensor product: (F (x) G)+ = F+G+ (+) F-G-, with the right factor's
// differential carrying the Koszul sign of the left degree. Potentials add.
inline Factorisation tensor(const Factorisation& F, const Factorisation& G) {
  const auto& R = F.ring();
  auto Ipp = PolyMat::identity(R, F.rp), Imm = PolyMat::identity(R, F.rm);
  auto Jpp = PolyMat::identity(R, G.rp), Jmm = PolyMat::identity(R, G.rm);
  PolyMat dp = PolyMat::block2(PolyMat::kron(F.dplus, Jpp), -PolyMat::kron(Imm, G.dminus),
                               PolyMat::kron(Ipp, G.dplus), PolyMat::kron(F.dminus, Jmm));
  PolyMat dm = PolyMat::block2(PolyMat::kron(F.dminus, Jpp), PolyMat::kron(Ipp, G.dminus),
                               -PolyMat::kron(Imm, G.dplus), PolyMat::kron(F.dplus, Jmm));
  auto tw = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() * b.size());
    for (int x : a)
      for (int y : b) out.push_back(x + y);
    return out;
  };
  auto cat = [](std::vector<int> x, const std::vector<int>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  return Factorisation(F.base, F.potential + G.potential, dp, dm,
                       cat(tw(F.tplus, G.tplus), tw(F.tminus, G.tminus)),
                       cat(tw(F.tminus, G.tplus), tw(F.tplus, G.tminus)));
}

// ---------------------------------------------------------------------------
// Split short exact sequences and their totalisations.

struct SESWitness {
  Factorisation F1, F3;
  FactMorphism phi;  // odd closed F3 -> F1, the extension block

  // middle term F2 = F1 (+) F3 with d2 = [[d1, phi],[0, d3]]
  Factorisation middle() const {
    const auto& R = F1.ring();
    PolyMat dp = PolyMat::block2(F1.dplus, phi.a, PolyMat(R, F3.rm, F1.rp), F3.dplus);
    PolyMat dm = PolyMat::block2(F1.dminus, phi.b, PolyMat(R, F3.rp, F1.rm), F3.dminus);
    auto cat = [](std::vector<int> x, const std::vector<int>& y) {
      x.insert(x.end(), y.begin(), y.end());
      return x;
    };
    return Factorisation(F1.base, F1.potential, dp, dm, cat(F1.tplus, F3.tplus),
                         cat(F1.tminus, F3.tminus));
  }

  FactMorphism inclusion() const {  // F1 -> F2
    auto F2 = middle();
    const auto& R = F1.ring();
    PolyMat app = PolyMat::vcat(PolyMat::identity(R, F1.rp), PolyMat(R, F3.rp, F1.rp));
    PolyMat amm = PolyMat::vcat(PolyMat::identity(R, F1.rm), PolyMat(R, F3.rm, F1.rm));
    return FactMorphism::even(F1, F2, app, amm);
  }
  FactMorphism projection() const {  // F2 -> F3
    auto F2 = middle();
    const auto& R = F1.ring();
    PolyMat app = PolyMat::hcat(PolyMat(R, F3.rp, F1.rp), PolyMat::identity(R, F3.rp));
    PolyMat amm = PolyMat::hcat(PolyMat(R, F3.rm, F1.rm), PolyMat::identity(R, F3.rm));
    return FactMorphism::even(F2, F3, app, amm);
  }

  bool valid() const {
    if (phi.parity != Parity::Odd) return false;
    if (!is_closed(phi)) return false;
    auto ba = compose(projection(), inclusion());
    return is_zero_mod(ba.a, *F1.base) && is_zero_mod(ba.b, *F1.base);
  }
};

// Tot = Cone((b,0): Cone(a) -> F3).
inline Factorisation totalise(const SESWitness& S) {
  if (!S.valid()) throw std::invalid_argument("totalise: SES witness invariants fail");
  auto a = S.inclusion();
  auto b = S.projection();
  auto K = cone(a);  // K+ = F2+ (+) F1-
  const auto& R = S.F1.ring();
  // (b, 0): K -> F3
  PolyMat app = PolyMat::hcat(b.a, PolyMat(R, S.F3.rp, S.F1.rm));
  PolyMat amm = PolyMat::hcat(b.b, PolyMat(R, S.F3.rm, S.F1.rp));
  auto psi = FactMorphism::even(K, S.F3, app, amm);
  return cone(psi);
}

// ---------------------------------------------------------------------------
// Homotopies and bounded-degree homotopy search.

struct Homotopy {
  PolyMat h_plus;   // F+ -> F-
  PolyMat h_minus;  // F- -> F+
  Poly scale;       // [d,h] = scale * id

  bool verify(const Factorisation& F) const {
    auto& qr = *F.base;
    PolyMat e1 = F.dminus * h_plus + h_minus * F.dplus - PolyMat::scalar_diag(F.ring(), F.rp, scale);
    PolyMat e2 = F.dplus * h_minus + h_plus * F.dminus - PolyMat::scalar_diag(F.ring(), F.rm, scale);
    return is_zero_mod(e1, qr) && is_zero_mod(e2, qr);
  }
};

// Solve D(h) = rhs for an odd endomorphism-degree h of F, with entries of
// total degree <= degree_bound (standard monomials modulo the relations).
// Absence means "no homotopy within the bound", not "not homotopic".
inline std::optional<FactMorphism> solve_homotopy(const Factorisation& F, const FactMorphism& rhs,
                                                  int degree_bound) {
  if (rhs.parity != Parity::Even) throw std::invalid_argument("solve_homotopy: rhs must be even");
  const auto& R = F.ring();
  auto& qr = *F.base;
  auto monos = std_monomials_up_to(qr, degree_bound);

  struct Unknown {
    int block;  // 0: h+ entry, 1: h- entry
    size_t i, j;
    Mono m;
  };
  std::vector<Unknown> unknowns;
  for (size_t i = 0; i < F.rm; ++i)
    for (size_t j = 0; j < F.rp; ++j)
      for (auto& m : monos) unknowns.push_back({0, i, j, m});
  for (size_t i = 0; i < F.rp; ++i)
    for (size_t j = 0; j < F.rm; ++j)
      for (auto& m : monos) unknowns.push_back({1, i, j, m});

  // Equations: (d- h+ + h- d+)(i,j) = rhs.a(i,j)  on F+  [rp x rp]
  //            (d+ h- + h+ d-)(i,j) = rhs.b(i,j)  on F-  [rm x rm]
  // Row index: (eq, i, j, monomial) discovered on demand.
  std::map<std::tuple<int, size_t, size_t, Mono>, size_t> row_of;
  std::vector<std::map<size_t, Scalar>> cols(unknowns.size());
  auto row_id = [&](int eq, size_t i, size_t j, const Mono& m) {
    auto key = std::make_tuple(eq, i, j, m);
    auto it = row_of.find(key);
    if (it != row_of.end()) return it->second;
    size_t id = row_of.size();
    row_of.emplace(key, id);
    return id;
  };
  auto scatter = [&](size_t col, int eq, size_t i, size_t j, const Poly& contrib) {
    Poly nf = qr.nf(contrib);
    for (auto& [m, c] : nf.terms()) cols[col][row_id(eq, i, j, m)] = c;
  };

  for (size_t u = 0; u < unknowns.size(); ++u) {
    const auto& un = unknowns[u];
    Poly mono = Poly::term(R, un.m, Scalar::one());
    if (un.block == 0) {
      // h+(un.i, un.j) = m contributes d-(i, un.i)*m to eq1(i, un.j)
      for (size_t i = 0; i < F.rp; ++i) scatter(u, 0, i, un.j, F.dminus.at(i, un.i) * mono);
      // and m*d-(un.j, j) to eq2(un.i, j)
      for (size_t j = 0; j < F.rm; ++j) scatter(u, 1, un.i, j, mono * F.dminus.at(un.j, j));
    } else {
      // h-(un.i, un.j) = m contributes m*d+(un.j, j) to eq1(un.i, j)
      for (size_t j = 0; j < F.rp; ++j) scatter(u, 0, un.i, j, mono * F.dplus.at(un.j, j));
      // and d+(i, un.i)*m to eq2(i, un.j)
      for (size_t i = 0; i < F.rm; ++i) scatter(u, 1, i, un.j, F.dplus.at(i, un.i) * mono);
    }
  }

  // right-hand side
  std::map<size_t, Scalar> rhsvec;
  for (size_t i = 0; i < F.rp; ++i)
    for (size_t j = 0; j < F.rp; ++j) {
      Poly nf = qr.nf(rhs.a.at(i, j));
      for (auto& [m, c] : nf.terms()) rhsvec[row_id(0, i, j, m)] = c;
    }
  for (size_t i = 0; i < F.rm; ++i)
    for (size_t j = 0; j < F.rm; ++j) {
      Poly nf = qr.nf(rhs.b.at(i, j));
      for (auto& [m, c] : nf.terms()) rhsvec[row_id(1, i, j, m)] = c;
    }

  size_t nrows = row_of.size(), ncols = unknowns.size();
  QiMat A(nrows, ncols);
  for (size_t u = 0; u < ncols; ++u)
    for (auto& [r, c] : cols[u]) A.at(r, u) = c;
  std::vector<Scalar> bvec(nrows);
  for (auto& [r, c] : rhsvec) bvec[r] = c;

  auto sol = A.solve(bvec);
  if (!sol) return std::nullopt;

  PolyMat hp(R, F.rm, F.rp), hm(R, F.rp, F.rm);
  for (size_t u = 0; u < ncols; ++u) {
    if ((*sol)[u].is_zero()) continue;
    const auto& un = unknowns[u];
    (un.block == 0 ? hp.at(un.i, un.j) : hm.at(un.i, un.j)).add_term(un.m, (*sol)[u]);
  }
  auto h = FactMorphism::odd(F, F, hp, hm);
  // verify D(h) = rhs exactly
  auto dh = differential(h);
  if (!is_zero_mod(dh.a - rhs.a, qr) || !is_zero_mod(dh.b - rhs.b, qr))
    throw std::logic_error("solve_homotopy: verification failed");
  return h;
}

inline std::optional<Homotopy> solve_contraction(const Factorisation& F, const Poly& scale,
                                                 int degree_bound) {
  auto rhs = FactMorphism::even(F, F, PolyMat::scalar_diag(F.ring(), F.rp, scale),
                                PolyMat::scalar_diag(F.ring(), F.rm, scale));
  auto h = solve_homotopy(F, rhs, degree_bound);
  if (!h) return std::nullopt;
  Homotopy out{h->a, h->b, scale};
  if (!out.verify(F)) throw std::logic_error("solve_contraction: verification failed");
  return out;
}

// Search for [d,h] = u^N id, N <= power_bound: "yes" certifies that F is
// contractible after inverting u. Absence is an honest "unknown".
struct OffSupportResult {
  bool yes = false;
  int power = 0;
  std::optional<Homotopy> h;
};

inline OffSupportResult contractible_off(const Factorisation& F, const Poly& u, int degree_bound,
                                         int power_bound) {
  for (int n = 0; n <= power_bound; ++n) {
    auto h = solve_contraction(F, u.pow(n), degree_bound);
    if (h) return {true, n, h};
  }
  return {};
}

// Pull a factorisation through a variable-name-respecting ring extension.
inline Factorisation map_factorisation(const Factorisation& F, const QuotPtr& target) {
  auto m = [&](const Poly& p) { return p.into_ring(target->ring); };
  return Factorisation(target, m(F.potential), F.dplus.map(m, target->ring), F.dminus.map(m, target->ring),
                       F.tplus, F.tminus);
}

}  // namespace mfk
