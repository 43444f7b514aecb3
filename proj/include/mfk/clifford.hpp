#pragma once

// Split Clifford algebras Cl(E, q) for E = Lambda (+) Lambda^* of rank 2n,
// their spinor modules S = /\* Lambda^* (and the dual realisation /\* Lambda),
// Clifford and Koszul factorisations, the square-equals-Koszul verification,
// Pfaffian lines of maximal isotropic subspaces, and the isotropic-reduction
// character identity.
//
// Generator indexing: 0..n-1 are lambda_1..lambda_n, n..2n-1 are the duals.
// The module action satisfies v.(v.m) = q(v,v) m with q(sum x_k l_k + sum
// y_k l*_k) = sum x_k y_k, so (S, s) factorises +q(s,s) and (S, sqrt(-1) s)
// factorises -q(s,s).

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "mfk/factorisation.hpp"
#include "mfk/laurent.hpp"
#include "mfk/matrix.hpp"

namespace mfk {

struct QuadraticSpace {
  int n = 0;                // half-rank
  std::vector<int> lam_wt;  // t-weights of lambda_1..lambda_n (duals get the negatives)

  explicit QuadraticSpace(int half_rank, std::vector<int> weights = {})
      : n(half_rank), lam_wt(std::move(weights)) {
    if (lam_wt.empty()) lam_wt.assign(n, 0);
    if (static_cast<int>(lam_wt.size()) != n) throw std::invalid_argument("QuadraticSpace: weight arity");
  }

  int rank() const { return 2 * n; }
  int partner(int g) const { return g < n ? g + n : g - n; }
  int gen_weight(int g) const { return g < n ? lam_wt[g] : -lam_wt[g - n]; }
};

// ---------------------------------------------------------------------------
// Clifford algebra elements: Poly coefficients on the 2^(2n) basis words.

class CliffordElement {
 public:
  CliffordElement(const QuadraticSpace& space, RingPtr ring)
      : n_(space.n), ring_(std::move(ring)) {}

  static CliffordElement one(const QuadraticSpace& sp, const RingPtr& r) {
    CliffordElement c(sp, r);
    c.words_[0] = Poly::one(r);
    return c;
  }
  static CliffordElement generator(const QuadraticSpace& sp, const RingPtr& r, int g) {
    CliffordElement c(sp, r);
    c.words_[uint32_t(1) << g] = Poly::one(r);
    return c;
  }
  static CliffordElement vector(const QuadraticSpace& sp, const std::vector<Poly>& coeffs) {
    if (static_cast<int>(coeffs.size()) != sp.rank())
      throw std::invalid_argument("CliffordElement::vector: arity");
    CliffordElement c(sp, coeffs.front().ring());
    for (int g = 0; g < sp.rank(); ++g)
      if (!coeffs[g].is_zero()) c.words_[uint32_t(1) << g] = coeffs[g];
    return c;
  }

  const std::map<uint32_t, Poly>& words() const { return words_; }
  const RingPtr& ring() const { return ring_; }
  bool is_zero() const { return words_.empty(); }

  void add_word(uint32_t w, const Poly& c) {
    if (c.is_zero()) return;
    auto it = words_.find(w);
    if (it == words_.end())
      words_.emplace(w, c);
    else {
      it->second += c;
      if (it->second.is_zero()) words_.erase(it);
    }
  }

  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) {
    for (auto& [w, c] : b.words_) a.add_word(w, c);
    return a;
  }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) {
    for (auto& [w, c] : b.words_) a.add_word(w, -c);
    return a;
  }
  friend CliffordElement operator*(const Poly& p, CliffordElement a) {
    std::map<uint32_t, Poly> out;
    for (auto& [w, c] : a.words_) {
      Poly q = p * c;
      if (!q.is_zero()) out.emplace(w, q);
    }
    a.words_ = std::move(out);
    return a;
  }
  friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
    return a.words_ == b.words_;
  }

  // word length parity: even/odd part selectors
  CliffordElement parity_part(int par) const {
    CliffordElement out(*this);
    out.words_.clear();
    for (auto& [w, c] : words_)
      if (__builtin_popcount(w) % 2 == par) out.words_.emplace(w, c);
    return out;
  }

  // reverse the generator order in every word: (v1...vk)^t = vk...v1
  CliffordElement transpose() const {
    CliffordElement out(*this);
    out.words_.clear();
    for (auto& [w, c] : words_) {
      int len = __builtin_popcount(w);
      bool neg = ((len * (len - 1) / 2) % 2) != 0;
      out.words_.emplace(w, neg ? -c : c);
    }
    return out;
  }

  friend CliffordElement clifford_mul(const CliffordElement& a, const CliffordElement& b) {
    CliffordElement out(a);
    out.words_.clear();
    for (auto& [wa, ca] : a.words_)
      for (auto& [wb, cb] : b.words_) {
        Poly c = ca * cb;
        mul_words(out, a.n_, wa, wb, c);
      }
    return out;
  }

 private:
  // out += coeff * e_wa * e_wb, via the relations l_i l*_i + l*_i l_i = 1,
  // all other pairs anticommute, squares of the isotropic generators are 0.
  static void mul_words(CliffordElement& out, int n, uint32_t wa, uint32_t wb, const Poly& coeff) {
    if (wa == 0) {
      out.add_word(wb, coeff);
      return;
    }
    // peel the largest generator of wa and fold it into wb from the left
    int g = 31 - __builtin_clz(wa);
    uint32_t rest = wa & ~(uint32_t(1) << g);
    // compute g . e_wb as a sum, then recurse with `rest`
    std::vector<std::pair<uint32_t, int>> expansion;
    gen_times_word(n, g, wb, 1, expansion);
    for (auto& [w, s] : expansion) {
      Poly c = (s == 1) ? coeff : -coeff;
      mul_words(out, n, rest, w, c);
    }
  }

  // expansion of e_g . e_w into (word, sign) pairs:
  // e_g e_{k1} = Btilde(g, k1) - e_{k1} e_g, recursing past the lowest
  // generator k1 of w; the isotropic basis generators square to zero.
  static void gen_times_word(int n, int g, uint32_t w, int sign,
                             std::vector<std::pair<uint32_t, int>>& out) {
    if (w == 0 || g < __builtin_ctz(w)) {
      out.emplace_back(w | (uint32_t(1) << g), sign);
      return;
    }
    int k1 = __builtin_ctz(w);
    uint32_t rest = w & ~(uint32_t(1) << k1);
    if (g == k1) return;
    int partner = g < n ? g + n : g - n;
    if (partner == k1) out.emplace_back(rest, sign);
    std::vector<std::pair<uint32_t, int>> sub;
    gen_times_word(n, g, rest, -sign, sub);
    for (auto& [sw, ss] : sub) out.emplace_back(sw | (uint32_t(1) << k1), ss);
  }

  int n_;
  RingPtr ring_;
  std::map<uint32_t, Poly> words_;
};

// ---------------------------------------------------------------------------
// Spinor module actions. Standard model: basis = exterior words in the
// dual generators (masks over n bits), lambda^*_k acts by wedge, lambda_k
// by contraction. Dual model swaps the roles (basis = words in lambda).

namespace spin {

inline int wedge_sign(uint32_t mask, int k) {
  return (__builtin_popcount(mask & ((uint32_t(1) << k) - 1)) % 2) ? -1 : 1;
}

// masks of given parity, ascending: the even list indexes S+, odd indexes S-
inline std::vector<uint32_t> parity_masks(int n, int par) {
  std::vector<uint32_t> out;
  for (uint32_t m = 0; m < (uint32_t(1) << n); ++m)
    if (__builtin_popcount(m) % 2 == par) out.push_back(m);
  return out;
}

}  // namespace spin

// Ungraded 2^n x 2^n matrix of the action of sum coeffs[g] * e_g.
inline PolyMat spinor_action(const QuadraticSpace& sp, const std::vector<Poly>& coeffs,
                             bool dual_model = false) {
  int n = sp.n;
  const RingPtr& R = coeffs.front().ring();
  PolyMat A(R, size_t(1) << n, size_t(1) << n);
  for (uint32_t m = 0; m < (uint32_t(1) << n); ++m) {
    for (int k = 0; k < n; ++k) {
      int wedge_gen = dual_model ? k : k + n;     // which generator wedges bit k
      int contract_gen = dual_model ? k + n : k;  // which generator contracts bit k
      bool has = (m >> k) & 1;
      if (!has) {
        // wedge: e_{wedge_gen} . basis_m = sign * basis_{m | bit}
        const Poly& c = coeffs[wedge_gen];
        if (!c.is_zero()) {
          int s = spin::wedge_sign(m, k);
          A.at(m | (uint32_t(1) << k), m) += (s == 1) ? c : -c;
        }
      } else {
        // contraction
        const Poly& c = coeffs[contract_gen];
        if (!c.is_zero()) {
          int s = spin::wedge_sign(m & ~(uint32_t(1) << k), k);
          A.at(m & ~(uint32_t(1) << k), m) += (s == 1) ? c : -c;
        }
      }
    }
  }
  return A;
}

// Scalar-coefficient variant used for Pfaffian lines.
inline QiMat spinor_action_qi(const QuadraticSpace& sp, const std::vector<Scalar>& coeffs,
                              bool dual_model = false) {
  int n = sp.n;
  QiMat A(size_t(1) << n, size_t(1) << n);
  for (uint32_t m = 0; m < (uint32_t(1) << n); ++m)
    for (int k = 0; k < n; ++k) {
      int wedge_gen = dual_model ? k : k + n;
      int contract_gen = dual_model ? k + n : k;
      bool has = (m >> k) & 1;
      if (!has) {
        const Scalar& c = coeffs[wedge_gen];
        if (!c.is_zero()) {
          int s = spin::wedge_sign(m, k);
          A.at(m | (uint32_t(1) << k), m) += (s == 1) ? c : -c;
        }
      } else {
        const Scalar& c = coeffs[contract_gen];
        if (!c.is_zero()) {
          int s = spin::wedge_sign(m & ~(uint32_t(1) << k), k);
          A.at(m & ~(uint32_t(1) << k), m) += (s == 1) ? c : -c;
        }
      }
    }
  return A;
}

// q(v, v) for a coefficient vector (x_1..x_n, y_1..y_n): sum x_k y_k.
inline Poly split_quadratic(const QuadraticSpace& sp, const std::vector<Poly>& v) {
  Poly q(v.front().ring());
  for (int k = 0; k < sp.n; ++k) q += v[k] * v[k + sp.n];
  return q;
}

// Polarised pairing Btilde(u, v) with Btilde(l_i, l*_i) = 1.
inline Poly split_pairing(const QuadraticSpace& sp, const std::vector<Poly>& u,
                          const std::vector<Poly>& v) {
  Poly b(u.front().ring());
  for (int k = 0; k < sp.n; ++k) b += u[k] * v[k + sp.n] + u[k + sp.n] * v[k];
  return b;
}

// twists (w-units) of the spinor basis masks
inline std::vector<int> spinor_twists(const QuadraticSpace& sp, int par, bool dual_model) {
  std::vector<int> out;
  for (uint32_t m : spin::parity_masks(sp.n, par)) {
    int t = 0;
    for (int k = 0; k < sp.n; ++k)
      if ((m >> k) & 1) t += dual_model ? 2 * sp.lam_wt[k] : -2 * sp.lam_wt[k];
    out.push_back(t);
  }
  return out;
}

// The Clifford factorisation (S, phase * s): Clifford multiplication by the
// section as structure maps; potential phase^2 q(s,s); ranks 2^(n-1).
inline Factorisation spinor_factorisation(const QuadraticSpace& sp, const QuotPtr& base,
                                          const std::vector<Poly>& section, const Scalar& phase,
                                          bool dual_model = false) {
  std::vector<Poly> coeffs;
  coeffs.reserve(section.size());
  for (auto& s : section) coeffs.push_back(phase * s);
  PolyMat A = spinor_action(sp, coeffs, dual_model);
  auto even = spin::parity_masks(sp.n, 0), odd = spin::parity_masks(sp.n, 1);
  PolyMat dp(base->ring, odd.size(), even.size());
  PolyMat dm(base->ring, even.size(), odd.size());
  for (size_t i = 0; i < odd.size(); ++i)
    for (size_t j = 0; j < even.size(); ++j) dp.at(i, j) = A.at(odd[i], even[j]);
  for (size_t i = 0; i < even.size(); ++i)
    for (size_t j = 0; j < odd.size(); ++j) dm.at(i, j) = A.at(even[i], odd[j]);
  Poly pot = phase * phase * split_quadratic(sp, section);
  return Factorisation(base, pot, dp, dm, spinor_twists(sp, 0, dual_model),
                       spinor_twists(sp, 1, dual_model));
}

// Koszul 2-periodic factorisation of (W, s, sigma): underlying module
// /\* W^*, differential iota_s + sigma /\, potential sigma(s).
inline Factorisation koszul_factorisation(const QuotPtr& base, const std::vector<Poly>& s,
                                          const std::vector<Poly>& sigma,
                                          const std::vector<int>& w_wt = {}) {
  size_t r = s.size();
  if (sigma.size() != r) throw std::invalid_argument("koszul_factorisation: arity mismatch");
  const RingPtr& R = base->ring;
  PolyMat A(R, size_t(1) << r, size_t(1) << r);
  for (uint32_t m = 0; m < (uint32_t(1) << r); ++m)
    for (size_t k = 0; k < r; ++k) {
      bool has = (m >> k) & 1;
      if (!has) {
        if (!sigma[k].is_zero()) {
          int sg = spin::wedge_sign(m, static_cast<int>(k));
          A.at(m | (uint32_t(1) << k), m) += (sg == 1) ? sigma[k] : -sigma[k];
        }
      } else {
        if (!s[k].is_zero()) {
          int sg = spin::wedge_sign(m & ~(uint32_t(1) << k), static_cast<int>(k));
          A.at(m & ~(uint32_t(1) << k), m) += (sg == 1) ? s[k] : -s[k];
        }
      }
    }
  auto even = spin::parity_masks(static_cast<int>(r), 0), odd = spin::parity_masks(static_cast<int>(r), 1);
  PolyMat dp(R, odd.size(), even.size());
  PolyMat dm(R, even.size(), odd.size());
  for (size_t i = 0; i < odd.size(); ++i)
    for (size_t j = 0; j < even.size(); ++j) dp.at(i, j) = A.at(odd[i], even[j]);
  for (size_t i = 0; i < even.size(); ++i)
    for (size_t j = 0; j < odd.size(); ++j) dm.at(i, j) = A.at(even[i], odd[j]);
  Poly pot(R);
  for (size_t k = 0; k < r; ++k) pot += sigma[k] * s[k];
  auto twists = [&](int par) {
    std::vector<int> out;
    for (uint32_t m : spin::parity_masks(static_cast<int>(r), par)) {
      int t = 0;
      for (size_t k = 0; k < r; ++k)
        if ((m >> k) & 1) t -= 2 * (k < w_wt.size() ? w_wt[k] : 0);
      out.push_back(t);
    }
    return out;
  };
  return Factorisation(base, pot, dp, dm, twists(0), twists(1));
}

// ---------------------------------------------------------------------------
// The square of the Clifford factorisation is the Koszul complex:
// (S, sqrt(-1) s) (x) (S, s) is isomorphic to (Cl(E,q), iota_s) up to the
// parity shift by n. The isomorphism is constant in the s-variables and
// parity graded; we solve for it exactly as a linear system over Q(i),
// certify invertibility, and then verify the intertwining entrywise.

struct CliffordSquareReport {
  bool ok = false;
  int n = 0;
  bool interior_product_matches = true;   // D(c) = s.c + (-1)^{|c|+1} c.s equals iota_s
  bool koszul_matches = true;             // ... and equals the Koszul differential
  bool iso_found = false;                 // an invertible graded intertwiner exists
  std::vector<std::string> mismatches;
};

inline CliffordSquareReport clifford_square_check(int n) {
  CliffordSquareReport rep;
  rep.n = n;
  QuadraticSpace sp(n);
  std::vector<std::string> vars;
  for (int k = 1; k <= 2 * n; ++k) vars.push_back("s" + std::to_string(k));
  auto R = make_ring(vars);
  auto base = make_quotient(R);
  std::vector<Poly> s;
  for (int k = 0; k < 2 * n; ++k) s.push_back(Poly::var(R, k));

  Factorisation A = spinor_factorisation(sp, base, s, Scalar::i());
  Factorisation B = spinor_factorisation(sp, base, s, Scalar::one());
  Factorisation T = tensor(A, B);

  // target: D(c) = s.c + (-1)^{|c|+1} c.s^t on Cl words
  size_t dim = size_t(1) << (2 * n);
  CliffordElement sv = CliffordElement::vector(sp, s);
  PolyMat D(R, dim, dim);
  for (uint32_t w = 0; w < dim; ++w) {
    CliffordElement c(sp, R);
    c.add_word(w, Poly::one(R));
    int len = __builtin_popcount(w);
    CliffordElement img = clifford_mul(sv, c);
    CliffordElement right = clifford_mul(c, sv.transpose());
    img = (len % 2 == 0) ? img - right : img + right;  // (-1)^{|c|+1}
    for (auto& [ww, cc] : img.words()) D.at(ww, w) = cc;
  }

  // independent check: D equals contraction by the pairing with s
  for (uint32_t w = 0; w < dim && rep.interior_product_matches; ++w) {
    PolyMat col(R, dim, 1);
    int pos = 0;
    for (int g = 0; g < 2 * n; ++g) {
      if (!((w >> g) & 1)) continue;
      Poly coeff = s[sp.partner(g)];  // Btilde(s, e_g)
      Poly c = (pos % 2 == 0) ? coeff : -coeff;
      col.at(w & ~(uint32_t(1) << g), 0) += c;
      ++pos;
    }
    for (uint32_t ww = 0; ww < dim; ++ww)
      if (D.at(ww, w) != col.at(ww, 0)) {
        rep.interior_product_matches = false;
        rep.mismatches.push_back("interior product mismatch at word " + std::to_string(w));
        break;
      }
  }

  // ... and equals the Koszul differential of (E, s-hat) on /\* E^*
  {
    std::vector<Poly> shat, zero(2 * n, Poly(R));
    for (int g = 0; g < 2 * n; ++g) shat.push_back(s[sp.partner(g)]);
    Factorisation K = koszul_factorisation(base, shat, zero);
    auto evenE = spin::parity_masks(2 * n, 0), oddE = spin::parity_masks(2 * n, 1);
    for (size_t i = 0; i < evenE.size() && rep.koszul_matches; ++i)
      for (size_t j = 0; j < oddE.size(); ++j)
        if (K.dminus.at(i, j) != D.at(evenE[i], oddE[j])) {
          rep.koszul_matches = false;
          rep.mismatches.push_back("koszul mismatch (even row)");
          break;
        }
    for (size_t i = 0; i < oddE.size() && rep.koszul_matches; ++i)
      for (size_t j = 0; j < evenE.size(); ++j)
        if (K.dplus.at(i, j) != D.at(oddE[i], evenE[j])) {
          rep.koszul_matches = false;
          rep.mismatches.push_back("koszul mismatch (odd row)");
          break;
        }
  }

  // Solve for a constant, parity-graded isomorphism U with U d_T = D U.
  // U has two square blocks: U+ : T+ -> Cl words of parity (n mod 2) and
  // U- : T- -> the opposite parity. Unknowns are all block entries.
  size_t half = size_t(1) << (2 * n - 1);
  int p = n % 2;
  std::vector<uint32_t> words_p, words_q;  // target word bases for T+ / T-
  for (uint32_t w = 0; w < dim; ++w)
    (__builtin_popcount(w) % 2 == p ? words_p : words_q).push_back(w);

  // unknown layout: block 0 = U+ (half x half), block 1 = U- (half x half)
  auto ucol = [&](int block, size_t wi, size_t tj) {
    return static_cast<size_t>(block) * half * half + wi * half + tj;
  };
  size_t nunk = 2 * half * half;

  std::map<std::pair<uint32_t, Mono>, size_t> rows;
  std::vector<std::map<size_t, Scalar>> mat_cols(nunk);
  uint32_t row_tag = 0;
  auto row_id = [&](uint32_t tag, const Mono& m) {
    auto key = std::make_pair(tag, m);
    auto it = rows.find(key);
    if (it != rows.end()) return it->second;
    size_t id = rows.size();
    rows.emplace(key, id);
    return id;
  };
  auto scatter = [&](size_t unk, uint32_t tag, const Poly& pcontrib) {
    for (auto& [m, c] : pcontrib.terms()) {
      auto r = row_id(tag, m);
      auto& cell = mat_cols[unk][r];
      cell += c;
      if (cell.is_zero()) mat_cols[unk].erase(r);
    }
  };

  // Equation family 1: U- d_T+ = D U+ ; for each source column j of T+ and
  // each target word w (parity 1-p):    sum_i U-(w, i) dT+(i, j)
  //                                   - sum_{w'} D(w, w') U+(w', j) = 0.
  for (size_t j = 0; j < half; ++j) {
    for (size_t wi = 0; wi < words_q.size(); ++wi) {
      uint32_t tag = row_tag + static_cast<uint32_t>(j * dim + words_q[wi]);
      for (size_t i = 0; i < half; ++i) {
        const Poly& e = T.dplus.at(i, j);
        if (!e.is_zero()) scatter(ucol(1, wi, i), tag, e);
      }
      for (size_t wj = 0; wj < words_p.size(); ++wj) {
        const Poly& d = D.at(words_q[wi], words_p[wj]);
        if (!d.is_zero()) scatter(ucol(0, wj, j), tag, -d);
      }
    }
  }
  row_tag = static_cast<uint32_t>(half * dim + dim);
  // Equation family 2: U+ d_T- = D U-.
  for (size_t j = 0; j < half; ++j) {
    for (size_t wi = 0; wi < words_p.size(); ++wi) {
      uint32_t tag = row_tag + static_cast<uint32_t>(j * dim + words_p[wi]);
      for (size_t i = 0; i < half; ++i) {
        const Poly& e = T.dminus.at(i, j);
        if (!e.is_zero()) scatter(ucol(0, wi, i), tag, e);
      }
      for (size_t wj = 0; wj < words_q.size(); ++wj) {
        const Poly& d = D.at(words_p[wi], words_q[wj]);
        if (!d.is_zero()) scatter(ucol(1, wj, j), tag, -d);
      }
    }
  }

  QiMat sys(rows.size(), nunk);
  for (size_t u = 0; u < nunk; ++u)
    for (auto& [r, c] : mat_cols[u]) sys.at(r, u) = c;
  auto ker = sys.kernel();
  if (ker.empty()) {
    rep.mismatches.push_back("no intertwiner found");
    return rep;
  }

  // find an invertible element of the solution space
  auto blocks_of = [&](const std::vector<Scalar>& v) {
    QiMat Up(half, half), Um(half, half);
    for (size_t wi = 0; wi < half; ++wi)
      for (size_t tj = 0; tj < half; ++tj) {
        Up.at(wi, tj) = v[ucol(0, wi, tj)];
        Um.at(wi, tj) = v[ucol(1, wi, tj)];
      }
    return std::make_pair(Up, Um);
  };
  std::vector<Scalar> usol;
  for (long trial = 0; trial < 32 && usol.empty(); ++trial) {
    std::vector<Scalar> v(nunk);
    long t = 1;
    for (auto& kv : ker) {
      Scalar lam = (trial == 0 && ker.size() == 1) ? Scalar::one() : Scalar(1 + ((trial * 7 + t) % 11));
      for (size_t k = 0; k < nunk; ++k) v[k] += lam * kv[k];
      ++t;
    }
    auto [Up, Um] = blocks_of(v);
    if (Up.rank() == half && Um.rank() == half) usol = v;
  }
  if (usol.empty()) {
    rep.mismatches.push_back("intertwiner space has no invertible element");
    return rep;
  }
  rep.iso_found = true;

  // exact entrywise verification of U d_T = D U on both sides
  auto [Up, Um] = blocks_of(usol);
  auto verify_side = [&](bool plus_side) {
    const PolyMat& dT = plus_side ? T.dplus : T.dminus;
    const QiMat& Usrc = plus_side ? Up : Um;
    const QiMat& Udst = plus_side ? Um : Up;
    const auto& wsrc = plus_side ? words_p : words_q;
    const auto& wdst = plus_side ? words_q : words_p;
    for (size_t j = 0; j < half; ++j) {
      for (size_t wi = 0; wi < half; ++wi) {
        Poly lhs(R), rhs(R);
        for (size_t i = 0; i < half; ++i) lhs += Udst.at(wi, i) * dT.at(i, j);
        for (size_t wj = 0; wj < half; ++wj) rhs += D.at(wdst[wi], wsrc[wj]) * Usrc.at(wj, j);
        if (lhs != rhs) {
          rep.mismatches.push_back("entry mismatch after solve");
          return false;
        }
      }
    }
    return true;
  };
  bool okp = verify_side(true);
  bool okm = verify_side(false);
  rep.ok = okp && okm && rep.interior_product_matches && rep.koszul_matches;
  return rep;
}

// ---------------------------------------------------------------------------
// Pfaffian lines.

struct PfaffianLine {
  std::vector<Scalar> generator;  // coordinates on the 2^n spinor basis masks
  int parity = 0;                 // exterior degree mod 2
  Scalar omega_eigenvalue;        // action of the orientation element
};

inline CliffordElement orientation_element(const QuadraticSpace& sp, const RingPtr& R) {
  // omega = i^n e_1 ... e_{2n} for the orthonormal frame
  // e_{2k-1} = l_k + l*_k, e_{2k} = i (l_k - l*_k)
  CliffordElement acc = CliffordElement::one(sp, R);
  for (int k = 0; k < sp.n; ++k) {
    std::vector<Poly> e1(2 * sp.n, Poly(R)), e2(2 * sp.n, Poly(R));
    e1[k] = Poly::one(R);
    e1[k + sp.n] = Poly::one(R);
    e2[k] = Poly::constant(R, Scalar::i());
    e2[k + sp.n] = Poly::constant(R, -Scalar::i());
    acc = clifford_mul(acc, clifford_mul(CliffordElement::vector(sp, e1), CliffordElement::vector(sp, e2)));
  }
  // multiply by i^n
  Poly phase = Poly::constant(R, Scalar::i().pow(sp.n));
  return phase * acc;
}

// matrix of a Clifford element acting on the standard spinor module
inline QiMat clifford_action_matrix_qi(const QuadraticSpace& sp, const CliffordElement& c) {
  size_t dim = size_t(1) << sp.n;
  QiMat M(dim, dim);
  for (auto& [word, coeff] : c.words()) {
    if (!coeff.is_constant()) throw std::invalid_argument("clifford_action_matrix_qi: non-constant");
    QiMat W = QiMat::identity(dim);
    std::vector<int> gens;
    for (int g = 0; g < 2 * sp.n; ++g)
      if ((word >> g) & 1) gens.push_back(g);
    // word = g1 g2 ... gk ascending; action = act(g1) act(g2) ... act(gk)
    for (auto it = gens.rbegin(); it != gens.rend(); ++it) {
      std::vector<Scalar> unit(2 * sp.n);
      unit[*it] = Scalar::one();
      W = spinor_action_qi(sp, unit) * W;
    }
    Scalar co = coeff.constant_value();
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) M.at(i, j) += co * W.at(i, j);
  }
  return M;
}

// Pfaffian line of the span of n isotropic vectors (Scalar coordinates in
// the split basis). Throws if the span is not isotropic of dimension n.
inline PfaffianLine pfaffian_line(const QuadraticSpace& sp, const std::vector<std::vector<Scalar>>& vecs) {
  int n = sp.n;
  if (static_cast<int>(vecs.size()) != n)
    throw std::invalid_argument("pfaffian_line: need n spanning vectors");
  auto qval = [&](const std::vector<Scalar>& v) {
    Scalar q;
    for (int k = 0; k < n; ++k) q += v[k] * v[k + n];
    return q;
  };
  auto bval = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
    Scalar b;
    for (int k = 0; k < n; ++k) b += u[k] * v[k + n] + u[k + n] * v[k];
    return b;
  };
  for (auto& v : vecs)
    if (!qval(v).is_zero()) throw std::invalid_argument("pfaffian_line: input vector is not isotropic");
  for (size_t i = 0; i < vecs.size(); ++i)
    for (size_t j = i + 1; j < vecs.size(); ++j)
      if (!bval(vecs[i], vecs[j]).is_zero())
        throw std::invalid_argument("pfaffian_line: span is not isotropic");
  {
    QiMat M(vecs.size(), 2 * n);
    for (size_t i = 0; i < vecs.size(); ++i)
      for (int j = 0; j < 2 * n; ++j) M.at(i, j) = vecs[i][j];
    if (M.rank() != vecs.size()) throw std::invalid_argument("pfaffian_line: vectors are dependent");
  }

  size_t dim = size_t(1) << n;
  QiMat stacked(vecs.size() * dim, dim);
  for (size_t v = 0; v < vecs.size(); ++v) {
    QiMat A = spinor_action_qi(sp, vecs[v]);
    for (size_t i = 0; i < dim; ++i)
      for (size_t j = 0; j < dim; ++j) stacked.at(v * dim + i, j) = A.at(i, j);
  }
  auto ker = stacked.kernel();
  if (ker.size() != 1) throw std::logic_error("pfaffian_line: annihilator is not a line");

  PfaffianLine out;
  out.generator = ker[0];
  // normalise: first nonzero coordinate = 1
  for (auto& x : out.generator)
    if (!x.is_zero()) {
      Scalar inv = x.inv();
      for (auto& y : out.generator) y *= inv;
      break;
    }
  int par = -1;
  for (size_t m = 0; m < dim; ++m) {
    if (out.generator[m].is_zero()) continue;
    int p = __builtin_popcount(static_cast<uint32_t>(m)) % 2;
    if (par < 0)
      par = p;
    else if (par != p)
      throw std::logic_error("pfaffian_line: generator is not parity homogeneous");
  }
  out.parity = par;

  auto R0 = make_ring({});
  QiMat W = clifford_action_matrix_qi(sp, orientation_element(sp, R0));
  // eigenvalue on the generator
  std::vector<Scalar> img(dim);
  for (size_t i = 0; i < dim; ++i)
    for (size_t j = 0; j < dim; ++j) img[i] += W.at(i, j) * out.generator[j];
  for (size_t m = 0; m < dim; ++m)
    if (!out.generator[m].is_zero()) {
      out.omega_eigenvalue = img[m] / out.generator[m];
      break;
    }
  return out;
}

// Dual completion w_1..w_n to a given isotropic basis: Btilde(v_i, w_j) =
// delta_ij, w's isotropic. (Symplectic-style Gram-Schmidt over Q(i).)
inline std::vector<std::vector<Scalar>> isotropic_dual_completion(
    const QuadraticSpace& sp, const std::vector<std::vector<Scalar>>& vecs) {
  int n = sp.n;
  auto bval = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
    Scalar b;
    for (int k = 0; k < n; ++k) b += u[k] * v[k + n] + u[k + n] * v[k];
    return b;
  };
  auto qval = [&](const std::vector<Scalar>& v) {
    Scalar q;
    for (int k = 0; k < n; ++k) q += v[k] * v[k + n];
    return q;
  };
  std::vector<std::vector<Scalar>> ws;
  for (int j = 0; j < n; ++j) {
    // solve Btilde(v_i, w) = delta_ij
    QiMat A(n, 2 * n);
    for (int i = 0; i < n; ++i)
      for (int g = 0; g < 2 * n; ++g) A.at(i, g) = vecs[i][sp.partner(g)];
    std::vector<Scalar> rhs(n);
    rhs[j] = Scalar::one();
    auto sol = A.solve(rhs);
    if (!sol) throw std::logic_error("isotropic_dual_completion: no dual vector");
    std::vector<Scalar> w = *sol;
    // fix isotropy: w -= q(w) v_j   (Btilde(v_j, w) = 1)
    Scalar qw = qval(w);
    for (int g = 0; g < 2 * n; ++g) w[g] -= qw * vecs[j][g];
    // orthogonalise against earlier w's: w -= Btilde(w_k, w) v_k
    for (int k = 0; k < j; ++k) {
      Scalar c = bval(ws[k], w);
      for (int g = 0; g < 2 * n; ++g) w[g] -= c * vecs[k][g];
    }
    ws.push_back(std::move(w));
  }
  return ws;
}

// ---------------------------------------------------------------------------
// Isotropic reduction at character level:
// sqrtE(E) = +- sqrtE(K'/K) . e(K) . w^{sum wt K}, sign reported.

struct IsotropicReduceReport {
  bool ok = false;
  int sign = 0;  // +1 or -1: the orientation sign that matched
  RatFunW lhs, rhs;
};

// K is described by signed plane selections: entry (k, true) takes lambda_k,
// (k, false) takes lambda*_k; distinct planes only (split position).
inline IsotropicReduceReport isotropic_reduce_class_check(
    const QuadraticSpace& sp, const std::vector<std::pair<int, bool>>& K) {
  IsotropicReduceReport rep;
  std::vector<bool> used(sp.n, false);
  for (auto& [k, lam] : K) {
    if (k < 0 || k >= sp.n || used[k]) return rep;  // not in split position
    used[k] = true;
  }
  auto sqrt_euler = [&](const std::vector<int>& lam_wts) {
    RatFunW acc = RatFunW::constant(1);
    for (int a : lam_wts)
      acc = acc * (RatFunW::monomial(a) - RatFunW::monomial(-a));
    return acc;
  };
  std::vector<int> all;
  for (int k = 0; k < sp.n; ++k) all.push_back(sp.lam_wt[k]);
  rep.lhs = sqrt_euler(all);

  std::vector<int> reduced;
  for (int k = 0; k < sp.n; ++k)
    if (!used[k]) reduced.push_back(sp.lam_wt[k]);
  RatFunW rhs = sqrt_euler(reduced);
  int twist = 0;
  for (auto& [k, lam] : K) {
    int wt = lam ? sp.lam_wt[k] : -sp.lam_wt[k];
    rhs = rhs * (RatFunW::constant(1) - RatFunW::monomial(-2 * wt));  // e(K)
    twist += wt;
  }
  rhs = rhs * RatFunW::monomial(twist);  // sqrt(det K)
  rep.rhs = rhs;
  if (rep.lhs == rhs) {
    rep.ok = true;
    rep.sign = 1;
  } else if (rep.lhs == Rat(-1) * rhs) {
    rep.ok = true;
    rep.sign = -1;
  }
  return rep;
}

}  // namespace mfk
