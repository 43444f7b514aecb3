#pragma once

// Rational functions in the half-weight variable w = t^(1/2) over Q,
// canonical form w^shift * num(w)/den(w) with num(0), den(0) nonzero,
// gcd(num, den) = 1 and den(0) = 1. Equivariant characters are Laurent
// polynomials (den = 1); localisation introduces genuine denominators.

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mfk/rational.hpp"

namespace mfk {

struct UPolyQ {
  std::vector<Rat> c;  // c[k] is the coefficient of w^k

  UPolyQ() = default;
  explicit UPolyQ(std::vector<Rat> cc) : c(std::move(cc)) { trim(); }
  static UPolyQ constant(const Rat& r) { return UPolyQ({r}); }
  static UPolyQ one() { return constant(1); }

  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int deg() const { return static_cast<int>(c.size()) - 1; }
  int low() const {  // order of vanishing at 0
    for (size_t k = 0; k < c.size(); ++k)
      if (c[k] != 0) return static_cast<int>(k);
    return -1;
  }

  friend UPolyQ operator+(const UPolyQ& a, const UPolyQ& b) {
    UPolyQ r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t k = 0; k < r.c.size(); ++k) {
      if (k < a.c.size()) r.c[k] += a.c[k];
      if (k < b.c.size()) r.c[k] += b.c[k];
    }
    r.trim();
    return r;
  }
  friend UPolyQ operator-(const UPolyQ& a, const UPolyQ& b) {
    UPolyQ r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (size_t k = 0; k < r.c.size(); ++k) {
      if (k < a.c.size()) r.c[k] += a.c[k];
      if (k < b.c.size()) r.c[k] -= b.c[k];
    }
    r.trim();
    return r;
  }
  friend UPolyQ operator*(const UPolyQ& a, const UPolyQ& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UPolyQ r;
    r.c.assign(a.c.size() + b.c.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (a.c[i] == 0) continue;
      for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    }
    r.trim();
    return r;
  }
  friend bool operator==(const UPolyQ& a, const UPolyQ& b) { return a.c == b.c; }

  // division with remainder
  static void divmod(const UPolyQ& a, const UPolyQ& b, UPolyQ& q, UPolyQ& r) {
    if (b.is_zero()) throw std::domain_error("UPolyQ: division by zero");
    q = UPolyQ();
    r = a;
    while (!r.is_zero() && r.deg() >= b.deg()) {
      int k = r.deg() - b.deg();
      Rat f = r.c.back() / b.c.back();
      if (static_cast<int>(q.c.size()) < k + 1) q.c.resize(k + 1);
      q.c[k] += f;
      for (size_t j = 0; j < b.c.size(); ++j) r.c[k + j] -= f * b.c[j];
      r.trim();
    }
    q.trim();
  }

  static UPolyQ gcd(UPolyQ a, UPolyQ b) {
    while (!b.is_zero()) {
      UPolyQ q, r;
      divmod(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.is_zero()) {
      Rat lead = a.c.back();
      for (auto& x : a.c) x /= lead;
    }
    return a;
  }

  Rat eval_one() const {
    Rat s(0);
    for (auto& x : c) s += x;
    return s;
  }
};

class RatFunW {
 public:
  RatFunW() : num_(), den_(UPolyQ::one()) {}
  RatFunW(int shift, UPolyQ num, UPolyQ den) : shift_(shift), num_(std::move(num)), den_(std::move(den)) {
    normalise();
  }
  static RatFunW zero() { return RatFunW(); }
  static RatFunW constant(const Rat& r) { return RatFunW(0, UPolyQ::constant(r), UPolyQ::one()); }
  static RatFunW monomial(int wexp, const Rat& coeff = Rat(1)) {
    return RatFunW(wexp, UPolyQ::constant(coeff), UPolyQ::one());
  }

  bool is_zero() const { return num_.is_zero(); }
  bool is_laurent() const { return den_.deg() == 0; }
  int shift() const { return shift_; }
  const UPolyQ& num() const { return num_; }
  const UPolyQ& den() const { return den_; }

  friend RatFunW operator+(const RatFunW& a, const RatFunW& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int s = std::min(a.shift_, b.shift_);
    UPolyQ na = shift_up(a.num_, a.shift_ - s) * b.den_;
    UPolyQ nb = shift_up(b.num_, b.shift_ - s) * a.den_;
    return RatFunW(s, na + nb, a.den_ * b.den_);
  }
  friend RatFunW operator-(const RatFunW& a, const RatFunW& b) { return a + (Rat(-1) * b); }
  friend RatFunW operator*(const RatFunW& a, const RatFunW& b) {
    return RatFunW(a.shift_ + b.shift_, a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFunW operator*(const Rat& r, const RatFunW& a) {
    UPolyQ n = a.num_;
    for (auto& x : n.c) x *= r;
    n.trim();
    return RatFunW(a.shift_, n, a.den_);
  }
  friend RatFunW operator/(const RatFunW& a, const RatFunW& b) {
    if (b.is_zero()) throw std::domain_error("RatFunW: division by zero");
    return RatFunW(a.shift_ - b.shift_, a.num_ * b.den_, a.den_ * b.num_);
  }
  friend bool operator==(const RatFunW& a, const RatFunW& b) {
    return a.shift_ == b.shift_ && a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunW& a, const RatFunW& b) { return !(a == b); }

  Rat eval_one() const {  // w = 1 (forgets equivariance); den(1) must not vanish
    Rat d = den_.eval_one();
    if (d == 0) throw std::domain_error("RatFunW: pole at w = 1");
    return num_.eval_one() / d;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    // fold the shift into numerator (>=0) or denominator (<0)
    UPolyQ n = shift_ >= 0 ? shift_up(num_, shift_) : num_;
    UPolyQ d = shift_ >= 0 ? den_ : shift_up(den_, -shift_);
    if (d.deg() == 0 && d.c[0] == 1) return poly_str(n);
    return "(" + poly_str(n) + ")/(" + poly_str(d) + ")";
  }

 private:
  static UPolyQ shift_up(const UPolyQ& p, int k) {
    if (p.is_zero() || k == 0) return p;
    UPolyQ r;
    r.c.assign(p.c.size() + k, Rat(0));
    for (size_t j = 0; j < p.c.size(); ++j) r.c[j + k] = p.c[j];
    return r;
  }

  static std::string poly_str(const UPolyQ& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = p.deg(); k >= 0; --k) {
      const Rat& c = p.c[k];
      if (c == 0) continue;
      Rat a = c > 0 ? c : Rat(-c);
      if (first) {
        if (c < 0) out << "-";
        first = false;
      } else {
        out << (c < 0 ? " - " : " + ");
      }
      if (k == 0 || a != 1) out << rat_str(a);
      if (k > 0) {
        if (a != 1) out << "*";
        out << "w";
        if (k > 1) out << "^" << k;
      }
    }
    return out.str();
  }

  void normalise() {
    if (den_.is_zero()) throw std::domain_error("RatFunW: zero denominator");
    if (num_.is_zero()) {
      shift_ = 0;
      den_ = UPolyQ::one();
      return;
    }
    int ln = num_.low(), ld = den_.low();
    num_.c.erase(num_.c.begin(), num_.c.begin() + ln);
    den_.c.erase(den_.c.begin(), den_.c.begin() + ld);
    shift_ += ln - ld;
    UPolyQ g = UPolyQ::gcd(num_, den_);
    if (g.deg() > 0) {
      UPolyQ q, r;
      UPolyQ::divmod(num_, g, q, r);
      num_ = q;
      UPolyQ::divmod(den_, g, q, r);
      den_ = q;
    }
    Rat d0 = den_.c[0];
    for (auto& x : num_.c) x /= d0;
    for (auto& x : den_.c) x /= d0;
  }

  int shift_ = 0;
  UPolyQ num_, den_;
};

// Laurent polynomial built by accumulating w^k terms (characters).
struct LaurentBuilder {
  std::map<int, Rat> terms;

  void add(int wexp, const Rat& coeff = Rat(1)) {
    auto it = terms.find(wexp);
    if (it == terms.end())
      terms.emplace(wexp, coeff);
    else {
      it->second += coeff;
      if (it->second == 0) terms.erase(it);
    }
  }

  RatFunW build() const {
    if (terms.empty()) return RatFunW::zero();
    int lo = terms.begin()->first, hi = terms.rbegin()->first;
    UPolyQ p;
    p.c.assign(hi - lo + 1, Rat(0));
    for (auto& [k, c] : terms) p.c[k - lo] = c;
    return RatFunW(lo, p, UPolyQ::one());
  }
};

}  // namespace mfk
