#pragma once

// Exact scalars for the whole library: the Gaussian rationals Q(i).
// Components are GMP rationals, so arithmetic never overflows and
// equality is structural on reduced fractions.

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace mfk {

using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

struct Scalar {
  Rat re{0};
  Rat im{0};

  Scalar() = default;
  Scalar(long v) : re(v) {}                // NOLINT(google-explicit-constructor)
  Scalar(Rat v) : re(std::move(v)) {       // NOLINT(google-explicit-constructor)
    re.canonicalize();
  }
  Scalar(Rat a, Rat b) : re(std::move(a)), im(std::move(b)) {
    re.canonicalize();
    im.canonicalize();
  }

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(1); }
  static Scalar i() { return Scalar(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_one() const { return re == 1 && im == 0; }
  bool is_real() const { return im == 0; }

  Scalar operator-() const { return Scalar(-re, -im); }

  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Scalar& operator*=(const Scalar& o) {
    Rat a = re * o.re - im * o.im;
    Rat b = re * o.im + im * o.re;
    re = std::move(a);
    im = std::move(b);
    return *this;
  }

  Scalar conj() const { return Scalar(re, -im); }
  Rat norm() const { return re * re + im * im; }

  Scalar inv() const {
    Rat n = norm();
    if (n == 0) throw std::domain_error("Scalar: division by zero");
    return Scalar(re / n, -im / n);
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inv(); }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar pow(long k) const {
    if (k < 0) return inv().pow(-k);
    Scalar acc = one(), base = *this;
    while (k > 0) {
      if (k & 1) acc *= base;
      base *= base;
      k >>= 1;
    }
    return acc;
  }

  // Canonical printing: "0", "3/2", "i", "-i", "2*i", "1+i", "1-2/3*i".
  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    if (re != 0) out << rat_str(re);
    if (im != 0) {
      if (re != 0 && im > 0) out << "+";
      if (im == 1)
        out << "i";
      else if (im == -1)
        out << "-i";
      else
        out << rat_str(im) << "*i";
    }
    return out.str();
  }
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace mfk
