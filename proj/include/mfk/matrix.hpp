#pragma once

// Dense matrices over Poly and over Scalar, plus the exact linear algebra
// (rref, kernels, solving) everything downstream leans on. Desk scale:
// dimensions stay small, so dense Gaussian elimination over Q(i) is fine.

#include <cassert>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "mfk/poly.hpp"

namespace mfk {

class PolyMat {
 public:
  PolyMat() = default;
  PolyMat(RingPtr ring, size_t rows, size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), a_(rows * cols, Poly(ring_)) {}

  static PolyMat identity(const RingPtr& r, size_t n) {
    PolyMat m(r, n, n);
    for (size_t k = 0; k < n; ++k) m.at(k, k) = Poly::one(r);
    return m;
  }
  static PolyMat scalar_diag(const RingPtr& r, size_t n, const Poly& p) {
    PolyMat m(r, n, n);
    for (size_t k = 0; k < n; ++k) m.at(k, k) = p;
    return m;
  }

  const RingPtr& ring() const { return ring_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  Poly& at(size_t i, size_t j) { return a_.at(i * cols_ + j); }
  const Poly& at(size_t i, size_t j) const { return a_.at(i * cols_ + j); }

  bool is_zero() const {
    for (auto& p : a_)
      if (!p.is_zero()) return false;
    return true;
  }

  PolyMat operator-() const {
    PolyMat m(*this);
    for (auto& p : m.a_) p = -p;
    return m;
  }
  friend PolyMat operator+(PolyMat a, const PolyMat& b) {
    a.check_shape(b);
    for (size_t k = 0; k < a.a_.size(); ++k) a.a_[k] += b.a_[k];
    return a;
  }
  friend PolyMat operator-(PolyMat a, const PolyMat& b) {
    a.check_shape(b);
    for (size_t k = 0; k < a.a_.size(); ++k) a.a_[k] -= b.a_[k];
    return a;
  }
  friend PolyMat operator*(const PolyMat& a, const PolyMat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("PolyMat: shape mismatch in product");
    PolyMat c(a.ring_ ? a.ring_ : b.ring_, a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) {
          if (b.at(k, j).is_zero()) continue;
          c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
      }
    return c;
  }
  friend PolyMat operator*(const Poly& p, PolyMat m) {
    for (auto& e : m.a_) e = p * e;
    return m;
  }
  friend PolyMat operator*(const Scalar& c, PolyMat m) {
    for (auto& e : m.a_) e = c * e;
    return m;
  }
  friend bool operator==(const PolyMat& a, const PolyMat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }
  friend bool operator!=(const PolyMat& a, const PolyMat& b) { return !(a == b); }

  PolyMat transpose() const {
    PolyMat m(ring_, cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
    return m;
  }

  PolyMat select_rows(const std::vector<int>& idx) const {
    PolyMat m(ring_, idx.size(), cols_);
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(idx[i], j);
    return m;
  }

  static PolyMat vcat(const PolyMat& a, const PolyMat& b) {
    if (a.cols_ != b.cols_) throw std::invalid_argument("vcat: column mismatch");
    PolyMat m(a.ring_ ? a.ring_ : b.ring_, a.rows_ + b.rows_, a.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
    for (size_t i = 0; i < b.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) m.at(a.rows_ + i, j) = b.at(i, j);
    return m;
  }
  static PolyMat hcat(const PolyMat& a, const PolyMat& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hcat: row mismatch");
    PolyMat m(a.ring_ ? a.ring_ : b.ring_, a.rows_, a.cols_ + b.cols_);
    for (size_t i = 0; i < a.rows_; ++i) {
      for (size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a.at(i, j);
      for (size_t j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b.at(i, j);
    }
    return m;
  }
  // [[A, B], [C, D]]
  static PolyMat block2(const PolyMat& a, const PolyMat& b, const PolyMat& c, const PolyMat& d) {
    return vcat(hcat(a, b), hcat(c, d));
  }

  static PolyMat kron(const PolyMat& a, const PolyMat& b) {
    PolyMat m(a.ring_ ? a.ring_ : b.ring_, a.rows_ * b.rows_, a.cols_ * b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t j = 0; j < a.cols_; ++j) {
        if (a.at(i, j).is_zero()) continue;
        for (size_t p = 0; p < b.rows_; ++p)
          for (size_t q = 0; q < b.cols_; ++q)
            m.at(i * b.rows_ + p, j * b.cols_ + q) = a.at(i, j) * b.at(p, q);
      }
    return m;
  }

  PolyMat map(const std::function<Poly(const Poly&)>& f, RingPtr target = nullptr) const {
    PolyMat m(target ? target : ring_, rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) m.at(i, j) = f(at(i, j));
    return m;
  }

  PolyMat into_ring(const RingPtr& target) const {
    return map([&](const Poly& p) { return p.into_ring(target); }, target);
  }

  // Laplace expansion; fine for the tiny minors we take.
  Poly det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: not square");
    if (rows_ == 0) return Poly::one(ring_);
    if (rows_ == 1) return at(0, 0);
    Poly d(ring_);
    for (size_t j = 0; j < cols_; ++j) {
      if (at(0, j).is_zero()) continue;
      PolyMat sub(ring_, rows_ - 1, cols_ - 1);
      for (size_t i = 1; i < rows_; ++i) {
        size_t jj = 0;
        for (size_t k = 0; k < cols_; ++k) {
          if (k == j) continue;
          sub.at(i - 1, jj++) = at(i, k);
        }
      }
      Poly c = at(0, j) * sub.det();
      d += (j % 2 == 0) ? c : -c;
    }
    return d;
  }

  std::string str() const {
    std::ostringstream out;
    out << "[";
    for (size_t i = 0; i < rows_; ++i) {
      if (i) out << ",";
      out << "[";
      for (size_t j = 0; j < cols_; ++j) {
        if (j) out << ",";
        out << at(i, j).str();
      }
      out << "]";
    }
    out << "]";
    return out.str();
  }

 private:
  void check_shape(const PolyMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("PolyMat: shape mismatch");
  }

  RingPtr ring_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Poly> a_;
};

// ---------------------------------------------------------------------------
// Exact linear algebra over Q(i).

class QiMat {
 public:
  QiMat() = default;
  QiMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  Scalar& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  const Scalar& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  static QiMat identity(size_t n) {
    QiMat m(n, n);
    for (size_t k = 0; k < n; ++k) m.at(k, k) = Scalar::one();
    return m;
  }

  friend QiMat operator*(const QiMat& a, const QiMat& b) {
    assert(a.cols_ == b.rows_);
    QiMat c(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        if (a.at(i, k).is_zero()) continue;
        for (size_t j = 0; j < b.cols_; ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
      }
    return c;
  }

  // In-place reduced row echelon form; returns pivot columns.
  std::vector<size_t> rref() {
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols_ && r < rows_; ++c) {
      size_t p = r;
      while (p < rows_ && at(p, c).is_zero()) ++p;
      if (p == rows_) continue;
      if (p != r)
        for (size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
      Scalar inv = at(r, c).inv();
      for (size_t j = 0; j < cols_; ++j) at(r, j) *= inv;
      for (size_t i = 0; i < rows_; ++i) {
        if (i == r || at(i, c).is_zero()) continue;
        Scalar f = at(i, c);
        for (size_t j = 0; j < cols_; ++j) at(i, j) -= f * at(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  size_t rank() const {
    QiMat m(*this);
    return m.rref().size();
  }

  // Basis of the right kernel, one column vector per basis element.
  std::vector<std::vector<Scalar>> kernel() const {
    QiMat m(*this);
    auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> out;
    for (size_t c = 0; c < cols_; ++c) {
      if (is_pivot[c]) continue;
      std::vector<Scalar> v(cols_);
      v[c] = Scalar::one();
      for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, c);
      out.push_back(std::move(v));
    }
    return out;
  }

  // One solution of A x = b, if any.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const {
    assert(b.size() == rows_);
    QiMat aug(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
      for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
      aug.at(i, cols_) = b[i];
    }
    auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;  // inconsistent
    std::vector<Scalar> x(cols_);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
  }

 private:
  size_t rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

}  // namespace mfk
