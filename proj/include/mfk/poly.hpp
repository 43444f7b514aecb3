#pragma once

// Exact multivariate polynomials over Q(i).
//
// Terms live in a std::map keyed by exponent vector (plain lexicographic
// vector comparison), which makes every polynomial canonical independent
// of any term order; leading terms w.r.t. a TermOrder are computed on
// demand. No zero coefficient is ever stored.

#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mfk/rational.hpp"
#include "mfk/ring.hpp"

namespace mfk {

class Poly {
 public:
  using Terms = std::map<Mono, Scalar>;

  Poly() = default;
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

  static Poly zero(const RingPtr& r) { return Poly(r); }
  static Poly constant(const RingPtr& r, const Scalar& c) {
    Poly p(r);
    p.add_term(mono_one(r->arity()), c);
    return p;
  }
  static Poly one(const RingPtr& r) { return constant(r, Scalar::one()); }
  static Poly var(const RingPtr& r, int k) {
    if (k < 0 || static_cast<size_t>(k) >= r->arity()) throw std::out_of_range("Poly::var");
    Poly p(r);
    Mono m = mono_one(r->arity());
    m[k] = 1;
    p.add_term(m, Scalar::one());
    return p;
  }
  static Poly var(const RingPtr& r, const std::string& name) {
    int k = r->index_of(name);
    if (k < 0) throw std::invalid_argument("Poly::var: no variable " + name + " in " + r->str());
    return var(r, k);
  }
  static Poly term(const RingPtr& r, const Mono& m, const Scalar& c) {
    Poly p(r);
    p.add_term(m, c);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t num_terms() const { return terms_.size(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_deg(terms_.begin()->first) == 0);
  }
  Scalar constant_value() const {
    if (terms_.empty()) return Scalar::zero();
    if (!is_constant()) throw std::domain_error("Poly: not a constant");
    return terms_.begin()->second;
  }

  // Is this c * x_k for a single variable? Returns k, else -1.
  int as_single_variable() const {
    if (terms_.size() != 1) return -1;
    const Mono& m = terms_.begin()->first;
    int k = -1;
    for (size_t j = 0; j < m.size(); ++j) {
      if (m[j] == 1 && k < 0)
        k = static_cast<int>(j);
      else if (m[j] != 0)
        return -1;
    }
    return k;
  }

  void add_term(const Mono& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int total_degree() const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, mono_deg(m));
    return d;  // -1 for the zero polynomial
  }

  // Weight homogeneity in w-units. Returns the common weight, or nullopt.
  std::optional<int> wweight() const {
    std::optional<int> w;
    for (auto& [m, c] : terms_) {
      int wm = mono_wweight(*ring_, m);
      if (!w)
        w = wm;
      else if (*w != wm)
        return std::nullopt;
    }
    return w ? w : std::optional<int>(0);
  }

  Poly operator-() const {
    Poly q(*this);
    for (auto& [m, c] : q.terms_) c = -c;
    return q;
  }

  Poly& operator+=(const Poly& o) {
    check_ring(o);
    for (auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_ring(o);
    for (auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_ring(b);
    Poly out(a.ring_ ? a.ring_ : b.ring_);
    for (auto& [ma, ca] : a.terms_)
      for (auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
    return out;
  }

  friend Poly operator*(const Scalar& c, Poly p) {
    if (c.is_zero()) return Poly(p.ring_);
    for (auto& [m, v] : p.terms_) v *= c;
    return p;
  }
  friend Poly operator*(Poly p, const Scalar& c) { return c * std::move(p); }

  Poly mul_mono(const Mono& m, const Scalar& c) const {
    Poly out(ring_);
    if (c.is_zero()) return out;
    for (auto& [mm, cc] : terms_) out.terms_.emplace(mono_mul(mm, m), cc * c);
    return out;
  }

  Poly pow(int k) const {
    if (k < 0) throw std::domain_error("Poly::pow: negative exponent");
    Poly acc = one(ring_), base = *this;
    while (k > 0) {
      if (k & 1) acc = acc * base;
      base = base * base;
      k >>= 1;
    }
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.terms_ == b.terms_;  // rings assumed compatible by construction
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::pair<Mono, Scalar> leading_term(const TermOrder& ord) const {
    if (terms_.empty()) throw std::domain_error("Poly: leading term of 0");
    auto best = terms_.begin();
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
      if (ord.less(best->first, it->first)) best = it;
    return {best->first, best->second};
  }

  // Ring morphism determined by images of the variables (all in one target ring).
  Poly substitute(const std::vector<Poly>& images) const {
    if (images.size() != ring_->arity()) throw std::invalid_argument("substitute: arity mismatch");
    RingPtr target = images.empty() ? ring_ : images.front().ring();
    for (auto& im : images)
      if (*im.ring() != *target) throw std::invalid_argument("substitute: mixed target rings");
    Poly out(target);
    for (auto& [m, c] : terms_) {
      Poly t = Poly::constant(target, c);
      for (size_t k = 0; k < m.size(); ++k)
        if (m[k]) t = t * images[k].pow(m[k]);
      out += t;
    }
    return out;
  }

  // Convenience: map-by-name ring morphism. Variables missing from the
  // target are allowed as long as they do not occur in any term.
  Poly into_ring(const RingPtr& target) const {
    std::vector<int> image_idx(ring_->arity());
    for (size_t v = 0; v < ring_->arity(); ++v) image_idx[v] = target->index_of(ring_->vars[v]);
    Poly out(target);
    for (auto& [m, c] : terms_) {
      Mono mm = mono_one(target->arity());
      for (size_t v = 0; v < m.size(); ++v) {
        if (!m[v]) continue;
        if (image_idx[v] < 0)
          throw std::invalid_argument("into_ring: target lacks variable " + ring_->vars[v]);
        mm[image_idx[v]] += m[v];
      }
      out.add_term(mm, c);
    }
    return out;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    // Print in descending storage order so higher-degree-ish terms lead.
    std::ostringstream out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string mono = mono_str(m);
      std::string coef;
      bool neg = false;
      if (mono.empty()) {
        coef = c.str();
      } else if (c.is_one()) {
        coef = "";
      } else if ((-c).is_one()) {
        coef = "";
        neg = true;
      } else {
        coef = c.str();
        if (!c.is_real() && c.re != 0) coef = "(" + coef + ")";
      }
      std::string piece = coef;
      if (!mono.empty()) {
        if (!coef.empty()) piece += "*";
        piece += mono;
      }
      if (first) {
        if (neg) out << "-";
        out << piece;
        first = false;
      } else {
        if (neg) {
          out << " - " << piece;
        } else if (!piece.empty() && piece[0] == '-') {
          out << " - " << piece.substr(1);
        } else {
          out << " + " << piece;
        }
      }
    }
    return out.str();
  }

 private:
  void check_ring(const Poly& o) const {
    if (ring_ && o.ring_ && *ring_ != *o.ring_)
      throw std::invalid_argument("Poly: ring mismatch (" + ring_->str() + " vs " + o.ring_->str() + ")");
  }

  std::string mono_str(const Mono& m) const {
    std::string s;
    for (size_t k = 0; k < m.size(); ++k) {
      if (!m[k]) continue;
      if (!s.empty()) s += "*";
      s += ring_->vars[k];
      if (m[k] != 1) s += "^" + std::to_string(m[k]);
    }
    return s;
  }

  RingPtr ring_;
  Terms terms_;
};

// ---------------------------------------------------------------------------
// A small recursive-descent parser for polynomial expressions. Accepts
// +, -, *, ^, parentheses, integer and a/b rational literals, the imaginary
// unit `i`, and the ring's variable names. Used by tests and the CLI DSL.

class PolyParser {
 public:
  PolyParser(RingPtr ring, std::string src) : ring_(std::move(ring)), src_(std::move(src)) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("poly parse error at column " + std::to_string(pos_ + 1) + ": " + msg +
                                " in \"" + src_ + "\"");
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  Poly expr() {
    Poly acc = eat('-') ? -term() : term();
    for (;;) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        acc = acc * factor();
      } else {
        char c = peek();
        // implicit multiplication: "2x", "x y", "3(x+1)"
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
          acc = acc * factor();
        } else {
          return acc;
        }
      }
    }
  }

  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      skip_ws();
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent expected");
      base = base.pow(std::stoi(src_.substr(start, pos_ - start)));
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("')' expected");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string num = src_.substr(start, pos_ - start);
      if (pos_ < src_.size() && src_[pos_] == '/') {
        size_t save = pos_++;
        size_t dstart = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (dstart == pos_) {
          pos_ = save;  // "/" belongs to something else
        } else {
          num += "/" + src_.substr(dstart, pos_ - dstart);
        }
      }
      Rat r(num);
      r.canonicalize();
      return Poly::constant(ring_, Scalar(r));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' || src_[pos_] == '\''))
        ++pos_;
      std::string name = src_.substr(start, pos_ - start);
      if (name == "i") return Poly::constant(ring_, Scalar::i());
      int k = ring_->index_of(name);
      if (k < 0) fail("unknown variable '" + name + "' in " + ring_->str());
      return Poly::var(ring_, k);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  RingPtr ring_;
  std::string src_;
  size_t pos_ = 0;
};

inline Poly parse_poly(const RingPtr& ring, const std::string& src) { return PolyParser(ring, src).parse(); }

}  // namespace mfk
