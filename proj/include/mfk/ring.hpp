#pragma once

// Polynomial rings, monomials and term orders.
//
// A Ring is a list of named variables, each carrying an integer torus
// weight in w-units (w = t^(1/2); a variable of t-weight a stores 2a).
// Weight 0 everywhere means the non-equivariant case. Rings are value
// types shared through shared_ptr; equality is structural.

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfk {

using Mono = std::vector<int>;  // exponent vector, arity fixed by the ring

struct Ring {
  std::vector<std::string> vars;
  std::vector<int> wweights;  // per-variable weight in w-units

  Ring() = default;
  explicit Ring(std::vector<std::string> v) : vars(std::move(v)), wweights(vars.size(), 0) {}
  Ring(std::vector<std::string> v, std::vector<int> w) : vars(std::move(v)), wweights(std::move(w)) {
    if (vars.size() != wweights.size()) throw std::invalid_argument("Ring: weight arity mismatch");
  }

  size_t arity() const { return vars.size(); }

  int index_of(const std::string& name) const {
    for (size_t k = 0; k < vars.size(); ++k)
      if (vars[k] == name) return static_cast<int>(k);
    return -1;
  }

  bool operator==(const Ring& o) const { return vars == o.vars && wweights == o.wweights; }
  bool operator!=(const Ring& o) const { return !(*this == o); }

  std::string str() const {
    std::string s = "Q(i)[";
    for (size_t k = 0; k < vars.size(); ++k) {
      if (k) s += ",";
      s += vars[k];
    }
    s += "]";
    return s;
  }
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> vars) {
  return std::make_shared<const Ring>(std::move(vars));
}
inline RingPtr make_ring(std::vector<std::string> vars, std::vector<int> wweights) {
  return std::make_shared<const Ring>(std::move(vars), std::move(wweights));
}

// Append fresh variables; weights default to 0.
inline RingPtr extend_ring(const RingPtr& r, const std::vector<std::string>& more,
                           const std::vector<int>& wts = {}) {
  auto vars = r->vars;
  auto w = r->wweights;
  for (size_t k = 0; k < more.size(); ++k) {
    if (r->index_of(more[k]) >= 0) throw std::invalid_argument("extend_ring: duplicate variable " + more[k]);
    vars.push_back(more[k]);
    w.push_back(k < wts.size() ? wts[k] : 0);
  }
  return make_ring(std::move(vars), std::move(w));
}

inline int mono_deg(const Mono& m) { return std::accumulate(m.begin(), m.end(), 0); }

inline int mono_wweight(const Ring& r, const Mono& m) {
  int s = 0;
  for (size_t k = 0; k < m.size(); ++k) s += m[k] * r.wweights[k];
  return s;
}

inline Mono mono_one(size_t arity) { return Mono(arity, 0); }

inline Mono mono_mul(const Mono& a, const Mono& b) {
  Mono c(a);
  for (size_t k = 0; k < c.size(); ++k) c[k] += b[k];
  return c;
}

inline bool mono_divides(const Mono& a, const Mono& b) {  // a | b
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

inline Mono mono_div(const Mono& b, const Mono& a) {  // b / a
  Mono c(b);
  for (size_t k = 0; k < c.size(); ++k) c[k] -= a[k];
  return c;
}

inline Mono mono_lcm(const Mono& a, const Mono& b) {
  Mono c(a);
  for (size_t k = 0; k < c.size(); ++k) c[k] = std::max(c[k], b[k]);
  return c;
}

inline bool mono_coprime(const Mono& a, const Mono& b) {
  for (size_t k = 0; k < a.size(); ++k)
    if (a[k] && b[k]) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Term orders. Total orders on monomials compatible with multiplication,
// with 1 minimal: lex, grevlex and a block elimination order (front block
// compared first, grevlex within each block).

struct TermOrder {
  enum class Kind { Lex, Grevlex, Block } kind = Kind::Grevlex;
  int front = 0;  // size of the front (eliminated) block for Kind::Block

  static TermOrder lex() { return {Kind::Lex, 0}; }
  static TermOrder grevlex() { return {Kind::Grevlex, 0}; }
  static TermOrder block(int front_block_size) { return {Kind::Block, front_block_size}; }

  // -1 : a < b, 0 : equal, +1 : a > b
  int cmp(const Mono& a, const Mono& b) const {
    switch (kind) {
      case Kind::Lex:
        return cmp_lex(a, b, 0, a.size());
      case Kind::Grevlex:
        return cmp_grevlex(a, b, 0, a.size());
      case Kind::Block: {
        size_t f = static_cast<size_t>(front);
        if (int c = cmp_grevlex(a, b, 0, std::min(f, a.size()))) return c;
        return cmp_grevlex(a, b, std::min(f, a.size()), a.size());
      }
    }
    return 0;
  }

  bool less(const Mono& a, const Mono& b) const { return cmp(a, b) < 0; }

  std::string str() const {
    switch (kind) {
      case Kind::Lex:
        return "lex";
      case Kind::Grevlex:
        return "grevlex";
      case Kind::Block:
        return "block(" + std::to_string(front) + ")";
    }
    return "?";
  }

 private:
  static int cmp_lex(const Mono& a, const Mono& b, size_t lo, size_t hi) {
    for (size_t k = lo; k < hi; ++k) {
      if (a[k] != b[k]) return a[k] > b[k] ? 1 : -1;
    }
    return 0;
  }
  static int cmp_grevlex(const Mono& a, const Mono& b, size_t lo, size_t hi) {
    int da = 0, db = 0;
    for (size_t k = lo; k < hi; ++k) {
      da += a[k];
      db += b[k];
    }
    if (da != db) return da > db ? 1 : -1;
    for (size_t k = hi; k-- > lo;) {
      if (a[k] != b[k]) return a[k] < b[k] ? 1 : -1;  // smaller exponent in the last place wins
    }
    return 0;
  }
};

}  // namespace mfk
