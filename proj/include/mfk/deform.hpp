#pragma once

// Affine deformation to the normal cone: extended Rees presentations
// J = ((lam T_i - g_i) : lam^infty), central fibres, and certified lifts
// of f in I^2 to the function f/lam^2.
//
// Generators may be zero (a cone embedded in a larger trivial bundle);
// the saturation then forces the corresponding cone coordinate to vanish.

#include <cctype>
#include <optional>
#include <string>
#include <vector>

#include "mfk/groebner.hpp"

namespace mfk {

struct ReesPresentation {
  RingPtr base_ring;
  std::vector<Poly> gens;          // generators of I (zeros allowed)
  RingPtr rees_ring;               // base vars + lam + cone vars
  std::string lam;                 // deformation variable name
  std::vector<std::string> tvars;  // one cone variable per generator
  Ideal J;                         // lam-saturated

  Poly lam_poly() const { return Poly::var(rees_ring, lam); }
};

namespace detail {

// Cone variable naming: a generator which is a plain variable x gets the
// cone coordinate X; everything else gets T<k>. Collisions fall back to T<k>.
inline std::vector<std::string> cone_var_names(const RingPtr& R, const std::vector<Poly>& gens) {
  std::vector<std::string> names;
  auto taken = [&](const std::string& s) {
    if (R->index_of(s) >= 0) return true;
    for (auto& n : names)
      if (n == s) return true;
    return false;
  };
  for (size_t k = 0; k < gens.size(); ++k) {
    std::string name;
    int v = gens[k].is_zero() ? -1 : gens[k].as_single_variable();
    if (v >= 0 && gens[k].terms().begin()->second.is_one()) {
      std::string up = R->vars[v];
      up[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(up[0])));
      if (up != R->vars[v] && !taken(up)) name = up;
    }
    if (name.empty()) {
      name = "T" + std::to_string(k + 1);
      while (taken(name)) name += "x";
    }
    names.push_back(name);
  }
  return names;
}

}  // namespace detail

// The extended Rees presentation of the deformation to the normal cone of
// V(I) inside Spec of the base ring.
inline ReesPresentation rees_presentation(const RingPtr& R, const std::vector<Poly>& gens,
                                          const Budget& budget = default_budget()) {
  // rejects the unit ideal (the deformation needs a proper centre)
  {
    std::vector<Poly> nz;
    for (auto& g : gens)
      if (!g.is_zero()) nz.push_back(g);
    if (!nz.empty() && buchberger(Ideal(R, nz), TermOrder::grevlex(), false, budget).is_unit())
      throw std::invalid_argument("rees_presentation: ideal is the unit ideal");
  }
  ReesPresentation out;
  out.base_ring = R;
  out.gens = gens;
  out.lam = "lam";
  while (R->index_of(out.lam) >= 0) out.lam += "_";
  out.tvars = detail::cone_var_names(R, gens);

  std::vector<std::string> vars = {out.lam};
  std::vector<int> wts = {0};
  for (size_t k = 0; k < gens.size(); ++k) {
    vars.push_back(out.tvars[k]);
    int w = 0;
    if (!gens[k].is_zero()) {
      auto ww = gens[k].wweight();
      if (!ww) throw std::invalid_argument("rees_presentation: generator not weight homogeneous");
      w = *ww;
    }
    wts.push_back(w);
  }
  out.rees_ring = extend_ring(R, vars, wts);

  std::vector<Poly> pre;
  Poly lam = Poly::var(out.rees_ring, out.lam);
  for (size_t k = 0; k < gens.size(); ++k)
    pre.push_back(lam * Poly::var(out.rees_ring, out.tvars[k]) - gens[k].into_ring(out.rees_ring));
  out.J = saturate(Ideal(out.rees_ring, pre), lam, budget);
  return out;
}

struct ConePresentation {
  RingPtr cone_ring;  // base vars + cone vars
  Ideal ideal;        // I_C = (J + (lam)) with lam eliminated
  std::vector<std::string> tvars;
};

inline ConePresentation central_fibre(const ReesPresentation& R, const Budget& budget = default_budget()) {
  std::vector<Poly> gens = R.J.gens;
  gens.push_back(R.lam_poly());
  Ideal cut = eliminate(Ideal(R.rees_ring, gens), {R.lam}, budget);
  ConePresentation out;
  out.cone_ring = cut.ring;
  out.ideal = cut;
  out.tvars = R.tvars;
  return out;
}

struct LiftedPotential {
  Poly q;                                   // on the Rees ring: lam^2 q = f mod J
  Poly q_cone;                              // the same polynomial on the cone ring
  std::vector<std::vector<Poly>> certificate;  // f = sum c_ij g_i g_j on the base
};

// f in I^2 lifts to q = sum c_ij T_i T_j with lam^2 q = f modulo J;
// the identity is verified by exact reduction.
inline LiftedPotential lift_potential(const Poly& f, const ReesPresentation& R,
                                      const Budget& budget = default_budget()) {
  std::vector<Poly> nz;
  std::vector<size_t> pos;
  for (size_t k = 0; k < R.gens.size(); ++k)
    if (!R.gens[k].is_zero()) {
      nz.push_back(R.gens[k]);
      pos.push_back(k);
    }
  auto cert = square_membership_certificate(f, Ideal(R.base_ring, nz), budget);
  if (!cert) throw std::invalid_argument("lift_potential: f does not lie in I^2");

  LiftedPotential out;
  size_t m = R.gens.size();
  out.certificate.assign(m, std::vector<Poly>(m, Poly(R.base_ring)));
  for (size_t a = 0; a < nz.size(); ++a)
    for (size_t b = 0; b < nz.size(); ++b) out.certificate[pos[a]][pos[b]] = (*cert)[a][b];

  Poly q(R.rees_ring);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) {
      const Poly& c = out.certificate[a][b];
      if (c.is_zero()) continue;
      q += c.into_ring(R.rees_ring) * Poly::var(R.rees_ring, R.tvars[a]) *
           Poly::var(R.rees_ring, R.tvars[b]);
    }
  out.q = q;

  // verify lam^2 q - f = 0 modulo J
  auto gb = buchberger(R.J, TermOrder::grevlex(), false, budget);
  Poly check = R.lam_poly() * R.lam_poly() * q - f.into_ring(R.rees_ring);
  if (!gb.contains(check)) throw std::logic_error("lift_potential: lam^2 q != f mod J");

  auto C = central_fibre(R, budget);
  out.q_cone = q.into_ring(C.cone_ring);
  return out;
}

}  // namespace mfk
