#include <catch2/catch_amalgamated.hpp>

#include "mfk/deform.hpp"

using namespace mfk;

TEST_CASE("rees presentation of the origin in the plane") {
  auto R = make_ring({"x", "y"});
  auto rp = rees_presentation(R, {parse_poly(R, "x"), parse_poly(R, "y")});
  REQUIRE(rp.tvars == std::vector<std::string>{"X", "Y"});
  // J = (lam X - x, lam Y - y), already saturated
  auto gb = buchberger(rp.J, TermOrder::grevlex());
  REQUIRE(gb.contains(parse_poly(rp.rees_ring, "lam*X - x")));
  REQUIRE(gb.contains(parse_poly(rp.rees_ring, "lam*Y - y")));

  // central fibre: I_C = (x, y), C = Spec Q(i)[X, Y]
  auto C = central_fibre(rp);
  auto gbc = buchberger(C.ideal, TermOrder::grevlex());
  REQUIRE(gbc.contains(parse_poly(C.cone_ring, "x")));
  REQUIRE(gbc.contains(parse_poly(C.cone_ring, "y")));
  REQUIRE_FALSE(gbc.contains(parse_poly(C.cone_ring, "X")));
  REQUIRE_FALSE(gbc.contains(parse_poly(C.cone_ring, "Y")));

  // setting lam = 1 and eliminating the cone variables recovers the base:
  // substitute lam = 1 into J, eliminate X, Y -> zero ideal
  std::vector<Poly> at1;
  std::vector<Poly> im;
  for (auto& v : rp.rees_ring->vars)
    im.push_back(v == "lam" ? Poly::one(rp.rees_ring) : Poly::var(rp.rees_ring, v));
  for (auto& g : rp.J.gens) at1.push_back(g.substitute(im));
  auto E = eliminate(Ideal(rp.rees_ring, at1), {"X", "Y", "lam"});
  REQUIRE(E.gens.empty());
}

TEST_CASE("rees presentation of a double point") {
  auto R = make_ring({"x"});
  auto rp = rees_presentation(R, {parse_poly(R, "x^2")});
  auto C = central_fibre(rp);
  // I_C = (x^2): a line of cone coordinates over the double point
  auto gbc = buchberger(C.ideal, TermOrder::grevlex());
  REQUIRE(gbc.contains(parse_poly(C.cone_ring, "x^2")));
  REQUIRE_FALSE(gbc.contains(parse_poly(C.cone_ring, "x")));
}

TEST_CASE("rees rejects the unit ideal, keeps zero generators") {
  auto R = make_ring({"x"});
  REQUIRE_THROWS_AS(rees_presentation(R, {Poly::one(R)}), std::invalid_argument);

  // zero generator: cone coordinate is forced to vanish
  auto rp = rees_presentation(R, {parse_poly(R, "x"), Poly(R)});
  auto gb = buchberger(rp.J, TermOrder::grevlex());
  REQUIRE(gb.contains(Poly::var(rp.rees_ring, rp.tvars[1])));
}

TEST_CASE("lift potential") {
  auto R = make_ring({"x", "y"});
  auto rp = rees_presentation(R, {parse_poly(R, "x"), parse_poly(R, "y")});
  auto lp = lift_potential(parse_poly(R, "x*y"), rp);
  REQUIRE(lp.q == parse_poly(rp.rees_ring, "X*Y"));
  auto C = central_fibre(rp);
  REQUIRE(lp.q_cone == parse_poly(C.cone_ring, "X*Y"));

  // f = x^2 over I = (x): q = X^2
  auto R1 = make_ring({"x"});
  auto rp1 = rees_presentation(R1, {parse_poly(R1, "x")});
  auto lp1 = lift_potential(parse_poly(R1, "x^2"), rp1);
  REQUIRE(lp1.q == parse_poly(rp1.rees_ring, "X^2"));

  // f = x not in I^2 for I = (x, y)
  REQUIRE_THROWS_AS(lift_potential(parse_poly(R, "x"), rp), std::invalid_argument);

  // lam^2 q - f reduces to zero modulo J in every lift (checked internally,
  // re-checked here)
  auto gb = buchberger(rp.J, TermOrder::grevlex());
  Poly check = parse_poly(rp.rees_ring, "lam^2 * X*Y - x*y");
  REQUIRE(gb.contains(check));

  // quadratic form: the lift is the form in the cone variables
  auto S = make_ring({"s1", "s2"});
  auto rps = rees_presentation(S, {parse_poly(S, "s1"), parse_poly(S, "s2")});
  auto lps = lift_potential(parse_poly(S, "s1*s2"), rps);
  REQUIRE(lps.q == parse_poly(rps.rees_ring, "S1*S2"));
}

TEST_CASE("rees with weights") {
  auto R = make_ring({"x", "y"}, {2, -2});
  auto rp = rees_presentation(R, {parse_poly(R, "x"), parse_poly(R, "y")});
  // cone variables inherit the generator weights, lam is invariant
  REQUIRE(rp.rees_ring->wweights[rp.rees_ring->index_of("X")] == 2);
  REQUIRE(rp.rees_ring->wweights[rp.rees_ring->index_of("Y")] == -2);
  REQUIRE(rp.rees_ring->wweights[rp.rees_ring->index_of("lam")] == 0);
}
