#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mfk/clifford.hpp"

using namespace mfk;

TEST_CASE("clifford multiplication relations") {
  QuadraticSpace sp(2);
  auto R = make_ring({});
  auto one = CliffordElement::one(sp, R);
  auto l1 = CliffordElement::generator(sp, R, 0);
  auto l2 = CliffordElement::generator(sp, R, 1);
  auto d1 = CliffordElement::generator(sp, R, 2);  // lambda*_1
  auto d2 = CliffordElement::generator(sp, R, 3);

  // isotropic: l1 . l1 = 0
  REQUIRE(clifford_mul(l1, l1).is_zero());
  REQUIRE(clifford_mul(d2, d2).is_zero());

  // l1 d1 + d1 l1 = 1
  auto anti = clifford_mul(l1, d1) + clifford_mul(d1, l1);
  REQUIRE(anti == one);

  // distinct planes anticommute
  REQUIRE((clifford_mul(l1, l2) + clifford_mul(l2, l1)).is_zero());
  REQUIRE((clifford_mul(l1, d2) + clifford_mul(d2, l1)).is_zero());

  // (l1 d1) is idempotent
  auto e = clifford_mul(l1, d1);
  REQUIRE(clifford_mul(e, e) == e);

  // associativity on a few random triples
  std::mt19937 rng(5);
  auto rnd = [&]() {
    CliffordElement c(sp, R);
    for (int t = 0; t < 3; ++t)
      c.add_word(rng() % 16, Poly::constant(R, Scalar(static_cast<long>(rng() % 5) - 2)));
    return c;
  };
  for (int t = 0; t < 20; ++t) {
    auto a = rnd(), b = rnd(), c = rnd();
    REQUIRE(clifford_mul(clifford_mul(a, b), c) == clifford_mul(a, clifford_mul(b, c)));
  }

  // v.w + w.v = Btilde(v, w) for vectors
  auto S = make_ring({"a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2"});
  std::vector<Poly> v, w;
  for (int k = 0; k < 4; ++k) v.push_back(Poly::var(S, k));
  for (int k = 4; k < 8; ++k) w.push_back(Poly::var(S, k));
  auto cv = CliffordElement::vector(sp, v), cw = CliffordElement::vector(sp, w);
  auto sum = clifford_mul(cv, cw) + clifford_mul(cw, cv);
  auto expect = split_pairing(sp, v, w) * CliffordElement::one(sp, S);
  REQUIRE(sum == expect);
}

TEST_CASE("spinor action squares to the quadratic function") {
  QuadraticSpace sp(2);
  auto S = make_ring({"p1", "p2", "q1", "q2"});
  std::vector<Poly> v;
  for (int k = 0; k < 4; ++k) v.push_back(Poly::var(S, k));
  auto A = spinor_action(sp, v);
  auto A2 = A * A;
  Poly q = split_quadratic(sp, v);
  for (size_t i = 0; i < A2.rows(); ++i)
    for (size_t j = 0; j < A2.cols(); ++j) REQUIRE(A2.at(i, j) == ((i == j) ? q : Poly(S)));

  // dual model too
  auto B = spinor_action(sp, v, true);
  auto B2 = B * B;
  for (size_t i = 0; i < B2.rows(); ++i)
    for (size_t j = 0; j < B2.cols(); ++j) REQUIRE(B2.at(i, j) == ((i == j) ? q : Poly(S)));

  // wedge/contract on generators: l*_1 . 1 = l*_1, l_1 . l*_1 = 1
  QuadraticSpace sp1(1);
  auto R = make_ring({});
  std::vector<Scalar> wedge(2), contract(2);
  wedge[1] = Scalar::one();     // lambda*_1
  contract[0] = Scalar::one();  // lambda_1
  auto W = spinor_action_qi(sp1, wedge);
  REQUIRE(W.at(1, 0) == Scalar::one());  // 1 -> l*_1
  auto C = spinor_action_qi(sp1, contract);
  REQUIRE(C.at(0, 1) == Scalar::one());  // l*_1 -> 1

  // v = l1 + l*_1 squares to the identity on every basis element
  std::vector<Scalar> both(2, Scalar::one());
  auto V = spinor_action_qi(sp1, both);
  auto V2 = V * V;
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) REQUIRE(V2.at(i, j) == ((i == j) ? Scalar::one() : Scalar::zero()));
}

TEST_CASE("spinor factorisation") {
  auto R = make_ring({"x", "y"});
  auto base = make_quotient(R);
  QuadraticSpace sp(1);

  // n = 1, s = (x, y): rank (1,1), potential xy
  auto F = spinor_factorisation(sp, base, {parse_poly(R, "x"), parse_poly(R, "y")}, Scalar::one());
  REQUIRE(F.rp == 1);
  REQUIRE(F.rm == 1);
  REQUIRE(F.potential == parse_poly(R, "x*y"));
  REQUIRE(validate(F).ok);

  // phase sqrt(-1): potential -q(s,s)
  auto G = spinor_factorisation(sp, base, {parse_poly(R, "x"), parse_poly(R, "y")}, Scalar::i());
  REQUIRE(G.potential == parse_poly(R, "-x*y"));
  REQUIRE(validate(G).ok);

  // isotropic section: potential 0, a 2-periodic complex
  auto H = spinor_factorisation(sp, base, {parse_poly(R, "x"), Poly(R)}, Scalar::one());
  REQUIRE(H.potential.is_zero());
  REQUIRE(validate(H).ok);

  // graded dimensions 2^{n-1} for n = 2, 3; Cl dimension 2^{2n}
  for (int n = 2; n <= 3; ++n) {
    QuadraticSpace spn(n);
    std::vector<Poly> s(2 * n, Poly(R));
    s[0] = parse_poly(R, "x");
    auto K = spinor_factorisation(spn, base, s, Scalar::one());
    REQUIRE(K.rp == (size_t(1) << (n - 1)));
    REQUIRE(K.rm == (size_t(1) << (n - 1)));
  }

  // random polynomial sections validate (n <= 3, degree <= 2)
  std::mt19937 rng(42);
  auto R3 = make_ring({"x", "y", "z"});
  auto base3 = make_quotient(R3);
  auto rnd_poly = [&]() {
    Poly p(R3);
    int nt = static_cast<int>(rng() % 3);
    for (int t = 0; t <= nt; ++t) {
      Mono m(3, 0);
      int deg = static_cast<int>(rng() % 3);
      for (int d = 0; d < deg; ++d) m[rng() % 3] += 1;
      p.add_term(m, Scalar(static_cast<long>(rng() % 5) - 2));
    }
    return p;
  };
  for (int t = 0; t < 25; ++t) {
    int n = 1 + static_cast<int>(rng() % 3);
    QuadraticSpace spn(n);
    std::vector<Poly> s;
    for (int k = 0; k < 2 * n; ++k) s.push_back(rnd_poly());
    auto F2 = spinor_factorisation(spn, base3, s, (t % 2) ? Scalar::one() : Scalar::i());
    REQUIRE(validate(F2).ok);
  }
}

TEST_CASE("koszul factorisation examples") {
  auto R = make_ring({"x", "y", "x1", "x2", "y1", "y2"});
  auto base = make_quotient(R);

  // r = 1, s = x, sigma = y: potential xy
  auto K1 = koszul_factorisation(base, {parse_poly(R, "x")}, {parse_poly(R, "y")});
  REQUIRE(K1.potential == parse_poly(R, "x*y"));
  REQUIRE(validate(K1).ok);

  // sigma = 0: 2-periodised Koszul complex of x, potential 0
  auto K2 = koszul_factorisation(base, {parse_poly(R, "x")}, {Poly(R)});
  REQUIRE(K2.potential.is_zero());
  REQUIRE(validate(K2).ok);

  // r = 2
  auto K3 = koszul_factorisation(base, {parse_poly(R, "x1"), parse_poly(R, "x2")},
                                 {parse_poly(R, "y1"), parse_poly(R, "y2")});
  REQUIRE(K3.potential == parse_poly(R, "x1*y1 + x2*y2"));
  REQUIRE(validate(K3).ok);
}

TEST_CASE("the replaced phase factorisation is isomorphic to (S, i s)") {
  // (S, i s) and (d+ = -s, d- = s) are conjugate by diag(1, i)
  auto R = make_ring({"x", "y"});
  auto base = make_quotient(R);
  QuadraticSpace sp(1);
  std::vector<Poly> s = {parse_poly(R, "x"), parse_poly(R, "y")};
  auto A = spinor_factorisation(sp, base, s, Scalar::i());
  PolyMat act = spinor_action(sp, s);
  // replacement: d+ = -act(odd,even), d- = +act(even,odd)
  PolyMat dp(R, 1, 1), dm(R, 1, 1);
  dp.at(0, 0) = -act.at(1, 0);
  dm.at(0, 0) = act.at(0, 1);
  Factorisation Rep(base, parse_poly(R, "-x*y"), dp, dm);
  REQUIRE(validate(Rep).ok);
  // U = (1, i) intertwines: dRep+ U+ = U- dA+ and dRep- U- = U+ dA-
  Poly i_p = Poly::constant(R, Scalar::i());
  REQUIRE(Rep.dplus.at(0, 0) == i_p * A.dplus.at(0, 0));
  REQUIRE(Rep.dminus.at(0, 0) * Scalar::i() == A.dminus.at(0, 0));
}

TEST_CASE("clifford square check: n = 1 and n = 2") {
  for (int n = 1; n <= 2; ++n) {
    auto rep = clifford_square_check(n);
    INFO("n = " << n);
    for (auto& m : rep.mismatches) INFO(m);
    REQUIRE(rep.interior_product_matches);
    REQUIRE(rep.koszul_matches);
    REQUIRE(rep.iso_found);
    REQUIRE(rep.ok);
  }
}

TEST_CASE("clifford square sanity: invertible section makes both sides contractible") {
  // specialise s to (1, 0, ..): q(s,s) = 0 but the section is nowhere zero,
  // so the Koszul complex is contractible
  auto R = make_ring({"y"});
  auto base = make_quotient(R);
  auto K = koszul_factorisation(base, {Poly::one(R), Poly(R)}, {Poly(R), Poly(R)});
  REQUIRE(validate(K).ok);
  auto h = solve_contraction(K, Poly::one(R), 1);
  REQUIRE(h.has_value());
}

TEST_CASE("pfaffian lines") {
  // standard Lambda: generator 1, even
  QuadraticSpace sp2(2);
  std::vector<std::vector<Scalar>> lam = {{Scalar::one(), 0, 0, 0}, {0, Scalar::one(), 0, 0}};
  auto p1 = pfaffian_line(sp2, lam);
  REQUIRE(p1.parity == 0);
  REQUIRE(p1.generator[0] == Scalar::one());
  for (size_t k = 1; k < 4; ++k) REQUIRE(p1.generator[k].is_zero());
  REQUIRE(p1.omega_eigenvalue == Scalar::one());

  // Lambda^*: generator l*_1 ^ l*_2, parity (-1)^n
  std::vector<std::vector<Scalar>> dual = {{0, 0, Scalar::one(), 0}, {0, 0, 0, Scalar::one()}};
  auto p2 = pfaffian_line(sp2, dual);
  REQUIRE(p2.parity == 0);  // n = 2: top wedge is even
  REQUIRE(p2.generator[3] == Scalar::one());

  QuadraticSpace sp1(1);
  auto p3 = pfaffian_line(sp1, {{0, Scalar::one()}});
  REQUIRE(p3.parity == 1);  // n = 1: l*_1 is odd
  REQUIRE(p3.omega_eigenvalue == Scalar(-1));

  // non-isotropic input rejected
  REQUIRE_THROWS_AS(pfaffian_line(sp1, {{Scalar::one(), Scalar::one()}}), std::invalid_argument);

  // mixed subspace: span(l_1, l*_2)
  std::vector<std::vector<Scalar>> mixed = {{Scalar::one(), 0, 0, 0}, {0, 0, 0, Scalar::one()}};
  auto p4 = pfaffian_line(sp2, mixed);
  REQUIRE(p4.parity == 1);
  REQUIRE(p4.generator[2] == Scalar::one());  // l*_2 (mask 10)

  // orientation element squares to the identity
  auto R0 = make_ring({});
  auto om = orientation_element(sp2, R0);
  auto om2 = clifford_mul(om, om);
  REQUIRE(om2 == CliffordElement::one(sp2, R0));
}

TEST_CASE("pfaffian line via idempotent product of a dual completion") {
  QuadraticSpace sp(2);
  // a tilted isotropic 2-plane: v1 = l_1 + l*_2, v2 = l_2 - l*_1
  std::vector<std::vector<Scalar>> vs = {{Scalar::one(), 0, 0, Scalar::one()},
                                         {0, Scalar::one(), Scalar(-1), 0}};
  auto line = pfaffian_line(sp, vs);
  auto ws = isotropic_dual_completion(sp, vs);
  // verify the completion pairing
  auto bval = [&](const std::vector<Scalar>& u, const std::vector<Scalar>& v) {
    Scalar b;
    for (int k = 0; k < 2; ++k) b += u[k] * v[k + 2] + u[k + 2] * v[k];
    return b;
  };
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      REQUIRE(bval(vs[i], ws[j]) == ((i == j) ? Scalar::one() : Scalar::zero()));
  // e = prod v_i w_i acts with rank-1 image equal to the Pfaffian line
  auto R0 = make_ring({});
  auto e = CliffordElement::one(sp, R0);
  for (int i = 0; i < 2; ++i) {
    std::vector<Poly> vp, wp;
    for (int g = 0; g < 4; ++g) {
      vp.push_back(Poly::constant(R0, vs[i][g]));
      wp.push_back(Poly::constant(R0, ws[i][g]));
    }
    e = clifford_mul(e, clifford_mul(CliffordElement::vector(sp, vp), CliffordElement::vector(sp, wp)));
  }
  auto E = clifford_action_matrix_qi(sp, e);
  REQUIRE(E.rank() == 1);
  // image spans the Pfaffian line: stack generator with image columns
  QiMat chk(4, 5);
  for (size_t i = 0; i < 4; ++i) chk.at(i, 0) = line.generator[i];
  for (size_t j = 0; j < 4; ++j)
    for (size_t i = 0; i < 4; ++i) chk.at(i, j + 1) = E.at(i, j);
  REQUIRE(chk.rank() == 1);
}

TEST_CASE("50 random isotropic subspaces in split position have 1-dim annihilator") {
  std::mt19937 rng(314);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + static_cast<int>(rng() % 3);
    QuadraticSpace sp(n);
    // pick lambda_k or lambda*_k per plane, then mix by a random invertible
    // upper-triangular transformation (stays isotropic)
    std::vector<std::vector<Scalar>> vs;
    std::vector<int> pick(n);
    for (int k = 0; k < n; ++k) pick[k] = rng() % 2;
    for (int k = 0; k < n; ++k) {
      std::vector<Scalar> v(2 * n);
      v[pick[k] ? k : k + n] = Scalar::one();
      vs.push_back(v);
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        // adding a multiple of another basis vector keeps the span
        Scalar c(static_cast<long>(rng() % 3) - 1);
        for (int g = 0; g < 2 * n; ++g) vs[i][g] += c * vs[j][g];
      }
    auto line = pfaffian_line(sp, vs);
    size_t nz = 0;
    for (auto& x : line.generator)
      if (!x.is_zero()) ++nz;
    REQUIRE(nz >= 1);
  }
}

TEST_CASE("isotropic reduction character identity") {
  // K = 0: trivial identity
  QuadraticSpace sp(2, {3, 5});
  auto r0 = isotropic_reduce_class_check(sp, {});
  REQUIRE(r0.ok);
  REQUIRE(r0.sign == 1);

  // n = 1, K = Lambda
  QuadraticSpace sp1(1, {2});
  auto r1 = isotropic_reduce_class_check(sp1, {{0, true}});
  REQUIRE(r1.ok);
  REQUIRE(r1.sign == 1);

  // n = 1, K = Lambda^*: orientation sign flips
  auto r2 = isotropic_reduce_class_check(sp1, {{0, false}});
  REQUIRE(r2.ok);
  REQUIRE(r2.sign == -1);

  // n = 2, K = span(lambda_1)
  auto r3 = isotropic_reduce_class_check(sp, {{0, true}});
  REQUIRE(r3.ok);
  REQUIRE(r3.sign == 1);

  // not split position: repeated plane rejected
  auto r4 = isotropic_reduce_class_check(sp, {{0, true}, {0, false}});
  REQUIRE_FALSE(r4.ok);
}
