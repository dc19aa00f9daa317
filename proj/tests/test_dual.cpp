#include <doctest.h>

#include "ncque/dual.hpp"

using namespace ncque;

namespace {

DualMonomial W(int a, int b, int c) { return {{a, b, c}, {}}; }
DualMonomial Y(int a, int b, int c, int d) { return {{}, {a, b, c, d}}; }

DualElement el(const DualMonomial& m, int d) { return DualElement::monomial(m, d); }
DualElement el(const DualMonomial& m, const Series& c) { return DualElement::monomial(m, c); }

Series h(int i, int d) { return Series::hbar(i, d); }

DeformParams params(Rational a, Rational b, Rational g, int d) { return DeformParams{a, b, g, d}; }

}  // namespace

TEST_CASE("dual monomials")
{
  CHECK(chi(1) == W(1, 0, 0));
  CHECK(chi(4) == Y(1, 0, 0, 0));
  CHECK(chi(7) == Y(0, 0, 0, 1));
  CHECK_THROWS_AS(chi(0), std::out_of_range);
  CHECK(to_string(DualMonomial{}) == "1");
  CHECK(to_string(DualMonomial{{1, 0, 0}, {1, 0, 0, 0}}) == "W[1,0,0]*Y[1,0,0,0]");
  CHECK(dual_monomials_up_to(1).size() == 8);
  CHECK(dual_monomials_up_to(2).size() == 36);
  CHECK_THROWS_AS(el(chi(1), 1) + el(chi(1), 2), std::invalid_argument);
}

TEST_CASE("closed star product on small monomials")
{
  const int d = 2;
  // x4 * x1 = W1 Y1 + h1 Y1,  x1 * x4 = W1 Y1 - h1 Y1
  const DualMonomial wy{{1, 0, 0}, {1, 0, 0, 0}};
  CHECK(star_closed(el(chi(4), d), el(chi(1), d)) == el(wy, d) + el(chi(4), h(1, d)));
  CHECK(star_closed(el(chi(1), d), el(chi(4), d)) == el(wy, d) - el(chi(4), h(1, d)));
  // x1 * x2 = W1 W2 - 2 h1 W2 + 2 h2 W1
  const DualElement x12 = star_closed(el(chi(1), d), el(chi(2), d));
  CHECK(x12 == el(W(1, 1, 0), d) - el(chi(2), h(1, d) * Rational(2)) + el(chi(1), h(2, d) * Rational(2)));
  // Y's alone commute
  CHECK(star_closed(el(chi(4), d), el(chi(6), d)) == el(Y(1, 0, 1, 0), d));
  CHECK(star_closed(el(chi(6), d), el(chi(4), d)) == el(Y(1, 0, 1, 0), d));
  // the two first-order terms of W1 * W1 cancel
  CHECK(star_closed(el(chi(1), d), el(chi(1), d)) == el(W(2, 0, 0), d));
}

TEST_CASE("unit, constant term and classical commutativity")
{
  const int d = 2;
  const DualElement one = el(DualMonomial{}, d);
  for (const auto& a : dual_monomials_up_to(2)) {
    CHECK(star_closed(one, el(a, d)) == el(a, d));
    CHECK(star_closed(el(a, d), one) == el(a, d));
    for (const auto& b : dual_monomials_up_to(2)) {
      const DualElement ab = star_closed(el(a, d), el(b, d));
      CHECK(ab.truncated(0) == label_product(el(a, 0), el(b, 0)));
      CHECK(star_commutator(el(a, d), el(b, d)).truncated(0).is_zero());
    }
  }
}

TEST_CASE("associativity below second order")
{
  const int d = 2;
  const auto monos = dual_monomials_up_to(2);
  for (const auto& a : monos)
    for (const auto& b : monos)
      for (const auto& c : monos) {
        const DualElement x = el(a, d), y = el(b, d), z = el(c, d);
        CHECK(star_closed(star_closed(x, y), z).truncated(1) == star_closed(x, star_closed(y, z)).truncated(1));
      }
}

TEST_CASE("closed formula is not associative at third order")
{
  const int d = 3;
  const DualElement x = el(Y(0, 0, 0, 1), d), y = el(W(0, 0, 1), d), z = el(W(0, 0, 2), d);
  const DualElement l = star_closed(star_closed(x, y), z), r = star_closed(x, star_closed(y, z));
  CHECK(l.truncated(2) == r.truncated(2));
  CHECK(l != r);
}

TEST_CASE("pairing with the Z-basis")
{
  const auto A = Algebra::create(params(1, 1, 1, 2));
  const ZMap lt = to_z_basis(A->lambda() * A->generator(Generator::Theta));
  CHECK(pairing(el(chi(1), 2), lt) == Series::constant(1, 2));
  CHECK(pairing(el(chi(2), 2), lt).is_zero());
  const ZMap q = to_z_basis(A->generator(Generator::Q1) * Rational(3));
  CHECK(pairing(el(chi(4), 2), q) == Series::constant(3, 2));
  CHECK(dual_of(W(1, 2, 0)) == ZMonomial{{1, 2, 0}, {0, 0, 0, 0}});
}

TEST_CASE("oracle reproduces the closed formula")
{
  const DeformParams p = params(1, 1, 1, 2);
  const StarOracle oracle(p);
  const auto monos = dual_monomials_up_to(1);
  for (const auto& a : monos)
    for (const auto& b : monos) {
      const int cap = a.norm() + b.norm();
      const DualElement o = oracle.star(a, b, cap);
      CHECK(o.truncated(1) == star_closed(el(a, 2), el(b, 2)).truncated(1));
      // widening the cap by the truncation changes nothing
      CHECK(oracle.star(a, b, cap + p.truncation) == o);
    }
  CHECK(star_oracle(chi(4), chi(1), 2, params(3, 0, 0, 1)) == star_closed(el(chi(4), 1), el(chi(1), 1)));
  // Delta(Z^0 X^0) = 1 (x) 1
  const ZTensor unit = delta_on_zbasis({0, 0, 0}, {0, 0, 0, 0}, p);
  REQUIRE(unit.size() == 1);
  CHECK(unit.begin()->second == Series::constant(1, 2));
}

TEST_CASE("Poisson brackets and dual structure constants")
{
  const int d = 1;
  auto pb = [&](int i, int j, int dir) { return poisson_bracket_dir(el(chi(i), d), el(chi(j), d), dir); };
  CHECK(pb(1, 2, 2) == el(chi(1), d) * Rational(4));
  CHECK(pb(1, 2, 1) == el(chi(2), d) * Rational(-4));
  CHECK(pb(4, 1, 1) == el(chi(4), d) * Rational(2));
  CHECK(pb(4, 6, 3).is_zero());
  CHECK(pb(2, 1, 2) == -pb(1, 2, 2));
  CHECK_THROWS_AS(pb(1, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(poisson_bracket_dir(el(chi(1), 0), el(chi(2), 0), 1), std::invalid_argument);

  for (int dir = 1; dir <= 3; ++dir) {
    const LieData L = dual_structure_constants(dir);
    CHECK(L.names[0] == "x1");
    CHECK(check_lie_data(L, "dual").pass());
    // {x1,x2} = 2b x1 - 2a x2 with (a,b,c) = 2 e_dir
    const Rational a = dir == 1 ? 2 : 0, b = dir == 2 ? 2 : 0, c = dir == 3 ? 2 : 0;
    CHECK(L.c(0, 1, 0) == 2 * b);
    CHECK(L.c(0, 1, 1) == -2 * a);
    CHECK(L.c(1, 2, 1) == 2 * c);
    CHECK(L.c(0, 3, 3) == -a);
  }
}

TEST_CASE("verification reports")
{
  const VerificationReport r = verify_star_report(1, params(1, 1, 1, 2));
  CHECK(r.pass());
  const VerificationReport diag = star_oracle_diagnostic(1, params(1, 1, 1, 2));
  CHECK_FALSE(diag.checks.empty());
}
