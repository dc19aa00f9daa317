// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <string>

#include "ncque/dual.hpp"
#include "ncque/hopf.hpp"
#include "ncque/lie.hpp"

using namespace ncque;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

struct Outcome {
  bool pass = true;
  std::string note;
  void fail(const std::string& where)
  {
    if (pass) note = where;
    pass = false;
  }
  void expect(bool ok, const std::string& where)
  {
    if (!ok) fail(where);
  }
};

// Runs one criterion, times it, prints its line. limit_s <= 0 means no time bound.
void check(const std::string& id, const std::string& what, double limit_s, const std::function<Outcome()>& body)
{
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) o.fail("took " + std::to_string(secs) + " s, bound " + std::to_string(limit_s) + " s");
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS " : "FAIL ") << id << "  " << what << "  (" << std::to_string(secs).substr(0, 6)
            << " s)";
  if (!o.pass) std::cout << "  -- " << o.note;
  std::cout << std::endl;
}

const std::vector<DeformParams> kParamSets = {
    {1, 1, 1, 0},
    {1, 0, 0, 0},
    {2, Rational(-1, 3), Rational(5, 7), 0},
};

DeformParams with_trunc(DeformParams p, int d)
{
  p.truncation = d;
  return p;
}

std::string pname(const DeformParams& p)
{
  return "(" + to_string(p.alpha) + "," + to_string(p.beta) + "," + to_string(p.gamma) + ")";
}

Element gen(const AlgebraPtr& A, int g) { return A->generator(static_cast<Generator>(g)); }

// rho^k by the multinomial theorem
Element rho_power(const AlgebraPtr& A, int k)
{
  Element out(A);
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b) {
      const int c = k - a - b;
      if (k > A->truncation()) continue;
      const Rational coef = Rational(factorial(static_cast<unsigned>(k))) /
                            Rational(factorial(static_cast<unsigned>(a)) * factorial(static_cast<unsigned>(b)) *
                                     factorial(static_cast<unsigned>(c)));
      PBWMonomial m{};
      m[0] = a;
      m[1] = b;
      m[2] = c;
      out.add_term(m, Series::monomial({{a, b, c}}, coef, A->truncation()));
    }
  return out;
}

// sinh(2 rho)/(2 rho) = sum 4^n rho^{2n} / (2n+1)!
Element lambda_series(const AlgebraPtr& A)
{
  Element out(A);
  for (int n = 0; 2 * n <= A->truncation(); ++n) {
    Element t = rho_power(A, 2 * n);
    t *= Rational(ipow(4, static_cast<unsigned>(n))) / Rational(factorial(static_cast<unsigned>(2 * n + 1)));
    out += t;
  }
  return out;
}

// Expected [x_i, x_j] with the scalar series `lam` standing in for lambda.
Element expected_bracket(const AlgebraPtr& A, const Element& lam, const DeformParams& p, int i, int j)
{
  const Rational a2 = p.alpha * p.alpha;
  auto one_way = [&](int x, int y) -> std::optional<Element> {
    if ((x == 3 && y == 5) || (x == 4 && y == 6)) return lam * gen(A, 0) * (1 / p.alpha);
    if (x == 3 && y == 4) return lam * gen(A, 1) * (p.beta / a2);
    if (x == 5 && y == 6) return lam * gen(A, 2) * (p.gamma / a2);
    return std::nullopt;
  };
  if (auto e = one_way(i, j)) return *e;
  if (auto e = one_way(j, i)) return -*e;
  return Element(A);
}

Rational rnd(std::mt19937& rng)
{
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

WedgeElement wedge(int i, int j, const Rational& c)
{
  WedgeElement w;
  w.add(i, j, c);
  return w;
}

DualElement el(const DualMonomial& m, int d) { return DualElement::monomial(m, d); }

std::string pair_str(const DualMonomial& a, const DualMonomial& b) { return "(" + to_string(a) + ", " + to_string(b) + ")"; }

}  // namespace

int main()
{
  check("AC1", "relations at D=4, all generator pairs", 1.0, [] {
    Outcome o;
    for (const auto& p0 : kParamSets) {
      const DeformParams p = with_trunc(p0, 4);
      const auto A = Algebra::create(p);
      const Element lam = lambda_series(A);
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
          o.expect(commutator(gen(A, i), gen(A, j)) == expected_bracket(A, lam, p, i, j),
                   pname(p) + " [" + std::string(generator_token(static_cast<Generator>(i))) + "," +
                       std::string(generator_token(static_cast<Generator>(j))) + "]");
    }
    return o;
  });

  check("AC2", "Hopf axioms on PBW monomials of degree <= 3 at D=3, three parameter sets", 120.0, [] {
    Outcome o;
    for (const auto& p0 : kParamSets) {
      const VerificationReport r = verify_hopf_axioms(3, with_trunc(p0, 3));
      for (const auto& c : r.checks)
        o.expect(c.pass, pname(p0) + " " + c.name + (c.counterexample ? ": " + *c.counterexample : ""));
    }
    return o;
  });

  check("AC3", "flatness map brackets at D=4", 0, [] {
    Outcome o;
    for (const auto& p0 : kParamSets) {
      const DeformParams p = with_trunc(p0, 4);
      const auto A = Algebra::create(p);
      const auto flat = Algebra::create(p, Relations::undeformed);
      auto phi = [&](int g) { return phi_automorphism(flat->generator(static_cast<Generator>(g)), A); };
      // same right-hand sides as the undeformed algebra, pushed through phi
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
          const Element expect = phi_automorphism(expected_bracket(flat, flat->one(), p, i, j), A);
          o.expect(commutator(phi(i), phi(j)) == expect, pname(p) + " pair " + std::to_string(i) + "," + std::to_string(j));
        }
      o.expect(commutator(phi(3), phi(5)) == phi(0) * (1 / p.alpha), pname(p) + " [phi Q1, phi P1]");
      o.expect(commutator(phi(3), phi(4)) == phi(1) * (p.beta / (p.alpha * p.alpha)), pname(p) + " [phi Q1, phi Q2]");
      o.expect(commutator(phi(5), phi(6)) == phi(2) * (p.gamma / (p.alpha * p.alpha)), pname(p) + " [phi P1, phi P2]");
    }
    return o;
  });

  check("AC4", "Heisenberg limit: sinh(2hTh)/(2h) to degree 5, Th primitive", 0, [] {
    Outcome o;
    const int d = 5;
    const auto A = Algebra::create(DeformParams{1, 0, 0, d});
    const HbarMask only1 = HbarMask::only(1);
    const Element th = gen(A, 0);
    Element sinh_series(A);  // sum (2h)^{2n} Th^{2n+1} / (2n+1)!
    for (int n = 0; 2 * n <= d; ++n) {
      const Series c = Series::monomial({{2 * n, 0, 0}},
                                        Rational(ipow(2, static_cast<unsigned>(2 * n))) /
                                            Rational(factorial(static_cast<unsigned>(2 * n + 1))),
                                        d);
      sinh_series += power(th, 2 * n + 1) * c;
    }
    for (int i : {3, 4})
      for (int j : {5, 6}) {
        const Element br = limit(commutator(gen(A, i), gen(A, j)), only1);
        o.expect(br == (j - i == 2 ? sinh_series : Element(A)), "[" + std::to_string(i) + "," + std::to_string(j) + "]");
      }
    const HopfStructure H(A);
    o.expect(limit(H.coproduct(th), only1) == tensor(th, A->one()) + tensor(A->one(), th), "Delta(Th)");
    const VerificationReport r = heisenberg_limit_report(d);
    o.expect(r.pass(), "heisenberg report");
    return o;
  });

  const DeformParams star_params{1, 1, 1, 3};
  check("AC5", "closed star = pairing oracle mod hbar-degree 2, all pairs of norm <= 2", 120.0, [&] {
    Outcome o;
    const StarOracle oracle(star_params);
    const auto monos = dual_monomials_up_to(2);
    int pairs = 0;
    for (const auto& a : monos)
      for (const auto& b : monos) {
        ++pairs;
        const DualElement closed = star_closed(el(a, star_params.truncation), el(b, star_params.truncation));
        const DualElement ora = oracle.star(a, b, a.norm() + b.norm());
        o.expect(closed.truncated(1) == ora.truncated(1), pair_str(a, b));
      }
    o.expect(pairs >= 300, "grid too small");
    std::cout << "     " << pairs << " pairs compared" << std::endl;
    return o;
  });
  {
    const VerificationReport diag = star_oracle_diagnostic(2, star_params);
    for (const auto& c : diag.checks)
      std::cout << "     diagnostic (not a gate): " << (c.pass ? "agree    " : "disagree ") << c.name << ": "
                << c.subject << (c.counterexample ? "  first: " + *c.counterexample : "") << std::endl;
  }

  check("AC6", "classical commutativity on the full grid", 0, [] {
    Outcome o;
    const int d = 3;
    const auto monos = dual_monomials_up_to(2);
    for (const auto& a : monos)
      for (const auto& b : monos) {
        const DualElement c = star_closed(el(a, d), el(b, d)) - star_closed(el(b, d), el(a, d));
        bool ok = true;
        for (const auto& [m, s] : c.terms()) ok = ok && s.constant_term() == 0;
        o.expect(ok, pair_str(a, b));
      }
    return o;
  });

  check("AC7", "Poisson chi relations with (a,b,c) = 2 e_i per direction, Jacobi on 35 triples", 0, [] {
    Outcome o;
    const int d = 1;
    auto x = [&](int k) { return el(chi(k), d); };
    DualElement sum12(d);
    for (int dir = 1; dir <= 3; ++dir) {
      const Rational a = dir == 1 ? 2 : 0, b = dir == 2 ? 2 : 0, c = dir == 3 ? 2 : 0;
      auto pb = [&](const DualElement& u, const DualElement& v) { return poisson_bracket_dir(u, v, dir); };
      const std::string D = "dir " + std::to_string(dir) + " ";
      o.expect(pb(x(1), x(2)) == (x(1) * b - x(2) * a) * Rational(2), D + "{x1,x2}");
      o.expect(pb(x(1), x(3)) == (x(1) * c - x(3) * a) * Rational(2), D + "{x1,x3}");
      o.expect(pb(x(2), x(3)) == (x(2) * c - x(3) * b) * Rational(2), D + "{x2,x3}");
      for (int i = 4; i <= 7; ++i) {
        o.expect(pb(x(i), x(1)) == x(i) * a, D + "{x" + std::to_string(i) + ",x1}");
        o.expect(pb(x(i), x(2)) == x(i) * b, D + "{x" + std::to_string(i) + ",x2}");
        o.expect(pb(x(i), x(3)) == x(i) * c, D + "{x" + std::to_string(i) + ",x3}");
        for (int j = 4; j <= 7; ++j) o.expect(pb(x(i), x(j)).is_zero(), D + "{xi,xj}");
      }
      int triples = 0;
      for (int i = 1; i <= 7; ++i)
        for (int j = i + 1; j <= 7; ++j)
          for (int k = j + 1; k <= 7; ++k) {
            ++triples;
            const DualElement jac = pb(x(i), pb(x(j), x(k))) + pb(x(j), pb(x(k), x(i))) + pb(x(k), pb(x(i), x(j)));
            o.expect(jac.is_zero(), D + "Jacobi " + std::to_string(i) + std::to_string(j) + std::to_string(k));
          }
      o.expect(triples == 35, "triple count");
      sum12 += pb(x(1), x(2));
    }
    // summed over directions: (a,b,c) = (2,2,2)
    o.expect(sum12 == (x(1) * Rational(2) - x(2) * Rational(2)) * Rational(2), "summed {x1,x2}");
    return o;
  });

  check("AC8", "cocommutator values, cocycle and co-Jacobi", 0, [] {
    Outcome o;
    for (const auto& p0 : kParamSets) {
      const DeformParams p = with_trunc(p0, 1);
      const LieData L = nc_lie_data(p);
      for (int dir = 1; dir <= 3; ++dir) {
        const int ci = dir - 1;
        const Cocommutator delta = cocommutator_all(dir, p);
        for (int g = 0; g < 7; ++g) {
          const WedgeElement expect = wedge(g, ci, g < 3 ? Rational(4) : Rational(2));
          o.expect(delta[static_cast<std::size_t>(g)] == expect,
                   pname(p) + " delta_" + std::to_string(dir) + "(" + std::string(generator_token(static_cast<Generator>(g))) + ")");
        }
        const VerificationReport r = bialgebra_axiom_check(delta, L);
        o.expect(r.pass(), pname(p) + " axioms dir " + std::to_string(dir));
      }
      const DeformParams p1 = with_trunc(p0, 1);
      o.expect(cocommutator_dir(Generator::Theta, 1, p1).is_zero(), "delta_1(Th) = 0");
      o.expect(cocommutator_dir(Generator::Theta, 2, p1) == wedge(0, 1, 4), "delta_2(Th) = 4 Th^Ph");
      o.expect(cocommutator_dir(Generator::Theta, 3, p1) == wedge(0, 2, 4), "delta_3(Th) = 4 Th^Ps");
    }
    return o;
  });

  check("AC9", "dual Lie constants from star = those induced by delta", 0, [] {
    Outcome o;
    for (int dir = 1; dir <= 3; ++dir) {
      const LieData poisson = dual_structure_constants(dir);
      LieData induced = dual_lie_data(cocommutator_all(dir, DeformParams{1, 1, 1, 1}));
      induced.names = poisson.names;
      o.expect(induced == poisson, "direction " + std::to_string(dir));
    }
    return o;
  });

  check("AC10", "coboundary obstruction on 100 random r", 0, [] {
    Outcome o;
    std::mt19937 rng(20260);
    const DeformParams p{1, 1, 1, 1};
    const LieData L = nc_lie_data(p);
    std::vector<Cocommutator> targets;
    for (int dir = 1; dir <= 3; ++dir) targets.push_back(cocommutator_all(dir, p));
    for (int t = 0; t < 100; ++t) {
      WedgeElement r;
      for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) r.add(i, j, rnd(rng));
      for (std::size_t dir = 0; dir < 3; ++dir) {
        const CoboundaryResult res = coboundary_from_r(r, L, targets[dir]);
        for (int k = 0; k < 3; ++k)
          o.expect(res.delta[static_cast<std::size_t>(k)].is_zero(), "delta_r(central) != 0 for " + to_string(r));
        o.expect(!res.equals_target, "equals_target for " + to_string(r));
      }
    }
    return o;
  });

  check("AC11", "group law on 100 random tuples, three parameter sets", 0, [] {
    Outcome o;
    std::mt19937 rng(99);
    auto draw = [&] {
      GroupElement g;
      g.theta = rnd(rng);
      g.phi = rnd(rng);
      g.psi = rnd(rng);
      g.q = {rnd(rng), rnd(rng)};
      g.p = {rnd(rng), rnd(rng)};
      return g;
    };
    for (const auto& p : kParamSets)
      for (int t = 0; t < 100; ++t) {
        const GroupElement a = draw(), b = draw(), c = draw();
        const std::string w = pname(p) + " " + to_string(a);
        o.expect(group_compose(group_compose(a, b, p), c, p) == group_compose(a, group_compose(b, c, p), p), w + " assoc");
        o.expect(group_compose(a, group_identity(), p) == a && group_compose(group_identity(), a, p) == a, w + " identity");
        o.expect(group_compose(a, group_inverse(a, p), p) == group_identity() &&
                     group_compose(group_inverse(a, p), a, p) == group_identity(),
                 w + " inverse");
      }
    return o;
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
