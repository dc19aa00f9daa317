#include <doctest.h>

#include <random>

#include "ncque/algebra.hpp"

using namespace ncque;

namespace {

AlgebraPtr make(Rational a, Rational b, Rational g, int d, Relations rel = Relations::deformed)
{
  DeformParams p;
  p.alpha = a;
  p.beta = b;
  p.gamma = g;
  p.truncation = d;
  return Algebra::create(p, rel);
}

Element gen(const AlgebraPtr& A, Generator g) { return A->generator(g); }

PBWMonomial mono(std::initializer_list<int> e)
{
  PBWMonomial m{};
  std::size_t k = 0;
  for (int v : e) m[k++] = v;
  return m;
}

// rho^k expanded by the multinomial theorem, directly in PBW coordinates.
Element rho_power(const AlgebraPtr& A, int k)
{
  Element out(A);
  const int d = A->truncation();
  for (int a = 0; a <= k; ++a)
    for (int b = 0; a + b <= k; ++b) {
      const int c = k - a - b;
      const Rational coef = Rational(factorial(static_cast<unsigned>(k))) /
                            Rational(factorial(static_cast<unsigned>(a)) * factorial(static_cast<unsigned>(b)) *
                                     factorial(static_cast<unsigned>(c)));
      if (a + b + c > d) continue;
      out.add_term(mono({a, b, c}), Series::monomial({{a, b, c}}, coef, d));
    }
  return out;
}

// sum_n 4^n rho^{2n} / (2n+1)!
Element lambda_oracle(const AlgebraPtr& A)
{
  Element out(A);
  for (int n = 0; 2 * n <= A->truncation(); ++n) {
    Element t = rho_power(A, 2 * n);
    t *= Rational(ipow(4, static_cast<unsigned>(n))) / Rational(factorial(static_cast<unsigned>(2 * n + 1)));
    out += t;
  }
  return out;
}

// Rewrites a word by single adjacent transpositions x_k x_j -> x_j x_k - [x_j, x_k]
// until it is sorted; commutators are central and are pulled to the front.
struct Word {
  std::vector<int> letters;
  PBWMonomial central{};
  Series coeff;
};

Element rewrite(const AlgebraPtr& A, const std::vector<int>& word)
{
  Element out(A);
  std::vector<Word> todo;
  Word w{{}, {}, Series::constant(1, A->truncation())};
  for (int g : word) {
    if (g < kNumCentral)
      ++w.central[static_cast<std::size_t>(g)];
    else
      w.letters.push_back(g);
  }
  todo.push_back(w);
  while (!todo.empty()) {
    Word cur = todo.back();
    todo.pop_back();
    std::size_t pos = 0;
    while (pos + 1 < cur.letters.size() && cur.letters[pos] <= cur.letters[pos + 1]) ++pos;
    if (pos + 1 >= cur.letters.size()) {
      PBWMonomial m = cur.central;
      for (int g : cur.letters) ++m[static_cast<std::size_t>(g)];
      out.add_term(m, cur.coeff);
      continue;
    }
    const int k = cur.letters[pos], j = cur.letters[pos + 1];
    Word swapped = cur;
    std::swap(swapped.letters[pos], swapped.letters[pos + 1]);
    todo.push_back(swapped);
    for (const auto& [cm, cc] : A->bracket(j, k).terms()) {
      Word r = cur;
      r.letters.erase(r.letters.begin() + static_cast<long>(pos), r.letters.begin() + static_cast<long>(pos) + 2);
      for (std::size_t t = 0; t < 3; ++t) r.central[t] += cm[t];
      r.coeff = -(cur.coeff * cc);
      if (!r.coeff.is_zero()) todo.push_back(r);
    }
  }
  return out;
}

Element word_product(const AlgebraPtr& A, const std::vector<int>& word)
{
  Element out = A->one();
  for (int g : word) out = out * A->generator(static_cast<Generator>(g));
  return out;
}

}  // namespace

TEST_CASE("generators and parameters")
{
  const auto A = make(1, 0, 0, 2);
  CHECK(gen(A, Generator::Theta).terms().size() == 1);
  CHECK(gen(A, Generator::Theta).coeff(mono({1})) == Series::constant(1, 2));
  CHECK(gen(A, Generator::Q1).coeff(mono({0, 0, 0, 1})) == Series::constant(1, 2));
  CHECK(gen(A, Generator::P2).coeff(mono({0, 0, 0, 0, 0, 0, 1})) == Series::constant(1, 2));
  CHECK_THROWS_AS(make(0, 1, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(make(1, 0, 0, -1), std::invalid_argument);
  const auto B = make(2, 0, 0, 2);
  CHECK_THROWS_AS(gen(A, Generator::Q1) + gen(B, Generator::Q1), std::invalid_argument);
}

TEST_CASE("rho")
{
  const auto A = make(1, 1, 1, 2);
  const Element rho = A->rho();
  CHECK(rho.terms().size() == 3);
  CHECK(rho.coeff(mono({0, 1})) == Series::hbar(2, 2));
  CHECK(make(1, 1, 1, 0)->rho().is_zero());
  CHECK(limit(rho, HbarMask::only(1)) == gen(A, Generator::Theta) * Series::hbar(1, 2));
}

TEST_CASE("lambda against the multinomial expansion")
{
  CHECK(make(1, 0, 0, 0)->lambda() == make(1, 0, 0, 0)->one());
  CHECK(make(1, 0, 0, 1)->lambda() == make(1, 0, 0, 1)->one());
  const auto A = make(1, 0, 0, 2);
  // 1 + (2/3) rho^2
  Element expect = A->one() + rho_power(A, 2) * Rational(2, 3);
  CHECK(A->lambda() == expect);
  for (int d = 0; d <= 5; ++d) {
    const auto B = make(3, -1, 2, d);
    CHECK(B->lambda() == lambda_oracle(B));
    CHECK(B->lambda() * B->lambda_inverse() == B->one());
    CHECK(B->lambda().is_central());
  }
}

TEST_CASE("exp(c rho)")
{
  const auto A = make(1, 1, 1, 3);
  CHECK(A->exp_rho(0) == A->one());
  CHECK(A->exp_rho(1) * A->exp_rho(-1) == A->one());
  const auto B = make(1, 1, 1, 2);
  CHECK(B->exp_rho(1) == B->one() + rho_power(B, 1) + rho_power(B, 2) * Rational(1, 2));
  CHECK(A->exp_rho(Rational(1, 2)) * A->exp_rho(Rational(1, 2)) == A->exp_rho(1));
}

TEST_CASE("defining relations")
{
  for (int d = 0; d <= 3; ++d) {
    const auto A = make(Rational(3, 2), Rational(-2, 5), 7, d);
    const Rational a = A->params().alpha, b = A->params().beta, g = A->params().gamma;
    const Element l = A->lambda();
    CHECK(commutator(gen(A, Generator::Q1), gen(A, Generator::P1)) == l * gen(A, Generator::Theta) * (1 / a));
    CHECK(commutator(gen(A, Generator::Q2), gen(A, Generator::P2)) == l * gen(A, Generator::Theta) * (1 / a));
    CHECK(commutator(gen(A, Generator::Q1), gen(A, Generator::Q2)) == l * gen(A, Generator::Phi) * (b / (a * a)));
    CHECK(commutator(gen(A, Generator::P1), gen(A, Generator::P2)) == l * gen(A, Generator::Psi) * (g / (a * a)));
    CHECK(commutator(gen(A, Generator::P1), gen(A, Generator::Q2)).is_zero());
    CHECK(commutator(gen(A, Generator::Q1), gen(A, Generator::Q1)).is_zero());
    for (int k = 0; k < kNumGenerators; ++k)
      CHECK(commutator(gen(A, Generator::Theta), gen(A, static_cast<Generator>(k))).is_zero());
  }
  const auto C = make(1, 1, 1, 1);
  CHECK(commutator(gen(C, Generator::Q1), gen(C, Generator::P1)) == gen(C, Generator::Theta));
  CHECK(commutator(gen(C, Generator::Q1), gen(C, Generator::Q2)) == gen(C, Generator::Phi));
}

TEST_CASE("P1^2 Q1^2 at D = 0")
{
  const auto A = make(1, 0, 0, 0);
  const Element got = A->monomial(mono({0, 0, 0, 0, 0, 2})) * A->monomial(mono({0, 0, 0, 2}));
  Element expect = A->monomial(mono({0, 0, 0, 2, 0, 2}));
  expect -= A->monomial(mono({1, 0, 0, 1, 0, 1})) * Rational(4);
  expect += A->monomial(mono({2})) * Rational(2);
  CHECK(got == expect);
  CHECK(rewrite(A, {5, 5, 3, 3}) == expect);
}

TEST_CASE("exchange rule equals single-transposition rewriting")
{
  for (int d = 0; d <= 3; ++d) {
    const auto A = make(Rational(2), Rational(1, 3), Rational(-3, 2), d);
    for (int j = 3; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k)
        for (int m = 0; m <= 3; ++m)
          for (int p = 0; p <= 3; ++p) {
            PBWMonomial xk{}, xj{};
            xk[static_cast<std::size_t>(k)] = m;
            xj[static_cast<std::size_t>(j)] = p;
            std::vector<int> word(static_cast<std::size_t>(m), k);
            word.insert(word.end(), static_cast<std::size_t>(p), j);
            CHECK(A->monomial(xk) * A->monomial(xj) == rewrite(A, word));
          }
  }
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> letter(0, 6), len(0, 6);
  const auto A = make(Rational(-1, 2), 3, Rational(2, 7), 3);
  for (int t = 0; t < 150; ++t) {
    std::vector<int> w(static_cast<std::size_t>(len(rng)));
    for (int& g : w) g = letter(rng);
    CHECK(word_product(A, w) == rewrite(A, w));
  }
}

TEST_CASE("associativity and PBW soundness")
{
  const auto A = make(2, Rational(1, 2), -1, 3);
  for (int x = 0; x < 7; ++x)
    for (int y = 0; y < 7; ++y)
      for (int z = 0; z < 7; ++z) {
        const Element a = gen(A, static_cast<Generator>(x)), b = gen(A, static_cast<Generator>(y)),
                      c = gen(A, static_cast<Generator>(z));
        CHECK((a * b) * c == a * (b * c));
      }
  std::mt19937 rng(9);
  const auto monos = [] {
    std::vector<PBWMonomial> out;
    for (const auto& m : indices_up_to<7>(3)) out.push_back(m);
    return out;
  }();
  std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
  for (int t = 0; t < 120; ++t) {
    const Element a = A->monomial(monos[pick(rng)]), b = A->monomial(monos[pick(rng)]), c = A->monomial(monos[pick(rng)]);
    CHECK((a * b) * c == a * (b * c));
    // an ordered monomial times 1 stays put
    CHECK(a * A->one() == a);
  }
}

TEST_CASE("central series are central")
{
  const auto A = make(1, 2, 3, 3);
  for (int g = 0; g < 7; ++g) {
    const Element x = gen(A, static_cast<Generator>(g));
    CHECK(commutator(A->rho(), x).is_zero());
    CHECK(commutator(A->lambda(), x).is_zero());
    CHECK(commutator(A->exp_rho(-2), x).is_zero());
  }
  CHECK(central_inverse(A->lambda()) == A->lambda_inverse());
  CHECK_THROWS_AS(central_inverse(gen(A, Generator::Q1)), std::domain_error);
  CHECK_THROWS_AS(central_inverse(gen(A, Generator::Theta)), std::domain_error);
}

TEST_CASE("Z-basis conversion")
{
  const auto A1 = make(1, 0, 0, 1);
  const ZMap z = to_z_basis(gen(A1, Generator::Theta));
  REQUIRE(z.size() == 1);
  CHECK(z.begin()->first == ZMonomial{{1, 0, 0}, {0, 0, 0, 0}});
  CHECK(z.begin()->second == Series::constant(1, 1));

  const auto A = make(1, 1, 1, 3);
  const ZMap q = to_z_basis(gen(A, Generator::Q1) * gen(A, Generator::Q2));
  REQUIRE(q.size() == 1);
  CHECK(q.begin()->first == ZMonomial{{0, 0, 0}, {1, 1, 0, 0}});

  // Z^I X^J written out directly: lambda^|I| Th^I Q^J / (I! J!)
  for (const auto& e : indices_up_to<7>(3)) {
    const ZMonomial zm{{e[0], e[1], e[2]}, {e[3], e[4], e[5], e[6]}};
    Element direct = A->lambda_power(norm(zm.central)) * A->monomial(e);
    direct *= Rational(1) / Rational(factorial(zm.central) * factorial(zm.qp));
    CHECK(from_z_basis(ZMap{{zm, Series::constant(1, 3)}}, A) == direct);
    const Element x = A->monomial(e);
    CHECK(from_z_basis(to_z_basis(x), A) == x);
    const ZMap back = to_z_basis(direct);
    CHECK(back.size() == 1);
    CHECK(back.at(zm) == Series::constant(1, 3));
  }
}

TEST_CASE("flatness map")
{
  const auto A1 = make(1, 1, 1, 1);
  CHECK(phi_automorphism(gen(A1, Generator::Q1)) == gen(A1, Generator::Q1));

  const auto A = make(2, 3, Rational(-1, 2), 3);
  const auto flat = make(2, 3, Rational(-1, 2), 3, Relations::undeformed);
  auto phi = [&](Generator g) { return phi_automorphism(flat->generator(g), A); };
  const Rational a = 2, b = 3, c = Rational(-1, 2);
  CHECK(commutator(phi(Generator::Q1), phi(Generator::P1)) == phi(Generator::Theta) * (1 / a));
  CHECK(commutator(phi(Generator::Q2), phi(Generator::P2)) == phi(Generator::Theta) * (1 / a));
  CHECK(commutator(phi(Generator::Q1), phi(Generator::Q2)) == phi(Generator::Phi) * (b / (a * a)));
  CHECK(commutator(phi(Generator::P1), phi(Generator::P2)) == phi(Generator::Psi) * (c / (a * a)));
  CHECK(commutator(phi(Generator::Q1), phi(Generator::P2)).is_zero());

  // phi(x y) = phi(x) phi(y), products on the left taken with undeformed relations
  const auto monos = indices_up_to<7>(2);
  for (const auto& m : monos)
    for (const auto& n : monos) {
      const Element x = flat->monomial(m), y = flat->monomial(n);
      CHECK(phi_automorphism(x * y, A) == phi_automorphism(x, A) * phi_automorphism(y, A));
    }
}

TEST_CASE("classical limits")
{
  const auto A = make(4, 1, 1, 3);
  CHECK(classical_limit(commutator(gen(A, Generator::Q1), gen(A, Generator::P1))) ==
        gen(A, Generator::Theta) * Rational(1, 4));
  CHECK(classical_limit(A->lambda()) == A->one());
  CHECK(classical_limit(gen(A, Generator::Q1)) == gen(A, Generator::Q1));
}
