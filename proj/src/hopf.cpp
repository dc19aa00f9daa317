#include "ncque/hopf.hpp"

#include <stdexcept>

namespace ncque {

namespace {

template <typename Map, typename Key>
void accumulate(Map& acc, const Key& k, const Series& c)
{
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(k, c);
  if (!inserted) it->second += c;
}

bool is_unit(const PBWMonomial& m) { return norm(m) == 0; }

bool is_central_monomial(const PBWMonomial& m) { return m[3] == 0 && m[4] == 0 && m[5] == 0 && m[6] == 0; }

}  // namespace

// ---------------------------------------------------------------------------
// TensorElement

Series TensorElement::coeff(const TensorKey& k) const
{
  auto it = terms_.find(k);
  return it == terms_.end() ? Series(alg_->truncation()) : it->second;
}

void TensorElement::add_term(const TensorKey& k, const Series& c)
{
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElement& TensorElement::operator+=(const TensorElement& o)
{
  if (alg_ != o.alg_ && !alg_->compatible(*o.alg_))
    throw std::invalid_argument("algebra parameter mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& o) { return *this += -o; }

TensorElement& TensorElement::operator*=(const Series& c)
{
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second * c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

TensorElement& TensorElement::operator*=(const Rational& c)
{
  if (c == 0) terms_.clear();
  for (auto& t : terms_) t.second *= c;
  return *this;
}

TensorElement TensorElement::operator-() const
{
  TensorElement out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) { return tensor_mul(a, b); }

void TripleTensorElement::add_term(const TripleKey& k, const Series& c)
{
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElement tensor(const Element& x, const Element& y)
{
  if (x.algebra() != y.algebra() && !x.algebra()->compatible(*y.algebra()))
    throw std::invalid_argument("algebra parameter mismatch");
  TensorElement out(x.algebra());
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) out.add_term({mx, my}, cx * cy);
  return out;
}

TensorElement tensor_mul(const TensorElement& a, const TensorElement& b)
{
  const AlgebraPtr& alg = a.algebra();
  if (alg != b.algebra() && !alg->compatible(*b.algebra()))
    throw std::invalid_argument("algebra parameter mismatch");
  const int order = alg->truncation();
  TensorElement::Terms acc;
  for (const auto& [ka, ca] : a.terms()) {
    const int da = ca.min_degree();
    for (const auto& [kb, cb] : b.terms()) {
      if (da + cb.min_degree() > order) continue;
      const Series c = ca * cb;
      if (c.is_zero()) continue;
      const int dc = c.min_degree();
      alg->for_each_product_term(ka.first, kb.first, [&](const PBWMonomial& m1, const Series* p1) {
        if (p1 && dc + p1->min_degree() > order) return;
        const Series c1 = p1 ? c * *p1 : c;
        const int d1 = c1.min_degree();
        alg->for_each_product_term(ka.second, kb.second, [&](const PBWMonomial& m2, const Series* p2) {
          if (!p2) {
            accumulate(acc, TensorKey{m1, m2}, c1);
          } else if (d1 + p2->min_degree() <= order) {
            accumulate(acc, TensorKey{m1, m2}, c1 * *p2);
          }
        });
      });
    }
  }
  TensorElement out(alg);
  for (auto& [k, c] : acc) out.add_term(k, c);
  return out;
}

TensorElement tensor_commutator(const TensorElement& a, const TensorElement& b)
{
  return a * b - b * a;
}

TensorElement flip(const TensorElement& t)
{
  TensorElement out(t.algebra());
  for (const auto& [k, c] : t.terms()) out.add_term({k.second, k.first}, c);
  return out;
}

TensorElement limit(const TensorElement& t, const HbarMask& mask)
{
  return t.map_coefficients([&](const Series& c) { return c.limit(mask); });
}

TensorElement central_inverse(const TensorElement& t)
{
  const AlgebraPtr& alg = t.algebra();
  for (const auto& [k, c] : t.terms())
    if (!is_central_monomial(k.first) || !is_central_monomial(k.second))
      throw std::domain_error("non-invertible: tensor is not central");
  const Series u = t.coeff({PBWMonomial{}, PBWMonomial{}});
  if (u.constant_term() == 0) throw std::domain_error("non-invertible series");
  const Series u_inv = u.inverse();
  const TensorElement one = tensor(alg->one(), alg->one());
  TensorElement scaled = t;
  scaled *= u_inv;
  const TensorElement n = one - scaled;
  for (const auto& [k, c] : n.terms())
    if (c.min_degree() < 1) throw std::domain_error("non-invertible: unit part is not a scalar");
  TensorElement sum = one;
  TensorElement p = one;
  for (int k = 1; k <= alg->truncation(); ++k) {
    p = p * n;
    if (p.is_zero()) break;
    sum += p;
  }
  sum *= u_inv;
  return sum;
}

// ---------------------------------------------------------------------------
// HopfStructure

HopfStructure::HopfStructure(AlgebraPtr algebra)
    : alg_(std::move(algebra)), delta_rho_(alg_), delta_lambda_(alg_), delta_lambda_inv_(alg_)
{
  const Element one = alg_->one();
  const Element rho = alg_->rho();
  delta_rho_ = tensor(rho, one) + tensor(one, rho);

  const TensorElement drho2 = delta_rho_ * delta_rho_;
  TensorElement term = tensor(one, one);
  delta_lambda_ = term;
  for (int n = 1; 2 * n <= alg_->truncation(); ++n) {
    term = term * drho2;
    delta_lambda_ += term * Rational(ipow(4, static_cast<unsigned>(n)) /
                                     Rational(factorial(static_cast<unsigned>(2 * n + 1))));
  }
  delta_lambda_inv_ = central_inverse(delta_lambda_);
}

TensorElement HopfStructure::generator_coproduct(Generator g) const
{
  const Element x = alg_->generator(g);
  if (!is_central(g))
    return tensor(x, alg_->exp_rho(1)) + tensor(alg_->exp_rho(-1), x);
  const Element lx = alg_->lambda() * x;
  const TensorElement numerator = tensor(lx, alg_->exp_rho(2)) + tensor(alg_->exp_rho(-2), lx);
  return numerator * delta_lambda_inv_;
}

const TensorElement& HopfStructure::coproduct(const PBWMonomial& m) const
{
  {
    std::lock_guard lock(mutex_);
    if (auto it = delta_memo_.find(m); it != delta_memo_.end()) return it->second;
  }
  TensorElement value(alg_);
  if (is_unit(m)) {
    value = tensor(alg_->one(), alg_->one());
  } else {
    int last = 6;
    while (m[static_cast<std::size_t>(last)] == 0) --last;
    PBWMonomial rest = m;
    --rest[static_cast<std::size_t>(last)];
    // rest * x_last is already in PBW order.
    if (is_unit(rest))
      value = generator_coproduct(static_cast<Generator>(last));
    else
      value = coproduct(rest) * coproduct(unit_index<7>(static_cast<std::size_t>(last)));
  }
  std::lock_guard lock(mutex_);
  return delta_memo_.try_emplace(m, std::move(value)).first->second;
}

TensorElement HopfStructure::coproduct(const Element& x) const
{
  TensorElement out(alg_);
  for (const auto& [m, c] : x.terms()) {
    TensorElement t = coproduct(m);
    t *= c;
    out += t;
  }
  return out;
}

Series HopfStructure::counit(const Element& x) const { return x.coeff(PBWMonomial{}); }

const Element& HopfStructure::antipode(const PBWMonomial& m) const
{
  {
    std::lock_guard lock(mutex_);
    if (auto it = antipode_memo_.find(m); it != antipode_memo_.end()) return it->second;
  }
  // Anti-homomorphism with S(g) = -g: reverse the factor order, then normal-order.
  const PBWMonomial central{m[0], m[1], m[2], 0, 0, 0, 0};
  Element value = alg_->monomial(central) * Rational(generator_degree(m) % 2 ? -1 : 1);
  for (int k = 6; k >= 3; --k) {
    const int e = m[static_cast<std::size_t>(k)];
    if (e == 0) continue;
    PBWMonomial f{};
    f[static_cast<std::size_t>(k)] = e;
    value = value * alg_->monomial(f);
  }
  std::lock_guard lock(mutex_);
  return antipode_memo_.try_emplace(m, std::move(value)).first->second;
}

Element HopfStructure::antipode(const Element& x) const
{
  Element out(alg_);
  for (const auto& [m, c] : x.terms()) out += antipode(m) * c;
  return out;
}

Element HopfStructure::mu_s1(const TensorElement& t) const
{
  Element out(alg_);
  for (const auto& [k, c] : t.terms()) out += antipode(k.first) * alg_->monomial(k.second, c);
  return out;
}

Element HopfStructure::mu_1s(const TensorElement& t) const
{
  Element out(alg_);
  for (const auto& [k, c] : t.terms()) out += alg_->monomial(k.first, c) * antipode(k.second);
  return out;
}

TripleTensorElement HopfStructure::delta_left(const TensorElement& t) const
{
  const int order = alg_->truncation();
  TripleTensorElement out;
  for (const auto& [k, c] : t.terms()) {
    for (const auto& [k2, c2] : coproduct(k.first).terms()) {
      if (c.min_degree() + c2.min_degree() > order) continue;
      out.add_term({k2.first, k2.second, k.second}, c * c2);
    }
  }
  return out;
}

TripleTensorElement HopfStructure::delta_right(const TensorElement& t) const
{
  const int order = alg_->truncation();
  TripleTensorElement out;
  for (const auto& [k, c] : t.terms()) {
    for (const auto& [k2, c2] : coproduct(k.second).terms()) {
      if (c.min_degree() + c2.min_degree() > order) continue;
      out.add_term({k.first, k2.first, k2.second}, c * c2);
    }
  }
  return out;
}

Element HopfStructure::counit_left(const TensorElement& t) const
{
  Element out(alg_);
  for (const auto& [k, c] : t.terms())
    if (is_unit(k.first)) out.add_term(k.second, c);
  return out;
}

Element HopfStructure::counit_right(const TensorElement& t) const
{
  Element out(alg_);
  for (const auto& [k, c] : t.terms())
    if (is_unit(k.second)) out.add_term(k.first, c);
  return out;
}

TensorElement coproduct(const Element& x) { return HopfStructure(x.algebra()).coproduct(x); }
Series counit(const Element& x) { return HopfStructure(x.algebra()).counit(x); }
Element antipode(const Element& x) { return HopfStructure(x.algebra()).antipode(x); }

std::vector<PBWMonomial> monomials_up_to(int max_generator_degree)
{
  return indices_up_to<7>(max_generator_degree);
}

namespace {

std::string mono_str(const PBWMonomial& m) { return to_string(m); }

std::string gen_str(int g) { return std::string(generator_token(static_cast<Generator>(g))); }

}  // namespace

VerificationReport verify_hopf_axioms(int max_generator_degree, const DeformParams& params)
{
  params.validate();
  HopfStructure hopf(Algebra::create(params));
  return verify_hopf_axioms(max_generator_degree, hopf);
}

VerificationReport verify_hopf_axioms(int max_generator_degree, const HopfStructure& hopf)
{
  const AlgebraPtr& alg = hopf.algebra();
  const auto monomials = monomials_up_to(max_generator_degree);
  const Element one = alg->one();

  CheckTally coassoc("coassociativity", "(Delta x 1) Delta = (1 x Delta) Delta");
  CheckTally counit_ok("counit", "(eps x 1) Delta = (1 x eps) Delta = id");
  CheckTally antipode_ok("antipode", "mu (S x 1) Delta = mu (1 x S) Delta = eps 1");
  for (const auto& m : monomials) {
    const TensorElement& d = hopf.coproduct(m);
    coassoc.record(hopf.delta_left(d) == hopf.delta_right(d), mono_str(m));
    const Element x = alg->monomial(m);
    counit_ok.record(hopf.counit_left(d) == x && hopf.counit_right(d) == x, mono_str(m));
    const Element e = alg->scalar(hopf.counit(x));
    antipode_ok.record(hopf.mu_s1(d) == e && hopf.mu_1s(d) == e, mono_str(m));
  }

  // Delta and S against normal-ordered products of monomials, both orders.
  CheckTally hom("coproduct multiplicative", "Delta(x y) = Delta(x) Delta(y)");
  CheckTally anti("antipode anti-multiplicative", "S(x y) = S(y) S(x)");
  for (const auto& a : monomials) {
    const int da = generator_degree(a);
    if (da == 0) continue;
    for (const auto& b : monomials) {
      const int db = generator_degree(b);
      if (db == 0 || da + db > max_generator_degree) continue;
      const Element xa = alg->monomial(a);
      const Element xb = alg->monomial(b);
      const Element prod = xa * xb;
      const std::string where = mono_str(a) + " * " + mono_str(b);
      hom.record(hopf.coproduct(prod) == hopf.coproduct(a) * hopf.coproduct(b), where);
      anti.record(hopf.antipode(prod) == hopf.antipode(b) * hopf.antipode(a), where);
    }
  }

  CheckTally rel_delta("relations under Delta", "Delta([x,y]) = [Delta x, Delta y]");
  CheckTally rel_s("relations under S", "S([x,y]) = [S y, S x]");
  for (int i = 0; i < kNumGenerators; ++i) {
    for (int j = i + 1; j < kNumGenerators; ++j) {
      const Element x = alg->generator(static_cast<Generator>(i));
      const Element y = alg->generator(static_cast<Generator>(j));
      const std::string where = "[" + gen_str(i) + "," + gen_str(j) + "]";
      const TensorElement dx = hopf.coproduct(x);
      const TensorElement dy = hopf.coproduct(y);
      rel_delta.record(hopf.coproduct(commutator(x, y)) == tensor_commutator(dx, dy), where);
      const Element sx = hopf.antipode(x);
      const Element sy = hopf.antipode(y);
      rel_s.record(hopf.antipode(commutator(x, y)) == commutator(sy, sx), where);
    }
  }

  CheckTally rho_ok("coproduct of rho", "sum_i hbar_i Delta(central_i) = rho (x) 1 + 1 (x) rho");
  {
    TensorElement lhs(alg);
    for (int i = 0; i < kNumCentral; ++i) {
      TensorElement t = hopf.coproduct(alg->generator(static_cast<Generator>(i)));
      t *= Series::hbar(i + 1, alg->truncation());
      lhs += t;
    }
    const Element rho = alg->rho();
    rho_ok.record(lhs == tensor(rho, one) + tensor(one, rho), "rho");
  }

  CheckTally lambda_ok("coproduct of lambda", "Delta(lambda) = lambda(Delta rho)");
  lambda_ok.record(hopf.coproduct(alg->lambda()) == hopf.coproduct_of_lambda(), "lambda");

  CheckTally primitive("classical primitivity", "Delta(g) = g (x) 1 + 1 (x) g at hbar = 0");
  for (int g = 0; g < kNumGenerators; ++g) {
    const Element x = alg->generator(static_cast<Generator>(g));
    const TensorElement diff = hopf.coproduct(x) - tensor(x, one) - tensor(one, x);
    primitive.record(limit(diff, HbarMask::all()).is_zero(), gen_str(g));
  }

  VerificationReport report;
  for (const CheckTally* t : {&coassoc, &counit_ok, &antipode_ok, &hom, &anti, &rel_delta, &rel_s, &rho_ok,
                              &lambda_ok, &primitive})
    report.add(t->finish());
  return report;
}

VerificationReport heisenberg_limit_report(int hbar_degree)
{
  DeformParams params;
  params.truncation = hbar_degree;
  params.validate();
  const AlgebraPtr alg = Algebra::create(params);
  HopfStructure hopf(alg);
  const HbarMask mask = HbarMask::only(1);
  const int order = hbar_degree;

  // Scalar expansions written directly in Theta monomials.
  auto hbar_theta = [&](int n, const Rational& c) {
    PBWMonomial m{};
    m[0] = n;
    return alg->monomial(m, Series::monomial(HMonomial{{n, 0, 0}}, c, order));
  };
  // sinh(2 h Theta) / (2h) = sum_n 4^n h^{2n} Theta^{2n+1} / (2n+1)!
  Element sinh_term(alg);
  for (int n = 0; 2 * n <= order; ++n) {
    PBWMonomial m{};
    m[0] = 2 * n + 1;
    const Rational c = Rational(ipow(4, static_cast<unsigned>(n))) / Rational(factorial(static_cast<unsigned>(2 * n + 1)));
    sinh_term += alg->monomial(m, Series::monomial(HMonomial{{2 * n, 0, 0}}, c, order));
  }
  auto exp_h_theta = [&](int sign) {
    Element e(alg);
    for (int n = 0; n <= order; ++n) {
      Rational c = Rational(1) / Rational(factorial(static_cast<unsigned>(n)));
      if (sign < 0 && n % 2) c = -c;
      e += hbar_theta(n, c);
    }
    return e;
  };

  VerificationReport report;
  auto gen = [&](Generator g) { return alg->generator(g); };
  const Element one = alg->one();

  CheckTally brackets("Heisenberg brackets", "[Q_i,P_j] = delta_ij sinh(2 h Theta)/(2h), others 0");
  const Generator qs[2] = {Generator::Q1, Generator::Q2};
  const Generator ps[2] = {Generator::P1, Generator::P2};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Element lhs = limit(commutator(gen(qs[i]), gen(ps[j])), mask);
      const Element rhs = i == j ? sinh_term : alg->zero();
      brackets.record(lhs == rhs, "[Q" + std::to_string(i + 1) + ",P" + std::to_string(j + 1) + "]");
    }
  }
  brackets.record(limit(commutator(gen(Generator::Q1), gen(Generator::Q2)), mask).is_zero(), "[Q1,Q2]");
  brackets.record(limit(commutator(gen(Generator::P1), gen(Generator::P2)), mask).is_zero(), "[P1,P2]");
  report.add(brackets.finish());

  CheckTally theta("Theta primitive", "Delta(Theta) = Theta (x) 1 + 1 (x) Theta");
  const Element th = gen(Generator::Theta);
  theta.record(limit(hopf.coproduct(th), mask) == tensor(th, one) + tensor(one, th), "Theta");
  report.add(theta.finish());

  CheckTally qp("Heisenberg coproduct", "Delta(x) = x (x) e^{h Theta} + e^{-h Theta} (x) x for x = Q_i, P_i");
  const Element ep = exp_h_theta(1);
  const Element em = exp_h_theta(-1);
  for (Generator g : {Generator::Q1, Generator::Q2, Generator::P1, Generator::P2}) {
    const Element x = gen(g);
    qp.record(limit(hopf.coproduct(x), mask) == tensor(x, ep) + tensor(em, x),
              std::string(generator_token(g)));
  }
  report.add(qp.finish());
  return report;
}

}  // namespace ncque
