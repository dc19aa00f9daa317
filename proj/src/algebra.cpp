#include "ncque/algebra.hpp"

#include <stdexcept>
#include <utility>

namespace ncque {

namespace {

constexpr std::array<std::string_view, 7> kTokens{"Th", "Ph", "Ps", "Q1", "Q2", "P1", "P2"};

PBWMonomial central_part(const PBWMonomial& m) { return {m[0], m[1], m[2], 0, 0, 0, 0}; }
PBWMonomial noncentral_part(const PBWMonomial& m) { return {0, 0, 0, m[3], m[4], m[5], m[6]}; }

PBWMonomial add(const PBWMonomial& a, const PBWMonomial& b)
{
  PBWMonomial out;
  for (std::size_t k = 0; k < 7; ++k) out[k] = a[k] + b[k];
  return out;
}

void check_compatible(const Element& a, const Element& b)
{
  if (a.algebra() == b.algebra()) return;
  if (!a.algebra() || !b.algebra() || !a.algebra()->compatible(*b.algebra()))
    throw std::invalid_argument("algebra parameter mismatch");
}

void accumulate(Element::Terms& acc, const PBWMonomial& m, const Series& c)
{
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) it->second += c;
}

Element from_terms(const AlgebraPtr& alg, Element::Terms&& acc)
{
  Element out(alg);
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.add_term(m, c);
  return out;
}

}  // namespace

std::string_view generator_token(Generator g) { return kTokens[static_cast<std::size_t>(g)]; }

void DeformParams::validate() const
{
  if (alpha == 0) throw std::invalid_argument("alpha must be nonzero");
  if (truncation < 0) throw std::invalid_argument("truncation order must be nonnegative");
}

int generator_degree(const PBWMonomial& m) { return norm(m); }

// ---------------------------------------------------------------------------
// Element

Element::Element(AlgebraPtr algebra) : alg_(std::move(algebra)) {}

int Element::truncation() const { return alg_->truncation(); }

bool Element::is_central() const
{
  for (const auto& t : terms_)
    if (t.first[3] || t.first[4] || t.first[5] || t.first[6]) return false;
  return true;
}

Series Element::coeff(const PBWMonomial& m) const
{
  auto it = terms_.find(m);
  return it == terms_.end() ? Series(truncation()) : it->second;
}

void Element::add_term(const PBWMonomial& m, const Series& c)
{
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element& Element::operator+=(const Element& o)
{
  check_compatible(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) { return *this += -o; }

Element& Element::operator*=(const Series& c)
{
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second * c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

Element& Element::operator*=(const Rational& c)
{
  if (c == 0) terms_.clear();
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Element Element::operator-() const
{
  Element out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Element operator*(const Element& a, const Element& b) { return normal_order_mul(a, b); }

bool operator==(const Element& a, const Element& b)
{
  if (a.alg_ != b.alg_ && (!a.alg_ || !b.alg_ || !a.alg_->compatible(*b.alg_))) return false;
  return a.terms_ == b.terms_;
}

// ---------------------------------------------------------------------------
// Algebra

Algebra::Algebra(const DeformParams& params, Relations relations)
    : params_(params), relations_(relations), lambda_(nullptr), lambda_inv_(nullptr)
{
  params_.validate();
}

AlgebraPtr Algebra::create(const DeformParams& params, Relations relations)
{
  std::shared_ptr<Algebra> alg(new Algebra(params, relations));
  alg->build();
  return alg;
}

bool Algebra::compatible(const Algebra& o) const
{
  return this == &o || (params_ == o.params_ && relations_ == o.relations_);
}

void Algebra::build()
{
  const int order = params_.truncation;
  // lambda = sum_n 4^n rho^{2n} / (2n+1)!; rho carries one hbar, so 2n <= order.
  const Element r = rho();
  const Element r2 = r * r;
  Element term = one();
  lambda_ = one();
  for (int n = 1; 2 * n <= order; ++n) {
    term = term * r2;
    lambda_ += term * Rational(ipow(4, static_cast<unsigned>(n)) /
                               Rational(factorial(static_cast<unsigned>(2 * n + 1))));
  }
  lambda_inv_ = central_inverse(lambda_);

  const Element lam = relations_ == Relations::deformed ? lambda_ : one();
  const Rational a2 = params_.alpha * params_.alpha;
  const Element lam_theta = lam * generator(Generator::Theta);
  const Element lam_phi = lam * generator(Generator::Phi);
  const Element lam_psi = lam * generator(Generator::Psi);
  for (int a = 0; a < 7; ++a)
    for (int b = a + 1; b < 7; ++b) brackets_.emplace(std::pair{a, b}, zero());
  const int q1 = 3, q2 = 4, p1 = 5, p2 = 6;
  brackets_.at({q1, p1}) = lam_theta * Rational(1 / params_.alpha);
  brackets_.at({q2, p2}) = lam_theta * Rational(1 / params_.alpha);
  brackets_.at({q1, q2}) = lam_phi * Rational(params_.beta / a2);
  brackets_.at({p1, p2}) = lam_psi * Rational(params_.gamma / a2);
}

Element Algebra::zero() const { return Element(shared_from_this()); }

Element Algebra::one() const { return scalar(Rational(1)); }

Element Algebra::scalar(const Series& c) const { return monomial(PBWMonomial{}, c); }

Element Algebra::scalar(const Rational& c) const
{
  return scalar(Series::constant(c, params_.truncation));
}

Element Algebra::monomial(const PBWMonomial& m, const Series& c) const
{
  Element out = zero();
  out.add_term(m, c);
  return out;
}

Element Algebra::monomial(const PBWMonomial& m) const
{
  return monomial(m, Series::constant(1, params_.truncation));
}

Element Algebra::hbar(int i) const { return scalar(Series::hbar(i, params_.truncation)); }

Element Algebra::generator(Generator g) const
{
  return monomial(unit_index<7>(static_cast<std::size_t>(g)));
}

Element Algebra::rho() const
{
  Element out = zero();
  for (int i = 0; i < 3; ++i)
    out.add_term(unit_index<7>(static_cast<std::size_t>(i)), Series::hbar(i + 1, params_.truncation));
  return out;
}

Element Algebra::lambda_power(int n) const
{
  if (n == 0) return one();
  if (n == 1) return lambda_;
  if (n == -1) return lambda_inv_;
  {
    std::lock_guard lock(mutex_);
    if (auto it = lambda_pow_memo_.find(n); it != lambda_pow_memo_.end()) return it->second;
  }
  Element value = power(n > 0 ? lambda_ : lambda_inv_, n > 0 ? n : -n);
  std::lock_guard lock(mutex_);
  return lambda_pow_memo_.try_emplace(n, std::move(value)).first->second;
}

Element Algebra::exp_rho(const Rational& c) const
{
  {
    std::lock_guard lock(mutex_);
    if (auto it = exp_memo_.find(c); it != exp_memo_.end()) return it->second;
  }
  const Element x = rho() * c;
  Element term = one();
  Element sum = one();
  for (int n = 1; n <= params_.truncation; ++n) {
    term = term * x * Rational(1, n);
    if (term.is_zero()) break;
    sum += term;
  }
  std::lock_guard lock(mutex_);
  return exp_memo_.try_emplace(c, std::move(sum)).first->second;
}

const Element& Algebra::bracket(int a, int b) const
{
  if (a >= b) throw std::invalid_argument("bracket expects a < b");
  return brackets_.at({a, b});
}

Element Algebra::monomial_product(const PBWMonomial& a, const PBWMonomial& b) const
{
  return monomial(a) * monomial(b);
}

const Element& Algebra::ordered_product(const PBWMonomial& a, const PBWMonomial& b) const
{
  const auto key = std::pair{a, b};
  {
    std::lock_guard lock(mutex_);
    if (auto it = product_memo_.find(key); it != product_memo_.end()) return it->second;
  }
  Element value = reorder(a, b);
  std::lock_guard lock(mutex_);
  return product_memo_.try_emplace(key, std::move(value)).first->second;
}

// a and b carry no central exponents. Right-multiplies a by the generator
// powers of b one generator at a time.
Element Algebra::reorder(const PBWMonomial& a, const PBWMonomial& b) const
{
  Element current = monomial(a);
  for (int j = 3; j < 7; ++j) {
    const int p = b[static_cast<std::size_t>(j)];
    if (p == 0) continue;
    Element next = zero();
    for (const auto& [m, c] : current.terms()) {
      const PBWMonomial cen = central_part(m);
      const Element pushed = push_right(noncentral_part(m), j, p);
      for (const auto& [pm, pc] : pushed.terms()) next.add_term(add(pm, cen), pc * c);
    }
    current = std::move(next);
  }
  return current;
}

// n * x_j^p for an ordered, central-free n. x_j^p is moved left past every
// x_k^{m} with k > j by the exchange rule
//   x_k^m x_j^p = sum_t (-1)^t t! C(m,t) C(p,t) [x_j,x_k]^t x_j^{p-t} x_k^{m-t},
// valid because [x_j, x_k] is central.
Element Algebra::push_right(const PBWMonomial& n, int j, int power_p) const
{
  struct State {
    Element coef;
    int p;
    PBWMonomial kept;
  };
  std::vector<State> states;
  states.push_back({one(), power_p, PBWMonomial{}});

  for (int k = 6; k > j; --k) {
    const int mk = n[static_cast<std::size_t>(k)];
    if (mk == 0) continue;
    const Element& c = bracket(j, k);
    std::vector<State> next;
    for (auto& s : states) {
      const int tmax = c.is_zero() ? 0 : std::min(mk, s.p);
      Element cpow = one();
      for (int t = 0; t <= tmax; ++t) {
        if (t > 0) cpow = cpow * c;
        Rational w = Rational(factorial(static_cast<unsigned>(t))) *
                     Rational(binomial(static_cast<unsigned>(mk), static_cast<unsigned>(t))) *
                     Rational(binomial(static_cast<unsigned>(s.p), static_cast<unsigned>(t)));
        if (t % 2) w = -w;
        State ns{s.coef * cpow * w, s.p - t, s.kept};
        if (ns.coef.is_zero()) continue;
        ns.kept[static_cast<std::size_t>(k)] = mk - t;
        next.push_back(std::move(ns));
      }
    }
    states = std::move(next);
  }

  Element out = zero();
  for (const auto& s : states) {
    PBWMonomial m = s.kept;
    for (int k = 3; k < j; ++k) m[static_cast<std::size_t>(k)] = n[static_cast<std::size_t>(k)];
    m[static_cast<std::size_t>(j)] = n[static_cast<std::size_t>(j)] + s.p;
    for (const auto& [cm, cc] : s.coef.terms()) out.add_term(add(m, cm), cc);
  }
  return out;
}

// ---------------------------------------------------------------------------
// free functions

Element normal_order_mul(const Element& x, const Element& y)
{
  check_compatible(x, y);
  const AlgebraPtr& alg = x.algebra();
  const int order = alg->truncation();
  Element::Terms acc;
  for (const auto& [mx, cx] : x.terms()) {
    const int dx = cx.min_degree();
    for (const auto& [my, cy] : y.terms()) {
      if (dx + cy.min_degree() > order) continue;
      const Series c = cx * cy;
      if (c.is_zero()) continue;
      const int dc = c.min_degree();
      alg->for_each_product_term(mx, my, [&](const PBWMonomial& m, const Series* pc) {
        if (!pc) {
          accumulate(acc, m, c);
        } else if (dc + pc->min_degree() <= order) {
          accumulate(acc, m, *pc * c);
        }
      });
    }
  }
  return from_terms(alg, std::move(acc));
}

Element commutator(const Element& x, const Element& y) { return x * y - y * x; }

Element power(const Element& x, int n)
{
  if (n < 0) throw std::invalid_argument("negative power");
  Element out = x.algebra()->one();
  for (int i = 0; i < n; ++i) out = out * x;
  return out;
}

Element central_inverse(const Element& x)
{
  if (!x.is_central()) throw std::domain_error("non-invertible: element is not central");
  const AlgebraPtr& alg = x.algebra();
  const Series u = x.coeff(PBWMonomial{});
  if (u.constant_term() == 0) throw std::domain_error("non-invertible series");
  const Series u_inv = u.inverse();
  // x = u (1 - n) with n nilpotent modulo the truncation.
  const Element n = alg->one() - x * u_inv;
  for (const auto& [m, c] : n.terms())
    if (c.min_degree() < 1) throw std::domain_error("non-invertible: unit part is not a scalar");
  Element sum = alg->one();
  Element p = alg->one();
  for (int k = 1; k <= alg->truncation(); ++k) {
    p = p * n;
    if (p.is_zero()) break;
    sum += p;
  }
  return sum * u_inv;
}

Element limit(const Element& x, const HbarMask& mask)
{
  return x.map_coefficients([&](const Series& c) { return c.limit(mask); });
}

Element classical_limit(const Element& x) { return limit(x, HbarMask::all()); }

Element reinterpret(const Element& x, const AlgebraPtr& target)
{
  if (x.truncation() != target->truncation())
    throw std::invalid_argument("reinterpret: truncation mismatch");
  Element out(target);
  for (const auto& [m, c] : x.terms()) out.add_term(m, c);
  return out;
}

Element phi_automorphism(const Element& x, const AlgebraPtr& target)
{
  if (x.truncation() != target->truncation())
    throw std::invalid_argument("phi: truncation mismatch");
  Element out(target);
  for (const auto& [m, c] : x.terms())
    out += target->lambda_power(-generator_degree(m)) * target->monomial(m, c);
  return out;
}

Element phi_automorphism(const Element& x) { return phi_automorphism(x, x.algebra()); }

// ---------------------------------------------------------------------------
// divided-power basis

ZMonomial z_of(const PBWMonomial& m)
{
  return {{m[0], m[1], m[2]}, {m[3], m[4], m[5], m[6]}};
}

PBWMonomial pbw_of(const ZMonomial& z)
{
  return {z.central[0], z.central[1], z.central[2], z.qp[0], z.qp[1], z.qp[2], z.qp[3]};
}

Element from_z_basis(const ZMap& z, const AlgebraPtr& algebra)
{
  Element out(algebra);
  for (const auto& [zm, c] : z) {
    const Rational scale = 1 / Rational(factorial(zm.central) * factorial(zm.qp));
    out += algebra->lambda_power(norm(zm.central)) * algebra->monomial(pbw_of(zm), c * scale);
  }
  return out;
}

const ZMap& Algebra::z_coordinates(const PBWMonomial& m) const
{
  {
    std::lock_guard lock(mutex_);
    if (auto it = z_memo_.find(m); it != z_memo_.end()) return it->second;
  }
  // Triangular inversion of from_z_basis: Theta^I Q^J = I! J! Z^I X^J minus
  // (lambda^{|I|} - 1) Theta^I Q^J, whose hbar order is at least two higher.
  ZMap result;
  Element residual = monomial(m);
  for (int round = 0; !residual.is_zero(); ++round) {
    if (round > params_.truncation + 1) throw std::logic_error("z-basis conversion did not terminate");
    Element correction = zero();
    for (const auto& [rm, rc] : residual.terms()) {
      const ZMonomial zm = z_of(rm);
      const Rational k(factorial(zm.central) * factorial(zm.qp));
      auto [it, inserted] = result.try_emplace(zm, rc * k);
      if (!inserted) it->second += rc * k;
      correction += lambda_power(norm(zm.central)) * monomial(rm, rc);
    }
    residual -= correction;
  }
  std::erase_if(result, [](const auto& kv) { return kv.second.is_zero(); });
  std::lock_guard lock(mutex_);
  return z_memo_.try_emplace(m, std::move(result)).first->second;
}

ZMap to_z_basis(const Element& x)
{
  ZMap out;
  for (const auto& [m, c] : x.terms()) {
    for (const auto& [zm, zc] : x.algebra()->z_coordinates(m)) {
      auto [it, inserted] = out.try_emplace(zm, zc * c);
      if (!inserted) it->second += zc * c;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  return out;
}

}  // namespace ncque
