#pragma once

#include <array>
#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <string_view>
#include <vector>

#include "ncque/multiindex.hpp"
#include "ncque/rational.hpp"
#include "ncque/series.hpp"

namespace ncque {

/// Generators in PBW order. Theta, Phi, Psi are central; all commutators
/// among Q1, Q2, P1, P2 are central.
enum class Generator : int { Theta = 0, Phi, Psi, Q1, Q2, P1, P2 };

inline constexpr int kNumGenerators = 7;
inline constexpr int kNumCentral = 3;

std::string_view generator_token(Generator g);  // "Th", "Ph", ...
inline bool is_central(Generator g) { return static_cast<int>(g) < kNumCentral; }

/// Exponents (e_Theta, e_Phi, e_Psi, e_Q1, e_Q2, e_P1, e_P2).
using PBWMonomial = MultiIndex<7>;

struct DeformParams {
  Rational alpha{1};
  Rational beta{0};
  Rational gamma{0};
  int truncation{2};

  /// Throws std::invalid_argument for alpha == 0 or a negative truncation.
  void validate() const;
  friend bool operator==(const DeformParams&, const DeformParams&) = default;
};

/// `deformed` uses the quantized relations [Q_i,P_j] = delta_ij lambda Theta / alpha, ...;
/// `undeformed` sets lambda = 1 in the relations (the trivial deformation U(g)[[hbar]]).
enum class Relations { deformed, undeformed };

/// Z^I X^J = (lambda Theta)^{i1} (lambda Phi)^{i2} (lambda Psi)^{i3} / I! * Q1^{j1} Q2^{j2} P1^{j3} P2^{j4} / J!.
struct ZMonomial {
  MultiIndex<3> central{};
  MultiIndex<4> qp{};

  friend bool operator==(const ZMonomial&, const ZMonomial&) = default;
  friend auto operator<=>(const ZMonomial&, const ZMonomial&) = default;
};

using ZMap = std::map<ZMonomial, Series>;

class Algebra;
using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Finite sum of PBW monomials with series coefficients.
class Element {
 public:
  using Terms = std::map<PBWMonomial, Series>;

  explicit Element(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  int truncation() const;
  bool is_zero() const { return terms_.empty(); }
  /// True when only Theta, Phi, Psi exponents occur.
  bool is_central() const;
  /// Coefficient of a monomial (zero series if absent).
  Series coeff(const PBWMonomial& m) const;

  void add_term(const PBWMonomial& m, const Series& c);

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Series& c);
  Element& operator*=(const Rational& c);
  Element operator-() const;

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Series& c) { return a *= c; }
  friend Element operator*(Element a, const Rational& c) { return a *= c; }
  friend Element operator*(const Rational& c, Element a) { return a *= c; }
  friend Element operator*(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b);

  /// Applies f to every coefficient, dropping terms that become zero.
  template <typename F>
  Element map_coefficients(F&& f) const
  {
    Element out(alg_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }

 private:
  AlgebraPtr alg_;
  Terms terms_;
};

/// The quantized enveloping algebra for one parameter set: defining relations
/// plus the central series rho, lambda, exp(c rho) and a product memo.
/// Instances are shared read-only; caches fill once under an internal lock.
class Algebra : public std::enable_shared_from_this<Algebra> {
 public:
  static AlgebraPtr create(const DeformParams& params, Relations relations = Relations::deformed);

  const DeformParams& params() const { return params_; }
  Relations relations() const { return relations_; }
  int truncation() const { return params_.truncation; }
  /// Same parameter set and relations.
  bool compatible(const Algebra& o) const;

  Element zero() const;
  Element one() const;
  Element scalar(const Series& c) const;
  Element scalar(const Rational& c) const;
  Element monomial(const PBWMonomial& m, const Series& c) const;
  Element monomial(const PBWMonomial& m) const;
  Element hbar(int i) const;

  Element generator(Generator g) const;
  /// hbar1 Theta + hbar2 Phi + hbar3 Psi.
  Element rho() const;
  /// sinh(2 rho) / (2 rho) = sum_n (2 rho)^{2n} / (2n+1)!.
  const Element& lambda() const { return lambda_; }
  const Element& lambda_inverse() const { return lambda_inv_; }
  /// lambda^n for any integer n.
  Element lambda_power(int n) const;
  /// exp(c rho) truncated at the series order.
  Element exp_rho(const Rational& c) const;

  /// [x_a, x_b] for generator indices a < b; always central.
  const Element& bracket(int a, int b) const;

  /// Normal-ordered product of two PBW monomials.
  Element monomial_product(const PBWMonomial& a, const PBWMonomial& b) const;

  /// Calls f(monomial, coefficient) for every term of the normal-ordered
  /// product a*b; `coefficient` is null when the product is just the merged
  /// monomial with coefficient 1.
  template <typename F>
  void for_each_product_term(const PBWMonomial& a, const PBWMonomial& b, F&& f) const;

  /// Z-coordinates of a single PBW monomial (memoized).
  const ZMap& z_coordinates(const PBWMonomial& m) const;

 private:
  friend Element normal_order_mul(const Element& x, const Element& y);

  Algebra(const DeformParams& params, Relations relations);
  void build();

  // Product of two central-free monomials, memoized.
  const Element& ordered_product(const PBWMonomial& a, const PBWMonomial& b) const;
  Element reorder(const PBWMonomial& a, const PBWMonomial& b) const;
  Element push_right(const PBWMonomial& n, int j, int power) const;

  DeformParams params_;
  Relations relations_;
  Element lambda_;
  Element lambda_inv_;
  std::map<std::pair<int, int>, Element> brackets_;

  mutable std::mutex mutex_;
  mutable std::map<std::pair<PBWMonomial, PBWMonomial>, Element> product_memo_;
  mutable std::map<Rational, Element> exp_memo_;
  mutable std::map<int, Element> lambda_pow_memo_;
  mutable std::map<PBWMonomial, ZMap> z_memo_;
};

template <typename F>
void Algebra::for_each_product_term(const PBWMonomial& a, const PBWMonomial& b, F&& f) const
{
  PBWMonomial merged;
  for (std::size_t k = 0; k < 7; ++k) merged[k] = a[k] + b[k];
  int last_a = -1;
  int first_b = 7;
  for (int k = 3; k < 7; ++k)
    if (a[static_cast<std::size_t>(k)] > 0) last_a = k;
  for (int k = 6; k >= 3; --k)
    if (b[static_cast<std::size_t>(k)] > 0) first_b = k;
  if (last_a <= first_b) {
    f(merged, static_cast<const Series*>(nullptr));
    return;
  }
  const PBWMonomial na{0, 0, 0, a[3], a[4], a[5], a[6]};
  const PBWMonomial nb{0, 0, 0, b[3], b[4], b[5], b[6]};
  for (const auto& [m, c] : ordered_product(na, nb).terms()) {
    PBWMonomial shifted = m;
    for (std::size_t k = 0; k < 3; ++k) shifted[k] += merged[k];
    f(static_cast<const PBWMonomial&>(shifted), &c);
  }
}

Element normal_order_mul(const Element& x, const Element& y);
Element commutator(const Element& x, const Element& y);
Element power(const Element& x, int n);

/// Inverse of a central element whose coefficient of 1 has nonzero constant term
/// and whose other coefficients all vanish at hbar = 0.
/// Throws std::domain_error when that does not hold.
Element central_inverse(const Element& x);

/// Sets the masked hbar's to zero in every coefficient.
Element limit(const Element& x, const HbarMask& mask);
/// All three hbar's to zero.
Element classical_limit(const Element& x);

/// Copies PBW coordinates into another algebra (same truncation required).
Element reinterpret(const Element& x, const AlgebraPtr& target);

/// Flatness map: each PBW monomial of generator degree g is scaled by lambda^{-g}.
/// Read as a map from the undeformed algebra's coordinates into `target`, it is an
/// algebra isomorphism U(g)[[hbar]] -> U_hbar(g).
Element phi_automorphism(const Element& x, const AlgebraPtr& target);
Element phi_automorphism(const Element& x);

int generator_degree(const PBWMonomial& m);

ZMonomial z_of(const PBWMonomial& m);
PBWMonomial pbw_of(const ZMonomial& z);

/// Coordinates of x in the divided-power basis Z^I X^J.
ZMap to_z_basis(const Element& x);
Element from_z_basis(const ZMap& z, const AlgebraPtr& algebra);

}  // namespace ncque
