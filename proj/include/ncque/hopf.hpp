#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <utility>

#include "ncque/algebra.hpp"
#include "ncque/report.hpp"

namespace ncque {

using TensorKey = std::pair<PBWMonomial, PBWMonomial>;

/// Element of U (x) U. Multiplication is leg-wise, no sign rule.
class TensorElement {
 public:
  using Terms = std::map<TensorKey, Series>;

  explicit TensorElement(AlgebraPtr algebra) : alg_(std::move(algebra)) {}

  const AlgebraPtr& algebra() const { return alg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Series coeff(const TensorKey& k) const;

  void add_term(const TensorKey& k, const Series& c);

  TensorElement& operator+=(const TensorElement& o);
  TensorElement& operator-=(const TensorElement& o);
  TensorElement& operator*=(const Series& c);
  TensorElement& operator*=(const Rational& c);
  TensorElement operator-() const;

  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(TensorElement a, const Rational& c) { return a *= c; }
  friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
  friend bool operator==(const TensorElement& a, const TensorElement& b) { return a.terms_ == b.terms_; }

  template <typename F>
  TensorElement map_coefficients(F&& f) const
  {
    TensorElement out(alg_);
    for (const auto& [k, c] : terms_) out.add_term(k, f(c));
    return out;
  }

 private:
  AlgebraPtr alg_;
  Terms terms_;
};

using TripleKey = std::tuple<PBWMonomial, PBWMonomial, PBWMonomial>;

/// Element of U (x) U (x) U; only needed as a comparison carrier.
class TripleTensorElement {
 public:
  using Terms = std::map<TripleKey, Series>;

  void add_term(const TripleKey& k, const Series& c);
  const Terms& terms() const { return terms_; }
  friend bool operator==(const TripleTensorElement&, const TripleTensorElement&) = default;

 private:
  Terms terms_;
};

TensorElement tensor(const Element& x, const Element& y);
TensorElement tensor_mul(const TensorElement& a, const TensorElement& b);
TensorElement tensor_commutator(const TensorElement& a, const TensorElement& b);
/// sigma(x (x) y) = y (x) x
TensorElement flip(const TensorElement& t);
TensorElement limit(const TensorElement& t, const HbarMask& mask);
/// Inverse of an element of the commutative subalgebra spanned by central (x) central,
/// with invertible 1 (x) 1 coefficient and nilpotent remainder.
TensorElement central_inverse(const TensorElement& t);

/// Coproduct, counit and antipode of the quantized algebra, with per-monomial memos.
///
///   Delta(Q_i) = Q_i (x) e^rho + e^-rho (x) Q_i        (same for P_i)
///   Delta(Theta) = (lambda Theta (x) e^{2rho} + e^{-2rho} (x) lambda Theta) / Delta(lambda)
///   Delta(lambda) = lambda evaluated at Delta(rho) = rho (x) 1 + 1 (x) rho
///
/// Monomials are mapped multiplicatively, so Delta is an algebra map on the PBW
/// basis by construction; the verification suite checks it against reordered
/// products independently.
class HopfStructure {
 public:
  explicit HopfStructure(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return alg_; }

  TensorElement coproduct(const Element& x) const;
  const TensorElement& coproduct(const PBWMonomial& m) const;
  const TensorElement& coproduct_of_lambda() const { return delta_lambda_; }
  Series counit(const Element& x) const;
  Element antipode(const Element& x) const;
  const Element& antipode(const PBWMonomial& m) const;

  /// mu (S (x) 1) and mu (1 (x) S).
  Element mu_s1(const TensorElement& t) const;
  Element mu_1s(const TensorElement& t) const;
  /// (Delta (x) 1) and (1 (x) Delta).
  TripleTensorElement delta_left(const TensorElement& t) const;
  TripleTensorElement delta_right(const TensorElement& t) const;
  /// (epsilon (x) 1) and (1 (x) epsilon).
  Element counit_left(const TensorElement& t) const;
  Element counit_right(const TensorElement& t) const;

 private:
  TensorElement generator_coproduct(Generator g) const;

  AlgebraPtr alg_;
  TensorElement delta_rho_;
  TensorElement delta_lambda_;
  TensorElement delta_lambda_inv_;
  mutable std::mutex mutex_;
  mutable std::map<PBWMonomial, TensorElement> delta_memo_;
  mutable std::map<PBWMonomial, Element> antipode_memo_;
};

/// Convenience wrappers that build a fresh HopfStructure.
TensorElement coproduct(const Element& x);
Series counit(const Element& x);
Element antipode(const Element& x);

/// Exhaustive check of the Hopf axioms on every PBW monomial of generator
/// degree <= max_generator_degree, plus the relation-preservation checks on all
/// generator pairs.
VerificationReport verify_hopf_axioms(int max_generator_degree, const DeformParams& params);
VerificationReport verify_hopf_axioms(int max_generator_degree, const HopfStructure& hopf);

/// alpha = 1, beta = gamma = 0, hbar2 = hbar3 = 0: compares [Q_i,P_j], Delta(Theta),
/// Delta(Q_i), Delta(P_i) with the quantum Heisenberg algebra written in hbar = hbar1.
VerificationReport heisenberg_limit_report(int hbar_degree);

std::vector<PBWMonomial> monomials_up_to(int max_generator_degree);

}  // namespace ncque
