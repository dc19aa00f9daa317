#pragma once

#include <compare>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "ncque/algebra.hpp"
#include "ncque/hopf.hpp"
#include "ncque/lie.hpp"
#include "ncque/report.hpp"

namespace ncque {

/// W^K Y^L, the functional dual to Z^K X^L.
struct DualMonomial {
  MultiIndex<3> w{};
  MultiIndex<4> y{};

  int norm() const { return ncque::norm(w) + ncque::norm(y); }
  friend bool operator==(const DualMonomial&, const DualMonomial&) = default;
  friend auto operator<=>(const DualMonomial&, const DualMonomial&) = default;
};

/// chi_1..chi_7: the seven unit monomials W^{e1}, W^{e2}, W^{e3}, Y^{e1}, ..., Y^{e4}.
DualMonomial chi(int k);
ZMonomial dual_of(const DualMonomial& m);
std::string to_string(const DualMonomial& m);
std::vector<DualMonomial> dual_monomials_up_to(int max_norm);

class DualElement {
 public:
  using Terms = std::map<DualMonomial, Series>;

  explicit DualElement(int truncation) : trunc_(truncation) {}
  static DualElement monomial(const DualMonomial& m, int truncation);
  static DualElement monomial(const DualMonomial& m, const Series& c);

  int truncation() const { return trunc_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Series coeff(const DualMonomial& m) const;

  void add_term(const DualMonomial& m, const Series& c);

  DualElement& operator+=(const DualElement& o);
  DualElement& operator-=(const DualElement& o);
  DualElement& operator*=(const Series& c);
  DualElement& operator*=(const Rational& c);
  DualElement operator-() const;

  friend DualElement operator+(DualElement a, const DualElement& b) { return a += b; }
  friend DualElement operator-(DualElement a, const DualElement& b) { return a -= b; }
  friend DualElement operator*(DualElement a, const Rational& c) { return a *= c; }
  friend DualElement operator*(DualElement a, const Series& c) { return a *= c; }
  friend bool operator==(const DualElement&, const DualElement&) = default;

  template <typename F>
  DualElement map_coefficients(F&& f) const
  {
    DualElement out(trunc_);
    for (const auto& [m, c] : terms_) out.add_term(m, f(c));
    return out;
  }
  /// Coefficients re-truncated at a lower order.
  DualElement truncated(int order) const;

 private:
  void check_same(const DualElement& o) const;

  int trunc_;
  Terms terms_;
};

/// Closed star product on the dual basis:
///   W^I Y^J * W^K Y^L = sum_{M<=I, N<=K} H^{M+N} W^{I+K-M-N} Y^{J+L}
///                       binom(I,M) binom(K,N) (-2|K-N|-|L|)^|M| (2|I-M|+|J|)^|N|
/// with H^M = hbar1^m1 hbar2^m2 hbar3^m3 and 0^0 = 1.
DualElement star_closed(const DualElement& u, const DualElement& v);

/// The commutative product W^I Y^J . W^K Y^L = W^{I+K} Y^{J+L} (constant term of *).
DualElement label_product(const DualElement& u, const DualElement& v);

DualElement star_commutator(const DualElement& u, const DualElement& v);

/// Coefficient of hbar_i in u*v - v*u, with constant coefficients.
/// Needs truncation >= 1.
DualElement poisson_bracket_dir(const DualElement& u, const DualElement& v, int direction);

/// Structure constants of {.,.}_i on chi_1..chi_7.
/// Throws std::domain_error("non-linear bracket") if a bracket leaves the span.
LieData dual_structure_constants(int direction);

using ZTensor = std::map<std::pair<ZMonomial, ZMonomial>, Series>;

/// <u, x> with the dual-basis pairing.
Series pairing(const DualElement& u, const ZMap& x);
/// <a (x) b, t>
Series pairing(const DualMonomial& a, const DualMonomial& b, const ZTensor& t);

/// Star product through the definition <u*v, x> = <u (x) v, Delta(x)>, with
/// Delta(Z^S X^T) computed by the Hopf engine and re-expanded in Z-coordinates.
class StarOracle {
 public:
  explicit StarOracle(const DeformParams& params);

  const AlgebraPtr& algebra() const { return hopf_.algebra(); }
  /// Delta(Z^S X^T) in Z (x) Z coordinates (memoized).
  const ZTensor& delta_on_zbasis(const ZMonomial& st) const;
  /// Coefficients of a*b on every W^S Y^T with |S|+|T| <= degree_cap.
  DualElement star(const DualMonomial& a, const DualMonomial& b, int degree_cap) const;

 private:
  HopfStructure hopf_;
  mutable std::mutex mutex_;
  mutable std::map<ZMonomial, ZTensor> memo_;
};

ZTensor delta_on_zbasis(const MultiIndex<3>& s, const MultiIndex<4>& t, const DeformParams& params);
DualElement star_oracle(const DualMonomial& a, const DualMonomial& b, int degree_cap, const DeformParams& params);

/// Gates: oracle agreement mod hbar-degree 2, associativity mod hbar-degree 2,
/// unit law, constant term, classical commutativity, Poisson antisymmetry,
/// Jacobi and Leibniz per direction, chi relations, Jacobi of dual constants.
VerificationReport verify_star_report(int max_norm, const DeformParams& params);

/// Oracle vs closed formula at the full truncation order. Informational only:
/// the two are only known to agree below hbar-degree 2.
VerificationReport star_oracle_diagnostic(int max_norm, const DeformParams& params);

}  // namespace ncque
