#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncque/algebra.hpp"
#include "ncque/report.hpp"

namespace ncque {

using LieVector = std::vector<Rational>;

/// Structure constants [e_i, e_j] = sum_k c(i,j,k) e_k.
struct LieData {
  int dim = 0;
  std::vector<std::string> names;
  std::vector<Rational> constants;  // dim^3, row-major (i, j, k)

  explicit LieData(int d = 7);
  Rational& c(int i, int j, int k) { return constants[static_cast<std::size_t>((i * dim + j) * dim + k)]; }
  const Rational& c(int i, int j, int k) const { return constants[static_cast<std::size_t>((i * dim + j) * dim + k)]; }
  /// Sets c(i,j,k) = v and c(j,i,k) = -v.
  void set_bracket(int i, int j, int k, const Rational& v);
  friend bool operator==(const LieData&, const LieData&) = default;
};

/// [Q_i,P_j] = delta_ij Theta/alpha, [Q1,Q2] = beta Phi/alpha^2, [P1,P2] = gamma Psi/alpha^2.
LieData nc_lie_data(const DeformParams& params);

/// Constants read off the classical limit of the engine's commutators.
LieData lie_data_from_engine(const DeformParams& params);

LieVector lie_bracket(const LieVector& x, const LieVector& y, const LieData& L);
LieVector basis_vector(int i, int dim = 7);

/// Antisymmetry and Jacobi on all basis triples.
VerificationReport check_lie_data(const LieData& L, const std::string& label);

/// Element of Lambda^2 g, stored on i < j; x^y = x(x)y - y(x)x.
class WedgeElement {
 public:
  using Terms = std::map<std::pair<int, int>, Rational>;

  void add(int i, int j, const Rational& c);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coeff(int i, int j) const;
  friend bool operator==(const WedgeElement&, const WedgeElement&) = default;
  WedgeElement& operator+=(const WedgeElement& o);
  WedgeElement& operator*=(const Rational& c);

 private:
  Terms terms_;
};

std::string to_string(const WedgeElement& w);

/// Dense dim x dim matrix of a 2-tensor: T = sum T[a][b] e_a (x) e_b.
using TensorMatrix = std::vector<std::vector<Rational>>;
TensorMatrix to_matrix(const WedgeElement& w, int dim = 7);
/// Throws std::domain_error if T is not antisymmetric.
WedgeElement to_wedge(const TensorMatrix& t);

/// Cocommutator value on each basis vector.
using Cocommutator = std::vector<WedgeElement>;

/// First-order antisymmetric part of Delta(g) in the hbar_i direction:
/// (Delta - flip Delta)(g) with only hbar_i active, coefficient of hbar_i.
/// Throws std::domain_error("non-primitive residue") if that is not in Lambda^2 g.
WedgeElement cocommutator_dir(Generator g, int direction, const DeformParams& params);
Cocommutator cocommutator_all(int direction, const DeformParams& params);

/// delta(x) for x = sum x_k e_k.
TensorMatrix apply_cocommutator(const Cocommutator& delta, const LieVector& x);

/// Co-antisymmetry, 1-cocycle on all basis pairs, co-Jacobi.
VerificationReport bialgebra_axiom_check(const Cocommutator& delta, const LieData& L);

struct CoboundaryResult {
  Cocommutator delta;
  bool equals_target = false;
  VerificationReport report;
};

/// delta_r(x) = (ad_x (x) 1 + 1 (x) ad_x)(r).
CoboundaryResult coboundary_from_r(const WedgeElement& r, const LieData& L,
                                   const std::optional<Cocommutator>& target = std::nullopt);

/// [xi, eta]*(x) = (xi (x) eta)(delta(x)), as a vector in the dual basis.
LieVector dual_bracket_from_delta(const Cocommutator& delta, int xi, int eta);
LieData dual_lie_data(const Cocommutator& delta);

struct GroupElement {
  Rational theta, phi, psi;
  std::array<Rational, 2> q{}, p{};
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement group_identity();
GroupElement group_compose(const GroupElement& g, const GroupElement& h, const DeformParams& params);
GroupElement group_inverse(const GroupElement& g, const DeformParams& params);
/// "theta,phi,psi,q1,q2,p1,p2"
GroupElement parse_group_element(const std::string& text);
std::string to_string(const GroupElement& g);

/// Cocommutators of every direction, cocycle, co-Jacobi, classical constants,
/// coboundary obstruction on `samples` seeded random r, weighted combinations.
VerificationReport verify_bialgebra_report(const DeformParams& params, int samples = 20, unsigned seed = 7);

}  // namespace ncque
