#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ncque/rational.hpp"

namespace ncque {

/// hbar1^m1 hbar2^m2 hbar3^m3.
struct HMonomial {
  std::array<int, 3> deg{0, 0, 0};

  int total() const { return deg[0] + deg[1] + deg[2]; }

  static HMonomial unit(int i)
  {
    HMonomial m;
    m.deg[static_cast<std::size_t>(i)] = 1;
    return m;
  }

  friend HMonomial operator+(const HMonomial& a, const HMonomial& b)
  {
    return {{a.deg[0] + b.deg[0], a.deg[1] + b.deg[1], a.deg[2] + b.deg[2]}};
  }
  friend bool operator==(const HMonomial&, const HMonomial&) = default;

  // Graded order: total degree first, then hbar1 before hbar2 before hbar3.
  friend std::strong_ordering operator<=>(const HMonomial& a, const HMonomial& b)
  {
    if (auto c = a.total() <=> b.total(); c != 0) return c;
    return b.deg <=> a.deg;
  }
};

/// Which deformation parameters a limit sends to zero; bit i-1 stands for hbar_i.
struct HbarMask {
  std::array<bool, 3> zeroed{false, false, false};

  static HbarMask all() { return {{true, true, true}}; }
  static HbarMask only(int i)  // keeps hbar_i, zeroes the other two
  {
    HbarMask m = all();
    m.zeroed[static_cast<std::size_t>(i - 1)] = false;
    return m;
  }
};

/// Truncated formal power series in (hbar1, hbar2, hbar3) with rational coefficients.
///
/// Terms of total degree above the truncation order are discarded by every
/// operation and no zero coefficient is ever stored, so equality of two series
/// is equality of their term lists.
class Series {
 public:
  using Term = std::pair<HMonomial, Rational>;

  explicit Series(int truncation = 0);

  static Series constant(const Rational& c, int truncation);
  static Series monomial(const HMonomial& m, const Rational& c, int truncation);
  static Series hbar(int i, int truncation) { return monomial(HMonomial::unit(i - 1), 1, truncation); }

  int truncation() const { return trunc_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Lowest total degree present; truncation + 1 for the zero series.
  int min_degree() const;
  Rational constant_term() const;
  bool is_constant() const;

  /// Coefficient of m; throws std::out_of_range when m lies beyond the truncation.
  Rational coeff(const HMonomial& m) const;

  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  Series& operator*=(const Rational& c);
  Series operator-() const;

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Rational& c) { return a *= c; }
  friend Series operator*(const Rational& c, Series a) { return a *= c; }
  friend bool operator==(const Series& a, const Series& b)
  {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

  /// Multiplicative inverse via the geometric series in (1 - a/u), u the constant term.
  /// Throws std::domain_error("non-invertible series") when u = 0.
  Series inverse() const;

  /// Sets the masked hbar's to zero.
  Series limit(const HbarMask& mask) const;

  /// Re-truncates at a lower order.
  Series truncated(int order) const;

  /// Multiplies by a monomial in hbar (terms pushed past the truncation vanish).
  Series shifted(const HMonomial& m) const;

 private:
  static Series from_unsorted(std::vector<Term> terms, int truncation);
  void check_same(const Series& o) const;

  int trunc_;
  std::vector<Term> terms_;  // sorted by HMonomial order, no zeros
};

std::string to_string(const Series& s);

}  // namespace ncque
