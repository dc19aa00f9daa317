#include "ncque/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace ncque {

Series::Series(int truncation) : trunc_(truncation)
{
  if (truncation < 0) throw std::invalid_argument("negative truncation order");
}

Series Series::constant(const Rational& c, int truncation)
{
  return monomial(HMonomial{}, c, truncation);
}

Series Series::monomial(const HMonomial& m, const Rational& c, int truncation)
{
  Series s(truncation);
  if (c != 0 && m.total() <= truncation) s.terms_.emplace_back(m, c);
  return s;
}

int Series::min_degree() const
{
  return terms_.empty() ? trunc_ + 1 : terms_.front().first.total();
}

Rational Series::constant_term() const
{
  if (!terms_.empty() && terms_.front().first.total() == 0) return terms_.front().second;
  return 0;
}

bool Series::is_constant() const
{
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.total() == 0);
}

Rational Series::coeff(const HMonomial& m) const
{
  if (m.total() > trunc_) throw std::out_of_range("hbar monomial beyond truncation order");
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const HMonomial& k) { return t.first < k; });
  if (it != terms_.end() && it->first == m) return it->second;
  return 0;
}

void Series::check_same(const Series& o) const
{
  if (trunc_ != o.trunc_) throw std::invalid_argument("series truncation mismatch");
}

Series& Series::operator+=(const Series& o)
{
  check_same(o);
  if (o.terms_.empty()) return *this;
  if (terms_.empty()) {
    terms_ = o.terms_;
    return *this;
  }
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      Rational sum = a->second + b->second;
      if (sum != 0) out.emplace_back(a->first, std::move(sum));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Series& Series::operator-=(const Series& o) { return *this += -o; }

Series& Series::operator*=(const Rational& c)
{
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Series Series::operator-() const
{
  Series out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

Series Series::from_unsorted(std::vector<Term> terms, int truncation)
{
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return x.first < y.first; });
  Series s(truncation);
  for (auto& t : terms) {
    if (!s.terms_.empty() && s.terms_.back().first == t.first) {
      s.terms_.back().second += t.second;
    } else {
      if (!s.terms_.empty() && s.terms_.back().second == 0) s.terms_.pop_back();
      s.terms_.push_back(std::move(t));
    }
  }
  if (!s.terms_.empty() && s.terms_.back().second == 0) s.terms_.pop_back();
  return s;
}

Series operator*(const Series& a, const Series& b)
{
  a.check_same(b);
  const int order = a.trunc_;
  if (a.terms_.empty() || b.terms_.empty()) return Series(order);
  if (a.terms_.size() == 1 && a.terms_.front().first.total() == 0) return b * a.terms_.front().second;
  if (b.terms_.size() == 1 && b.terms_.front().first.total() == 0) return a * b.terms_.front().second;

  std::vector<Series::Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      // Terms are sorted by total degree, so the rest of b only gets worse.
      if (ma.total() + mb.total() > order) break;
      out.emplace_back(ma + mb, ca * cb);
    }
  }
  return Series::from_unsorted(std::move(out), order);
}

Series Series::inverse() const
{
  const Rational u = constant_term();
  if (u == 0) throw std::domain_error("non-invertible series");
  const Rational u_inv = 1 / u;
  // a = u (1 - n), n = 1 - a/u has no constant term; 1/a = u^-1 sum_k n^k.
  Series n = Series::constant(1, trunc_) - (*this) * u_inv;
  Series power = Series::constant(1, trunc_);
  Series sum = power;
  for (int k = 1; k <= trunc_; ++k) {
    power = power * n;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * u_inv;
}

Series Series::limit(const HbarMask& mask) const
{
  Series out(trunc_);
  for (const auto& t : terms_) {
    bool keep = true;
    for (std::size_t i = 0; i < 3; ++i)
      if (mask.zeroed[i] && t.first.deg[i] > 0) keep = false;
    if (keep) out.terms_.push_back(t);
  }
  return out;
}

Series Series::truncated(int order) const
{
  Series out(order);
  for (const auto& t : terms_)
    if (t.first.total() <= order) out.terms_.push_back(t);
  return out;
}

Series Series::shifted(const HMonomial& m) const
{
  Series out(trunc_);
  for (const auto& t : terms_)
    if (t.first.total() + m.total() <= trunc_) out.terms_.emplace_back(t.first + m, t.second);
  // Adding a fixed monomial preserves the graded order.
  return out;
}

std::string to_string(const Series& s)
{
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : s.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string body;
    if (mag != 1 || m.total() == 0)
      body = mag.get_den() == 1 ? to_string(mag) : "(" + to_string(mag) + ")";
    for (int i = 0; i < 3; ++i) {
      int d = m.deg[static_cast<std::size_t>(i)];
      if (d == 0) continue;
      if (!body.empty()) body += "*";
      body += "h" + std::to_string(i + 1);
      if (d > 1) body += "^" + std::to_string(d);
    }
    out += body;
  }
  return out;
}

}  // namespace ncque
