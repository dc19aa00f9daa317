#include "ncque/dual.hpp"

#include <stdexcept>

namespace ncque {

namespace {

std::string bracketed(const std::string& tuple)
{
  return "[" + tuple.substr(1, tuple.size() - 2) + "]";
}

HMonomial h_of(const MultiIndex<3>& m) { return {{m[0], m[1], m[2]}}; }

template <typename Map, typename Key>
void accumulate(Map& acc, const Key& k, const Series& c)
{
  if (c.is_zero()) return;
  auto [it, inserted] = acc.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) acc.erase(it);
  }
}

}  // namespace

DualMonomial chi(int k)
{
  if (k < 1 || k > 7) throw std::out_of_range("chi index must be 1..7");
  DualMonomial m;
  if (k <= 3)
    m.w[static_cast<std::size_t>(k - 1)] = 1;
  else
    m.y[static_cast<std::size_t>(k - 4)] = 1;
  return m;
}

ZMonomial dual_of(const DualMonomial& m) { return {m.w, m.y}; }

std::string to_string(const DualMonomial& m)
{
  const bool hw = norm(m.w) > 0, hy = norm(m.y) > 0;
  if (!hw && !hy) return "1";
  std::string s;
  if (hw) s += "W" + bracketed(to_string(m.w));
  if (hw && hy) s += "*";
  if (hy) s += "Y" + bracketed(to_string(m.y));
  return s;
}

std::vector<DualMonomial> dual_monomials_up_to(int max_norm)
{
  std::vector<DualMonomial> out;
  for (const auto& e : indices_up_to<7>(max_norm)) out.push_back({{e[0], e[1], e[2]}, {e[3], e[4], e[5], e[6]}});
  return out;
}

// ---------------------------------------------------------------------------
// DualElement

DualElement DualElement::monomial(const DualMonomial& m, int truncation)
{
  return monomial(m, Series::constant(1, truncation));
}

DualElement DualElement::monomial(const DualMonomial& m, const Series& c)
{
  DualElement out(c.truncation());
  out.add_term(m, c);
  return out;
}

Series DualElement::coeff(const DualMonomial& m) const
{
  auto it = terms_.find(m);
  return it == terms_.end() ? Series(trunc_) : it->second;
}

void DualElement::add_term(const DualMonomial& m, const Series& c)
{
  if (c.truncation() != trunc_) throw std::invalid_argument("truncation mismatch");
  accumulate(terms_, m, c);
}

void DualElement::check_same(const DualElement& o) const
{
  if (o.trunc_ != trunc_) throw std::invalid_argument("truncation mismatch");
}

DualElement& DualElement::operator+=(const DualElement& o)
{
  check_same(o);
  for (const auto& [m, c] : o.terms_) accumulate(terms_, m, c);
  return *this;
}

DualElement& DualElement::operator-=(const DualElement& o) { return *this += -o; }

DualElement& DualElement::operator*=(const Series& c)
{
  for (auto it = terms_.begin(); it != terms_.end();) {
    it->second = it->second * c;
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
  }
  return *this;
}

DualElement& DualElement::operator*=(const Rational& c)
{
  if (c == 0) terms_.clear();
  for (auto& t : terms_) t.second *= c;
  return *this;
}

DualElement DualElement::operator-() const
{
  DualElement out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

DualElement DualElement::truncated(int order) const
{
  DualElement out(order);
  for (const auto& [m, c] : terms_) out.add_term(m, c.truncated(order));
  return out;
}

// ---------------------------------------------------------------------------
// Products

DualElement star_closed(const DualElement& u, const DualElement& v)
{
  if (u.truncation() != v.truncation()) throw std::invalid_argument("truncation mismatch");
  const int order = u.truncation();
  std::map<DualMonomial, Series> acc;
  for (const auto& [a, ca] : u.terms()) {
    for (const auto& [b, cb] : v.terms()) {
      if (ca.min_degree() + cb.min_degree() > order) continue;
      const Series c = ca * cb;
      const MultiIndex<3>& I = a.w;
      const MultiIndex<4>& J = a.y;
      const MultiIndex<3>& K = b.w;
      const MultiIndex<4>& L = b.y;
      const MultiIndex<4> y = *combine(1, J, 1, L);
      for_each_below(I, [&](const MultiIndex<3>& M) {
        const int nm = norm(M);
        if (nm > order) return;
        const MultiIndex<3> i_m = *combine(1, I, -1, M);
        for_each_below(K, [&](const MultiIndex<3>& N) {
          const int nn = norm(N);
          if (nm + nn > order) return;
          const MultiIndex<3> k_n = *combine(1, K, -1, N);
          Rational f = Rational(binomial(I, M) * binomial(K, N));
          f *= ipow(Rational(-2 * norm(k_n) - norm(L)), static_cast<unsigned>(nm));
          f *= ipow(Rational(2 * norm(i_m) + norm(J)), static_cast<unsigned>(nn));
          if (f == 0) return;
          const MultiIndex<3> hm = *combine(1, M, 1, N);
          const DualMonomial out{*combine(1, i_m, 1, k_n), y};
          accumulate(acc, out, c.shifted(h_of(hm)) * f);
        });
      });
    }
  }
  DualElement out(order);
  for (const auto& [m, c] : acc) out.add_term(m, c);
  return out;
}

DualElement label_product(const DualElement& u, const DualElement& v)
{
  if (u.truncation() != v.truncation()) throw std::invalid_argument("truncation mismatch");
  DualElement out(u.truncation());
  for (const auto& [a, ca] : u.terms())
    for (const auto& [b, cb] : v.terms()) out.add_term({*combine(1, a.w, 1, b.w), *combine(1, a.y, 1, b.y)}, ca * cb);
  return out;
}

DualElement star_commutator(const DualElement& u, const DualElement& v)
{
  return star_closed(u, v) - star_closed(v, u);
}

DualElement poisson_bracket_dir(const DualElement& u, const DualElement& v, int direction)
{
  if (direction < 1 || direction > 3) throw std::invalid_argument("direction must be 1, 2 or 3");
  if (u.truncation() < 1) throw std::invalid_argument("Poisson bracket needs truncation >= 1");
  const HMonomial h = HMonomial::unit(direction - 1);
  const DualElement c = star_commutator(u, v);
  DualElement out(u.truncation());
  for (const auto& [m, s] : c.terms()) out.add_term(m, Series::constant(s.coeff(h), u.truncation()));
  return out;
}

LieData dual_structure_constants(int direction)
{
  LieData L;
  for (int k = 0; k < 7; ++k) L.names[static_cast<std::size_t>(k)] = "x" + std::to_string(k + 1);
  for (int j = 1; j <= 7; ++j) {
    for (int k = 1; k <= 7; ++k) {
      const DualElement b =
          poisson_bracket_dir(DualElement::monomial(chi(j), 1), DualElement::monomial(chi(k), 1), direction);
      for (const auto& [m, c] : b.terms()) {
        if (m.norm() != 1) throw std::domain_error("non-linear bracket");
        int l = 1;
        while (chi(l) != m) ++l;
        L.c(j - 1, k - 1, l - 1) = c.constant_term();
      }
    }
  }
  return L;
}

// ---------------------------------------------------------------------------
// Pairing oracle

Series pairing(const DualElement& u, const ZMap& x)
{
  Series out(u.truncation());
  for (const auto& [m, c] : u.terms()) {
    auto it = x.find(dual_of(m));
    if (it != x.end()) out += c * it->second;
  }
  return out;
}

Series pairing(const DualMonomial& a, const DualMonomial& b, const ZTensor& t)
{
  auto it = t.find({dual_of(a), dual_of(b)});
  if (it == t.end()) {
    const int order = t.empty() ? 0 : t.begin()->second.truncation();
    return Series(order);
  }
  return it->second;
}

StarOracle::StarOracle(const DeformParams& params) : hopf_(Algebra::create(params)) {}

const ZTensor& StarOracle::delta_on_zbasis(const ZMonomial& st) const
{
  {
    std::lock_guard lock(mutex_);
    if (auto it = memo_.find(st); it != memo_.end()) return it->second;
  }
  const AlgebraPtr& alg = hopf_.algebra();
  const int order = alg->truncation();
  const Element x = from_z_basis(ZMap{{st, Series::constant(1, order)}}, alg);
  const TensorElement d = hopf_.coproduct(x);
  ZTensor out;
  for (const auto& [k, c] : d.terms()) {
    const int dc = c.min_degree();
    for (const auto& [z1, c1] : alg->z_coordinates(k.first)) {
      if (dc + c1.min_degree() > order) continue;
      const Series cc1 = c * c1;
      for (const auto& [z2, c2] : alg->z_coordinates(k.second)) {
        if (cc1.min_degree() + c2.min_degree() > order) continue;
        accumulate(out, std::pair{z1, z2}, cc1 * c2);
      }
    }
  }
  std::lock_guard lock(mutex_);
  return memo_.try_emplace(st, std::move(out)).first->second;
}

DualElement StarOracle::star(const DualMonomial& a, const DualMonomial& b, int degree_cap) const
{
  const int order = algebra()->truncation();
  DualElement out(order);
  for (const auto& m : dual_monomials_up_to(degree_cap)) {
    const ZTensor& t = delta_on_zbasis(dual_of(m));
    auto it = t.find({dual_of(a), dual_of(b)});
    if (it != t.end()) out.add_term(m, it->second);
  }
  return out;
}

ZTensor delta_on_zbasis(const MultiIndex<3>& s, const MultiIndex<4>& t, const DeformParams& params)
{
  return StarOracle(params).delta_on_zbasis({s, t});
}

DualElement star_oracle(const DualMonomial& a, const DualMonomial& b, int degree_cap, const DeformParams& params)
{
  return StarOracle(params).star(a, b, degree_cap);
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string pair_str(const DualMonomial& a, const DualMonomial& b) { return to_string(a) + " * " + to_string(b); }

}  // namespace

VerificationReport verify_star_report(int max_norm, const DeformParams& params)
{
  params.validate();
  VerificationReport report;
  const int order = params.truncation;
  const auto monos = dual_monomials_up_to(max_norm);
  auto el = [](const DualMonomial& m, int d) { return DualElement::monomial(m, d); };

  // Oracle gate: both sides at the full order, compared below hbar-degree 2.
  const int low = std::min(order, 1);
  {
    const StarOracle oracle(params);
    CheckTally agree("star vs oracle", "closed star product = pairing oracle mod hbar-degree 2");
    for (const auto& a : monos)
      for (const auto& b : monos) {
        const DualElement closed = star_closed(el(a, order), el(b, order));
        agree.record(closed.truncated(low) == oracle.star(a, b, a.norm() + b.norm()).truncated(low), pair_str(a, b));
      }
    report.add(agree.finish());
  }

  CheckTally assoc("associativity", "(u*v)*w = u*(v*w) mod hbar-degree 2");
  for (const auto& a : monos)
    for (const auto& b : monos)
      for (const auto& c : monos) {
        const DualElement u = el(a, low), v = el(b, low), w = el(c, low);
        assoc.record(star_closed(star_closed(u, v), w) == star_closed(u, star_closed(v, w)),
                     "(" + to_string(a) + ", " + to_string(b) + ", " + to_string(c) + ")");
      }
  report.add(assoc.finish());

  CheckTally unit("unit", "1*u = u*1 = u");
  CheckTally constant("constant term", "u*v at hbar = 0 is W^{I+K} Y^{J+L}");
  CheckTally commute("classical commutativity", "constant term of u*v - v*u is 0");
  for (const auto& a : monos) {
    const DualElement u = el(a, order);
    const DualElement one = el(DualMonomial{}, order);
    unit.record(star_closed(one, u) == u && star_closed(u, one) == u, to_string(a));
    for (const auto& b : monos) {
      const DualElement v = el(b, order);
      const DualElement uv = star_closed(u, v);
      constant.record(uv.truncated(0) == label_product(u, v).truncated(0), pair_str(a, b));
      commute.record(star_commutator(u, v).truncated(0).is_zero(), pair_str(a, b));
    }
  }
  report.add(unit.finish());
  report.add(constant.finish());
  report.add(commute.finish());

  if (order >= 1) {
    for (int i = 1; i <= 3; ++i) {
      const std::string dir = "direction " + std::to_string(i);
      auto pb = [&](const DualElement& u, const DualElement& v) { return poisson_bracket_dir(u, v, i); };
      CheckTally anti("Poisson antisymmetry", dir + ": {u,v} = -{v,u}");
      CheckTally leibniz("Poisson Leibniz", dir + ": {u,v.w} = {u,v}.w + v.{u,w}");
      CheckTally jacobi("Poisson Jacobi", dir + ": {u,{v,w}} + cyclic = 0");
      for (std::size_t x = 0; x < monos.size(); ++x) {
        const DualElement u = el(monos[x], 1);
        for (std::size_t y = 0; y < monos.size(); ++y) {
          const DualElement v = el(monos[y], 1);
          anti.record(pb(u, v) == -pb(v, u), pair_str(monos[x], monos[y]));
          for (std::size_t z = y; z < monos.size(); ++z) {
            const DualElement w = el(monos[z], 1);
            const std::string where = "(" + to_string(monos[x]) + ", " + to_string(monos[y]) + ", " + to_string(monos[z]) + ")";
            leibniz.record(pb(u, label_product(v, w)) == label_product(pb(u, v), w) + label_product(v, pb(u, w)), where);
            if (x < y && y < z)
              jacobi.record((pb(u, pb(v, w)) + pb(v, pb(w, u)) + pb(w, pb(u, v))).is_zero(), where);
          }
        }
      }
      report.add(anti.finish());
      report.add(leibniz.finish());
      report.add(jacobi.finish());

      // {x1,x2} = 2(b x1 - a x2), {x_k,x1} = a x_k, {x_k,x_l} = 0 for k,l >= 4, with (a,b,c) = 2 e_i.
      Rational abc[3] = {0, 0, 0};
      abc[i - 1] = 2;
      const Rational &a = abc[0], &b = abc[1], &c = abc[2];
      CheckTally rel("chi relations", dir + ": brackets of chi_1..chi_7 with (a,b,c) = 2 e_" + std::to_string(i));
      auto x = [&](int k) { return el(chi(k), 1); };
      rel.record(pb(x(1), x(2)) == (x(1) * Rational(2 * b)) - (x(2) * Rational(2 * a)), "{x1,x2}");
      rel.record(pb(x(1), x(3)) == (x(1) * Rational(2 * c)) - (x(3) * Rational(2 * a)), "{x1,x3}");
      rel.record(pb(x(2), x(3)) == (x(2) * Rational(2 * c)) - (x(3) * Rational(2 * b)), "{x2,x3}");
      for (int k = 4; k <= 7; ++k) {
        rel.record(pb(x(k), x(1)) == x(k) * a, "{x" + std::to_string(k) + ",x1}");
        rel.record(pb(x(k), x(2)) == x(k) * b, "{x" + std::to_string(k) + ",x2}");
        rel.record(pb(x(k), x(3)) == x(k) * c, "{x" + std::to_string(k) + ",x3}");
        for (int l = 4; l <= 7; ++l)
          rel.record(pb(x(k), x(l)).is_zero(), "{x" + std::to_string(k) + ",x" + std::to_string(l) + "}");
      }
      report.add(rel.finish());

      VerificationReport lie = check_lie_data(dual_structure_constants(i), "dual Lie algebra, " + dir);
      report.merge(lie);
    }
  }
  return report;
}

VerificationReport star_oracle_diagnostic(int max_norm, const DeformParams& params)
{
  params.validate();
  const StarOracle oracle(params);
  const auto monos = dual_monomials_up_to(max_norm);
  VerificationReport report;
  CheckTally agree("star vs oracle (full order)", "closed star product = pairing oracle at hbar-degree <= " +
                                                      std::to_string(params.truncation));
  for (const auto& a : monos)
    for (const auto& b : monos) {
      const DualElement closed =
          star_closed(DualElement::monomial(a, params.truncation), DualElement::monomial(b, params.truncation));
      const DualElement diff = closed - oracle.star(a, b, a.norm() + b.norm());
      agree.record(diff.is_zero(), pair_str(a, b) + ": difference has " + std::to_string(diff.terms().size()) + " terms");
    }
  report.add(agree.finish());

  CheckTally assoc("associativity (full order)", "(u*v)*w = u*(v*w) at hbar-degree <= " + std::to_string(params.truncation));
  for (const auto& a : monos)
    for (const auto& b : monos)
      for (const auto& c : monos) {
        const DualElement u = DualElement::monomial(a, params.truncation), v = DualElement::monomial(b, params.truncation),
                          w = DualElement::monomial(c, params.truncation);
        assoc.record(star_closed(star_closed(u, v), w) == star_closed(u, star_closed(v, w)),
                     "(" + to_string(a) + ", " + to_string(b) + ", " + to_string(c) + ")");
      }
  report.add(assoc.finish());
  return report;
}

}  // namespace ncque
