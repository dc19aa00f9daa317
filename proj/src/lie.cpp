#include "ncque/lie.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "ncque/dual.hpp"
#include "ncque/hopf.hpp"

namespace ncque {

namespace {

std::string basis_name(const LieData& L, int i)
{
  return i < static_cast<int>(L.names.size()) ? L.names[static_cast<std::size_t>(i)] : "e" + std::to_string(i + 1);
}

TensorMatrix zero_matrix(int dim)
{
  return TensorMatrix(static_cast<std::size_t>(dim), std::vector<Rational>(static_cast<std::size_t>(dim)));
}

// (ad_x (x) 1 + 1 (x) ad_x) T
TensorMatrix ad_tensor(const LieVector& x, const TensorMatrix& t, const LieData& L)
{
  const int n = L.dim;
  TensorMatrix out = zero_matrix(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Rational& tab = t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
      if (tab == 0) continue;
      for (int i = 0; i < n; ++i) {
        const Rational& xi = x[static_cast<std::size_t>(i)];
        if (xi == 0) continue;
        for (int k = 0; k < n; ++k) {
          const Rational& ca = L.c(i, a, k);
          if (ca != 0) out[static_cast<std::size_t>(k)][static_cast<std::size_t>(b)] += xi * ca * tab;
          const Rational& cb = L.c(i, b, k);
          if (cb != 0) out[static_cast<std::size_t>(a)][static_cast<std::size_t>(k)] += xi * cb * tab;
        }
      }
    }
  }
  return out;
}

TensorMatrix sub(TensorMatrix a, const TensorMatrix& b)
{
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) a[i][j] -= b[i][j];
  return a;
}

Rational random_rational(std::mt19937& rng)
{
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 9);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

LieData::LieData(int d) : dim(d), constants(static_cast<std::size_t>(d * d * d))
{
  if (d == kNumGenerators)
    for (int g = 0; g < kNumGenerators; ++g) names.emplace_back(generator_token(static_cast<Generator>(g)));
}

void LieData::set_bracket(int i, int j, int k, const Rational& v)
{
  c(i, j, k) = v;
  c(j, i, k) = -v;
}

LieData nc_lie_data(const DeformParams& params)
{
  params.validate();
  LieData L;
  const Rational& a = params.alpha;
  L.set_bracket(3, 5, 0, 1 / a);
  L.set_bracket(4, 6, 0, 1 / a);
  L.set_bracket(3, 4, 1, params.beta / (a * a));
  L.set_bracket(5, 6, 2, params.gamma / (a * a));
  return L;
}

LieData lie_data_from_engine(const DeformParams& params)
{
  DeformParams p = params;
  p.truncation = 0;
  const AlgebraPtr alg = Algebra::create(p);
  LieData L;
  for (int i = 0; i < kNumGenerators; ++i) {
    for (int j = 0; j < kNumGenerators; ++j) {
      const Element br = classical_limit(
          commutator(alg->generator(static_cast<Generator>(i)), alg->generator(static_cast<Generator>(j))));
      for (const auto& [m, c] : br.terms()) {
        if (generator_degree(m) != 1) throw std::domain_error("non-linear classical bracket");
        int k = 0;
        while (m[static_cast<std::size_t>(k)] == 0) ++k;
        L.c(i, j, k) = c.constant_term();
      }
    }
  }
  return L;
}

LieVector basis_vector(int i, int dim)
{
  LieVector v(static_cast<std::size_t>(dim));
  v[static_cast<std::size_t>(i)] = 1;
  return v;
}

LieVector lie_bracket(const LieVector& x, const LieVector& y, const LieData& L)
{
  if (static_cast<int>(x.size()) != L.dim || static_cast<int>(y.size()) != L.dim)
    throw std::invalid_argument("dimension mismatch");
  LieVector out(static_cast<std::size_t>(L.dim));
  for (int i = 0; i < L.dim; ++i) {
    if (x[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j < L.dim; ++j) {
      if (y[static_cast<std::size_t>(j)] == 0) continue;
      const Rational xy = x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)];
      for (int k = 0; k < L.dim; ++k)
        if (L.c(i, j, k) != 0) out[static_cast<std::size_t>(k)] += xy * L.c(i, j, k);
    }
  }
  return out;
}

VerificationReport check_lie_data(const LieData& L, const std::string& label)
{
  CheckTally anti("antisymmetry", label + ": c(i,j,k) = -c(j,i,k)");
  for (int i = 0; i < L.dim; ++i)
    for (int j = 0; j < L.dim; ++j) {
      bool ok = true;
      for (int k = 0; k < L.dim; ++k) ok = ok && L.c(i, j, k) == -L.c(j, i, k);
      anti.record(ok, "(" + basis_name(L, i) + "," + basis_name(L, j) + ")");
    }
  CheckTally jacobi("Jacobi", label + ": [x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0");
  for (int i = 0; i < L.dim; ++i)
    for (int j = i + 1; j < L.dim; ++j)
      for (int k = j + 1; k < L.dim; ++k) {
        const LieVector x = basis_vector(i, L.dim), y = basis_vector(j, L.dim), z = basis_vector(k, L.dim);
        const LieVector a = lie_bracket(x, lie_bracket(y, z, L), L);
        const LieVector b = lie_bracket(y, lie_bracket(z, x, L), L);
        const LieVector c = lie_bracket(z, lie_bracket(x, y, L), L);
        bool ok = true;
        for (int m = 0; m < L.dim; ++m)
          ok = ok && a[static_cast<std::size_t>(m)] + b[static_cast<std::size_t>(m)] + c[static_cast<std::size_t>(m)] == 0;
        jacobi.record(ok, "(" + basis_name(L, i) + "," + basis_name(L, j) + "," + basis_name(L, k) + ")");
      }
  VerificationReport r;
  r.add(anti.finish());
  r.add(jacobi.finish());
  return r;
}

// ---------------------------------------------------------------------------
// Wedges

void WedgeElement::add(int i, int j, const Rational& c)
{
  if (i == j || c == 0) return;
  const Rational v = i < j ? c : Rational(-c);
  const std::pair<int, int> key = i < j ? std::pair{i, j} : std::pair{j, i};
  auto [it, inserted] = terms_.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational WedgeElement::coeff(int i, int j) const
{
  if (i == j) return 0;
  auto it = terms_.find(i < j ? std::pair{i, j} : std::pair{j, i});
  if (it == terms_.end()) return 0;
  return i < j ? it->second : Rational(-it->second);
}

WedgeElement& WedgeElement::operator+=(const WedgeElement& o)
{
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

WedgeElement& WedgeElement::operator*=(const Rational& c)
{
  if (c == 0) terms_.clear();
  for (auto& t : terms_) t.second *= c;
  return *this;
}

std::string to_string(const WedgeElement& w)
{
  if (w.is_zero()) return "0";
  std::string out;
  for (const auto& [k, c] : w.terms()) {
    std::string coef = to_string(c);
    if (!out.empty()) {
      if (c < 0) {
        out += " - ";
        coef = to_string(Rational(-c));
      } else {
        out += " + ";
      }
    }
    if (coef != "1") out += (coef.find('/') != std::string::npos ? "(" + coef + ")" : coef) + "*";
    out += std::string(generator_token(static_cast<Generator>(k.first))) + "^" +
           std::string(generator_token(static_cast<Generator>(k.second)));
  }
  return out;
}

TensorMatrix to_matrix(const WedgeElement& w, int dim)
{
  TensorMatrix t = zero_matrix(dim);
  for (const auto& [k, c] : w.terms()) {
    t[static_cast<std::size_t>(k.first)][static_cast<std::size_t>(k.second)] += c;
    t[static_cast<std::size_t>(k.second)][static_cast<std::size_t>(k.first)] -= c;
  }
  return t;
}

WedgeElement to_wedge(const TensorMatrix& t)
{
  WedgeElement w;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i][i] != 0) throw std::domain_error("tensor is not antisymmetric");
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i][j] != -t[j][i]) throw std::domain_error("tensor is not antisymmetric");
      w.add(static_cast<int>(i), static_cast<int>(j), t[i][j]);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Cocommutators

WedgeElement cocommutator_dir(Generator g, int direction, const DeformParams& params)
{
  if (direction < 1 || direction > 3) throw std::invalid_argument("direction must be 1, 2 or 3");
  DeformParams p = params;
  p.truncation = 1;
  p.validate();
  HopfStructure hopf(Algebra::create(p));
  const TensorElement d = hopf.coproduct(hopf.algebra()->generator(g));
  const TensorElement anti = limit(d - flip(d), HbarMask::only(direction));
  const HMonomial h = HMonomial::unit(direction - 1);

  TensorMatrix t = zero_matrix(kNumGenerators);
  for (const auto& [k, c] : anti.terms()) {
    if (c.constant_term() != 0) throw std::domain_error("non-primitive residue");
    const Rational v = c.coeff(h);
    if (v == 0) continue;
    if (generator_degree(k.first) != 1 || generator_degree(k.second) != 1)
      throw std::domain_error("non-primitive residue");
    int a = 0, b = 0;
    while (k.first[static_cast<std::size_t>(a)] == 0) ++a;
    while (k.second[static_cast<std::size_t>(b)] == 0) ++b;
    t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += v;
  }
  try {
    return to_wedge(t);
  } catch (const std::domain_error&) {
    throw std::domain_error("non-primitive residue");
  }
}

Cocommutator cocommutator_all(int direction, const DeformParams& params)
{
  Cocommutator out;
  for (int g = 0; g < kNumGenerators; ++g) out.push_back(cocommutator_dir(static_cast<Generator>(g), direction, params));
  return out;
}

TensorMatrix apply_cocommutator(const Cocommutator& delta, const LieVector& x)
{
  const int n = static_cast<int>(x.size());
  TensorMatrix out = zero_matrix(n);
  for (int k = 0; k < n; ++k) {
    const Rational& xk = x[static_cast<std::size_t>(k)];
    if (xk == 0) continue;
    for (const auto& [key, c] : delta[static_cast<std::size_t>(k)].terms()) {
      out[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(key.second)] += xk * c;
      out[static_cast<std::size_t>(key.second)][static_cast<std::size_t>(key.first)] -= xk * c;
    }
  }
  return out;
}

LieVector dual_bracket_from_delta(const Cocommutator& delta, int xi, int eta)
{
  LieVector out(delta.size());
  for (std::size_t x = 0; x < delta.size(); ++x) out[x] = delta[x].coeff(xi, eta);
  return out;
}

LieData dual_lie_data(const Cocommutator& delta)
{
  LieData L(static_cast<int>(delta.size()));
  for (int i = 0; i < L.dim; ++i)
    for (int j = 0; j < L.dim; ++j) {
      const LieVector v = dual_bracket_from_delta(delta, i, j);
      for (int k = 0; k < L.dim; ++k) L.c(i, j, k) = v[static_cast<std::size_t>(k)];
    }
  for (auto& n : L.names) n = "chi(" + n + ")";
  return L;
}

VerificationReport bialgebra_axiom_check(const Cocommutator& delta, const LieData& L)
{
  VerificationReport report;
  CheckTally anti("co-antisymmetry", "delta(x) lies in Lambda^2 g");
  for (int x = 0; x < L.dim; ++x) {
    const TensorMatrix t = apply_cocommutator(delta, basis_vector(x, L.dim));
    bool ok = true;
    for (int a = 0; a < L.dim; ++a)
      for (int b = 0; b < L.dim; ++b)
        ok = ok && t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] ==
                       -t[static_cast<std::size_t>(b)][static_cast<std::size_t>(a)];
    anti.record(ok, basis_name(L, x));
  }
  report.add(anti.finish());

  CheckTally cocycle("1-cocycle", "delta([x,y]) = ad_x delta(y) - ad_y delta(x)");
  for (int i = 0; i < L.dim; ++i)
    for (int j = i + 1; j < L.dim; ++j) {
      const LieVector x = basis_vector(i, L.dim), y = basis_vector(j, L.dim);
      const TensorMatrix lhs = apply_cocommutator(delta, lie_bracket(x, y, L));
      const TensorMatrix rhs =
          sub(ad_tensor(x, apply_cocommutator(delta, y), L), ad_tensor(y, apply_cocommutator(delta, x), L));
      cocycle.record(lhs == rhs, "(" + basis_name(L, i) + "," + basis_name(L, j) + ")");
    }
  report.add(cocycle.finish());

  VerificationReport cj = check_lie_data(dual_lie_data(delta), "co-Jacobi (dual bracket)");
  for (auto& c : cj.checks) c.name = "co-" + c.name;
  report.merge(cj);
  return report;
}

CoboundaryResult coboundary_from_r(const WedgeElement& r, const LieData& L, const std::optional<Cocommutator>& target)
{
  CoboundaryResult out;
  const TensorMatrix rm = to_matrix(r, L.dim);
  for (int x = 0; x < L.dim; ++x) out.delta.push_back(to_wedge(ad_tensor(basis_vector(x, L.dim), rm, L)));
  VerificationReport cj = check_lie_data(dual_lie_data(out.delta), "co-Jacobi of delta_r");
  for (auto& c : cj.checks) c.name = "co-" + c.name;
  out.report.merge(cj);
  if (target) {
    out.equals_target = out.delta == *target;
    out.report.add({"equals target", "delta_r = supplied delta", out.equals_target,
                    out.equals_target ? std::nullopt : std::optional<std::string>("r = " + to_string(r))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Group law

GroupElement group_identity() { return {}; }

GroupElement group_compose(const GroupElement& g, const GroupElement& h, const DeformParams& params)
{
  const Rational half(1, 2);
  const Rational qp = g.q[0] * h.p[0] + g.q[1] * h.p[1];   // <q, p'>
  const Rational pq = g.p[0] * h.q[0] + g.p[1] * h.q[1];   // <p, q'>
  const Rational pp = g.p[0] * h.p[1] - g.p[1] * h.p[0];   // p ^ p'
  const Rational qq = g.q[0] * h.q[1] - g.q[1] * h.q[0];   // q ^ q'
  GroupElement r;
  r.theta = g.theta + h.theta + params.alpha * half * (qp - pq);
  r.phi = g.phi + h.phi + params.beta * half * pp;
  r.psi = g.psi + h.psi + params.gamma * half * qq;
  for (std::size_t i = 0; i < 2; ++i) {
    r.q[i] = g.q[i] + h.q[i];
    r.p[i] = g.p[i] + h.p[i];
  }
  return r;
}

GroupElement group_inverse(const GroupElement& g, const DeformParams&)
{
  GroupElement r;
  r.theta = -g.theta;
  r.phi = -g.phi;
  r.psi = -g.psi;
  for (std::size_t i = 0; i < 2; ++i) {
    r.q[i] = -g.q[i];
    r.p[i] = -g.p[i];
  }
  return r;
}

GroupElement parse_group_element(const std::string& text)
{
  std::vector<Rational> v;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) v.push_back(parse_rational(field));
  if (v.size() != 7) throw std::invalid_argument("group element needs 7 comma-separated rationals");
  return {v[0], v[1], v[2], {v[3], v[4]}, {v[5], v[6]}};
}

std::string to_string(const GroupElement& g)
{
  return to_string(g.theta) + "," + to_string(g.phi) + "," + to_string(g.psi) + "," + to_string(g.q[0]) + "," +
         to_string(g.q[1]) + "," + to_string(g.p[0]) + "," + to_string(g.p[1]);
}

// ---------------------------------------------------------------------------

VerificationReport verify_bialgebra_report(const DeformParams& params, int samples, unsigned seed)
{
  params.validate();
  VerificationReport report;
  const LieData L = nc_lie_data(params);
  report.merge(check_lie_data(L, "g_NC"));
  report.add({"classical constants", "classical limit of engine commutators = structure constants",
              lie_data_from_engine(params) == L, std::nullopt});

  const int central[3] = {0, 1, 2};
  std::vector<Cocommutator> deltas;
  for (int i = 1; i <= 3; ++i) {
    const Cocommutator d = cocommutator_all(i, params);
    deltas.push_back(d);
    const std::string dir = "direction " + std::to_string(i);

    // delta(g) = 2 g^(a Th + b Ph + c Ps) for central g, g^(...) otherwise, with (a,b,c) = 2 e_i.
    CheckTally values("cocommutator values", dir + ": delta(g) = 4 g^c_i for central g, 2 g^c_i for Q, P");
    for (int g = 0; g < kNumGenerators; ++g) {
      WedgeElement w;
      w.add(g, central[i - 1], g < kNumCentral ? 4 : 2);
      values.record(d[static_cast<std::size_t>(g)] == w, std::string(generator_token(static_cast<Generator>(g))) +
                                                             ": got " + to_string(d[static_cast<std::size_t>(g)]));
    }
    report.add(values.finish());

    VerificationReport ax = bialgebra_axiom_check(d, L);
    for (auto& c : ax.checks) c.subject = dir + ": " + c.subject;
    report.merge(ax);

    const LieData from_star = dual_structure_constants(i);
    LieData from_delta = dual_lie_data(d);
    from_delta.names = from_star.names;
    report.add({"duality", dir + ": star-product Poisson constants = dual bracket of delta", from_star == from_delta,
                std::nullopt});
  }

  std::mt19937 rng(seed);
  CheckTally weighted("weighted cocommutators", "sum_i w_i delta_i is a Lie bialgebra");
  for (int s = 0; s < samples; ++s) {
    Rational w[3] = {random_rational(rng), random_rational(rng), random_rational(rng)};
    Cocommutator d(kNumGenerators);
    for (int i = 0; i < 3; ++i)
      for (int g = 0; g < kNumGenerators; ++g) {
        WedgeElement t = deltas[static_cast<std::size_t>(i)][static_cast<std::size_t>(g)];
        t *= w[i];
        d[static_cast<std::size_t>(g)] += t;
      }
    weighted.record(bialgebra_axiom_check(d, L).pass(),
                    "w = (" + to_string(w[0]) + "," + to_string(w[1]) + "," + to_string(w[2]) + ")");
  }
  report.add(weighted.finish());

  CheckTally obstruction("coboundary obstruction", "delta_r(central) = 0, so delta_r != extracted delta");
  for (int s = 0; s < samples; ++s) {
    WedgeElement r;
    for (int i = 0; i < kNumGenerators; ++i)
      for (int j = i + 1; j < kNumGenerators; ++j) r.add(i, j, random_rational(rng));
    for (std::size_t i = 0; i < 3; ++i) {
      const CoboundaryResult cb = coboundary_from_r(r, L, deltas[i]);
      const bool central_zero = cb.delta[0].is_zero() && cb.delta[1].is_zero() && cb.delta[2].is_zero();
      obstruction.record(central_zero && !cb.equals_target, "r = " + to_string(r));
    }
  }
  report.add(obstruction.finish());
  return report;
}

}  // namespace ncque
