#include "ncque/format.hpp"

#include <stdexcept>

namespace ncque {

namespace {

std::string h_part(const HMonomial& h)
{
  std::string s;
  for (int i = 0; i < 3; ++i) {
    const int d = h.deg[static_cast<std::size_t>(i)];
    if (d == 0) continue;
    if (!s.empty()) s += "*";
    s += "h" + std::to_string(i + 1);
    if (d > 1) s += "^" + std::to_string(d);
  }
  return s;
}

// Appends " + c*h*body" / " - ..." for every term of the coefficient series.
void append_terms(std::string& out, const Series& coeff, const std::string& body)
{
  for (const auto& [h, c] : coeff.terms()) {
    const Rational mag = abs(c);
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    std::string t;
    if (mag != 1 || (h.total() == 0 && body.empty()))
      t = mag.get_den() == 1 ? to_string(mag) : "(" + to_string(mag) + ")";
    const std::string hp = h_part(h);
    if (!hp.empty()) t += (t.empty() ? "" : "*") + hp;
    if (!body.empty()) t += (t.empty() ? "" : "*") + body;
    out += t;
  }
}

template <std::size_t N>
nlohmann::json index_json(const MultiIndex<N>& m)
{
  nlohmann::json a = nlohmann::json::array();
  for (int v : m) a.push_back(v);
  return a;
}

std::string bracket_index(const std::string& tuple) { return "[" + tuple.substr(1, tuple.size() - 2) + "]"; }

}  // namespace

std::string format_monomial(const PBWMonomial& m)
{
  std::string s;
  for (int g = 0; g < kNumGenerators; ++g) {
    const int e = m[static_cast<std::size_t>(g)];
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += generator_token(static_cast<Generator>(g));
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string format_text(const Element& x)
{
  std::string out;
  for (const auto& [m, c] : x.terms()) {
    const std::string body = format_monomial(m);
    append_terms(out, c, body == "1" ? "" : body);
  }
  return out.empty() ? "0" : out;
}

std::string format_text(const DualElement& u)
{
  std::string out;
  for (const auto& [m, c] : u.terms()) {
    const std::string body = to_string(m);
    append_terms(out, c, body == "1" ? "" : body);
  }
  return out.empty() ? "0" : out;
}

std::string format_text(const TensorElement& t)
{
  std::string out;
  for (const auto& [k, c] : t.terms()) {
    std::string left = format_monomial(k.first);
    const std::string body = left + " (x) " + format_monomial(k.second);
    append_terms(out, c, body);
  }
  return out.empty() ? "0" : out;
}

std::string format_text(const ZMap& z)
{
  std::string out;
  for (const auto& [m, c] : z) {
    std::string body;
    if (norm(m.central) > 0) body += "Z" + bracket_index(to_string(m.central));
    if (norm(m.qp) > 0) body += (body.empty() ? "" : "*") + std::string("X") + bracket_index(to_string(m.qp));
    append_terms(out, c, body);
  }
  return out.empty() ? "0" : out;
}

nlohmann::json series_json(const Series& s)
{
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [h, c] : s.terms()) a.push_back({{"h", {h.deg[0], h.deg[1], h.deg[2]}}, {"c", to_string(c)}});
  return a;
}

nlohmann::json to_json(const Element& x)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : x.terms()) terms.push_back({{"exp", index_json(m)}, {"coeff", series_json(c)}});
  return {{"terms", terms}};
}

nlohmann::json to_json(const DualElement& u)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : u.terms())
    terms.push_back({{"w", index_json(m.w)}, {"y", index_json(m.y)}, {"coeff", series_json(c)}});
  return {{"terms", terms}};
}

nlohmann::json to_json(const TensorElement& t)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : t.terms())
    terms.push_back({{"left", index_json(k.first)}, {"right", index_json(k.second)}, {"coeff", series_json(c)}});
  return {{"terms", terms}};
}

nlohmann::json to_json(const ZMap& z)
{
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : z) {
    if (c.is_zero()) continue;
    terms.push_back({{"z", index_json(m.central)}, {"x", index_json(m.qp)}, {"coeff", series_json(c)}});
  }
  return {{"terms", terms}};
}

nlohmann::json to_json(const WedgeElement& w)
{
  nlohmann::json a = nlohmann::json::array();
  for (const auto& [k, c] : w.terms()) a.push_back({{"i", k.first}, {"j", k.second}, {"c", to_string(c)}});
  return a;
}

nlohmann::json to_json(const GroupElement& g)
{
  return {{"theta", to_string(g.theta)}, {"phi", to_string(g.phi)}, {"psi", to_string(g.psi)},
          {"q", {to_string(g.q[0]), to_string(g.q[1])}}, {"p", {to_string(g.p[0]), to_string(g.p[1])}}};
}

Series series_from_json(const nlohmann::json& j, int truncation)
{
  if (!j.is_array()) throw std::invalid_argument("series JSON must be an array");
  Series s(truncation);
  for (const auto& t : j) {
    const auto& h = t.at("h");
    if (!h.is_array() || h.size() != 3) throw std::invalid_argument("series term needs h:[a,b,c]");
    HMonomial m{{h[0].get<int>(), h[1].get<int>(), h[2].get<int>()}};
    s += Series::monomial(m, parse_rational(t.at("c").get<std::string>()), truncation);
  }
  return s;
}

Element element_from_json(const nlohmann::json& j, const AlgebraPtr& algebra)
{
  Element x(algebra);
  for (const auto& t : j.at("terms")) {
    const auto& e = t.at("exp");
    if (!e.is_array() || e.size() != 7) throw std::invalid_argument("element term needs exp of length 7");
    PBWMonomial m{};
    for (std::size_t k = 0; k < 7; ++k) {
      m[k] = e[k].get<int>();
      if (m[k] < 0) throw std::invalid_argument("negative exponent");
    }
    x.add_term(m, series_from_json(t.at("coeff"), algebra->truncation()));
  }
  return x;
}

}  // namespace ncque
