#include "ncque/cli.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ncque/dual.hpp"
#include "ncque/format.hpp"
#include "ncque/hopf.hpp"
#include "ncque/lie.hpp"
#include "ncque/parser.hpp"

namespace ncque {

namespace {

struct InvalidParams : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Settings {
  std::string alpha = "1", beta = "0", gamma = "0";
  int trunc = 2;
  int trunc_cap = 6;
  std::string format = "text";
};

std::string trim(const std::string& s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

int to_int(const std::string& key, const std::string& v)
{
  try {
    std::size_t used = 0;
    const int n = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw InvalidParams("config key '" + key + "' needs an integer, got '" + v + "'");
  }
}

// Flat key=value file; '#' starts a comment.
void load_config(const std::string& path, Settings& s)
{
  std::ifstream in(path);
  if (!in) throw InvalidParams("cannot read config file '" + path + "'");
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidParams(path + ":" + std::to_string(n) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key == "alpha")
      s.alpha = value;
    else if (key == "beta")
      s.beta = value;
    else if (key == "gamma")
      s.gamma = value;
    else if (key == "trunc" || key == "truncation")
      s.trunc = to_int(key, value);
    else if (key == "trunc_cap")
      s.trunc_cap = to_int(key, value);
    else if (key == "format")
      s.format = value;
    else
      throw InvalidParams(path + ":" + std::to_string(n) + ": unknown key '" + key + "'");
  }
}

DeformParams make_params(const Settings& s)
{
  DeformParams p;
  try {
    p.alpha = parse_rational(s.alpha);
    p.beta = parse_rational(s.beta);
    p.gamma = parse_rational(s.gamma);
  } catch (const std::invalid_argument& e) {
    throw InvalidParams(std::string("bad parameter: ") + e.what());
  }
  p.truncation = s.trunc;
  if (s.trunc > s.trunc_cap)
    throw InvalidParams("truncation " + std::to_string(s.trunc) + " exceeds the cap " + std::to_string(s.trunc_cap));
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw InvalidParams(e.what());
  }
  if (s.format != "text" && s.format != "json") throw InvalidParams("format must be text or json");
  return p;
}

std::string diagnostic_text(const VerificationReport& r)
{
  std::string out = "diagnostic (informational, not a gate):\n";
  for (const auto& c : r.checks) {
    out += c.pass ? "  agree   " : "  differ  ";
    out += c.name + ": " + c.subject;
    if (c.counterexample) out += "\n          first difference: " + *c.counterexample;
    out += "\n";
  }
  return out;
}

struct Output {
  bool json;
  std::string text;
  nlohmann::json doc;
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Exact arithmetic in a three-parameter quantized enveloping algebra and its dual"};
  app.name("ncque");
  app.require_subcommand(1);
  app.fallthrough();

  Settings flags;
  std::string config_path, out_path;
  auto* o_alpha = app.add_option("--alpha", flags.alpha, "alpha (nonzero rational)");
  auto* o_beta = app.add_option("--beta", flags.beta, "beta (rational)");
  auto* o_gamma = app.add_option("--gamma", flags.gamma, "gamma (rational)");
  auto* o_trunc = app.add_option("--trunc", flags.trunc, "hbar truncation order D");
  auto* o_format = app.add_option("--format", flags.format, "text or json");
  app.add_option("--config", config_path, "key=value file; flags override it");
  app.add_option("--out", out_path, "write the result to this file");

  std::string a, b;
  int cap = -1, dir = 0, maxdeg = 2, deg = 5;
  std::string selected;
  auto binary = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("A", a, "expression")->required();
    s->add_option("B", b, "expression")->required();
    s->fallthrough();
    s->callback([&, name] { selected = name; });
    return s;
  };
  auto unary = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("A", a, "expression")->required();
    s->fallthrough();
    s->callback([&, name] { selected = name; });
    return s;
  };
  binary("mul", "normal-ordered product A*B");
  binary("comm", "commutator [A,B]");
  unary("coproduct", "Delta(A)");
  unary("counit", "epsilon(A)");
  unary("antipode", "S(A)");
  unary("phi", "flatness map; A is read with undeformed relations");
  unary("zbasis", "coordinates in the divided-power basis Z^I X^J");
  binary("star", "closed star product of dual elements");
  binary("staroracle", "star product via <u*v, x> = <u (x) v, Delta x>")
      ->add_option("--cap", cap, "largest |S|+|T| to pair against (default |a|+|b| per term pair)");
  binary("poisson", "hbar_i coefficient of the star commutator")
      ->add_option("--dir", dir, "direction 1, 2 or 3; 0 sums all three")
      ->check(CLI::Range(0, 3));

  auto* group = app.add_subcommand("group", "group law");
  group->require_subcommand(1);
  group->fallthrough();
  {
    auto* c = group->add_subcommand("compose", "G*H, elements as theta,phi,psi,q1,q2,p1,p2");
    c->add_option("G", a)->required();
    c->add_option("H", b)->required();
    c->fallthrough();
    c->callback([&] { selected = "group compose"; });
    auto* i = group->add_subcommand("inverse", "G^-1");
    i->add_option("G", a)->required();
    i->fallthrough();
    i->callback([&] { selected = "group inverse"; });
  }

  auto* verify = app.add_subcommand("verify", "verification suites");
  verify->require_subcommand(1);
  verify->fallthrough();
  for (const std::string name : {"hopf", "star", "bialgebra", "heisenberg", "all"}) {
    auto* s = verify->add_subcommand(name);
    if (name == "hopf" || name == "star" || name == "all")
      s->add_option("--maxdeg", maxdeg, "monomial degree bound (default 2)");
    if (name == "heisenberg" || name == "all") s->add_option("--deg", deg, "hbar degree (default 5)");
    s->fallthrough();
    s->callback([&, name] { selected = "verify " + name; });
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse_error;
  }

  DeformParams params;
  Settings s;
  try {
    if (!config_path.empty()) load_config(config_path, s);
    if (o_alpha->count()) s.alpha = flags.alpha;
    if (o_beta->count()) s.beta = flags.beta;
    if (o_gamma->count()) s.gamma = flags.gamma;
    if (o_trunc->count()) s.trunc = flags.trunc;
    if (o_format->count()) s.format = flags.format;
    params = make_params(s);
  } catch (const InvalidParams& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return exit_invalid_params;
  }

  const bool json = s.format == "json";
  std::string text;
  nlohmann::json doc;
  int code = exit_ok;
  const AlgebraPtr alg = Algebra::create(params);

  auto primal_arg = [&](const std::string& expr) {
    const ParsedValue v = parse_expression(expr, alg);
    if (v.kind == ParsedValue::Kind::dual) throw ParseError("expected a primal expression, got dual tokens", 0);
    return v.as_primal(alg);
  };
  auto dual_arg = [&](const std::string& expr) {
    const ParsedValue v = parse_expression(expr, alg);
    if (v.kind == ParsedValue::Kind::primal) throw ParseError("expected a dual expression, got primal tokens", 0);
    return v.as_dual(params.truncation);
  };
  auto emit = [&](const auto& value) {
    if (json)
      doc = to_json(value);
    else
      text = format_text(value);
  };
  auto emit_report = [&](const VerificationReport& r) {
    if (!r.pass()) code = exit_failed;
    if (json)
      doc = to_json(r);
    else
      text = to_text(r);
  };

  try {
    if (selected == "mul") {
      emit(primal_arg(a) * primal_arg(b));
    } else if (selected == "comm") {
      emit(commutator(primal_arg(a), primal_arg(b)));
    } else if (selected == "coproduct") {
      emit(HopfStructure(alg).coproduct(primal_arg(a)));
    } else if (selected == "counit") {
      const Series c = HopfStructure(alg).counit(primal_arg(a));
      if (json)
        doc = series_json(c);
      else
        text = to_string(c);
    } else if (selected == "antipode") {
      emit(HopfStructure(alg).antipode(primal_arg(a)));
    } else if (selected == "phi") {
      const AlgebraPtr flat = Algebra::create(params, Relations::undeformed);
      const ParsedValue v = parse_expression(a, flat);
      if (v.kind == ParsedValue::Kind::dual) throw ParseError("expected a primal expression, got dual tokens", 0);
      emit(phi_automorphism(v.as_primal(flat), alg));
    } else if (selected == "zbasis") {
      emit(to_z_basis(primal_arg(a)));
    } else if (selected == "star") {
      emit(star_closed(dual_arg(a), dual_arg(b)));
    } else if (selected == "staroracle") {
      const DualElement u = dual_arg(a), v = dual_arg(b);
      const StarOracle oracle(params);
      DualElement r(params.truncation);
      for (const auto& [ma, ca] : u.terms())
        for (const auto& [mb, cb] : v.terms()) {
          DualElement t = oracle.star(ma, mb, cap >= 0 ? cap : ma.norm() + mb.norm());
          t *= ca * cb;
          r += t;
        }
      emit(r);
    } else if (selected == "poisson") {
      if (params.truncation < 1) throw InvalidParams("poisson needs --trunc >= 1");
      const DualElement u = dual_arg(a), v = dual_arg(b);
      DualElement r(params.truncation);
      for (int i = 1; i <= 3; ++i)
        if (dir == 0 || dir == i) r += poisson_bracket_dir(u, v, i);
      emit(r);
    } else if (selected == "group compose" || selected == "group inverse") {
      GroupElement g, h;
      try {
        g = parse_group_element(a);
        if (selected == "group compose") h = parse_group_element(b);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0);
      }
      const GroupElement r = selected == "group compose" ? group_compose(g, h, params) : group_inverse(g, params);
      if (json)
        doc = to_json(r);
      else
        text = to_string(r);
    } else if (selected == "verify hopf") {
      emit_report(verify_hopf_axioms(maxdeg, params));
    } else if (selected == "verify heisenberg") {
      emit_report(heisenberg_limit_report(deg));
    } else if (selected == "verify bialgebra") {
      emit_report(verify_bialgebra_report(params));
    } else if (selected == "verify star" || selected == "verify all") {
      VerificationReport r;
      if (selected == "verify all") {
        r.merge(verify_hopf_axioms(maxdeg, params));
        r.merge(heisenberg_limit_report(deg));
        r.merge(verify_bialgebra_report(params));
      }
      r.merge(verify_star_report(maxdeg, params));
      const VerificationReport diag = star_oracle_diagnostic(maxdeg, params);
      emit_report(r);
      if (json)
        doc["diagnostic"] = to_json(diag)["checks"];
      else
        text += diagnostic_text(diag);
    }
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const InvalidParams& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return exit_invalid_params;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return exit_parse_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_failed;
  }

  const std::string rendered = json ? doc.dump(2) + "\n" : text + (text.empty() || text.back() != '\n' ? "\n" : "");
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) {
      err << "error: cannot write '" << out_path << "'\n";
      return exit_failed;
    }
    f << rendered;
  } else {
    out << rendered;
  }
  return code;
}

}  // namespace ncque
