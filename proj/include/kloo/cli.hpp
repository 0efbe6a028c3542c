#pragma once

// The `kloo` command line: basis, hodge, ordinary, newton, verify, reduce.
// Exit codes: 0 ok, 1 internal invariant violation, 2 invalid input, 3 I/O, 4 budget.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "kloo/error.hpp"
#include "kloo/graded.hpp"
#include "kloo/lattice.hpp"
#include "kloo/lfunc.hpp"
#include "kloo/ordinarity.hpp"
#include "kloo/polygon.hpp"

namespace kloo::cli {

inline constexpr int kExitOk = 0, kExitInternal = 1, kExitInvalid = 2, kExitIo = 3, kExitBudget = 4;

inline nlohmann::json family_json(const KloostermanFamily& f) { return {{"a", f.a()}, {"d", f.d()}}; }

inline std::string describe_polygon(const Polygon& poly) {
  std::string s = "vertices:";
  for (const auto& v : poly.vertices()) s += " (" + to_string(v.x) + "," + to_string(v.y) + ")";
  s += "\nslopes:";
  for (const auto& [slope, mult] : poly.slopes().slopes) {
    s += " " + to_string(slope);
    if (mult > 1) s += " (x" + std::to_string(mult) + ")";
  }
  return s;
}

/// Presentation only: the polygon drawn in a 400x300 viewport.
inline std::string polygon_svg(const Polygon& poly) {
  const auto& vs = poly.vertices();
  const double w = boost::rational_cast<double>(poly.extent());
  double h = 0;
  for (const auto& v : vs) h = std::max(h, boost::rational_cast<double>(v.y));
  const double sx = 360.0 / std::max(w, 1.0), sy = 260.0 / std::max(h, 1.0);
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"300\" viewBox=\"0 0 400 300\">\n";
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
  for (const auto& v : vs)
    os << 20 + sx * boost::rational_cast<double>(v.x) << "," << 280 - sy * boost::rational_cast<double>(v.y) << " ";
  os << "\"/>\n";
  for (const auto& v : vs)
    os << "<circle r=\"3\" cx=\"" << 20 + sx * boost::rational_cast<double>(v.x) << "\" cy=\""
       << 280 - sy * boost::rational_cast<double>(v.y) << "\"/>\n";
  os << "</svg>\n";
  return os.str();
}

namespace detail {

struct FamilyArgs {
  std::vector<Int> a, d;

  KloostermanFamily family() const { return KloostermanFamily(a, d); }
};

inline void add_family(CLI::App* cmd, FamilyArgs& fa) {
  cmd->add_option("--a", fa.a, "exponents a_i")->required()->delimiter(',');
  cmd->add_option("--d", fa.d, "exponents d_i")->required()->delimiter(',');
}

inline std::vector<Int> lambdas_for(Int p, bool all, Int lambda) {
  if (!all) {
    if (mod(lambda, p) == 0) throw InvalidInput("lambda must be nonzero mod p");
    return {mod(lambda, p)};
  }
  std::vector<Int> out;
  for (Int l = 1; l < p; ++l) out.push_back(l);
  return out;
}

inline std::uint64_t resolve_budget(std::uint64_t flag) { return flag ? flag : default_point_budget(); }

}  // namespace detail

inline int cmd_basis(const KloostermanFamily& f, bool json, std::ostream& out) {
  const BasisSet basis = enumerate_basis(f);
  const Int formula = basis_cardinality_formula(f);
  if (json) {
    auto entries = nlohmann::json::array();
    for (std::size_t i = 0; i < basis.size(); ++i)
      entries.push_back({{"v", basis.points[i].coords()},
                         {"weight", rational_to_json(basis.weights[i].value)}});
    out << nlohmann::json{{"family", family_json(f)}, {"basis", entries}, {"count", basis.size()}, {"formula", formula}}
               .dump()
        << "\n";
    return kExitOk;
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    out << to_string(basis.points[i]) << "  w=" << to_string(basis.weights[i].value) << "\n";
  out << "count " << basis.size() << " = " << formula << "\n";
  return kExitOk;
}

inline int cmd_hodge(const KloostermanFamily& f, bool json, const std::string& svg_path, std::ostream& out) {
  const Polygon hp = hodge_polygon(enumerate_basis(f));
  if (!svg_path.empty()) {
    std::ofstream file(svg_path);
    if (!file) throw IoError("cannot write " + svg_path);
    file << polygon_svg(hp);
    if (!file) throw IoError("failed writing " + svg_path);
  }
  if (json)
    out << nlohmann::json{{"family", family_json(f)}, {"hodge", to_json(hp)}}.dump() << "\n";
  else
    out << describe_polygon(hp) << "\n";
  return kExitOk;
}

inline std::string ordinarity_verdict(const KloostermanFamily& f, Int p) {
  if (ordinary_sufficient_estar(f, p)) return "guaranteed-ordinary(e*)";
  if (ordinary_sufficient_faces(f, p)) return "guaranteed-ordinary(faces)";
  return "unknown";
}

inline int cmd_ordinary(const KloostermanFamily& f, Int p, std::ostream& out) {
  require_odd_prime(p);
  if (!is_nondegenerate(f, p))
    throw InvalidInput("family " + describe(f) + " is degenerate at p = " + std::to_string(p));
  const Int es = e_star(f);
  out << "nondegenerate: yes\n";
  out << "e* = " << es << ", p mod e* = " << p % es << "\n";
  const auto faces = face_largest_factors(f);
  out << "face s_n:";
  for (std::size_t j = 0; j < faces.size(); ++j) out << " Delta" << j << "=" << faces[j];
  out << "\nverdict: " << ordinarity_verdict(f, p) << "\n";
  return kExitOk;
}

inline int cmd_newton(const KloostermanFamily& f, Int p, const std::vector<Int>& lambdas, std::uint64_t budget,
                      bool json, std::ostream& out) {
  auto runs = nlohmann::json::array();
  for (Int l : lambdas) {
    const BruteForceResult r = newton_polygon_bruteforce(f, p, l, budget);
    if (json)
      runs.push_back({{"lambda", l}, {"newton", to_json(r.newton)}});
    else
      out << "lambda=" << l << "\n" << describe_polygon(r.newton) << "\n";
  }
  if (json) out << nlohmann::json{{"family", family_json(f)}, {"p", p}, {"runs", runs}}.dump() << "\n";
  return kExitOk;
}

/// RunReport: HP, NP per lambda, verdicts and the sufficient criteria.
inline int cmd_verify(const KloostermanFamily& f, Int p, const std::vector<Int>& lambdas, std::uint64_t budget,
                      bool json, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  require_odd_prime(p);
  const bool by_estar = ordinary_sufficient_estar(f, p);
  const bool by_faces = ordinary_sufficient_faces(f, p);
  const Polygon hp = hodge_polygon(enumerate_basis(f));

  bool all_equal = true, violation = false;
  auto runs = nlohmann::json::array();
  std::string text;
  for (Int l : lambdas) {
    const BruteForceResult r = newton_polygon_bruteforce(f, p, l, budget);
    const Comparison c = compare(r.newton, hp);
    all_equal = all_equal && c == Comparison::equal;
    violation = violation || c == Comparison::incomparable_violation;
    runs.push_back({{"lambda", l}, {"newton", to_json(r.newton)}, {"comparison", to_string(c)}});
    text += "lambda=" + std::to_string(l) + " " + to_string(c) + "\nNP " + describe_polygon(r.newton) + "\n";
  }
  const bool guaranteed = by_estar || by_faces;
  const std::string verdict = violation ? "violation" : all_equal ? "equal" : "above-or-equal";
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

  if (json) {
    nlohmann::json report{{"family", family_json(f)},
                          {"p", p},
                          {"lambdas", lambdas},
                          {"hodge", to_json(hp)},
                          {"runs", runs},
                          {"verdict", verdict},
                          {"criteria", {{"e_star", e_star(f)},
                                        {"e_star_condition", by_estar},
                                        {"face_factors", face_largest_factors(f)},
                                        {"face_condition", by_faces}}},
                          {"timing_ms", ms}};
    out << report.dump() << "\n";
  } else {
    out << "HP " << describe_polygon(hp) << "\n" << text;
    out << "criteria: e* " << (by_estar ? "holds" : "fails") << ", faces " << (by_faces ? "holds" : "fails") << "\n";
    out << "verdict: " << verdict << "\n";
  }
  if (violation) return kExitInternal;
  if (guaranteed && !all_equal) return kExitInternal;
  return kExitOk;
}

inline int cmd_reduce(const KloostermanFamily& f, Int p, Int lambda, const std::vector<Int>& v, bool json,
                      std::ostream& out) {
  const GradedContext ctx(f, p, lambda);
  const ReductionResult r = reduce_monomial(ctx, LatticePoint(v));
  auto term_string = [](Int c, const LatticePoint& b) { return std::to_string(c) + "*x^" + to_string(b); };
  std::string result;
  for (const auto& [c, b] : r.combination) result += (result.empty() ? "" : " + ") + term_string(c, b);
  if (result.empty()) result = "0";

  if (json) {
    auto steps = nlohmann::json::array();
    for (const auto& s : r.chain) {
      nlohmann::json to = nullptr;
      if (s.to) to = s.to->coords();
      steps.push_back({{"rule", s.rule},
                       {"relation", describe(s.relation)},
                       {"from", s.from.coords()},
                       {"to", to},
                       {"factor", s.factor}});
    }
    auto combo = nlohmann::json::array();
    for (const auto& [c, b] : r.combination) combo.push_back({{"coeff", c}, {"v", b.coords()}});
    out << nlohmann::json{{"family", family_json(f)}, {"p", p}, {"lambda", ctx.lambda}, {"v", v},
                          {"steps", steps}, {"result", combo}}
               .dump()
        << "\n";
    return kExitOk;
  }
  for (const auto& s : r.chain) {
    out << "x^" << to_string(s.from) << " -> ";
    out << (s.to ? std::to_string(s.factor) + "*x^" + to_string(*s.to) + (s.relation.size() > 1 ? " + ..." : "")
                 : std::string("0"));
    out << "  via " << describe(s.relation) << " [" << s.rule << "]\n";
  }
  out << "steps: " << r.steps << "\nresult: " << result << "\n";
  return kExitOk;
}

/// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hodge and Newton polygons of generalized Kloosterman sums", "kloo"};
  app.require_subcommand(1);

  detail::FamilyArgs fa;
  bool json = false, all_lambda = false;
  Int p = 0, lambda = 1;
  std::uint64_t budget_flag = 0;
  std::string svg;
  std::vector<Int> v;

  auto* basis = app.add_subcommand("basis", "the monomial basis B with weights");
  detail::add_family(basis, fa);
  basis->add_flag("--json", json);

  auto* hodge = app.add_subcommand("hodge", "the Hodge polygon");
  detail::add_family(hodge, fa);
  hodge->add_option("--svg", svg, "write an SVG rendering");
  hodge->add_flag("--json", json);

  auto* ordinary = app.add_subcommand("ordinary", "sufficient ordinarity criteria");
  detail::add_family(ordinary, fa);
  ordinary->add_option("--p", p)->required();

  auto add_lambda_choice = [&](CLI::App* cmd) {
    auto* single = cmd->add_option("--lambda", lambda, "lambda in F_p^* (default 1)");
    cmd->add_flag("--all-lambda", all_lambda, "every lambda in F_p^*")->excludes(single);
    cmd->add_option("--budget", budget_flag, "point-evaluation budget (default KLOO_BUDGET or 1e8)");
    cmd->add_flag("--json", json);
  };

  auto* newton = app.add_subcommand("newton", "brute-force Newton polygon");
  detail::add_family(newton, fa);
  newton->add_option("--p", p)->required();
  add_lambda_choice(newton);

  auto* verify = app.add_subcommand("verify", "compare NP against HP");
  detail::add_family(verify, fa);
  verify->add_option("--p", p)->required();
  add_lambda_choice(verify);

  auto* reduce = app.add_subcommand("reduce", "reduce a monomial to the basis");
  detail::add_family(reduce, fa);
  reduce->add_option("--p", p)->required();
  reduce->add_option("--lambda", lambda)->required();
  reduce->add_option("--v", v)->required()->delimiter(',')->allow_extra_args(false);
  reduce->add_flag("--json", json);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream os, es;
    const int code = app.exit(e, os, es);
    out << os.str();
    err << es.str();
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    const KloostermanFamily f = fa.family();
    if (*basis) return cmd_basis(f, json, out);
    if (*hodge) return cmd_hodge(f, json, svg, out);
    if (*ordinary) return cmd_ordinary(f, p, out);
    if (*reduce) return cmd_reduce(f, p, lambda, v, json, out);
    require_odd_prime(p);
    const auto lambdas = detail::lambdas_for(p, all_lambda, lambda);
    const std::uint64_t budget = detail::resolve_budget(budget_flag);
    if (*newton) return cmd_newton(f, p, lambdas, budget, json, out);
    return cmd_verify(f, p, lambdas, budget, json, out);
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace kloo::cli
