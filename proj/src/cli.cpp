#include "dlcomp/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "dlcomp/error.hpp"
#include "dlcomp/invariants.hpp"
#include "dlcomp/report.hpp"
#include "dlcomp/sl2oracle.hpp"

namespace dlcomp::cli {

namespace {

using report::json;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NoIntegralSolution:
    case ErrorKind::InvariantViolation:
      return kExitArithmetic;
    case ErrorKind::TooManyStrata:
      return kExitGuard;
    default:
      return kExitValidation;
  }
}

json load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open spec file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidArgument, "spec file '" + path + "' is not valid JSON: " + e.what());
  }
}

// False entries under "checks", or an unequal quotient comparison.
bool any_check_failed(const json& r) {
  if (r.contains("checks"))
    for (const auto& [name, value] : r.at("checks").items())
      if (value.is_boolean() && !value.get<bool>()) return true;
  if (r.contains("quotient_iso") && r.at("quotient_iso").is_object())
    return !r.at("quotient_iso").at("equal").get<bool>();
  return false;
}

void emit(const json& r, bool as_json, std::ostream& out) {
  if (as_json) {
    out << r.dump(2) << "\n";
  } else {
    out << report::render_text(r);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic invariants of compactified Deligne-Lusztig varieties"};
  app.name(args.empty() ? "dlcomp" : args.front());
  app.require_subcommand(1);

  std::string spec_path;
  std::string mask_text;
  bool as_json = false;
  bool as_text = false;
  unsigned q = 0;
  std::optional<unsigned> k;

  auto add_format = [&](CLI::App* sub) {
    auto* j = sub->add_flag("--json", as_json, "Emit a JSON report");
    auto* t = sub->add_flag("--text", as_text, "Emit a human-readable report (default)");
    j->excludes(t);
  };
  auto add_problem = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--spec", spec_path, "Problem description (JSON)")->required();
    sub->add_option("--mask", mask_text, "Subword positions, e.g. \"1,3\"");
    add_format(sub);
    return sub;
  };

  CLI::App* invariants_cmd = add_problem("invariants", "Torus group, certificate and (lambda_i, m_i)");
  CLI::App* strata_cmd = add_problem("strata", "Stabilizers, H_I and smoothness flags for every subword");
  CLI::App* ramification_cmd = add_problem("ramification", "Ramification data along each boundary divisor");
  CLI::App* quotient_cmd = add_problem("quotient-iso", "Compare T^wF/N_w(Y_wx) with T^xF/N_x(Y_wx)");
  CLI::App* sl2_cmd = app.add_subcommand("verify-sl2", "Exhaustive SL2(F_q) and Drinfeld-curve checks");
  sl2_cmd->add_option("--q", q, "Field order")->required();
  sl2_cmd->add_option("--k", k, "Extension degree for the Drinfeld count");
  add_format(sl2_cmd);

  try {
    std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
    std::reverse(rest.begin(), rest.end());
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (sl2_cmd->parsed()) {
      // Default extension degree: 2 when F_{q^2} has a table, otherwise 1.
      const unsigned degree =
          k.value_or(std::size_t{q} * q <= sl2::kMaxFieldOrder ? 2u : 1u);
      const auto drinfeld = sl2::drinfeld_points(q, degree);
      const auto phi = sl2::check_phi_properties(q);
      const json r = report::sl2_report(phi, drinfeld);
      emit(r, as_json, out);
      return r["passed"].get<bool>() ? kExitOk : kExitCheckFailed;
    }

    const report::ProblemSpec spec = report::parse_problem(load_document(spec_path));
    const invariants::WordProblem problem(spec.root_datum, spec.twist, spec.word);
    std::optional<rootdata::SubwordMask> mask = spec.mask;
    if (!mask_text.empty()) mask = report::parse_mask(mask_text, problem.length());

    json r;
    if (invariants_cmd->parsed()) {
      r = report::invariants_report(problem);
    } else if (strata_cmd->parsed()) {
      r = report::strata_report(problem);
    } else if (ramification_cmd->parsed()) {
      r = report::ramification_report(problem);
    } else if (quotient_cmd->parsed()) {
      if (!mask) throw Error(ErrorKind::InvalidArgument, "quotient-iso needs a mask (--mask or \"mask\")");
      r = report::quotient_iso_report(problem, *mask);
    }
    emit(r, as_json, out);
    return any_check_failed(r) ? kExitCheckFailed : kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
}

}  // namespace dlcomp::cli
