#include "fwh_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <nlohmann/json.hpp>
#include <ostream>

#include "fwh/eval.hpp"
#include "fwh/limitlab.hpp"

namespace fwh::cli {
namespace {

struct Options {
  std::string file;
  std::string main_name;
  std::string def_name;
  std::size_t fuel = 100000;
  std::size_t trials = 500;
  std::uint64_t seed = 20240601;
  bool unsafe = false;
  bool json = false;
  bool no_prelude = false;
};

LoadOptions load_options(const Options& o) {
  LoadOptions lo;
  lo.prelude = !o.no_prelude;
  lo.check.check_admissibility = !o.unsafe;
  return lo;
}

void report(const Program& p, const Options& o, std::ostream& out, std::ostream& err) {
  for (const auto& d : p.diagnostics()) {
    if (o.json)
      out << diagnostic_json(d) << "\n";
    else
      err << d.render();
  }
}

int run_check(const Options& o, std::ostream& out, std::ostream& err) {
  Program p = check_text(read_file(o.file), o.file, load_options(o));
  report(p, o, out, err);
  if (!p.ok()) return kStaticError;
  if (!o.json) {
    std::size_t n = std::count_if(p.defs().begin(), p.defs().end(), [](const CheckedDef& d) { return !d.from_prelude; });
    out << o.file << ": ok, " << n << " definition" << (n == 1 ? "" : "s") << " checked\n";
  }
  return kOk;
}

int run_eval(const Options& o, std::ostream& out, std::ostream& err) {
  Program p = check_text(read_file(o.file), o.file, load_options(o));
  report(p, o, out, err);
  if (!p.ok()) return kStaticError;
  const CheckedDef* def = p.find(o.main_name);
  if (!def || !def->elaborated) {
    err << o.file << ": no definition named '" << o.main_name << "'\n";
    return kUsage;
  }
  NormalizeOutcome r = normalize_term(p.inline_erased(Term::var(o.main_name)), o.fuel);
  if (!r.normal) {
    err << o.main_name << ": out of fuel after " << r.steps << " steps\n";
    return kOutOfFuel;
  }
  out << to_string(r.term) << "\n";
  out << "-- " << r.steps << " steps\n";
  return kOk;
}

int run_explain(const Options& o, std::ostream& out, std::ostream& err) {
  Program p = check_text(read_file(o.file), o.file, load_options(o));
  const CheckedDef* def = p.find(o.def_name);
  if (!def) {
    report(p, o, out, err);
    err << o.file << ": no definition named '" << o.def_name << "'\n";
    return p.ok() ? kUsage : kStaticError;
  }
  if (def->type) out << def->name << " : " << to_string(*def->type) << "\n";
  if (def->elaborated) out << def->name << " = " << to_string(*def->elaborated) << "\n";
  if (def->derivation) out << render(*def->derivation);
  for (const auto& d : p.diagnostics()) {
    if (d.decl == o.def_name) {
      if (o.json)
        out << diagnostic_json(d) << "\n";
      else
        out << d.render();
    }
  }
  return def->ok ? kOk : kStaticError;
}

int run_lemmas(const Options& o, std::ostream& out) {
  lab::LabReport r = lab::check_section_limits(o.trials, o.seed);
  if (!o.json) {
    out << r.text();
  } else {
    for (const auto& l : r.lemmas) {
      const nlohmann::json j{{"id", l.id},           {"statement", l.statement},
                             {"trials", l.trials},   {"failures", l.failures},
                             {"expect_failure", l.expect_failure},
                             {"status", l.passed() ? "PASS" : "FAIL"},
                             {"witness", l.witness}};
      out << j.dump() << "\n";
    }
  }
  return r.passed() ? kOk : kStaticError;
}

}  // namespace

std::string diagnostic_json(const Diagnostic& d) {
  nlohmann::json j;
  j["file"] = d.file;
  j["span"] = {{"line", d.span.line}, {"column", d.span.column}};
  j["judgement"] = std::string(to_string(d.judgement));
  j["code"] = d.code;
  j["decl"] = d.decl;
  j["rule"] = d.rule();
  j["message"] = d.message();
  j["trail"] = trail(d.failure);
  return j.dump();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type checker and evaluator for a sized higher-order polymorphic lambda calculus", "fwh"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Source file")->required();
    sub->add_flag("--unsafe", o.unsafe, "Skip the admissibility check of recursive definitions");
    sub->add_flag("--json", o.json, "Print diagnostics as JSON objects, one per line");
    sub->add_flag("--no-prelude", o.no_prelude, "Do not load the bundled prelude");
  };
  CLI::App* check = app.add_subcommand("check", "Kind-, type- and admissibility-check a file");
  add_common(check);
  CLI::App* eval = app.add_subcommand("eval", "Normalize a definition");
  add_common(eval);
  eval->add_option("--main", o.main_name, "Definition to evaluate")->required();
  eval->add_option("--fuel", o.fuel, "Maximum number of reduction steps")->check(CLI::PositiveNumber);
  CLI::App* explain = app.add_subcommand("explain", "Print the typing derivation of a definition");
  add_common(explain);
  explain->add_option("--def", o.def_name, "Definition to explain")->required();
  CLI::App* lemmas = app.add_subcommand("lemmas", "Run the limit laboratory");
  lemmas->add_option("--trials", o.trials, "Random instances per check")->check(CLI::PositiveNumber);
  lemmas->add_option("--seed", o.seed, "Random seed");
  lemmas->add_flag("--json", o.json, "Print one machine-readable line per check");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (check->parsed()) return run_check(o, out, err);
    if (eval->parsed()) return run_eval(o, out, err);
    if (explain->parsed()) return run_explain(o, out, err);
    if (lemmas->parsed()) return run_lemmas(o, out);
  } catch (const std::runtime_error& e) {
    err << "fwh: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace fwh::cli
