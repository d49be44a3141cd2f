// One PASS/FAIL line per acceptance criterion; exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "fwh/continuity.hpp"
#include "fwh/eval.hpp"
#include "fwh/limitlab.hpp"
#include "fwh/normalize.hpp"
#include "fwh_cli/cli.hpp"
#include "testkit.hpp"

namespace {

using namespace fwh;
using namespace fwh::testkit;
using Clock = std::chrono::steady_clock;

struct Verdict {
  bool ok = true;
  std::string note;
  void require(bool cond, const std::string& why) {
    if (!cond && ok) note = why;
    ok = ok && cond;
  }
};

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string path(const std::string& stem) { return corpus_file(stem).string(); }

Verdict corpus_accepted() {
  Verdict v;
  const auto t0 = Clock::now();
  for (const auto& f : accepted_corpus()) {
    const CliRun r = cli({"check", path(f)});
    v.require(r.code == 0, f + " exited " + std::to_string(r.code));
  }
  const double s = seconds_since(t0);
  v.require(s < 2.0, "took " + std::to_string(s) + " s");
  if (v.ok) v.note = std::to_string(s) + " s";
  return v;
}

Verdict corpus_rejected() {
  Verdict v;
  for (const auto& f : rejected_corpus()) {
    const CliRun r = cli({"check", "--json", path(f)});
    v.require(r.code == 1, f + " exited " + std::to_string(r.code));
    v.require(r.out.find("\"judgement\":\"admissibility\"") != std::string::npos, f + " printed " + r.out);
    std::vector<std::string> decls;
    const Program p = load_corpus(f);
    for (const auto& d : p.diagnostics()) {
      v.require(d.judgement == Judgement::admissibility, f + ": " + d.render());
      v.require(d.rule().rfind("cont-", 0) == 0, f + ": trail ends in " + d.rule());
      decls.push_back(d.decl);
    }
    v.require(!decls.empty(), f + " produced no diagnostic");
    if (f == "hungry") {
      for (const char* name : {"h", "tr"})
        v.require(std::find(decls.begin(), decls.end(), name) != decls.end(), std::string("hungry: ") + name + " accepted");
    }
  }
  return v;
}

Verdict evaluation() {
  Verdict v;
  const CliRun loop = cli({"eval", path("loop"), "--main", "demo", "--unsafe", "--fuel", "10000"});
  v.require(loop.code == 2, "loop demo exited " + std::to_string(loop.code));
  for (const auto& f : accepted_corpus()) {
    const Program p = load_corpus(f);
    for (const auto& d : p.defs()) {
      if (!d.elaborated) continue;
      v.require(normalize_term(p.inline_erased(Term::var(d.name)), 100000).normal, f + "/" + d.name + " out of fuel");
    }
  }
  const CliRun bf = cli({"eval", path("bf"), "--main", "demo"});
  v.require(bf.code == 0 && bf.out.rfind("\\a. \\b. \\c. in (inr <a, in (inr <b, in (inr <c, in (inl unit)>)>)>)", 0) == 0,
            "bf demo printed " + bf.out);
  return v;
}

Verdict subject_reduction_all() {
  Verdict v;
  std::size_t steps = 0;
  for (const auto& f : accepted_corpus()) {
    const Program p = load_corpus(f);
    for (const auto& d : p.defs()) {
      if (!d.elaborated) continue;
      const ReductionCheck r = subject_reduction(p, d.name, 50);
      v.require(r.ok, r.failure);
      steps += r.steps;
    }
  }
  if (v.ok) v.note = std::to_string(steps) + " reducts re-checked";
  return v;
}

Verdict properties() {
  Verdict v;
  std::vector<PropertyResult> all = all_properties(kCases, kSeed);
  all.push_back(round_trip_random(kCases, kSeed));
  for (const auto& r : all) v.require(r.passed(), r.summary());
  if (v.ok) v.note = std::to_string(all.size()) + " suites x " + std::to_string(kCases) + " cases";
  return v;
}

Verdict lemmas() {
  Verdict v;
  const auto t0 = Clock::now();
  const CliRun r = cli({"lemmas", "--trials", "500"});
  const double s = seconds_since(t0);
  v.require(r.code == 0, "lemmas exited " + std::to_string(r.code));
  v.require(s < 30.0, "took " + std::to_string(s) + " s");
  const lab::LabReport report = lab::check_section_limits(500, 20240601);
  for (const auto& l : report.lemmas) {
    if (l.expect_failure)
      v.require(l.failures > 0, l.id + " found no counterexample");
    else
      v.require(l.failures == 0, l.id + " failed: " + l.witness);
  }
  if (v.ok) v.note = std::to_string(report.lemmas.size()) + " checks in " + std::to_string(s) + " s";
  return v;
}

Verdict semicont_regressions() {
  Verdict v;
  KindContext delta;
  delta.push("i", Polarity::mixed, Kind::ord());
  delta.push("A", Polarity::mixed, Kind::star());
  delta.push("F", Polarity::mixed, Kind::arrow(Polarity::plus, Kind::star(), Kind::star()));
  auto judge = [&](ContFlag q, std::string_view text) {
    const Con c = normalize(delta, parse_elaborated(delta, text), Kind::star());
    return semicont_check(delta, {}, "i", q, c, Kind::star()).ok();
  };
  v.require(judge(ContFlag::upper, "Stream i (Nat i)"), "Stream i (Nat i) not upper");
  v.require(judge(ContFlag::upper, "Nat i -> List i A -> List i (Nat i)"), "list function not upper");
  v.require(judge(ContFlag::upper, "Eq (GRose i F A)"), "Eq (GRose i F A) not upper");
  v.require(judge(ContFlag::lower, "List oo (Rose i A)"), "List oo (Rose i A) not lower");
  v.require(!judge(ContFlag::upper, "(Nat oo -> Nat i) -> Nat oo"), "(Nat oo -> Nat i) -> Nat oo accepted");
  return v;
}

Verdict frontend() {
  Verdict v;
  for (const char* f : {"prelude", "eqgrose", "succpred", "nats", "zip", "bf", "loop", "loopnot", "hungry"}) {
    const SourceFile a = parse_source(read_file(path(f)));
    const std::string printed = to_string(a);
    const SourceFile b = parse_source(printed);
    bool same = a.decls.size() == b.decls.size() && to_string(b) == printed;
    for (std::size_t k = 0; same && k < a.decls.size(); ++k) same = alpha_eq(a.decls[k], b.decls[k]);
    v.require(same, std::string(f) + " does not round-trip");
  }
  const PropertyResult r = round_trip_random(kCases, kSeed);
  v.require(r.passed(), r.summary());
  const CliRun first = cli({"check", "--json", path("hungry")});
  const CliRun second = cli({"check", "--json", path("hungry")});
  v.require(first.out == second.out, "check output differs between runs");
  v.require(cli({"check", "/nonexistent.fwh"}).code == 3, "missing file is not a usage error");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 corpus accepted", corpus_accepted},
      {"2 corpus rejected by admissibility", corpus_rejected},
      {"3 evaluation", evaluation},
      {"4 subject reduction", subject_reduction_all},
      {"5 property suites", properties},
      {"6 limit lemmas", lemmas},
      {"7 semi-continuity regressions", semicont_regressions},
      {"frontend round trip and exit codes", frontend},
  };
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.ok = false;
      v.note = std::string("threw: ") + e.what();
    }
    all = all && v.ok;
    std::cout << (v.ok ? "PASS " : "FAIL ") << name;
    if (!v.note.empty()) std::cout << "  (" << v.note << ")";
    std::cout << std::endl;
  }
  return all ? 0 : 1;
}
