#include "obstructor/run.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "obstructor/errors.hpp"

namespace obstructor {

std::optional<Command> parse_command(std::string_view name) {
  if (name == "solvability") return Command::Solvability;
  if (name == "scan") return Command::Scan;
  if (name == "verdict") return Command::Verdict;
  if (name == "all") return Command::All;
  if (name == "list-examples") return Command::ListExamples;
  return std::nullopt;
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Solvability: return "solvability";
    case Command::Scan: return "scan";
    case Command::Verdict: return "verdict";
    case Command::All: return "all";
    case Command::ListExamples: return "list-examples";
  }
  return "?";
}

std::string list_examples() {
  std::string out;
  for (const auto& n : catalog_names()) out += n + "\n";
  return out;
}

namespace {

std::string observed_profile(const PlaceProfile& p) {
  if (p.status == ProfileStatus::Constant && p.c_v) return "constant " + p.c_v->to_string();
  return std::string(to_string(p.status));
}

const ClassReport* find_class(const ObstructionReport& r, const std::string& name) {
  for (const auto& c : r.classes) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

}  // namespace

std::vector<ExpectationCheck> check_expectations(const Scenario& s, const ObstructionReport& r) {
  std::vector<ExpectationCheck> out;
  if (!s.expected) return out;
  const ExpectedBlock& e = *s.expected;
  if (!r.solvability.empty()) {
    for (const auto& [place, want] : e.solvability) {
      if (place == "*") {
        for (const auto& row : r.solvability) {
          out.push_back({"solvability " + row.place.to_string(), want, row.outcome, row.outcome == want});
        }
        continue;
      }
      auto it = std::find_if(r.solvability.begin(), r.solvability.end(),
                             [&](const SolvabilityRow& row) { return row.place.to_string() == place; });
      const std::string got = it == r.solvability.end() ? "missing" : it->outcome;
      out.push_back({"solvability " + place, want, got, got == want});
    }
  }
  if (r.classes.empty()) return out;
  for (const auto& [cls, places] : e.profiles) {
    const ClassReport* c = find_class(r, cls);
    for (const auto& [place, want] : places) {
      std::string got = "missing";
      if (c) {
        for (const auto& p : c->profile.profiles) {
          if (p.place.to_string() == place) got = observed_profile(p);
        }
      }
      out.push_back({"profile " + cls + " at " + place, want, got, got == want});
    }
  }
  for (const auto& [cls, want] : e.sums) {
    const ClassReport* c = find_class(r, cls);
    const std::string got = !c ? "missing" : c->profile.a ? c->profile.a->to_string() : "none";
    out.push_back({"adelic sum " + cls, want, got, got == want});
  }
  for (const auto& [cls, degrees] : e.verdicts) {
    const ClassReport* c = find_class(r, cls);
    if (c && c->verdicts.empty()) continue;
    for (const auto& [d, want] : degrees) {
      std::string got = "missing";
      if (c) {
        for (const auto& v : c->verdicts) {
          if (v.degree == d) got = std::string(to_string(v.outcome));
        }
      }
      out.push_back({"verdict " + cls + " d=" + std::to_string(d), want, got, got == want});
    }
  }
  return out;
}

RunResult run(Command command, const Scenario& s, const RunFlags& flags) {
  RunResult result;
  if (command == Command::ListExamples) {
    result.output = list_examples();
    return result;
  }
  HypOptions opt;
  opt.caps = SearchCaps::defaults();
  opt.caps.depth = flags.depth.value_or(s.caps.depth);
  if (!std::getenv("OBSTRUCTOR_BUDGET")) opt.caps.budget = s.caps.budget;
  opt.seed = flags.seed.value_or(s.caps.seed);
  opt.samples = flags.samples.value_or(s.caps.samples);
  opt.good_place_count = s.caps.good_places;
  opt.good_place_samples = s.caps.good_place_samples;
  opt.solvability_places = s.solvability_places;
  opt.scans = s.scans;
  if (flags.degree_bound) {
    for (auto& spec : opt.scans) spec.degree_bound = *flags.degree_bound;
  }
  opt.global_points = s.global_points;
  opt.run_solvability = command == Command::Solvability || command == Command::All;
  opt.run_scans = command != Command::Solvability;
  opt.run_verdicts = command == Command::Verdict || command == Command::All;
  opt.run_good_places = command == Command::All;
  if (opt.run_scans) {
    for (const auto& e : s.extra_points) opt.extra_points.push_back(realize_point(s, e, opt.caps));
  }

  ObstructionReport rep = hyp_report(s.variety, s.classes, s.degrees, opt);
  rep.scenario = s.name;
  rep.command = std::string(to_string(command));
  rep.expectations = check_expectations(s, rep);

  bool inconclusive = rep.aborted;
  for (const auto& row : rep.solvability) inconclusive = inconclusive || row.outcome == "Inconclusive";
  const bool mismatch = std::any_of(rep.expectations.begin(), rep.expectations.end(),
                                    [](const ExpectationCheck& e) { return !e.ok; });
  result.exit_code = inconclusive ? 2 : mismatch ? 1 : 0;
  result.output = flags.format == Format::Json ? serialize_report(rep, flags.include_timing) : render_text(rep);
  result.report = std::move(rep);
  return result;
}

}  // namespace obstructor
