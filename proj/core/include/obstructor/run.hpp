#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obstructor/report.hpp"
#include "obstructor/scenario.hpp"

namespace obstructor {

enum class Command { Solvability, Scan, Verdict, All, ListExamples };
std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

enum class Format { Json, Text };

struct RunFlags {
  Format format = Format::Json;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
  std::optional<std::size_t> samples;
  std::optional<int> degree_bound;
  bool include_timing = true;
};

struct RunResult {
  // 0: expectations met or absent; 1: mismatch; 2: inconclusive at caps.
  int exit_code = 0;
  ObstructionReport report;
  std::string output;
};

RunResult run(Command command, const Scenario& scenario, const RunFlags& flags);

// Compares the expected block against the parts of the report that the command produced.
std::vector<ExpectationCheck> check_expectations(const Scenario& scenario, const ObstructionReport& report);

// One bundled scenario name per line.
std::string list_examples();

}  // namespace obstructor
