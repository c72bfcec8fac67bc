#include <fstream>
#include <future>
#include <iostream>

#include <CLI11.hpp>

#include "obstructor/errors.hpp"
#include "obstructor/run.hpp"

using namespace obstructor;

namespace {

int write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << path << "\n";
    return 3;
  }
  out << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Local solvability, Brauer class evaluation and zero-cycle obstruction verdicts"};
  app.require_subcommand(1);

  std::string scenario_arg;
  std::string format = "json";
  std::string out_path;
  std::uint64_t seed = 0;
  int depth = 0;
  std::size_t samples = 0;
  int degree_bound = 0;
  bool no_timing = false;
  bool batch = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_arg, "Scenario file or bundled scenario name")->required();
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--seed", seed, "Sampling seed (overrides the scenario)");
    sub->add_option("--depth", depth, "Residue depth in pi-digits");
    sub->add_option("--samples", samples, "Sampled points per field");
    sub->add_option("--degree-bound", degree_bound, "Extension degree bound for every finite scan");
    sub->add_option("--out", out_path, "Write the report here instead of stdout");
    sub->add_flag("--no-timing", no_timing, "Leave the timing field out of JSON reports");
  };
  const std::pair<const char*, const char*> commands[] = {
      {"solvability", "Local solvability table"},
      {"scan", "Evaluation profiles of each class at the scanned places"},
      {"verdict", "Profiles, adelic sums and per-degree verdicts"},
      {"all", "Everything, plus good-place and coherence checks"}};
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));
  auto* batch_cmd = app.add_subcommand("batch", "Run 'all' on every bundled scenario concurrently");
  batch_cmd->add_option("--seed", seed, "Sampling seed");
  batch_cmd->add_option("--out", out_path, "Write the combined report here");
  batch_cmd->add_flag("--no-timing", no_timing, "Leave timing fields out");
  batch_cmd->callback([&] { batch = true; });
  app.add_subcommand("list-examples", "Print the bundled scenario names");

  CLI11_PARSE(app, argc, argv);
  const std::string command_name = app.get_subcommands().front()->get_name();

  try {
    if (command_name == "list-examples") {
      std::cout << list_examples();
      return 0;
    }
    RunFlags flags;
    flags.format = format == "text" ? Format::Text : Format::Json;
    if (seed) flags.seed = seed;
    if (depth) flags.depth = depth;
    if (samples) flags.samples = samples;
    if (degree_bound) flags.degree_bound = degree_bound;
    flags.include_timing = !no_timing;

    if (batch) {
      // Scenarios run concurrently with isolated state; output is ordered by name.
      std::vector<std::future<RunResult>> jobs;
      const auto names = catalog_names();
      for (const auto& name : names) {
        jobs.push_back(std::async(std::launch::async, [&flags, name] {
          return run(Command::All, load_scenario(name), flags);
        }));
      }
      std::string text = "[\n";
      int code = 0;
      for (std::size_t i = 0; i < jobs.size(); ++i) {
        RunResult r = jobs[i].get();
        code = std::max(code, r.exit_code);
        text += (i ? ",\n" : "") + r.output;
      }
      text += "]\n";
      const int w = write_output(text, out_path);
      return w ? w : code;
    }

    const Command command = *parse_command(command_name);
    const Scenario scenario = load_scenario(scenario_arg);
    const RunResult r = run(command, scenario, flags);
    const int w = write_output(r.output, out_path);
    return w ? w : r.exit_code;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
