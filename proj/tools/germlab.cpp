#include "germlab/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("GERMLAB_SEED");
  if (!raw || !*raw) return std::nullopt;
  std::string s(raw);
  if (s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19) {
    throw germlab::Error(germlab::ErrorCode::InvalidInput, "GERMLAB_SEED must be a non-negative integer");
  }
  return std::stoull(s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplicities and invariants of isolated singularities"};
  app.set_version_flag("--version", std::string(germlab::cli::kVersion));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a task file");
  std::string path;
  bool as_json = false;
  germlab::cli::RunOptions options;
  run->add_option("file", path, "Task file")->required();
  run->add_flag("--json", as_json, "Print the JSON report");
  run->add_option("--seed", options.seed, "Seed for generic choices");
  run->add_option("--trials", options.trials, "Independent seeds that must agree");
  run->add_option("--bound", options.bound, "Coefficient bound for generic choices");
  run->add_option("--max-steps", options.max_steps, "Reduction step limit");
  run->add_flag("--timings", options.timings, "Include per-step timings");

  auto* tasks = app.add_subcommand("tasks", "List supported task names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (tasks->parsed()) {
    for (const auto& t : germlab::cli::task_names()) std::cout << t << "\n";
    return 0;
  }

  try {
    options.env_seed = env_seed();
  } catch (const germlab::Error& e) {
    std::cerr << "germlab: " << e.what() << "\n";
    return 2;
  }

  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "germlab: cannot read " << path << "\n";
    return 2;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();

  const auto report = germlab::cli::run_source(buffer.str(), options);
  std::cout << (as_json ? germlab::cli::emit_json(report) : germlab::cli::emit_text(report));
  return report.exit_code;
}
