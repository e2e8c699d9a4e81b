#pragma once

// Task files, dispatch and reports: the command-line surface.

#include "germlab/error.hpp"
#include "germlab/invariants.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace germlab::cli {

using ring::Integer;
using ring::Polynomial;
using ring::Rational;
using ring::VariableSet;

inline constexpr std::string_view kVersion = "0.1.0";

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Right-hand side of `name = ...;`.
struct Value {
  enum class Kind { Scalar, List, Matrix };
  Kind kind = Kind::Scalar;
  std::vector<std::vector<Polynomial>> rows;  // Scalar: 1x1, List: one row
  SourceLocation where;

  const Polynomial& scalar() const { return rows.at(0).at(0); }
  const std::vector<Polynomial>& list() const { return rows.at(0); }
};

struct ChartDecl {
  std::string name;
  std::string group = "main";
  invariants::ChartFixture fixture;
};

struct StratumDecl {
  std::string name;
  unsigned dimension = 0;
  Integer weight = 1;
  std::vector<Polynomial> equations;
};

struct TaskFile {
  std::string source;
  std::vector<std::string> ring_names;
  std::vector<std::string> params;
  /// Ring variables followed by parameters.
  VariableSet vars;
  std::string task;
  SourceLocation task_where;
  std::vector<std::string> assertions;
  std::optional<std::string> regime;
  std::map<std::string, Value> bindings;
  std::map<std::string, Integer> integers;
  std::vector<ChartDecl> charts;
  std::vector<StratumDecl> strata;

  bool has_assertion(std::string_view a) const;
  const Value* binding(std::string_view name) const;
  std::optional<Integer> integer(std::string_view name) const;
};

/// Names of all supported tasks, in a fixed order.
const std::vector<std::string>& task_names();

TaskFile parse_task(std::string_view text);
/// A single polynomial expression over `vars`.
Polynomial parse_polynomial(std::string_view text, const VariableSet& vars);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> bound;
  std::optional<std::uint64_t> max_steps;
  std::optional<std::uint64_t> env_seed;
  bool timings = false;
};

struct Report {
  nlohmann::json document;
  int exit_code = 0;
};

/// Never throws for computation failures; they become error reports.
Report run_task(const TaskFile& tf, const RunOptions& options);
/// Parses and runs; parse failures also become error reports.
Report run_source(std::string_view text, const RunOptions& options);

std::string emit_json(const Report& report);
std::string emit_text(const Report& report);

std::string sha256_hex(std::string_view data);

}  // namespace germlab::cli
