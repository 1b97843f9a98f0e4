#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "psda/numerics.hpp"
#include "psda/oracle.hpp"

namespace psda {

/// One block of a parameter schedule: summands lo..hi (1-based, inclusive)
/// all use `theta`.
struct ScheduleRange {
  int lo;
  int hi;
  double theta;
  bool operator==(const ScheduleRange&) const = default;
};

enum class NbRRule { fixed, n, n_over_5 };

/// A declarative description of a bounds run: a family, a parameter
/// schedule, the prefix lengths n to evaluate, and the methods to tabulate.
/// For the bernoulli family, schedule values are success probabilities p;
/// for every other family they are the canonical parameter theta.
struct Scenario {
  std::string name = "scenario";
  std::string family;
  std::vector<ScheduleRange> ranges;  // used when theta_list is empty
  std::vector<double> theta_list;     // explicit alternative to ranges
  std::vector<int> n_values;
  std::vector<std::string> methods;
  NbRRule nb_r_rule = NbRRule::n;
  double nb_r_fixed = 0.0;
  std::string format = "markdown";
  std::string out_path;

  /// First n schedule values.
  std::vector<double> thetas_for(int n) const;
  /// The r used by NB one-moment fits at prefix length n.
  double nb_r(int n) const;

  bool operator==(const Scenario&) const = default;
};

/// Methods a scenario may list: "poisson" (matched general bound),
/// "poisson_crude", "nb_one", "nb_two".
bool is_known_method(std::string_view method);

/// Parses the line-oriented scenario format:
///
///   # comment
///   name = table2
///   family = geometric
///   range 1-10 theta 0.20
///   n_values = 10 20 50
///   methods = poisson nb_one nb_two
///   nb_r = n          # or n/5, or a positive real
///   format = markdown # or csv
///
/// `theta_list = v1 v2 ...` may replace the range lines. Malformed input
/// throws parse_error with the offending line; out-of-domain parameters
/// throw domain_error.
Scenario parse_scenario(const std::string& path);
Scenario parse_scenario_text(std::string_view text, const std::string& origin = "<text>");

/// Canonical text for a scenario; parse_scenario_text inverts it.
std::string emit_scenario(const Scenario& s);

/// Text of a bundled scenario ("table2" or "table3").
std::string builtin_scenario_text(std::string_view name);

struct ResultCell {
  double value = 0.0;
  bool feasible = true;
  bool operator==(const ResultCell&) const = default;
};

struct ResultTable {
  std::vector<std::string> methods;
  std::vector<int> n_values;
  std::vector<std::vector<ResultCell>> cells;  // [row][method index]
  std::vector<std::pair<std::string, std::string>> metadata;
};

/// Runs every (n, method) cell. Infeasible combinations (e.g. a two-moment
/// NB fit on a Bernoulli spec) mark the cell infeasible and the run
/// continues. Deterministic: fixed evaluation and reduction order.
ResultTable run_scenario(const Scenario& s, double eps = kDefaultEps);

/// Renders a table; format is "csv" or "markdown". Values carry 7
/// significant digits. Infeasible cells render as an empty CSV field or an
/// em-dash cell (with a footnote) in markdown.
std::string emit(const ResultTable& t, const std::string& format);

/// Re-runs the scenario's methods per n and checks every certified entry
/// against the exact convolution oracle.
std::vector<ValidationReport> certify_scenario(const Scenario& s, double eps = 1e-10,
                                               std::size_t support_cap = kDefaultSupportCap);

}  // namespace psda
