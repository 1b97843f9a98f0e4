#include "psda/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "psda/errors.hpp"
#include "psda/nb_bounds.hpp"
#include "psda/poisson_bounds.hpp"

namespace psda {

namespace {

const char* const kKnownMethods[] = {"poisson", "poisson_crude", "nb_one", "nb_two"};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.7g", v);
  return buf;
}

std::string trim(std::string_view s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string_view::npos) return {};
  const auto to = s.find_last_not_of(" \t\r");
  return std::string(s.substr(from, to - from + 1));
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw parse_error("trailing characters after number: " + s, line);
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("expected a number, got: " + s, line);
  }
}

int parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw parse_error("trailing characters after integer: " + s, line);
    return v;
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("expected an integer, got: " + s, line);
  }
}

PsdInstance make_instance(const PowerSeriesFamily& family, double value) {
  // Bernoulli schedules list success probabilities, not odds parameters.
  if (family.kind() == FamilyKind::bernoulli) return PsdInstance::bernoulli_p(value);
  return PsdInstance(family, value);
}

ConvolutionSpec build_spec(const Scenario& s, int n) {
  const PowerSeriesFamily& family = PowerSeriesFamily::by_name(s.family);
  std::vector<PsdInstance> parts;
  parts.reserve(static_cast<std::size_t>(n));
  for (double v : s.thetas_for(n)) parts.push_back(make_instance(family, v));
  return ConvolutionSpec(std::move(parts));
}

bool all_theta_at_most_half(const ConvolutionSpec& spec) {
  for (const PsdInstance& x : spec)
    if (x.theta() > 0.5) return false;
  return true;
}

// Closed-form NB entry for a homogeneous geometric spec, when one applies to
// the requested method id.
std::optional<BoundEntry> closed_nb_entry(const ConvolutionSpec& spec, const NbParams& params,
                                          std::string_view method) {
  if (!spec.homogeneous(FamilyKind::geometric)) return std::nullopt;
  if (!all_theta_at_most_half(spec)) return std::nullopt;
  for (BoundEntry& e : nb_closed_forms(spec, params))
    if (e.method == method) return std::move(e);
  return std::nullopt;
}

// One table cell: the bound entry for (method, spec), or nullopt when the
// method is infeasible there.
std::optional<BoundEntry> method_entry(const std::string& method, const ConvolutionSpec& spec,
                                       const Scenario& s, int n, double eps) {
  if (method == "poisson") return poisson_bound_matched(spec, eps);
  if (method == "poisson_crude") return poisson_bound_crude(spec, spec.total_mean());
  if (method == "nb_one") {
    const NbParams params = fit_one_moment(spec, s.nb_r(n));
    if (auto closed = closed_nb_entry(spec, params, "nb-geometric-one-closed")) return closed;
    return nb_bound_one(spec, params, eps);
  }
  if (method == "nb_two") {
    NbParams params{};
    try {
      params = fit_two_moment(spec);
    } catch (const infeasible_error&) {
      return std::nullopt;
    }
    if (auto closed = closed_nb_entry(spec, params, "nb-geometric-two-closed")) return closed;
    return nb_bound_two(spec, params, tau_upper(spec, eps), eps);
  }
  throw unsupported_error("unknown method id: " + method);
}

std::string nb_r_rule_text(const Scenario& s) {
  switch (s.nb_r_rule) {
    case NbRRule::n: return "n";
    case NbRRule::n_over_5: return "n/5";
    case NbRRule::fixed: return format_double(s.nb_r_fixed);
  }
  return "n";
}

struct LineReader {
  std::istream& in;
  int line = 0;
  bool next(std::string& out) {
    std::string raw;
    if (!std::getline(in, raw)) return false;
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    out = trim(raw);
    return true;
  }
};

}  // namespace

bool is_known_method(std::string_view method) {
  for (const char* m : kKnownMethods)
    if (method == m) return true;
  return false;
}

std::vector<double> Scenario::thetas_for(int n) const {
  if (n < 1) throw domain_error("convolution size must be at least 1");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (!theta_list.empty()) {
    if (n > static_cast<int>(theta_list.size()))
      throw domain_error("theta list covers fewer components than requested");
    out.assign(theta_list.begin(), theta_list.begin() + n);
    return out;
  }
  for (int i = 1; i <= n; ++i) {
    const ScheduleRange* hit = nullptr;
    for (const ScheduleRange& r : ranges)
      if (r.lo <= i && i <= r.hi) {
        hit = &r;
        break;
      }
    if (hit == nullptr) throw domain_error("schedule does not cover component " + std::to_string(i));
    out.push_back(hit->theta);
  }
  return out;
}

double Scenario::nb_r(int n) const {
  switch (nb_r_rule) {
    case NbRRule::n: return static_cast<double>(n);
    case NbRRule::n_over_5: return static_cast<double>(n) / 5.0;
    case NbRRule::fixed: return nb_r_fixed;
  }
  return static_cast<double>(n);
}

Scenario parse_scenario_text(std::string_view text, const std::string& origin) {
  Scenario s;
  s.name.clear();
  std::istringstream in{std::string(text)};
  LineReader reader{in};

  std::map<std::string, int> seen_keys;
  std::vector<int> range_lines;
  std::string line;
  int max_hi = 0;
  int last_line = 0;

  auto key_once = [&](const std::string& key, int line_no) {
    if (const auto [it, fresh] = seen_keys.emplace(key, line_no); !fresh)
      throw parse_error(origin + ": duplicate key '" + key + "' (first at line " +
                            std::to_string(it->second) + ")",
                        line_no);
  };

  while (reader.next(line)) {
    last_line = reader.line;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;

    if (head == "range") {
      std::string span, kw, value;
      ls >> span >> kw >> value;
      std::string extra;
      if (kw != "theta" || value.empty() || (ls >> extra))
        throw parse_error(origin + ": expected 'range LO-HI theta VALUE'", reader.line);
      const auto dash = span.find('-');
      if (dash == std::string::npos || dash == 0 || dash + 1 == span.size())
        throw parse_error(origin + ": expected LO-HI span, got: " + span, reader.line);
      ScheduleRange r;
      r.lo = parse_int(span.substr(0, dash), reader.line);
      r.hi = parse_int(span.substr(dash + 1), reader.line);
      r.theta = parse_double(value, reader.line);
      if (r.lo < 1 || r.hi < r.lo)
        throw parse_error(origin + ": range bounds must satisfy 1 <= LO <= HI", reader.line);
      s.ranges.push_back(r);
      range_lines.push_back(reader.line);
      max_hi = std::max(max_hi, r.hi);
      continue;
    }

    std::string eq;
    ls >> eq;
    if (eq != "=")
      throw parse_error(origin + ": expected 'KEY = VALUE...' or a range line, got: " + line,
                        reader.line);
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    if (rest.empty()) throw parse_error(origin + ": missing value for key '" + head + "'", reader.line);
    const std::vector<std::string> words = split_words(rest);

    if (head == "name") {
      key_once(head, reader.line);
      s.name = rest;
    } else if (head == "family") {
      key_once(head, reader.line);
      try {
        s.family = PowerSeriesFamily::by_name(rest).name();
      } catch (const unsupported_error& e) {
        throw parse_error(origin + ": " + e.what(), reader.line);
      }
    } else if (head == "theta_list") {
      key_once(head, reader.line);
      for (const std::string& w : words) s.theta_list.push_back(parse_double(w, reader.line));
    } else if (head == "n_values") {
      key_once(head, reader.line);
      for (const std::string& w : words) {
        const int n = parse_int(w, reader.line);
        if (n < 1) throw parse_error(origin + ": n values must be at least 1", reader.line);
        s.n_values.push_back(n);
      }
    } else if (head == "methods") {
      key_once(head, reader.line);
      for (const std::string& w : words) {
        if (!is_known_method(w)) throw parse_error(origin + ": unknown method id: " + w, reader.line);
        s.methods.push_back(w);
      }
    } else if (head == "nb_r") {
      key_once(head, reader.line);
      if (rest == "n") {
        s.nb_r_rule = NbRRule::n;
      } else if (rest == "n/5") {
        s.nb_r_rule = NbRRule::n_over_5;
      } else {
        s.nb_r_rule = NbRRule::fixed;
        s.nb_r_fixed = parse_double(rest, reader.line);
        if (!(s.nb_r_fixed > 0.0))
          throw parse_error(origin + ": fixed nb_r must be positive", reader.line);
      }
    } else if (head == "format") {
      key_once(head, reader.line);
      if (rest != "csv" && rest != "markdown")
        throw parse_error(origin + ": format must be 'csv' or 'markdown'", reader.line);
      s.format = rest;
    } else if (head == "out") {
      key_once(head, reader.line);
      s.out_path = rest;
    } else {
      throw parse_error(origin + ": unknown key '" + head + "'", reader.line);
    }
  }

  if (s.name.empty()) s.name = "scenario";
  if (s.family.empty()) throw parse_error(origin + ": missing 'family' line", last_line);
  if (s.ranges.empty() == s.theta_list.empty())
    throw parse_error(origin + ": need exactly one of range lines or theta_list", last_line);
  if (s.n_values.empty()) throw parse_error(origin + ": missing 'n_values' line", last_line);
  if (s.methods.empty()) throw parse_error(origin + ": missing 'methods' line", last_line);

  if (!s.ranges.empty()) {
    std::vector<std::size_t> order(s.ranges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return s.ranges[a].lo < s.ranges[b].lo; });
    int expect = 1;
    for (std::size_t idx : order) {
      const ScheduleRange& r = s.ranges[idx];
      if (r.lo != expect)
        throw parse_error(origin + ": ranges must tile 1..N without gaps or overlaps",
                          range_lines[idx]);
      expect = r.hi + 1;
    }
    std::vector<ScheduleRange> sorted;
    sorted.reserve(s.ranges.size());
    for (std::size_t idx : order) sorted.push_back(s.ranges[idx]);
    s.ranges = std::move(sorted);
  }

  const int covered = !s.theta_list.empty() ? static_cast<int>(s.theta_list.size()) : max_hi;
  for (int n : s.n_values)
    if (n > covered)
      throw parse_error(origin + ": n=" + std::to_string(n) + " exceeds schedule coverage of " +
                            std::to_string(covered),
                        last_line);

  // Parameter domain checks go through the family so csv/markdown emitters
  // never see an invalid schedule.
  const PowerSeriesFamily& family = PowerSeriesFamily::by_name(s.family);
  auto check_value = [&](double v) {
    if (family.kind() == FamilyKind::bernoulli) {
      if (!(v > 0.0) || !(v < 1.0))
        throw domain_error("bernoulli success probability must lie in (0, 1)");
    } else {
      family.require_theta(v);
    }
  };
  for (const ScheduleRange& r : s.ranges) check_value(r.theta);
  for (double v : s.theta_list) check_value(v);

  return s;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open scenario file: " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str(), path);
}

std::string emit_scenario(const Scenario& s) {
  std::ostringstream out;
  out << "name = " << s.name << "\n";
  out << "family = " << s.family << "\n";
  for (const ScheduleRange& r : s.ranges)
    out << "range " << r.lo << "-" << r.hi << " theta " << format_double(r.theta) << "\n";
  if (!s.theta_list.empty()) {
    out << "theta_list =";
    for (double v : s.theta_list) out << " " << format_double(v);
    out << "\n";
  }
  out << "n_values =";
  for (int n : s.n_values) out << " " << n;
  out << "\n";
  out << "methods =";
  for (const std::string& m : s.methods) out << " " << m;
  out << "\n";
  out << "nb_r = " << nb_r_rule_text(s) << "\n";
  out << "format = " << s.format << "\n";
  if (!s.out_path.empty()) out << "out = " << s.out_path << "\n";
  return out.str();
}

std::string builtin_scenario_text(std::string_view name) {
  static const char* const kSchedule =
      "range 1-10 theta 0.20\n"
      "range 11-20 theta 0.18\n"
      "range 21-50 theta 0.16\n"
      "range 51-100 theta 0.14\n"
      "range 101-150 theta 0.12\n"
      "range 151-200 theta 0.10\n"
      "range 201-250 theta 0.08\n"
      "range 251-300 theta 0.06\n"
      "range 301-400 theta 0.04\n"
      "range 401-500 theta 0.02\n"
      "n_values = 10 20 50 100 150 200 250 300 400 500\n"
      "methods = poisson nb_one nb_two\n";
  if (name == "table2")
    return std::string("name = table2\nfamily = geometric\n") + kSchedule +
           "nb_r = n\nformat = markdown\n";
  if (name == "table3")
    return std::string("name = table3\nfamily = logarithmic-shifted\n") + kSchedule +
           "nb_r = n/5\nformat = markdown\n";
  throw unsupported_error("no builtin scenario named: " + std::string(name));
}

ResultTable run_scenario(const Scenario& s, double eps) {
  ResultTable table;
  table.methods = s.methods;
  table.n_values = s.n_values;
  table.cells.reserve(s.n_values.size());
  for (int n : s.n_values) {
    const ConvolutionSpec spec = build_spec(s, n);
    std::vector<ResultCell> row;
    row.reserve(s.methods.size());
    for (const std::string& method : s.methods) {
      ResultCell cell;
      if (const auto entry = method_entry(method, spec, s, n, eps)) {
        cell.value = entry->value;
      } else {
        cell.feasible = false;
      }
      row.push_back(cell);
    }
    table.cells.push_back(std::move(row));
  }
  table.metadata.emplace_back("scenario", s.name);
  table.metadata.emplace_back("family", s.family);
  table.metadata.emplace_back("poisson_rate", "matched to the convolution mean");
  table.metadata.emplace_back("nb_r", nb_r_rule_text(s));
  table.metadata.emplace_back("eps", format_value(eps));
  return table;
}

std::string emit(const ResultTable& t, const std::string& format) {
  std::ostringstream out;
  if (format == "csv") {
    out << "n";
    for (const std::string& m : t.methods) out << "," << m;
    out << "\n";
    for (std::size_t i = 0; i < t.n_values.size(); ++i) {
      out << t.n_values[i];
      for (const ResultCell& cell : t.cells[i]) {
        out << ",";
        if (cell.feasible) out << format_value(cell.value);
      }
      out << "\n";
    }
    return out.str();
  }
  if (format != "markdown") throw unsupported_error("unknown output format: " + std::string(format));

  bool any_infeasible = false;
  out << "| n |";
  for (const std::string& m : t.methods) out << " " << m << " |";
  out << "\n|---:|";
  for (std::size_t j = 0; j < t.methods.size(); ++j) out << "---:|";
  out << "\n";
  for (std::size_t i = 0; i < t.n_values.size(); ++i) {
    out << "| " << t.n_values[i] << " |";
    for (const ResultCell& cell : t.cells[i]) {
      if (cell.feasible) {
        out << " " << format_value(cell.value) << " |";
      } else {
        out << " -- |";
        any_infeasible = true;
      }
    }
    out << "\n";
  }
  if (any_infeasible) out << "\n-- marks methods infeasible for that row\n";
  if (!t.metadata.empty()) {
    out << "\n";
    for (const auto& [key, value] : t.metadata) out << "- " << key << ": " << value << "\n";
  }
  return out.str();
}

std::vector<ValidationReport> certify_scenario(const Scenario& s, double eps, std::size_t support_cap) {
  std::vector<ValidationReport> reports;
  reports.reserve(s.n_values.size());
  for (int n : s.n_values) {
    const ConvolutionSpec spec = build_spec(s, n);
    std::vector<BoundEntry> entries;
    for (const std::string& method : s.methods)
      if (auto entry = method_entry(method, spec, s, n, kDefaultEps)) entries.push_back(std::move(*entry));
    ValidationReport report = certify(spec, entries, eps, support_cap);
    report.spec_summary = s.family + " n=" + std::to_string(n);
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace psda
