#pragma once

#include <map>
#include <string>
#include <vector>

namespace psda {

enum class TargetLaw { poisson, negative_binomial };

/// One named bound value.
///
/// `certified` means the value is a rigorous upper bound of the distance,
/// truncation slack included. `tv_metric` is false for comparison formulas
/// that bound a different metric (e.g. a pointwise pmf difference) and
/// therefore must not be checked against a TV oracle.
struct BoundEntry {
  std::string method;
  double value = 0.0;
  bool certified = false;
  bool tv_metric = true;
  TargetLaw target = TargetLaw::poisson;
  std::map<std::string, double> params;
  std::string note;
};

struct BoundReport {
  double lambda_used = 0.0;
  std::vector<BoundEntry> entries;
};

}  // namespace psda
