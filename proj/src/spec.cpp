#include "psda/spec.hpp"

#include <utility>

#include "psda/errors.hpp"

namespace psda {

ConvolutionSpec::ConvolutionSpec(std::vector<PsdInstance> instances)
    : instances_(std::move(instances)) {
  if (instances_.empty()) {
    throw domain_error("a convolution needs at least one summand");
  }
}

ConvolutionSpec ConvolutionSpec::iid(const PsdInstance& inst, int n) {
  if (n < 1) throw domain_error("a convolution needs at least one summand");
  return ConvolutionSpec(std::vector<PsdInstance>(static_cast<std::size_t>(n), inst));
}

double ConvolutionSpec::total_mean() const {
  double sum = 0.0;
  for (const PsdInstance& x : instances_) sum += x.mean();
  return sum;
}

double ConvolutionSpec::total_variance() const {
  double sum = 0.0;
  for (const PsdInstance& x : instances_) sum += x.variance();
  return sum;
}

bool ConvolutionSpec::homogeneous(FamilyKind kind) const {
  for (const PsdInstance& x : instances_) {
    if (x.family().kind() != kind) return false;
  }
  return true;
}

bool ConvolutionSpec::homogeneous_family() const {
  return homogeneous(instances_.front().family().kind());
}

bool ConvolutionSpec::iid_shape() const {
  for (const PsdInstance& x : instances_) {
    if (x.family().kind() != instances_.front().family().kind() ||
        x.theta() != instances_.front().theta()) {
      return false;
    }
  }
  return true;
}

}  // namespace psda
