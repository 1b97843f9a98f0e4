#pragma once

#include <vector>

#include "psda/instance.hpp"

namespace psda {

/// An ordered list of independent summands describing S_n = X_1 + ... + X_n.
/// All aggregate sums run in index order so results are deterministic.
class ConvolutionSpec {
 public:
  /// Throws domain_error on an empty list.
  explicit ConvolutionSpec(std::vector<PsdInstance> instances);

  static ConvolutionSpec iid(const PsdInstance& inst, int n);

  std::size_t size() const { return instances_.size(); }
  const PsdInstance& operator[](std::size_t i) const { return instances_[i]; }
  std::vector<PsdInstance>::const_iterator begin() const { return instances_.begin(); }
  std::vector<PsdInstance>::const_iterator end() const { return instances_.end(); }

  /// E S_n.
  double total_mean() const;
  /// Var S_n.
  double total_variance() const;

  /// True when every instance belongs to the given family kind.
  bool homogeneous(FamilyKind kind) const;
  /// True when all instances share one family kind.
  bool homogeneous_family() const;
  /// True when all instances share one family kind and parameter.
  bool iid_shape() const;

 private:
  std::vector<PsdInstance> instances_;
};

}  // namespace psda
