#pragma once

#include <string>
#include <vector>

#include "psda/nb_bounds.hpp"
#include "psda/report.hpp"
#include "psda/spec.hpp"
#include "psda/truncated_pmf.hpp"

namespace psda {

/// Exact iterated convolution of truncated pmfs. The result's tail bound
/// is the union bound sum of the input tails. Throws capacity_error when
/// the result support would exceed support_cap entries.
TruncatedPmf convolve(const std::vector<TruncatedPmf>& pmfs,
                      std::size_t support_cap = kDefaultSupportCap);

/// Truncates every instance to tail <= eps/n and convolves, so the result
/// tail is at most eps.
TruncatedPmf spec_pmf(const ConvolutionSpec& spec, double eps = kDefaultEps,
                      std::size_t support_cap = kDefaultSupportCap);

TruncatedPmf reference_poisson(double lambda, double eps = kDefaultEps);
TruncatedPmf reference_nb(const NbParams& params, double eps = kDefaultEps);

struct TvResult {
  double value;      // half L1 distance over the truncated supports
  double error_bar;  // (tail_a + tail_b) / 2
};

/// d_TV between two truncated pmfs; the true distance lies within
/// error_bar of value.
TvResult tv_distance(const TruncatedPmf& a, const TruncatedPmf& b);

struct CheckedEntry {
  std::string method;
  double bound = 0.0;
  double oracle_tv = 0.0;
  double error_bar = 0.0;
  bool checked = false;
  std::string note;
};

struct Violation {
  std::string method;
  double bound;
  double oracle_tv;
};

struct ValidationReport {
  std::string spec_summary;
  std::vector<CheckedEntry> entries;
  std::vector<Violation> violations;
};

/// Checks every certified TV entry against the exact convolution oracle:
/// a violation is a certified bound below oracle_tv - error_bar.
/// Uncertified or non-TV entries are skipped with a note, as is everything
/// when the convolution would exceed the support cap.
ValidationReport certify(const ConvolutionSpec& spec, const std::vector<BoundEntry>& entries,
                         double eps = 1e-10, std::size_t support_cap = kDefaultSupportCap);

}  // namespace psda
