#include "psda/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "psda/errors.hpp"

namespace psda {

TruncatedPmf convolve(const std::vector<TruncatedPmf>& pmfs, std::size_t support_cap) {
  if (pmfs.empty()) throw domain_error("a convolution needs at least one pmf");
  std::size_t final_size = 1;
  for (const TruncatedPmf& x : pmfs) {
    if (x.probs.empty()) throw domain_error("cannot convolve an empty pmf");
    final_size += x.probs.size() - 1;
  }
  if (final_size > support_cap) {
    throw capacity_error("convolution support " + std::to_string(final_size) +
                         " exceeds cap " + std::to_string(support_cap));
  }
  TruncatedPmf out = pmfs.front();
  for (std::size_t i = 1; i < pmfs.size(); ++i) {
    const TruncatedPmf& next = pmfs[i];
    std::vector<double> acc(out.probs.size() + next.probs.size() - 1, 0.0);
    for (std::size_t a = 0; a < out.probs.size(); ++a) {
      const double pa = out.probs[a];
      if (pa == 0.0) continue;
      for (std::size_t b = 0; b < next.probs.size(); ++b) {
        acc[a + b] += pa * next.probs[b];
      }
    }
    out.probs = std::move(acc);
    out.tail_bound += next.tail_bound;
  }
  return out;
}

TruncatedPmf spec_pmf(const ConvolutionSpec& spec, double eps, std::size_t support_cap) {
  const double per_instance = eps / static_cast<double>(spec.size());
  std::vector<TruncatedPmf> parts;
  parts.reserve(spec.size());
  for (const PsdInstance& x : spec) parts.push_back(truncate(x, per_instance));
  return convolve(parts, support_cap);
}

TruncatedPmf reference_poisson(double lambda, double eps) {
  return truncate(PsdInstance::poisson(lambda), eps);
}

TruncatedPmf reference_nb(const NbParams& params, double eps) {
  if (!(eps > 0.0 && eps <= 1e-3)) throw domain_error("eps must lie in (0, 1e-3]");
  TruncatedPmf out;
  double value = std::exp(params.r * std::log(params.p));  // pmf(0) = p^r
  if (value == 0.0) throw truncation_error("NB pmf(0) underflows; parameters too extreme");
  for (std::size_t k = 0; k < kMaxTerms; ++k) {
    out.probs.push_back(value);
    // Term ratio q (r+k)/(k+1): decreasing in k for r >= 1, else below its
    // limit q; either way q * max(1, (r+k)/(k+1)) dominates all later ratios.
    const double kd = static_cast<double>(k);
    const double rho = params.q * std::max(1.0, (params.r + kd) / (kd + 1.0));
    const double tail = geometric_moment_tails(value, rho, kd).m0;
    if (tail <= eps) {
      out.tail_bound = tail;
      return out;
    }
    value *= params.q * (params.r + kd) / (kd + 1.0);
  }
  throw truncation_error("NB pmf tail did not certify within the term cap");
}

TvResult tv_distance(const TruncatedPmf& a, const TruncatedPmf& b) {
  const std::size_t len = std::max(a.probs.size(), b.probs.size());
  double l1 = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double pa = k < a.probs.size() ? a.probs[k] : 0.0;
    const double pb = k < b.probs.size() ? b.probs[k] : 0.0;
    l1 += std::abs(pa - pb);
  }
  return {0.5 * l1, 0.5 * (a.tail_bound + b.tail_bound)};
}

namespace {

std::string summarize(const ConvolutionSpec& spec) {
  std::string s = "n=" + std::to_string(spec.size()) + ":";
  for (const PsdInstance& x : spec) {
    s += " " + x.family().name() + "(" + std::to_string(x.theta()) + ")";
  }
  return s;
}

}  // namespace

ValidationReport certify(const ConvolutionSpec& spec, const std::vector<BoundEntry>& entries,
                         double eps, std::size_t support_cap) {
  ValidationReport report;
  report.spec_summary = summarize(spec);
  TruncatedPmf sn;
  bool have_sn = true;
  std::string skip_note;
  try {
    sn = spec_pmf(spec, eps, support_cap);
  } catch (const capacity_error& ex) {
    have_sn = false;
    skip_note = ex.what();
  }
  for (const BoundEntry& e : entries) {
    CheckedEntry c;
    c.method = e.method;
    c.bound = e.value;
    if (!have_sn) {
      c.note = "skipped: " + skip_note;
      report.entries.push_back(std::move(c));
      continue;
    }
    if (!e.certified || !e.tv_metric) {
      c.note = e.tv_metric ? "skipped: not a certified upper bound"
                           : "skipped: bounds a different metric";
      report.entries.push_back(std::move(c));
      continue;
    }
    TruncatedPmf ref;
    if (e.target == TargetLaw::poisson) {
      const auto it = e.params.find("lambda");
      if (it == e.params.end()) {
        c.note = "skipped: entry lacks a lambda parameter";
        report.entries.push_back(std::move(c));
        continue;
      }
      ref = reference_poisson(it->second, eps);
    } else {
      const auto r_it = e.params.find("r");
      const auto p_it = e.params.find("p");
      if (r_it == e.params.end() || p_it == e.params.end()) {
        c.note = "skipped: entry lacks r/p parameters";
        report.entries.push_back(std::move(c));
        continue;
      }
      NbParams params{r_it->second, p_it->second, 1.0 - p_it->second, FitMode::one_moment};
      ref = reference_nb(params, eps);
    }
    const TvResult tv = tv_distance(sn, ref);
    c.oracle_tv = tv.value;
    c.error_bar = tv.error_bar;
    c.checked = true;
    if (e.value < tv.value - tv.error_bar) {
      report.violations.push_back({e.method, e.value, tv.value});
    }
    report.entries.push_back(std::move(c));
  }
  return report;
}

}  // namespace psda
