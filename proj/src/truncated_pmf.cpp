#include "psda/truncated_pmf.hpp"

#include "psda/errors.hpp"

namespace psda {

double TruncatedPmf::total_mass() const {
  double sum = 0.0;
  for (double p : probs) sum += p;
  return sum + tail_bound;
}

TruncatedPmf truncate(const PsdInstance& inst, double eps, Pmf which) {
  if (!(eps > 0.0 && eps <= 1e-3)) throw domain_error("eps must lie in (0, 1e-3]");
  TruncatedPmf out;
  PmfScan scan(inst, which);
  for (std::size_t steps = 0; steps < kMaxTerms; ++steps) {
    out.probs.push_back(scan.value());
    const double tail = scan.tails_beyond().m0;
    if (tail <= eps) {
      out.tail_bound = tail;
      return out;
    }
    scan.advance();
  }
  throw truncation_error("pmf tail did not certify within the term cap");
}

}  // namespace psda
