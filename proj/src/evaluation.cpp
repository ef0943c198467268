#include "cfsim/evaluation.hpp"

#include <algorithm>
#include <numeric>

#include "cfsim/errors.hpp"

namespace cfsim {

void SinrAccumulator::add_realization(const Eigen::MatrixXcd& g) {
  if (g.rows() != signal_sum.size() || g.cols() != signal_sum.size()) {
    throw NumericalError("SinrAccumulator: effective-channel matrix has wrong shape");
  }
  signal_sum += g.diagonal();
  cross_power_sum += g.cwiseAbs2();
  ++count;
}

void SinrAccumulator::merge(const SinrAccumulator& other) {
  if (other.signal_sum.size() != signal_sum.size()) {
    throw NumericalError("SinrAccumulator: merging accumulators of different sizes");
  }
  signal_sum += other.signal_sum;
  cross_power_sum += other.cross_power_sum;
  count += other.count;
}

void accumulate(SinrAccumulator& acc, const ChannelRealization& ch, const PrecoderSet& ws) {
  if (ch.h.rows() != ws.w.rows() || ch.h.cols() != ws.w.cols()) {
    throw NumericalError("accumulate: channel/precoder dimension mismatch");
  }
  acc.add_realization(ch.h.adjoint() * ws.w);
}

Eigen::VectorXd finalize_sinr(const SinrAccumulator& acc, double sigma2_mw) {
  if (acc.count < 2) {
    throw NumericalError("finalize_sinr: need at least 2 realizations");
  }
  const double n = static_cast<double>(acc.count);
  Eigen::VectorXd sinr(acc.signal_sum.size());
  for (Eigen::Index k = 0; k < sinr.size(); ++k) {
    const double signal = std::norm(acc.signal_sum(k) / n);
    const double total_power = acc.cross_power_sum.row(k).sum() / n;
    const double bracket = std::max(0.0, total_power - signal);
    sinr(k) = signal / (bracket + sigma2_mw);
  }
  return sinr;
}

namespace {
double quantile_sorted(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}
}  // namespace

SEReport aggregate_cdf(std::vector<double> samples) {
  if (samples.empty()) throw NumericalError("aggregate_cdf: empty sample set");
  std::sort(samples.begin(), samples.end());
  SEReport report;
  report.cdf.resize(samples.size());
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    report.cdf[i] = static_cast<double>(i + 1) / n;
  }
  report.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  report.median = quantile_sorted(samples, 0.5);
  report.p10 = quantile_sorted(samples, 0.1);
  report.samples = std::move(samples);
  return report;
}

}  // namespace cfsim
