#include "treeembed/bounds.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "treeembed/random.hpp"
#include "treeembed/tree.hpp"

namespace treeembed {

double supermartingale_bound(double mu, double delta) {
  if (!(mu > 0.0)) throw std::invalid_argument("supermartingale_bound requires mu > 0");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("supermartingale_bound requires 0 < delta <= 1");
  return std::exp(-delta * delta * mu / 3.0);
}

namespace {

// Tolerance for comparing a user-supplied eps against a rational cap like 1/(2k).
constexpr double kRelSlack = 1e-12;

std::size_t degree_margin(double d, double eps) {
  return floor_tolerant(d - 2.0 * eps * d - 2.0);
}

}  // namespace

ThresholdSet thresholds_c4(std::size_t d, double eps) {
  if (!(eps > 0.0 && eps <= 0.125 * (1 + kRelSlack))) throw std::invalid_argument("thresholds_c4 requires 0 < eps <= 1/8");
  if (d < 24) throw std::invalid_argument("thresholds_c4 requires d >= 24");
  const auto dd = static_cast<double>(d);
  ThresholdSet ts;
  ts.theorem_tag = "c4";
  ts.max_tree_size = floor_tolerant(eps * dd * dd);
  ts.max_tree_degree = degree_margin(dd, eps);
  ts.occupancy_limit = 2.0 * eps * dd + 2.0;
  ts.inputs = {{"d", dd}, {"eps", eps}};
  return ts;
}

ThresholdSet thresholds_girth(std::size_t d, std::size_t k, double eps) {
  if (k < 2) throw std::invalid_argument("thresholds_girth requires k >= 2");
  const double cap = 1.0 / (2.0 * static_cast<double>(k));
  if (!(eps > 0.0 && eps <= cap * (1 + kRelSlack))) throw std::invalid_argument("thresholds_girth requires 0 < eps <= 1/(2k)");
  const auto dd = static_cast<double>(d);
  ThresholdSet ts;
  ts.theorem_tag = "girth";
  ts.max_tree_size = floor_tolerant(eps * std::pow(dd, static_cast<double>(k)) / 4.0);
  ts.max_tree_degree = degree_margin(dd, eps);
  ts.occupancy_limit = 2.0 * eps * dd + 2.0;
  ts.inputs = {{"d", dd}, {"k", static_cast<double>(k)}, {"eps", eps}};
  return ts;
}

ThresholdSet thresholds_kst(std::size_t d, std::size_t s, std::size_t t, bool strong_degree) {
  if (t < 2 || s < t) throw std::invalid_argument("thresholds_kst requires s >= t >= 2");
  const auto dd = static_cast<double>(d);
  const double e = 1.0 / static_cast<double>(t - 1);
  ThresholdSet ts;
  ts.theorem_tag = strong_degree ? "kst_strong" : "kst";
  ts.max_tree_size = floor_tolerant(std::pow(dd, static_cast<double>(t) * e) / (64.0 * std::pow(static_cast<double>(s), e)));
  ts.max_tree_degree = strong_degree ? d / 256 : d / (64 * t);
  ts.occupancy_limit = dd / 2.0 + 2.0 * static_cast<double>(t);
  ts.inputs = {{"d", dd}, {"s", static_cast<double>(s)}, {"t", static_cast<double>(t)}};
  return ts;
}

PseudoParams pseudo_params(std::size_t k, double eps, double delta) {
  if (k == 0) throw std::invalid_argument("pseudo_params requires k >= 1");
  if (!(eps > 0.0 && delta > 0.0)) throw std::invalid_argument("pseudo_params requires eps, delta > 0");
  const double root = std::pow(2.0 * static_cast<double>(k) * eps, 1.0 / static_cast<double>(k));
  PseudoParams out;
  out.lhs = root + delta + 1.0 / static_cast<double>(k);
  out.feasible = out.lhs <= 1.0;
  out.alpha = 1.0 - root;
  return out;
}

ThresholdSet thresholds_pseudo(std::size_t d, std::size_t t, std::size_t k, double eps, double delta) {
  const auto pp = pseudo_params(k, eps, delta);
  if (!pp.feasible) throw std::invalid_argument("thresholds_pseudo: (k, eps, delta) violates the feasibility condition");
  const auto dd = static_cast<double>(d);
  ThresholdSet ts;
  ts.theorem_tag = "pseudo";
  ts.max_tree_size = floor_tolerant(eps * static_cast<double>(t));
  ts.max_tree_degree = floor_tolerant(delta * dd);
  ts.occupancy_limit = dd / static_cast<double>(k);
  ts.inputs = {{"d", dd}, {"t", static_cast<double>(t)}, {"k", static_cast<double>(k)},
               {"eps", eps}, {"delta", delta}, {"alpha", pp.alpha}};
  return ts;
}

std::size_t select_k(std::size_t n, double p) {
  const double pn = p * static_cast<double>(n);
  if (!(p > 0.0 && p <= 0.5)) throw std::invalid_argument("select_k requires 0 < p <= 1/2");
  if (pn < 2.0) throw std::invalid_argument("select_k requires p*n >= 2");
  // Work in logs: p^k n^{k-1} = p (pn)^{k-1}.
  const double log_lower = std::log(0.25) - 0.75 * std::log(pn);
  const double log_upper = std::log(0.25) + 0.25 * std::log(pn);
  for (std::size_t k = 1; k <= 64; ++k) {
    const double log_value = std::log(p) + static_cast<double>(k - 1) * std::log(pn);
    if (log_value > log_lower && log_value <= log_upper) return k;
  }
  throw std::invalid_argument("select_k: no feasible k <= 64");
}

double TailEstimate::sigma() const {
  if (samples == 0) return 0.0;
  return std::sqrt(bound * (1.0 - bound) / static_cast<double>(samples));
}

namespace {

void check_tail_args(std::span<const double> means, double delta) {
  for (double a : means)
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("tail simulation: means must lie in [0, 1]");
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("tail simulation: delta must lie in (0, 1]");
}

bool tail_sample(std::span<const double> means, double threshold, std::uint64_t seed, TailProcess process) {
  Rng rng(seed);
  double sum = 0.0, running_mean = 0.0;
  for (double a : means) {
    const double u = rng.unit();
    double x = u < a ? 1.0 : 0.0;
    if (process == TailProcess::adaptive && sum <= running_mean && 2.0 * a <= 1.0) x = 2.0 * a * u;
    sum += x;
    running_mean += a;
  }
  return sum > threshold;
}

TailEstimate start_estimate(std::span<const double> means, double delta, std::uint64_t samples) {
  check_tail_args(means, delta);
  TailEstimate est;
  est.mu = std::accumulate(means.begin(), means.end(), 0.0);
  est.delta = delta;
  est.bound = supermartingale_bound(est.mu, delta);
  est.samples = samples;
  return est;
}

}  // namespace

TailEstimate serial::simulate_supermartingale_tail(std::span<const double> means, double delta, std::uint64_t samples,
                                                   std::uint64_t seed, TailProcess process) {
  TailEstimate est = start_estimate(means, delta, samples);
  const double threshold = (1.0 + delta) * est.mu;
  for (std::uint64_t j = 0; j < samples; ++j)
    est.exceedances += tail_sample(means, threshold, mix_seed(seed, j), process) ? 1 : 0;
  return est;
}

TailEstimate simulate_supermartingale_tail(std::span<const double> means, double delta, std::uint64_t samples,
                                           std::uint64_t seed, TailProcess process) {
  TailEstimate est = start_estimate(means, delta, samples);
  const double threshold = (1.0 + delta) * est.mu;
  std::uint64_t hits = 0;
#pragma omp parallel for reduction(+ : hits) schedule(static)
  for (std::int64_t j = 0; j < static_cast<std::int64_t>(samples); ++j)
    hits += tail_sample(means, threshold, mix_seed(seed, static_cast<std::uint64_t>(j)), process) ? 1 : 0;
  est.exceedances = hits;
  return est;
}

}  // namespace treeembed
