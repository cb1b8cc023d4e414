#ifndef TREEEMBED_BOUNDS_HPP
#define TREEEMBED_BOUNDS_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>

namespace treeembed {

/// exp(-delta^2 mu / 3): tail bound for a sum of [0,1] variables whose
/// conditional means sum to at most mu, exceeding (1 + delta) mu.
/// Requires mu > 0 and 0 < delta <= 1.
double supermartingale_bound(double mu, double delta);

/// Tree size/degree limits of one embedding theorem, plus the occupancy
/// level whose crossing is that regime's bad event.
struct ThresholdSet {
  std::string theorem_tag;
  std::size_t max_tree_size = 0;
  std::size_t max_tree_degree = 0;
  double occupancy_limit = 0.0;
  std::map<std::string, double> inputs;
};

/// C4-free hosts: size floor(eps d^2), degree floor(d - 2 eps d - 2),
/// occupancy 2 eps d + 2. Requires 0 < eps <= 1/8 and d >= 24.
ThresholdSet thresholds_c4(std::size_t d, double eps);

/// Girth 2k+1 hosts: size floor(eps d^k / 4), degree floor(d - 2 eps d - 2).
/// Requires k >= 2 and 0 < eps <= 1/(2k).
ThresholdSet thresholds_girth(std::size_t d, std::size_t k, double eps);

/// K_{s,t}-free hosts: size floor(d^{t/(t-1)} / (64 s^{1/(t-1)})); degree
/// floor(d / (64 t)), or floor(d / 256) with strong_degree. Occupancy d/2 + 2t.
ThresholdSet thresholds_kst(std::size_t d, std::size_t s, std::size_t t, bool strong_degree);

struct PseudoParams {
  bool feasible = false;
  double alpha = 0.0;  // 1 - (2 k eps)^{1/k}
  double lhs = 0.0;    // (2 k eps)^{1/k} + delta + 1/k
};

/// Feasibility of (2 k eps)^{1/k} + delta + 1/k <= 1.
PseudoParams pseudo_params(std::size_t k, double eps, double delta);

/// Hosts with property P(d,k,t): size floor(eps t), degree floor(delta d),
/// occupancy d/k. Throws if (k, eps, delta) is infeasible.
ThresholdSet thresholds_pseudo(std::size_t d, std::size_t t, std::size_t k, double eps, double delta);

/// Smallest k >= 1 with (pn)^{-3/4}/4 < p^k n^{k-1} <= (pn)^{1/4}/4.
/// Requires 0 < p <= 1/2 and p n >= 2; throws if no k <= 64 qualifies.
std::size_t select_k(std::size_t n, double p);

enum class TailProcess {
  /// X_i ~ Bernoulli(a_i), independent.
  independent,
  /// Bernoulli(a_i) while the running sum is ahead of its running mean;
  /// otherwise Uniform[0, 2 a_i] (Bernoulli when a_i > 1/2). Conditional
  /// means equal a_i.
  adaptive,
};

struct TailEstimate {
  double mu = 0.0;
  double delta = 0.0;
  double bound = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t exceedances = 0;

  double frequency() const { return samples ? static_cast<double>(exceedances) / static_cast<double>(samples) : 0.0; }
  /// Binomial standard deviation of the frequency if it sat exactly at the bound.
  double sigma() const;
  bool within(double sigmas) const { return frequency() <= bound + sigmas * sigma(); }
};

/// Monte Carlo frequency of sum X_i > (1 + delta) mu with mu = sum of means.
/// Sample j uses Rng(mix_seed(seed, j)); result does not depend on threading.
TailEstimate simulate_supermartingale_tail(std::span<const double> means, double delta, std::uint64_t samples,
                                           std::uint64_t seed, TailProcess process = TailProcess::independent);

namespace serial {
TailEstimate simulate_supermartingale_tail(std::span<const double> means, double delta, std::uint64_t samples,
                                           std::uint64_t seed, TailProcess process = TailProcess::independent);
}

}  // namespace treeembed

#endif  // TREEEMBED_BOUNDS_HPP
