#pragma once

// Collars of the nonstandard simplex, built from the partition of unity g_S
// and the flow that glues the piecewise collars phi_S.
//
// Points of Delta^J are vectors indexed by positions 0..|J|-1; subsets of J
// are bitmasks over positions.

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace sskit {

using Subset = std::uint32_t;

inline constexpr double kPointTolerance = 1e-12;
inline constexpr int kDefaultFlowSteps = 256;
inline constexpr double kChartFloor = 1e-9;

/// A point of Delta^J: coordinates sum to 1 and are >= -1.
class CollarPoint {
 public:
  explicit CollarPoint(std::vector<double> coords);
  const std::vector<double>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }

 private:
  std::vector<double> coords_;
};

/// The smooth step psi(u) = e(u) / (e(u) + e(1 - u)), e(u) = exp(-1/u) for u > 0.
double smooth_step(double u);

/// kappa_a^b(x) = psi((x - a) / (b - a)).
double cutoff(double a, double b, double x);

/// kappa_S(x) for nonempty S.
double kappa_S(Subset s, const std::vector<double>& x);

/// g_S(x) for every S, indexed by mask (entry 0 is unused and 0).
std::vector<double> partition_g(const std::vector<double>& x);

/// phi_S(x, t): t_j off I, x_j on I \ S and b_S * x_j on S. Entries of x off
/// I and of t on I are ignored.
std::vector<double> phi_piecewise(Subset i, Subset s, const std::vector<double>& x, const std::vector<double>& t);

/// A path t(tau) in [-1,0]^{J\I}: writes t(tau) and dt/dtau.
using CollarPath = std::function<void(double tau, std::vector<double>& t, std::vector<double>& dt)>;

struct FlowOptions {
  int steps = kDefaultFlowSteps;
  double tolerance = 1e-9;
};

/// Phi_{I in J}(x, t): the time-1 flow along the straight path tau * t.
std::vector<double> collar_flow(Subset i, const std::vector<double>& x, const std::vector<double>& t,
                                const FlowOptions& opt = {});

/// Same, along an arbitrary path with t(0) = 0.
std::vector<double> collar_flow_along(Subset i, const std::vector<double>& x, const CollarPath& path,
                                      const FlowOptions& opt = {});

/// Positions of `labels` inside the sorted label set `ground`, as a mask.
Subset labels_to_subset(const std::vector<int>& ground, const std::vector<int>& labels);

struct CoherenceReport {
  std::size_t samples = 0;
  double max_residual = 0;
  double tolerance = 0;
  bool passed = false;
  std::vector<double> residuals;
};

struct CoherenceOptions {
  std::size_t samples = 256;
  int steps = kDefaultFlowSteps;
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
  bool zero_collars = false;  // u' = u'' = 0
};

/// Samples x in Delta^I, u' in [-1,0]^{J\I}, u'' in [-1,0]^{K\J} and compares
/// Phi_{J in K}(Phi_{I in J}(x, u'), u'') with Phi_{I in K}(x, (u', u'')).
/// I, J, K are label sets with I in J in K and |K| <= 4.
CoherenceReport verify_coherence(const std::vector<int>& i, const std::vector<int>& j, const std::vector<int>& k,
                                 const CoherenceOptions& opt = {});

struct SupportReport {
  bool positive_support = true;    // g_S > 0 implies x_s > 0 on S
  bool positive_dependence = true; // g unchanged when negative mass moves
  double max_change = 0;
};

SupportReport verify_partition_support(const std::vector<double>& x);

/// Deterministic sampling from one seed.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed);
  double uniform();                 // [0, 1)
  double uniform(double a, double b);
  /// Uniform point of the nonstandard simplex with n coordinates.
  std::vector<double> simplex_point(std::size_t n);
  /// Uniform point of the standard simplex with n coordinates.
  std::vector<double> standard_simplex_point(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace sskit
