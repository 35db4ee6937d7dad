// Copyright 2026 The esd-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "esdlab/channels.hpp"
#include "esdlab/qmat.hpp"

/**
 * @file stochastic.hpp
 * Monte Carlo evolution under explicit noise realizations.
 *
 * The dephasing Hamiltonians commute with themselves at all times, so a
 * trajectory's unitary depends only on the accumulated phase
 * phi = mu * int_0^t B(t') dt'. For delta-correlated B with strength
 * Gamma / mu^2, phi is Gaussian with mean 0 and variance Gamma t, which is
 * sampled exactly. The ensemble mean of U rho U^dagger is an estimator of
 * the Kraus channel output.
 */

namespace esdlab {

/// SplitMix64 as a UniformRandomBitGenerator. Each trajectory gets its own
/// stream keyed by (seed, index), so results never depend on scheduling.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

 private:
  std::uint64_t state_;
};

/// Generator for trajectory `index` of a run seeded with `seed`.
SplitMix64 trajectory_rng(std::uint64_t seed, std::uint64_t index) noexcept;

enum class PhaseSampling {
  Exact,         ///< one Gaussian draw with variance Gamma t
  EulerMaruyama  ///< sum of white-noise increments; cross-check only
};

struct StochasticConfig {
  double mu = 1.0;  // gyromagnetic ratio; cancels from every observable
  DephasingRates rates = DephasingRates::global(1.0);
  std::size_t trajectories = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  PhaseSampling sampling = PhaseSampling::Exact;
  double path_step = 1e-3;  // Gamma * dt for EulerMaruyama

  /// Throws std::invalid_argument when trajectories == 0, mu <= 0 or path_step <= 0.
  void validate() const;
};

/// Accumulated phase for a field of rate `gamma` over [0, t]: N(0, gamma t).
template <class Rng>
double sample_phase(double gamma, double t, Rng& rng) {
  const double variance = gamma * t;
  if (variance <= 0.0) return 0.0;
  std::normal_distribution<double> normal(0.0, std::sqrt(variance));
  return normal(rng);
}

/// Euler-Maruyama integral of mu * B over [0, t] with steps of size
/// `step / gamma`; B has strength gamma / mu^2.
double sample_phase_path(double gamma, double t, double mu, double step, SplitMix64& rng);

/// Accumulated phases of one noise realization. The global model uses phi_a only.
struct PhaseRealization {
  NoiseModel model = NoiseModel::Global;
  double phi_a = 0.0;
  double phi_b = 0.0;
};

PhaseRealization sample_realization(const StochasticConfig& cfg, double t, std::uint64_t index);

/// Diagonal phases theta of U = diag(e^{i theta_k}) for a realization.
std::array<double, 4> trajectory_phases(const PhaseRealization& r);

/// diag(e^{i phi}, 1, 1, e^{-i phi})
Mat4 trajectory_unitary_global(double phi);

/// exp[(i/2)(phi_a sz^A + phi_b sz^B)]
Mat4 trajectory_unitary_local(double phi_a, double phi_b);

struct EnsembleEstimate {
  Mat4 mean;
  Eigen::Matrix4d stderr_re;
  Eigen::Matrix4d stderr_im;
  std::size_t n = 0;
};

/// Mean of U_k rho0 U_k^dagger over cfg.trajectories realizations, with
/// per-element standard errors. Bit-identical for a given (seed, N)
/// regardless of cfg.workers.
EnsembleEstimate ensemble_evolve(const DensityMatrix& rho0, double t, const StochasticConfig& cfg);

struct ElementComparison {
  int row = 0;
  int col = 0;
  Complex estimate;
  Complex predicted;
  double stderr_re = 0.0;
  double stderr_im = 0.0;
  double z_re = 0.0;
  double z_im = 0.0;
};

struct ComparisonReport {
  std::vector<ElementComparison> elements;  // row-major, 16 entries
  double max_z = 0.0;
  bool pass = false;
};

inline constexpr double kZScoreLimit = 5.0;

/// z-scores |estimate - predicted| / stderr per real and imaginary part.
/// Parts with stderr < 1e-15 are compared absolutely at 1e-12 (z = 0 on
/// agreement, +inf otherwise).
ComparisonReport compare_to_channel(const EnsembleEstimate& est, const DensityMatrix& predicted);

}  // namespace esdlab
