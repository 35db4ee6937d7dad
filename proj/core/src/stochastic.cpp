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

#include "esdlab/stochastic.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>
#include <utility>

namespace esdlab {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Trajectories are processed in fixed blocks; partial sums are combined in
// block order, which makes the reduction independent of the worker count.
constexpr std::size_t kBlockSize = 4096;

void for_each_block(std::size_t n_items, unsigned workers,
                    const std::function<void(std::size_t block, std::size_t begin,
                                             std::size_t end)>& body) {
  const std::size_t n_blocks = (n_items + kBlockSize - 1) / kBlockSize;
  auto run_block = [&](std::size_t b) {
    const std::size_t begin = b * kBlockSize;
    body(b, begin, std::min(n_items, begin + kBlockSize));
  };
  const unsigned n_threads =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1u, workers), n_blocks));
  if (n_threads <= 1) {
    for (std::size_t b = 0; b < n_blocks; ++b) run_block(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(n_threads);
  for (unsigned w = 0; w < n_threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < n_blocks; b = next++) run_block(b);
    });
  }
}

// Upper-triangle index pairs of a 4x4 matrix.
constexpr std::array<std::pair<int, int>, 6> kUpperPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

Complex cis(double theta) { return {std::cos(theta), std::sin(theta)}; }

}  // namespace

SplitMix64::result_type SplitMix64::operator()() noexcept {
  state_ += kGolden;
  return mix64(state_);
}

SplitMix64 trajectory_rng(std::uint64_t seed, std::uint64_t index) noexcept {
  return SplitMix64(mix64(seed + kGolden) ^ mix64(~index * kGolden));
}

void StochasticConfig::validate() const {
  if (trajectories == 0) throw std::invalid_argument("StochasticConfig: trajectories must be >= 1");
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("StochasticConfig: mu must be finite and > 0");
  }
  if (!(path_step > 0.0) || !std::isfinite(path_step)) {
    throw std::invalid_argument("StochasticConfig: path_step must be finite and > 0");
  }
}

double sample_phase_path(double gamma, double t, double mu, double step, SplitMix64& rng) {
  const double gt = gamma * t;
  if (gt <= 0.0) return 0.0;
  const auto n_steps = static_cast<std::size_t>(std::ceil(gt / step));
  const double dt = t / static_cast<double>(n_steps);
  // Time-averaged field over one step has variance (gamma / mu^2) / dt.
  std::normal_distribution<double> field(0.0, std::sqrt(gamma / dt) / mu);
  double integral = 0.0;
  for (std::size_t k = 0; k < n_steps; ++k) integral += field(rng) * dt;
  return mu * integral;
}

PhaseRealization sample_realization(const StochasticConfig& cfg, double t, std::uint64_t index) {
  SplitMix64 rng = trajectory_rng(cfg.seed, index);
  auto draw = [&](double gamma) {
    if (cfg.sampling == PhaseSampling::EulerMaruyama) {
      return sample_phase_path(gamma, t, cfg.mu, cfg.path_step, rng);
    }
    return sample_phase(gamma, t, rng);
  };
  PhaseRealization r;
  r.model = cfg.rates.model();
  if (r.model == NoiseModel::Global) {
    r.phi_a = draw(cfg.rates.gamma());
  } else {
    r.phi_a = draw(cfg.rates.gamma_a());
    r.phi_b = draw(cfg.rates.gamma_b());
  }
  return r;
}

std::array<double, 4> trajectory_phases(const PhaseRealization& r) {
  if (r.model == NoiseModel::Global) {
    // sigma_z^A + sigma_z^B = diag(2, 0, 0, -2)
    return {r.phi_a, 0.0, 0.0, -r.phi_a};
  }
  const double sum = 0.5 * (r.phi_a + r.phi_b);
  const double diff = 0.5 * (r.phi_a - r.phi_b);
  return {sum, diff, -diff, -sum};
}

Mat4 trajectory_unitary_global(double phi) {
  const auto theta = trajectory_phases({NoiseModel::Global, phi, 0.0});
  return Eigen::Vector4cd(cis(theta[0]), cis(theta[1]), cis(theta[2]), cis(theta[3]))
      .asDiagonal();
}

Mat4 trajectory_unitary_local(double phi_a, double phi_b) {
  const auto theta = trajectory_phases({NoiseModel::Local, phi_a, phi_b});
  return Eigen::Vector4cd(cis(theta[0]), cis(theta[1]), cis(theta[2]), cis(theta[3]))
      .asDiagonal();
}

EnsembleEstimate ensemble_evolve(const DensityMatrix& rho0, double t, const StochasticConfig& cfg) {
  cfg.validate();
  if (!std::isfinite(t) || t < 0.0) {
    throw std::domain_error("ensemble_evolve: time must be finite and >= 0");
  }
  const std::size_t n = cfg.trajectories;
  const Mat4& rho = rho0.matrix();

  std::vector<std::array<double, 4>> phases(n);
  for_each_block(n, cfg.workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k) {
      phases[k] = trajectory_phases(sample_realization(cfg, t, k));
    }
  });

  // Every U_k is diagonal, so (U rho U^dagger)_ij = e^{i(theta_i - theta_j)} rho_ij.
  // The mean is rho_ij times the averaged phase factor; an element whose
  // phases cancel is reproduced exactly.
  const std::size_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
  using Partial = std::array<Complex, kUpperPairs.size()>;
  std::vector<Partial> factor_sums(n_blocks);
  for_each_block(n, cfg.workers, [&](std::size_t b, std::size_t begin, std::size_t end) {
    Partial acc{};
    for (std::size_t k = begin; k < end; ++k) {
      for (std::size_t p = 0; p < kUpperPairs.size(); ++p) {
        const auto [i, j] = kUpperPairs[p];
        acc[p] += cis(phases[k][i] - phases[k][j]);
      }
    }
    factor_sums[b] = acc;
  });

  EnsembleEstimate est;
  est.n = n;
  est.mean = Mat4::Zero();
  est.stderr_re.setZero();
  est.stderr_im.setZero();
  for (int i = 0; i < 4; ++i) est.mean(i, i) = rho(i, i);

  Partial factor_total{};
  for (const Partial& part : factor_sums) {
    for (std::size_t p = 0; p < part.size(); ++p) factor_total[p] += part[p];
  }
  for (std::size_t p = 0; p < kUpperPairs.size(); ++p) {
    const auto [i, j] = kUpperPairs[p];
    est.mean(i, j) = rho(i, j) * (factor_total[p] / static_cast<double>(n));
    est.mean(j, i) = std::conj(est.mean(i, j));
  }

  if (n > 1) {
    using SquareSums = std::array<std::array<double, 2>, kUpperPairs.size()>;
    std::vector<SquareSums> sq_sums(n_blocks);
    for_each_block(n, cfg.workers, [&](std::size_t b, std::size_t begin, std::size_t end) {
      SquareSums acc{};
      for (std::size_t k = begin; k < end; ++k) {
        for (std::size_t p = 0; p < kUpperPairs.size(); ++p) {
          const auto [i, j] = kUpperPairs[p];
          const Complex dev = rho(i, j) * cis(phases[k][i] - phases[k][j]) - est.mean(i, j);
          acc[p][0] += dev.real() * dev.real();
          acc[p][1] += dev.imag() * dev.imag();
        }
      }
      sq_sums[b] = acc;
    });
    SquareSums total{};
    for (const SquareSums& part : sq_sums) {
      for (std::size_t p = 0; p < part.size(); ++p) {
        total[p][0] += part[p][0];
        total[p][1] += part[p][1];
      }
    }
    const double denom = static_cast<double>(n - 1) * static_cast<double>(n);
    for (std::size_t p = 0; p < kUpperPairs.size(); ++p) {
      const auto [i, j] = kUpperPairs[p];
      est.stderr_re(i, j) = est.stderr_re(j, i) = std::sqrt(total[p][0] / denom);
      est.stderr_im(i, j) = est.stderr_im(j, i) = std::sqrt(total[p][1] / denom);
    }
  }
  return est;
}

ComparisonReport compare_to_channel(const EnsembleEstimate& est, const DensityMatrix& predicted) {
  constexpr double kTinyStderr = 1e-15;
  constexpr double kAbsoluteTol = 1e-12;
  auto z_score = [](double diff, double se) {
    if (se < kTinyStderr) {
      return std::abs(diff) <= kAbsoluteTol ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return std::abs(diff) / se;
  };

  ComparisonReport report;
  report.elements.reserve(16);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      ElementComparison e;
      e.row = i;
      e.col = j;
      e.estimate = est.mean(i, j);
      e.predicted = predicted(i, j);
      e.stderr_re = est.stderr_re(i, j);
      e.stderr_im = est.stderr_im(i, j);
      const Complex diff = e.estimate - e.predicted;
      e.z_re = z_score(diff.real(), e.stderr_re);
      e.z_im = z_score(diff.imag(), e.stderr_im);
      report.max_z = std::max({report.max_z, e.z_re, e.z_im});
      report.elements.push_back(e);
    }
  }
  report.pass = report.max_z <= kZScoreLimit;
  return report;
}

}  // namespace esdlab
