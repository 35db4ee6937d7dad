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

#include <string_view>
#include <vector>

#include "esdlab/qmat.hpp"

/**
 * @file channels.hpp
 * Classical dephasing of two qubits.
 *
 * Global model: one white-noise field couples to sigma_z^A + sigma_z^B with
 * rate Gamma. Local model: independent fields on each qubit with rates
 * Gamma_A and Gamma_B. Both are provided as Kraus sets and as closed-form
 * element maps; the two routes are tested against each other.
 *
 * All Kraus operators here are real and diagonal, so K rho K^dagger and
 * K^dagger rho K coincide and apply_channel uses the former.
 */

namespace esdlab {

enum class NoiseModel { Global, Local };

std::string_view to_string(NoiseModel model);

/// Dephasing rates (1/time). Zero rates are allowed; the matching T2 is +inf.
class DephasingRates {
 public:
  /// Throws std::domain_error on negative or non-finite rates.
  static DephasingRates global(double gamma);
  static DephasingRates local(double gamma_a, double gamma_b);

  NoiseModel model() const noexcept { return model_; }
  double gamma() const noexcept { return gamma_a_; }  // global rate
  double gamma_a() const noexcept { return gamma_a_; }
  double gamma_b() const noexcept { return gamma_b_; }

  double t2() const { return inverse(gamma_a_); }
  double t2_a() const { return inverse(gamma_a_); }
  double t2_b() const { return inverse(gamma_b_); }

 private:
  DephasingRates(NoiseModel model, double a, double b) : model_(model), gamma_a_(a), gamma_b_(b) {}
  static double inverse(double rate);

  NoiseModel model_;
  double gamma_a_;
  double gamma_b_;
};

struct GlobalKrausParameters {
  double gamma;   // e^{-Gamma t / 2}
  double omega1;  // sqrt(1 - e^{-Gamma t})
  double omega2;  // -omega1 e^{-Gamma t}
  double omega3;  // omega1^2 sqrt(1 + e^{-Gamma t})
};

struct LocalKrausParameters {
  double gamma_a, gamma_b;  // e^{-Gamma_X t / 2}
  double omega_a, omega_b;  // sqrt(1 - e^{-Gamma_X t})
};

GlobalKrausParameters global_kraus_parameters(double t, double gamma);
LocalKrausParameters local_kraus_parameters(double t, double gamma_a, double gamma_b);

struct KrausSet {
  NoiseModel model;
  double t;
  std::vector<Mat4> ops;

  /// sum_k K_k K_k^dagger
  Mat4 completeness() const;
  /// max elementwise |sum_k K_k K_k^dagger - I|
  double completeness_defect() const;
};

/// D1 = diag(g,1,1,g), D2 = diag(w1,0,0,w2), D3 = diag(0,0,0,w3).
KrausSet global_kraus(double t, double gamma);

/// The four composite products E_mu F_nu, ordered E1F1, E1F2, E2F1, E2F2.
KrausSet local_kraus(double t, double gamma_a, double gamma_b);

KrausSet kraus_set(const DephasingRates& rates, double t);

/// Single-qubit dephasing factors (E1, E2) on qubit A, padded with identity on B.
std::array<Mat4, 2> qubit_a_factors(double t, double gamma_a);
/// Single-qubit dephasing factors (F1, F2) on qubit B, padded with identity on A.
std::array<Mat4, 2> qubit_b_factors(double t, double gamma_b);

/// sum_k K rho K^dagger, re-Hermitized. Throws std::invalid_argument when
/// the set is not complete to 1e-12.
DensityMatrix apply_channel(const KrausSet& kraus, const DensityMatrix& rho);

/// Global noise leaves a, b, c, d and z untouched and scales w by e^{-2 Gamma t}.
XState evolve_global_closed_form(const XState& x, double t, double gamma);

/// Local noise: single-qubit coherences pick up gamma_A or gamma_B, the
/// two anti-diagonal pairs pick up gamma_A gamma_B.
DensityMatrix evolve_local_closed_form(const DensityMatrix& rho, double t, double gamma_a,
                                       double gamma_b);
XState evolve_local_closed_form(const XState& x, double t, double gamma_a, double gamma_b);

/// Closed-form evolution under either model.
DensityMatrix evolve_closed_form(const DensityMatrix& rho, const DephasingRates& rates, double t);
XState evolve_closed_form(const XState& x, const DephasingRates& rates, double t);

}  // namespace esdlab
