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
#include <functional>
#include <optional>
#include <string_view>

#include "esdlab/qmat.hpp"

namespace esdlab {

/// Which anti-diagonal coherence carries the entanglement of an X-state:
/// W is |w| - sqrt(bc), Z is |z| - sqrt(ad).
enum class Branch { W, Z };

std::string_view to_string(Branch branch);

struct ConcurrenceResult {
  double value = 0.0;
  /// Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), decreasing.
  std::array<double, 4> sqrt_lambdas{};
  /// Active term for the X-state formula; empty when C = 0 or on the general path.
  std::optional<Branch> branch;
};

/// Wootters concurrence from the spectrum of the spin-flipped product.
/// Throws ConvergenceError if that spectrum is not (numerically) real and
/// non-negative.
ConcurrenceResult concurrence_general(const DensityMatrix& rho);

/// C = 2 max{0, |w| - sqrt(bc), |z| - sqrt(ad)}.
ConcurrenceResult concurrence_x_state(const XState& x);

/// Transpose over qubit B.
Mat4 partial_transpose_b(const Mat4& m);

/// PPT test; exact for two qubits.
bool is_separable(const DensityMatrix& rho);

/// Sum of |negative eigenvalues| of the partial transpose.
double negativity(const DensityMatrix& rho);

enum class EsdClass { AlreadySeparable, FiniteDeath, AsymptoticOnly };

std::string_view to_string(EsdClass c);

struct EsdReport {
  EsdClass classification = EsdClass::AlreadySeparable;
  std::optional<double> t_c;             // set iff FiniteDeath
  std::optional<Branch> binding_branch;  // empty if AlreadySeparable or unknown
};

/// Disentanglement time under global noise. Requires z == 0 exactly (the
/// z coherence never decays under the collective field) and gamma > 0.
/// Throws std::domain_error otherwise.
EsdReport esd_time_global(const XState& x, double gamma);

/// Disentanglement time under local noise with gamma_a + gamma_b > 0.
EsdReport esd_time_local(const XState& x, double gamma_a, double gamma_b);

using ConcurrenceCurve = std::function<ConcurrenceResult(double)>;

/// Threshold below which a concurrence value counts as dead.
inline constexpr double kDeathThreshold = 1e-12;

/// Bisection for the first time the curve drops to kDeathThreshold, assuming
/// C(t) is non-increasing on [0, t_max]. t_c is returned to within +-tol.
/// Any strictly positive C(t_max) classifies the curve as AsymptoticOnly.
EsdReport esd_time_numeric(const ConcurrenceCurve& curve, double t_max, double tol);

}  // namespace esdlab
