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

#include "esdlab/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace esdlab {

namespace {

constexpr double kImagTol = 1e-9;

const Mat4& spin_flip() {
  static const Mat4 flip = tensor_product(pauli::sigma_y(), pauli::sigma_y());
  return flip;
}

std::array<double, 4> sorted_decreasing(std::array<double, 4> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

double wootters_value(const std::array<double, 4>& s) {
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

void require_positive_finite(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw std::domain_error(std::string(what) + " must be finite and > 0");
  }
}

}  // namespace

std::string_view to_string(Branch branch) { return branch == Branch::W ? "w" : "z"; }

std::string_view to_string(EsdClass c) {
  switch (c) {
    case EsdClass::AlreadySeparable:
      return "AlreadySeparable";
    case EsdClass::FiniteDeath:
      return "FiniteDeath";
    case EsdClass::AsymptoticOnly:
      return "AsymptoticOnly";
  }
  return "unknown";
}

ConcurrenceResult concurrence_general(const DensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  const Mat4 zeta = m * spin_flip() * m.conjugate() * spin_flip();
  const std::array<Complex, 4> ev = eigenvalues(zeta);

  std::array<double, 4> roots{};
  for (int k = 0; k < 4; ++k) {
    if (std::abs(ev[k].imag()) > kImagTol) {
      std::ostringstream os;
      os << "concurrence: spin-flipped product has complex eigenvalue " << ev[k];
      throw ConvergenceError(os.str());
    }
    double lambda = ev[k].real();
    if (lambda < kPsdFloor) {
      std::ostringstream os;
      os << "concurrence: spin-flipped product has negative eigenvalue " << lambda;
      throw ConvergenceError(os.str());
    }
    roots[k] = std::sqrt(std::max(0.0, lambda));
  }

  ConcurrenceResult r;
  r.sqrt_lambdas = sorted_decreasing(roots);
  r.value = wootters_value(r.sqrt_lambdas);
  return r;
}

ConcurrenceResult concurrence_x_state(const XState& x) {
  const double abs_w = std::abs(x.w());
  const double abs_z = std::abs(x.z());
  const double root_ad = std::sqrt(x.a() * x.d());
  const double root_bc = std::sqrt(x.b() * x.c());

  ConcurrenceResult r;
  // Square roots of the eigenvalues of the spin-flipped product, block by block.
  r.sqrt_lambdas = sorted_decreasing(
      {root_ad + abs_w, std::abs(root_ad - abs_w), root_bc + abs_z, std::abs(root_bc - abs_z)});

  const double w_excess = abs_w - root_bc;
  const double z_excess = abs_z - root_ad;
  r.value = 2.0 * std::max({0.0, w_excess, z_excess});
  if (r.value > 0.0) r.branch = w_excess >= z_excess ? Branch::W : Branch::Z;
  return r;
}

Mat4 partial_transpose_b(const Mat4& m) {
  Mat4 out;
  for (int a = 0; a < 2; ++a) {
    for (int c = 0; c < 2; ++c) {
      out.block<2, 2>(2 * a, 2 * c) = m.block<2, 2>(2 * a, 2 * c).transpose();
    }
  }
  return out;
}

bool is_separable(const DensityMatrix& rho) {
  return hermitian_eigenvalues(partial_transpose_b(rho.matrix()))[0] >= kPsdFloor;
}

double negativity(const DensityMatrix& rho) {
  double sum = 0.0;
  for (double ev : hermitian_eigenvalues(partial_transpose_b(rho.matrix()))) {
    if (ev < 0.0) sum -= ev;
  }
  return sum;
}

EsdReport esd_time_global(const XState& x, double gamma) {
  if (x.z() != Complex{}) {
    throw std::domain_error(
        "esd_time_global: z must be 0; the z coherence is decoherence-free under global noise");
  }
  require_positive_finite(gamma, "esd_time_global: gamma");

  const double abs_w = std::abs(x.w());
  const double bc = x.b() * x.c();
  EsdReport r;
  if (abs_w <= std::sqrt(bc)) return r;

  r.binding_branch = Branch::W;
  if (bc == 0.0) {
    r.classification = EsdClass::AsymptoticOnly;
    return r;
  }
  r.classification = EsdClass::FiniteDeath;
  r.t_c = std::log(abs_w / std::sqrt(bc)) / (2.0 * gamma);
  return r;
}

EsdReport esd_time_local(const XState& x, double gamma_a, double gamma_b) {
  if (!std::isfinite(gamma_a) || !std::isfinite(gamma_b) || gamma_a < 0.0 || gamma_b < 0.0) {
    throw std::domain_error("esd_time_local: rates must be finite and >= 0");
  }
  const double total = gamma_a + gamma_b;
  require_positive_finite(total, "esd_time_local: gamma_a + gamma_b");

  struct Candidate {
    Branch branch;
    double coherence;
    double floor_sq;  // bc for the w branch, ad for the z branch
  };
  const Candidate candidates[] = {{Branch::W, std::abs(x.w()), x.b() * x.c()},
                                  {Branch::Z, std::abs(x.z()), x.a() * x.d()}};

  EsdReport r;
  double latest = 0.0;
  for (const Candidate& cand : candidates) {
    if (cand.coherence <= std::sqrt(cand.floor_sq)) continue;
    if (cand.floor_sq == 0.0) {
      r.classification = EsdClass::AsymptoticOnly;
      r.binding_branch = cand.branch;
      r.t_c.reset();
      return r;
    }
    const double t = 2.0 / total * std::log(cand.coherence / std::sqrt(cand.floor_sq));
    if (!r.binding_branch || t > latest) {
      latest = t;
      r.binding_branch = cand.branch;
    }
  }
  if (r.binding_branch) {
    r.classification = EsdClass::FiniteDeath;
    r.t_c = latest;
  }
  return r;
}

EsdReport esd_time_numeric(const ConcurrenceCurve& curve, double t_max, double tol) {
  require_positive_finite(t_max, "esd_time_numeric: t_max");
  require_positive_finite(tol, "esd_time_numeric: tol");

  EsdReport r;
  const ConcurrenceResult start = curve(0.0);
  if (start.value <= kDeathThreshold) return r;

  const ConcurrenceResult end = curve(t_max);
  if (end.value > 0.0) {
    r.classification = EsdClass::AsymptoticOnly;
    r.binding_branch = end.branch ? end.branch : start.branch;
    return r;
  }

  double lo = 0.0;  // C(lo) > threshold
  double hi = t_max;  // C(hi) <= threshold
  std::optional<Branch> branch = start.branch;
  for (int iter = 0; iter < 2000 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const ConcurrenceResult c = curve(mid);
    if (c.value > kDeathThreshold) {
      lo = mid;
      if (c.branch) branch = c.branch;
    } else {
      hi = mid;
    }
  }
  r.classification = EsdClass::FiniteDeath;
  r.t_c = 0.5 * (lo + hi);
  r.binding_branch = branch;
  return r;
}

}  // namespace esdlab
