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

#include "esdlab/qmat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

namespace esdlab {

namespace pauli {

Mat2 identity() { return Mat2::Identity(); }

Mat2 sigma_x() {
  Mat2 m;
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Mat2 sigma_y() {
  const Complex i{0.0, 1.0};
  Mat2 m;
  m << 0.0, -i, i, 0.0;
  return m;
}

Mat2 sigma_z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

}  // namespace pauli

Mat4 tensor_product(const Mat2& p, const Mat2& q) {
  Mat4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.block<2, 2>(2 * i, 2 * j) = p(i, j) * q;
    }
  }
  return out;
}

bool all_finite(const Mat4& m) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

std::array<Complex, 4> eigenvalues(const Mat4& m) {
  if (!all_finite(m)) {
    throw ConvergenceError("eigenvalues: matrix has non-finite entries");
  }
  Eigen::ComplexEigenSolver<Mat4> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("eigenvalues: complex Schur iteration did not converge");
  }
  std::array<Complex, 4> out;
  for (int k = 0; k < 4; ++k) {
    out[k] = solver.eigenvalues()(k);
  }
  return out;
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& m) {
  if (!all_finite(m)) {
    throw ConvergenceError("hermitian_eigenvalues: matrix has non-finite entries");
  }
  const Mat4 h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat4> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("hermitian_eigenvalues: tridiagonal QR did not converge");
  }
  std::array<double, 4> out;
  for (int k = 0; k < 4; ++k) {
    out[k] = solver.eigenvalues()(k);
  }
  return out;
}

std::string ValidityReport::describe() const {
  std::ostringstream os;
  os.precision(6);
  if (!finite) {
    os << "matrix has non-finite entries";
  } else if (hermiticity_defect > kHermiticityTol) {
    os << "not Hermitian (defect " << hermiticity_defect << ")";
  } else if (trace_defect > kTraceTol) {
    os << "trace is not 1 (defect " << trace_defect << ")";
  } else if (min_eigenvalue < kPsdFloor) {
    os << "not positive semidefinite (min eigenvalue " << min_eigenvalue << ")";
  } else {
    os << "ok";
  }
  return os.str();
}

ValidityReport validate_density(const Mat4& m) {
  ValidityReport r;
  r.finite = all_finite(m);
  if (!r.finite) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    r.hermiticity_defect = inf;
    r.trace_defect = inf;
    r.min_eigenvalue = -inf;
    return r;
  }
  r.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.trace_defect = std::abs(m.trace() - Complex{1.0, 0.0});
  r.min_eigenvalue = hermitian_eigenvalues(m)[0];
  r.valid = r.hermiticity_defect <= kHermiticityTol && r.trace_defect <= kTraceTol &&
            r.min_eigenvalue >= kPsdFloor;
  return r;
}

DensityMatrix::DensityMatrix(const Mat4& m) : m_(m) {
  const ValidityReport r = validate_density(m);
  if (r.valid) return;
  using Kind = NonPhysicalError::Kind;
  Kind kind = Kind::Positivity;
  if (!r.finite) {
    kind = Kind::NonFinite;
  } else if (r.hermiticity_defect > kHermiticityTol) {
    kind = Kind::Hermiticity;
  } else if (r.trace_defect > kTraceTol) {
    kind = Kind::Normalization;
  }
  throw NonPhysicalError(kind, "density matrix: " + r.describe());
}

DensityMatrix DensityMatrix::maximally_mixed() { return DensityMatrix(Mat4::Identity() / 4.0); }

namespace {

bool finite(Complex v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Smaller eigenvalue of the Hermitian block [[p, v], [conj v, q]].
double block_min_eigenvalue(double p, double q, Complex v) {
  return 0.5 * (p + q) - std::hypot(0.5 * (p - q), std::abs(v));
}

}  // namespace

XState::XState(double a, double b, double c, double d, Complex w, Complex z)
    : a_(a), b_(b), c_(c), d_(d), w_(w), z_(z) {
  using Kind = NonPhysicalError::Kind;
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d) ||
      !finite(w) || !finite(z)) {
    throw NonPhysicalError(Kind::NonFinite, "x_state: parameters must be finite");
  }
  if (a < 0.0 || b < 0.0 || c < 0.0 || d < 0.0) {
    throw NonPhysicalError(Kind::Positivity, "x_state: populations a, b, c, d must be >= 0");
  }
  if (std::abs(a + b + c + d - 1.0) > kTraceTol) {
    throw NonPhysicalError(Kind::Normalization, "x_state: trace a + b + c + d = " +
                                                    std::to_string(a + b + c + d) +
                                                    ", must equal 1");
  }
  if (std::norm(w) > a * d + 1e-12 || block_min_eigenvalue(a, d, w) < kPsdFloor) {
    throw NonPhysicalError(Kind::Positivity, "x_state: |w|^2 exceeds a*d");
  }
  if (std::norm(z) > b * c + 1e-12 || block_min_eigenvalue(b, c, z) < kPsdFloor) {
    throw NonPhysicalError(Kind::Positivity, "x_state: |z|^2 exceeds b*c");
  }
}

XState x_state(double a, double b, double c, double d, Complex w, Complex z) {
  return XState(a, b, c, d, w, z);
}

DensityMatrix embed(const XState& x) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = x.a();
  m(1, 1) = x.b();
  m(2, 2) = x.c();
  m(3, 3) = x.d();
  m(0, 3) = x.w();
  m(3, 0) = std::conj(x.w());
  m(1, 2) = x.z();
  m(2, 1) = std::conj(x.z());
  return DensityMatrix(m);
}

std::optional<XState> as_x_state(const DensityMatrix& rho) {
  const Mat4& m = rho.matrix();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const bool on_x = (i == j) || (i + j == 3);
      if (!on_x && m(i, j) != Complex{}) return std::nullopt;
    }
  }
  return XState(m(0, 0).real(), m(1, 1).real(), m(2, 2).real(), m(3, 3).real(), m(0, 3),
                m(1, 2));
}

XState bell_state(BellState kind) {
  switch (kind) {
    case BellState::PhiPlus:
      return XState(0.5, 0.0, 0.0, 0.5, 0.5, 0.0);
    case BellState::PhiMinus:
      return XState(0.5, 0.0, 0.0, 0.5, -0.5, 0.0);
    case BellState::PsiPlus:
      return XState(0.0, 0.5, 0.5, 0.0, 0.0, 0.5);
    case BellState::PsiMinus:
      return XState(0.0, 0.5, 0.5, 0.0, 0.0, -0.5);
  }
  throw std::invalid_argument("bell_state: unknown kind");
}

XState werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("werner_state: p must lie in [0, 1]");
  }
  const double outer = (1.0 - p) / 4.0;
  const double inner = (1.0 + p) / 4.0;
  return XState(outer, inner, inner, outer, 0.0, -p / 2.0);
}

}  // namespace esdlab
