/* Copyright 2026 The qwell Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */

#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "errors.hpp"
#include "loss.hpp"

namespace qwell {

namespace {

constexpr double kEigenTolerance = 1e-10;

// LU factorization with partial pivoting of a general tridiagonal matrix,
// following the LAPACK gttrf/gtts2 scheme.
class TridiagonalLu {
 public:
  TridiagonalLu(const TridiagonalMatrix& m, double shift)
      : dl_(m.off_diagonal),
        d_(m.diagonal),
        du_(m.off_diagonal),
        du2_(m.size() > 2 ? m.size() - 2 : 0, 0.0),
        swapped_(m.size() > 0 ? m.size() - 1 : 0, false) {
    for (double& v : d_) v -= shift;
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d_[i]) >= std::abs(dl_[i])) {
        if (d_[i] != 0.0) {
          const double fact = dl_[i] / d_[i];
          dl_[i] = fact;
          d_[i + 1] -= fact * du_[i];
        }
      } else {
        const double fact = d_[i] / dl_[i];
        d_[i] = dl_[i];
        dl_[i] = fact;
        const double temp = du_[i];
        du_[i] = d_[i + 1];
        d_[i + 1] = temp - fact * d_[i + 1];
        if (i + 2 < n) {
          du2_[i] = du_[i + 1];
          du_[i + 1] = -fact * du_[i + 1];
        }
        swapped_[i] = true;
      }
    }
    // An exactly singular shift still yields the right direction if the zero
    // pivot is nudged off zero.
    double scale = 0.0;
    for (double v : m.diagonal) scale = std::max(scale, std::abs(v));
    for (double v : m.off_diagonal) scale = std::max(scale, std::abs(v));
    const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
    for (double& v : d_) {
      if (std::abs(v) < tiny) v = v < 0.0 ? -tiny : tiny;
    }
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped_[i]) {
        b[i + 1] -= dl_[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl_[i] * b[i];
      }
    }
    b[n - 1] /= d_[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du_[n - 2] * b[n - 1]) / d_[n - 2];
    for (std::size_t i = n >= 2 ? n - 2 : 0; i-- > 0;) {
      b[i] = (b[i] - du_[i] * b[i + 1] - du2_[i] * b[i + 2]) / d_[i];
    }
  }

 private:
  std::vector<double> dl_, d_, du_, du2_;
  std::vector<bool> swapped_;
};

double euclidean_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

TridiagonalMatrix fd_hamiltonian(const PiecewisePotential& potential,
                                 const Domain& domain, int n) {
  if (n < 3) {
    throw ConfigError("finite-difference Hamiltonian needs n >= 3 interior points");
  }
  if (!(domain.a < domain.b)) throw ConfigError("domain must satisfy a < b");
  const double h = domain.length() / static_cast<double>(n + 1);
  const double inv_h2 = 1.0 / (h * h);
  TridiagonalMatrix m;
  m.diagonal.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = domain.a + static_cast<double>(i + 1) * h;
    m.diagonal[static_cast<std::size_t>(i)] = 2.0 * inv_h2 + potential_eval(potential, x);
  }
  m.off_diagonal.assign(static_cast<std::size_t>(n - 1), -inv_h2);
  return m;
}

std::size_t sturm_count(const TridiagonalMatrix& m, double sigma) {
  if (m.size() == 0) return 0;
  double max_e2 = 1.0;
  for (double e : m.off_diagonal) max_e2 = std::max(max_e2, e * e);
  const double pivmin = std::numeric_limits<double>::min() * max_e2;

  std::size_t count = 0;
  double q = m.diagonal[0] - sigma;
  if (std::abs(q) <= pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < m.size(); ++i) {
    const double e = m.off_diagonal[i - 1];
    q = m.diagonal[i] - sigma - e * e / q;
    if (std::abs(q) <= pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalMatrix& m, std::size_t k) {
  const std::size_t n = m.size();
  if (n == 0 || m.off_diagonal.size() + 1 != n) {
    throw ConfigError("tridiagonal matrix shape is inconsistent");
  }
  if (k < 1 || k > n) {
    throw ConfigError("requested " + std::to_string(k) + " eigenvalues of a " +
                      std::to_string(n) + "x" + std::to_string(n) + " matrix");
  }

  // Gershgorin bounds, widened so the endpoints strictly bracket the spectrum.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(m.off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(m.off_diagonal[i]);
    lo = std::min(lo, m.diagonal[i] - radius);
    hi = std::max(hi, m.diagonal[i] + radius);
  }
  const double pad = 2.0 * std::numeric_limits<double>::epsilon() *
                         std::max(std::abs(lo), std::abs(hi)) + kEigenTolerance;
  lo -= pad;
  hi += pad;
  if (sturm_count(m, lo) != 0 || sturm_count(m, hi) != n) {
    throw InternalError("Sturm bisection: spectrum not bracketed by Gershgorin bounds");
  }

  std::vector<double> values;
  values.reserve(k);
  double floor = lo;
  for (std::size_t j = 0; j < k; ++j) {
    double left = floor;
    double right = hi;
    // Invariant: count(left) <= j < count(right).
    while (right - left > kEigenTolerance) {
      const double mid = 0.5 * (left + right);
      if (mid <= left || mid >= right) break;
      if (sturm_count(m, mid) > j) {
        right = mid;
      } else {
        left = mid;
      }
    }
    const double value = 0.5 * (left + right);
    values.push_back(value);
    floor = left;
  }
  return values;
}

EigenResult eigenvector_for(const TridiagonalMatrix& m, double eigenvalue,
                            const Domain& domain) {
  const std::size_t n = m.size();
  if (n == 0) throw ConfigError("eigenvector_for: empty matrix");
  const TridiagonalLu lu(m, eigenvalue);

  // Fixed pseudo-random start so no eigenvector is missed by symmetry.
  std::mt19937_64 gen(12345);
  std::vector<double> v(n);
  for (double& x : v) x = 0.5 + static_cast<double>(gen() >> 11) * 0x1.0p-53;
  double norm = euclidean_norm(v);
  for (double& x : v) x /= norm;

  constexpr int kMaxIterations = 200;
  bool converged = false;
  for (int it = 0; it < kMaxIterations && !converged; ++it) {
    std::vector<double> w = v;
    lu.solve(w);
    norm = euclidean_norm(w);
    if (!std::isfinite(norm) || norm == 0.0) {
      throw InternalError("inverse iteration produced a non-finite iterate");
    }
    double dot = 0.0;
    for (std::size_t i = 0; i < n; ++i) dot += w[i] * v[i];
    const double sign = dot < 0.0 ? -1.0 : 1.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w[i] *= sign / norm;
      diff = std::max(diff, std::abs(w[i] - v[i]));
    }
    v = std::move(w);
    converged = diff < 1e-10;
  }
  if (!converged) {
    throw InternalError("inverse iteration did not converge in " +
                        std::to_string(kMaxIterations) + " iterations");
  }

  EigenResult result;
  result.eigenvalue = eigenvalue;
  result.grid = make_grid(domain, static_cast<int>(n) + 2);
  result.eigenvector.assign(n + 2, 0.0);
  std::copy(v.begin(), v.end(), result.eigenvector.begin() + 1);
  const double scale = 1.0 / std::sqrt(norm_integral(result.eigenvector, result.grid));
  for (double& x : result.eigenvector) x *= scale;
  canonicalize_sign(result.eigenvector);
  return result;
}

std::vector<double> finite_well_even_levels(double v0, double half_width) {
  if (!(v0 > 0.0) || !(half_width > 0.0)) {
    throw ConfigError("finite well needs v0 > 0 and half_width > 0");
  }
  const double k_max = std::sqrt(v0);
  auto f = [&](double k) {
    return k * std::tan(k * half_width) - std::sqrt(std::max(0.0, v0 - k * k));
  };

  std::vector<double> levels;
  for (int branch = 0;; ++branch) {
    // On each tangent branch f rises from negative to positive exactly once.
    double lo = branch * std::numbers::pi / half_width;
    if (lo >= k_max) break;
    double hi = std::min((branch + 0.5) * std::numbers::pi / half_width, k_max);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    const double k = 0.5 * (lo + hi);
    levels.push_back(k * k);
  }
  return levels;
}

std::vector<double> finite_well_even_wavefunction(double v0, double half_width,
                                                  double energy,
                                                  const CollocationGrid& grid) {
  const double k = std::sqrt(energy);
  const double kappa = std::sqrt(v0 - energy);
  const double edge = std::cos(k * half_width);
  std::vector<double> psi(grid.points.size());
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double ax = std::abs(grid.points[i]);
    psi[i] = ax <= half_width ? std::cos(k * ax)
                              : edge * std::exp(-kappa * (ax - half_width));
  }
  const double scale = 1.0 / std::sqrt(norm_integral(psi, grid));
  for (double& v : psi) v *= scale;
  canonicalize_sign(psi);
  return psi;
}

AnalyticLevel infinite_well_exact(int n, const CollocationGrid& grid) {
  if (n < 1) throw ConfigError("infinite well level must be >= 1");
  const double kn = n * std::numbers::pi;
  AnalyticLevel level;
  level.energy = kn * kn;
  level.psi.reserve(grid.points.size());
  for (double x : grid.points) {
    level.psi.push_back(std::numbers::sqrt2 * std::sin(kn * x));
  }
  return level;
}

}  // namespace qwell
