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

#pragma once

#include <cstddef>
#include <vector>

#include "problems.hpp"
#include "wavefunction.hpp"

namespace qwell {

/// Symmetric tridiagonal matrix stored as its diagonal and sub-diagonal.
struct TridiagonalMatrix {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;  // size = diagonal.size() - 1

  std::size_t size() const { return diagonal.size(); }
};

struct EigenResult {
  double eigenvalue = 0.0;
  // Includes both Dirichlet endpoints (psi = 0 there), unit trapezoid norm,
  // positive at its largest-magnitude entry.
  CollocationGrid grid;
  std::vector<double> eigenvector;
};

/// -d2/dx2 + V on n interior points of (a, b) with Dirichlet ends:
/// diagonal 2/h^2 + V(x_i), off-diagonal -1/h^2, h = (b - a)/(n + 1).
TridiagonalMatrix fd_hamiltonian(const PiecewisePotential& potential,
                                 const Domain& domain, int n);

/// Number of eigenvalues strictly below sigma (Sturm sequence sign count).
std::size_t sturm_count(const TridiagonalMatrix& m, double sigma);

/// The k smallest eigenvalues by Sturm bisection, ascending, each to an
/// absolute tolerance of 1e-10.
std::vector<double> lowest_eigenvalues(const TridiagonalMatrix& m, std::size_t k);

/// Inverse iteration at the given eigenvalue. `domain` supplies the grid the
/// interior unknowns live on.
EigenResult eigenvector_for(const TridiagonalMatrix& m, double eigenvalue,
                            const Domain& domain);

/// Even-parity bound-state energies of a finite well of depth v0 and
/// half-width half_width on the infinite line: roots in (0, v0) of
///   sqrt(E) tan(sqrt(E) half_width) = sqrt(v0 - E).
std::vector<double> finite_well_even_levels(double v0, double half_width);

/// Even ground state of the finite well on the infinite line, cos(kx) inside
/// and a matched decaying exponential outside, sampled on `grid` and
/// normalized over it.
std::vector<double> finite_well_even_wavefunction(double v0, double half_width,
                                                  double energy,
                                                  const CollocationGrid& grid);

struct AnalyticLevel {
  double energy = 0.0;
  std::vector<double> psi;  // sqrt(2) sin(n pi x) on the requested grid
};

/// Infinite well on [0, 1]: E_n = n^2 pi^2, psi_n = sqrt(2) sin(n pi x).
AnalyticLevel infinite_well_exact(int n, const CollocationGrid& grid);

}  // namespace qwell
