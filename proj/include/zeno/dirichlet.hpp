#pragma once

#include <array>
#include <optional>
#include <vector>

#include "zeno/propagator.hpp"

namespace zeno {

// Eigenpairs of the Zeno Hamiltonian H_Z = p^2/2m + V with hard Dirichlet
// walls on the region boundary, discretized on the interior points of the
// propagation grid (wavefunctions vanish at the boundary samples).
struct DirichletSpectrum {
    Region region;
    Grid grid;                               // full grid the spectrum embeds into
    std::vector<long> interior;              // flat indices of strictly interior points
    std::vector<double> eigenvalues;         // ascending
    Eigen::MatrixXd eigenvectors;            // interior samples, integral-normalized
    std::vector<std::array<int, 2>> mode_ids; // {n,0} in 1D, {nx,ny} when separable

    int count() const { return static_cast<int>(eigenvalues.size()); }

    // Riemann coefficients <u_k|psi> over the interior points.
    Eigen::VectorXcd coefficients(const WaveFunction& psi) const;
    // sum_k c_k u_k embedded in the full grid (zero outside the interior).
    WaveFunction embed(const Eigen::VectorXcd& coeffs) const;
    // Analytic eigenvalue for mode k when available (V = 0 boxes/rectangles).
    std::optional<double> analytic_eigenvalue(int k, double mass, double hbar, bool potential_is_zero) const;
};

// E_n = hbar^2 n^2 pi^2 / (2 m L^2); n >= 1, L > 0.
double analytic_box_eigenvalue(int n, double L, double mass, double hbar);

// Separable rectangle eigenvalue (pi^2 hbar^2 / 2m)(nx^2/Lx^2 + ny^2/Ly^2).
double analytic_rectangle_eigenvalue(int nx, int ny, double Lx, double Ly, double mass, double hbar);

// Eigenpairs of the finite-difference Hamiltonian restricted to the region
// interior. 1D intervals solve the symmetric tridiagonal problem; rectangles
// with separable potentials combine per-axis solves; anything else falls back
// to a dense solve capped at 2048 interior points.
DirichletSpectrum solve_spectrum(const Region& region, const Potential& potential,
                                 const PropagatorSpec& spec, int count);

// exp(-i T H_Z / hbar) applied through the eigenbasis: expand, phase, resum.
// Requires the spectral weight outside the retained modes to be < 1e-8.
WaveFunction dirichlet_evolve(const WaveFunction& psi, double T, const DirichletSpectrum& spectrum,
                              double hbar = 1.0);

} // namespace zeno
