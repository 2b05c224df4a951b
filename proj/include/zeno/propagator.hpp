#pragma once

#include <memory>
#include <string>

#include "zeno/potential.hpp"
#include "zeno/region.hpp"
#include "zeno/state.hpp"

namespace zeno {

enum class Backend { Dense, Spectral };

Backend backend_from_string(const std::string& name);
std::string to_string(Backend backend);

// Physical and numerical parameters defining U(t) = exp(-i t H / hbar),
// H = p^2/2m + V, discretized on the padded periodic grid.
struct PropagatorSpec {
    explicit PropagatorSpec(Grid g) : grid(std::move(g)) {}

    double mass = 1.0;
    double hbar = 1.0;
    Potential potential = Potential::zero();
    Grid grid;
    double padding_factor = 4.0;  // ratio of computational box to region extent
    double dt_max = 1e-3;         // largest Strang substep for the spectral backend

    void validate() const;
};

// Checks that the grid is a big enough periodic box for a given measurement
// region: period >= padding_factor * extent per axis, region inside the grid
// with at least half an extent of margin on each side.
void validate_padding(const PropagatorSpec& spec, const Region& region);

// Exact free-particle kernel sqrt(m/(2 pi i t hbar)) exp(i m (x-y)^2 / (2 hbar t)),
// principal branch sqrt(i) = exp(i pi/4); t must be positive.
cxd free_kernel(double x, double y, double t, double mass, double hbar);

// Symmetrized short-time kernel: free kernel times exp(-i t (V(x)+V(y)) / (2 hbar)).
cxd potential_kernel(double x, double y, double t, const PropagatorSpec& spec);

// One-step unitary evolution with two interchangeable backends sharing the
// same discretized Hamiltonian (three-point / five-point periodic finite
// differences on the padded box):
//   dense    - exact matrix exponential through an eigendecomposition; the
//              trusted oracle, grids up to 2048 total points;
//   spectral - FFT diagonalization of the kinetic term plus Strang splitting
//              for the potential; exact for V = 0, substep error O(dt^3).
// Caches (eigendecomposition, FFT plans) build lazily and are then read-only;
// a mutex serializes concurrent use of one instance. Sweeps that want
// parallelism give each worker its own Propagator.
class Propagator {
public:
    explicit Propagator(PropagatorSpec spec);
    ~Propagator();
    Propagator(Propagator&&) noexcept;
    Propagator& operator=(Propagator&&) noexcept;
    Propagator(const Propagator&) = delete;
    Propagator& operator=(const Propagator&) = delete;

    const PropagatorSpec& spec() const;

    WaveFunction evolve_dense(const WaveFunction& psi, double t) const;
    WaveFunction evolve_spectral(const WaveFunction& psi, double t) const;
    WaveFunction evolve(const WaveFunction& psi, double t, Backend backend) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace zeno
