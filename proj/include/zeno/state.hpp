#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>

#include "zeno/errors.hpp"

namespace zeno {

using cxd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// One axis of a uniform sample grid. spacing = (upper - lower)/(count - 1),
// so both endpoints are sample points.
struct Axis {
    double lower = 0.0;
    double upper = 1.0;
    int count = 0;

    double spacing() const { return (upper - lower) / (count - 1); }
};

// Uniform 1D segment or 2D tensor-product grid. Immutable after construction.
class Grid {
public:
    static Grid line(double lower, double upper, int count);
    // Convenience: endpoint derived from an exact spacing.
    static Grid line_with_spacing(double lower, double spacing, int count);
    static Grid plane(Axis x, Axis y);

    int dim() const { return dim_; }
    const Axis& axis(int a) const { return axes_.at(static_cast<std::size_t>(a)); }
    long size() const;
    double cell_volume() const;
    double coord(int a, long i) const { return axis(a).lower + static_cast<double>(i) * axis(a).spacing(); }
    // Row-major flattening, x-index major.
    long flat_index(long ix, long iy = 0) const;

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    Grid(int dim, std::array<Axis, 2> axes);
    int dim_ = 1;
    std::array<Axis, 2> axes_{};
};

// Complex amplitudes on a Grid; |psi|^2 integrates to a probability, so the
// samples carry units length^(-dim/2). Value type, immutable from outside.
class WaveFunction {
public:
    WaveFunction(Grid grid, Eigen::VectorXcd amplitudes);

    const Grid& grid() const { return grid_; }
    const Eigen::VectorXcd& amplitudes() const { return amp_; }

    double norm_squared() const;
    double norm() const;

private:
    Grid grid_;
    Eigen::VectorXcd amp_;
};

// Riemann-sum inner product sum conj(a_i) b_i dx^dim. Grids must match.
cxd inner(const WaveFunction& a, const WaveFunction& b);

// Unit-norm copy; throws DegenerateStateError when norm <= 1e-14.
WaveFunction normalize(const WaveFunction& psi);

// Gaussian packet (2 pi sigma^2)^(-1/4) exp(-(x-x0)^2/(4 sigma^2) + i k0 x);
// sigma is the position-density standard deviation at t = 0.
WaveFunction gaussian_packet(const Grid& grid, double x0, double sigma, double k0);

} // namespace zeno
