#pragma once

#include <optional>

#include "zeno/state.hpp"

namespace zeno {

// External potential V entering H = p^2/2m + V. Linear is V = F x (also in
// 2D, where it acts along x). Harmonic is (1/2) m omega^2 |r|^2.
class Potential {
public:
    enum class Kind { Zero, Linear, Harmonic, Tabulated };

    static Potential zero();
    static Potential linear(double force);
    static Potential harmonic(double omega);
    static Potential tabulated(Grid grid, Eigen::VectorXd samples);

    Kind kind() const { return kind_; }
    bool is_zero() const { return kind_ == Kind::Zero; }
    double force() const { return force_; }
    double omega() const { return omega_; }

    // Point evaluation; tabulated potentials interpolate linearly on their
    // own grid (1D) or require exact grid match (2D).
    double value(double x, double mass) const;
    double value(double x, double y, double mass) const;

    // Samples on a grid; every value must be finite.
    Eigen::VectorXd sample(const Grid& grid, double mass) const;

private:
    Potential() = default;
    Kind kind_ = Kind::Zero;
    double force_ = 0.0;
    double omega_ = 0.0;
    std::optional<Grid> tab_grid_;
    Eigen::VectorXd tab_values_;
};

} // namespace zeno
