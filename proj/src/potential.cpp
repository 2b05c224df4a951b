#include "zeno/potential.hpp"

#include <cmath>

namespace zeno {

Potential Potential::zero() { return Potential(); }

Potential Potential::linear(double force) {
    Potential p;
    p.kind_ = Kind::Linear;
    p.force_ = force;
    return p;
}

Potential Potential::harmonic(double omega) {
    if (!(omega >= 0.0)) throw DomainError("harmonic frequency must be non-negative");
    Potential p;
    p.kind_ = Kind::Harmonic;
    p.omega_ = omega;
    return p;
}

Potential Potential::tabulated(Grid grid, Eigen::VectorXd samples) {
    if (samples.size() != grid.size()) {
        throw StructuralError("tabulated potential sample count does not match grid");
    }
    if (!samples.allFinite()) {
        throw DomainError("tabulated potential contains non-finite values");
    }
    Potential p;
    p.kind_ = Kind::Tabulated;
    p.tab_grid_ = std::move(grid);
    p.tab_values_ = std::move(samples);
    return p;
}

double Potential::value(double x, double mass) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Linear: return force_ * x;
        case Kind::Harmonic: return 0.5 * mass * omega_ * omega_ * x * x;
        case Kind::Tabulated: {
            const Grid& g = *tab_grid_;
            if (g.dim() != 1) throw StructuralError("1D evaluation of a 2D tabulated potential");
            const double dx = g.axis(0).spacing();
            const double s = (x - g.axis(0).lower) / dx;
            if (s < -1e-9 || s > g.size() - 1 + 1e-9) {
                throw DomainError("tabulated potential evaluated outside its grid");
            }
            const long i = std::min<long>(g.size() - 2, std::max<long>(0, static_cast<long>(std::floor(s))));
            const double w = s - static_cast<double>(i);
            return (1.0 - w) * tab_values_[i] + w * tab_values_[i + 1];
        }
    }
    return 0.0;
}

double Potential::value(double x, double y, double mass) const {
    switch (kind_) {
        case Kind::Zero: return 0.0;
        case Kind::Linear: return force_ * x;
        case Kind::Harmonic: return 0.5 * mass * omega_ * omega_ * (x * x + y * y);
        case Kind::Tabulated:
            throw StructuralError("2D tabulated potentials support grid sampling only");
    }
    return 0.0;
}

Eigen::VectorXd Potential::sample(const Grid& grid, double mass) const {
    if (kind_ == Kind::Tabulated) {
        if (!(*tab_grid_ == grid)) {
            if (tab_grid_->dim() == 1 && grid.dim() == 1) {
                Eigen::VectorXd v(grid.size());
                for (long i = 0; i < grid.size(); ++i) v[i] = value(grid.coord(0, i), mass);
                return v;
            }
            throw StructuralError("tabulated potential grid does not match the requested grid");
        }
        return tab_values_;
    }
    Eigen::VectorXd v(grid.size());
    if (grid.dim() == 1) {
        for (long i = 0; i < grid.size(); ++i) v[i] = value(grid.coord(0, i), mass);
    } else {
        const long nx = grid.axis(0).count, ny = grid.axis(1).count;
        for (long ix = 0; ix < nx; ++ix) {
            for (long iy = 0; iy < ny; ++iy) {
                v[grid.flat_index(ix, iy)] = value(grid.coord(0, ix), grid.coord(1, iy), mass);
            }
        }
    }
    if (!v.allFinite()) throw DomainError("potential evaluates to non-finite values on the grid");
    return v;
}

} // namespace zeno
