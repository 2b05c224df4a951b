#include "zeno/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace zeno {

namespace {

// Absolute snap tolerance for closed-boundary membership: well below any
// grid spacing, well above coordinate rounding.
double boundary_tol(double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    return 64.0 * std::numeric_limits<double>::epsilon() * scale;
}

bool in_closed(double x, double a, double b) {
    const double tol = boundary_tol(a, b);
    return x >= a - tol && x <= b + tol;
}

} // namespace

Region::Region(Kind kind, std::vector<std::pair<double, double>> pieces)
    : kind_(kind), pieces_(std::move(pieces)) {
    for (const auto& [a, b] : pieces_) {
        if (!(a < b)) throw StructuralError("region interval needs a < b");
    }
    if (kind_ == Kind::UnionOfIntervals) {
        std::sort(pieces_.begin(), pieces_.end());
        for (std::size_t i = 1; i < pieces_.size(); ++i) {
            if (pieces_[i].first < pieces_[i - 1].second - 1e-12) {
                throw StructuralError("union-of-intervals members must be pairwise disjoint");
            }
        }
    }
}

Region Region::interval(double a, double b) {
    return Region(Kind::Interval, {{a, b}});
}

Region Region::union_of_intervals(std::vector<std::pair<double, double>> pieces) {
    if (pieces.empty()) throw StructuralError("union-of-intervals needs at least one member");
    return Region(Kind::UnionOfIntervals, std::move(pieces));
}

Region Region::rectangle(double ax, double bx, double ay, double by) {
    return Region(Kind::Rectangle, {{ax, bx}, {ay, by}});
}

double Region::measure() const {
    if (kind_ == Kind::Rectangle) {
        return (pieces_[0].second - pieces_[0].first) * (pieces_[1].second - pieces_[1].first);
    }
    double m = 0.0;
    for (const auto& [a, b] : pieces_) m += b - a;
    return m;
}

double Region::lower(int axis_index) const {
    if (kind_ == Kind::Rectangle) return pieces_.at(static_cast<std::size_t>(axis_index)).first;
    if (axis_index != 0) throw StructuralError("1D region has only axis 0");
    return pieces_.front().first;
}

double Region::upper(int axis_index) const {
    if (kind_ == Kind::Rectangle) return pieces_.at(static_cast<std::size_t>(axis_index)).second;
    if (axis_index != 0) throw StructuralError("1D region has only axis 0");
    return pieces_.back().second;
}

bool Region::contains(double x) const {
    if (kind_ == Kind::Rectangle) throw StructuralError("2D region queried with a 1D point");
    for (const auto& [a, b] : pieces_) {
        if (in_closed(x, a, b)) return true;
    }
    return false;
}

bool Region::contains(double x, double y) const {
    if (kind_ != Kind::Rectangle) throw StructuralError("1D region queried with a 2D point");
    return in_closed(x, pieces_[0].first, pieces_[0].second) &&
           in_closed(y, pieces_[1].first, pieces_[1].second);
}

int indicator(const Region& region, double x) { return region.contains(x) ? 1 : 0; }

int indicator(const Region& region, double x, double y) { return region.contains(x, y) ? 1 : 0; }

namespace {

void check_region_in_grid(const Grid& grid, const Region& region) {
    if (grid.dim() != region.dim()) {
        throw StructuralError("region dimension does not match grid dimension");
    }
    for (int a = 0; a < grid.dim(); ++a) {
        const double tol = 1e-9 * grid.axis(a).spacing();
        if (region.lower(a) < grid.axis(a).lower - tol || region.upper(a) > grid.axis(a).upper + tol) {
            throw StructuralError("region exceeds the grid extent");
        }
    }
}

} // namespace

Eigen::ArrayXd region_mask(const Grid& grid, const Region& region) {
    check_region_in_grid(grid, region);
    Eigen::ArrayXd mask = Eigen::ArrayXd::Zero(grid.size());
    if (grid.dim() == 1) {
        for (long i = 0; i < grid.size(); ++i) {
            mask[i] = region.contains(grid.coord(0, i)) ? 1.0 : 0.0;
        }
    } else {
        const long nx = grid.axis(0).count, ny = grid.axis(1).count;
        for (long ix = 0; ix < nx; ++ix) {
            const double x = grid.coord(0, ix);
            for (long iy = 0; iy < ny; ++iy) {
                mask[grid.flat_index(ix, iy)] = region.contains(x, grid.coord(1, iy)) ? 1.0 : 0.0;
            }
        }
    }
    return mask;
}

WaveFunction project(const WaveFunction& psi, const Region& region) {
    const Eigen::ArrayXd mask = region_mask(psi.grid(), region);
    return WaveFunction(psi.grid(), (psi.amplitudes().array() * mask).matrix());
}

double survival_probability(const WaveFunction& psi, const Region& region) {
    return project(psi, region).norm_squared();
}

namespace {

const std::pair<double, double>& single_interval(const Region& region) {
    if (region.kind() != Region::Kind::Interval) {
        throw StructuralError("operation requires a single-interval region");
    }
    return region.intervals().front();
}

} // namespace

WaveFunction sine_mode(const Grid& grid, const Region& region, int n) {
    if (n < 1) throw DomainError("sine mode index must be >= 1");
    if (grid.dim() != 1) throw StructuralError("sine_mode expects a 1D grid");
    check_region_in_grid(grid, region);
    const auto& [a, b] = single_interval(region);
    const double L = b - a;
    const long npts = grid.size();
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(npts);
    const double pref = std::sqrt(2.0 / L);
    for (long i = 0; i < npts; ++i) {
        const double x = grid.coord(0, i);
        if (region.contains(x)) {
            amp[i] = pref * std::sin(n * kPi * (x - a) / L);
        }
    }
    return WaveFunction(grid, std::move(amp));
}

WaveFunction sine_mode_2d(const Grid& grid, const Region& region, int nx, int ny) {
    if (nx < 1 || ny < 1) throw DomainError("sine mode indices must be >= 1");
    if (grid.dim() != 2 || region.kind() != Region::Kind::Rectangle) {
        throw StructuralError("sine_mode_2d expects a 2D grid and a rectangle region");
    }
    check_region_in_grid(grid, region);
    const double ax = region.lower(0), Lx = region.extent(0);
    const double ay = region.lower(1), Ly = region.extent(1);
    const double pref = 2.0 / std::sqrt(Lx * Ly);
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(grid.size());
    const long cx = grid.axis(0).count, cy = grid.axis(1).count;
    for (long ix = 0; ix < cx; ++ix) {
        const double x = grid.coord(0, ix);
        for (long iy = 0; iy < cy; ++iy) {
            const double y = grid.coord(1, iy);
            if (region.contains(x, y)) {
                amp[grid.flat_index(ix, iy)] =
                    pref * std::sin(nx * kPi * (x - ax) / Lx) * std::sin(ny * kPi * (y - ay) / Ly);
            }
        }
    }
    return WaveFunction(grid, std::move(amp));
}

WaveFunction cosine_mode(const Grid& grid, const Region& region, int n) {
    if (n < 0) throw DomainError("cosine mode index must be >= 0");
    if (grid.dim() != 1) throw StructuralError("cosine_mode expects a 1D grid");
    check_region_in_grid(grid, region);
    const auto& [a, b] = single_interval(region);
    const double L = b - a;
    const long npts = grid.size();
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(npts);
    const double pref = n == 0 ? std::sqrt(1.0 / L) : std::sqrt(2.0 / L);
    for (long i = 0; i < npts; ++i) {
        const double x = grid.coord(0, i);
        if (region.contains(x)) {
            amp[i] = pref * std::cos(n * kPi * (x - a) / L);
        }
    }
    return WaveFunction(grid, std::move(amp));
}

} // namespace zeno
