#include "zeno/state.hpp"

#include <cmath>

namespace zeno {

namespace {

void validate_axis(const Axis& ax) {
    if (ax.count < 8) {
        throw StructuralError("grid axis needs at least 8 points, got " + std::to_string(ax.count));
    }
    if (!(ax.upper > ax.lower)) {
        throw StructuralError("grid axis upper bound must exceed lower bound");
    }
}

} // namespace

Grid::Grid(int dim, std::array<Axis, 2> axes) : dim_(dim), axes_(axes) {
    validate_axis(axes_[0]);
    if (dim_ == 2) validate_axis(axes_[1]);
}

Grid Grid::line(double lower, double upper, int count) {
    return Grid(1, {Axis{lower, upper, count}, Axis{}});
}

Grid Grid::line_with_spacing(double lower, double spacing, int count) {
    if (!(spacing > 0.0)) throw StructuralError("grid spacing must be positive");
    return line(lower, lower + spacing * (count - 1), count);
}

Grid Grid::plane(Axis x, Axis y) {
    return Grid(2, {x, y});
}

long Grid::size() const {
    long n = axes_[0].count;
    if (dim_ == 2) n *= axes_[1].count;
    return n;
}

double Grid::cell_volume() const {
    double v = axes_[0].spacing();
    if (dim_ == 2) v *= axes_[1].spacing();
    return v;
}

long Grid::flat_index(long ix, long iy) const {
    if (dim_ == 1) return ix;
    return ix * axes_[1].count + iy;
}

bool Grid::operator==(const Grid& other) const {
    if (dim_ != other.dim_) return false;
    for (int a = 0; a < dim_; ++a) {
        if (axes_[static_cast<std::size_t>(a)].lower != other.axes_[static_cast<std::size_t>(a)].lower ||
            axes_[static_cast<std::size_t>(a)].upper != other.axes_[static_cast<std::size_t>(a)].upper ||
            axes_[static_cast<std::size_t>(a)].count != other.axes_[static_cast<std::size_t>(a)].count) {
            return false;
        }
    }
    return true;
}

WaveFunction::WaveFunction(Grid grid, Eigen::VectorXcd amplitudes)
    : grid_(std::move(grid)), amp_(std::move(amplitudes)) {
    if (amp_.size() != grid_.size()) {
        throw StructuralError("amplitude count " + std::to_string(amp_.size()) +
                              " does not match grid size " + std::to_string(grid_.size()));
    }
}

double WaveFunction::norm_squared() const {
    return amp_.squaredNorm() * grid_.cell_volume();
}

double WaveFunction::norm() const { return std::sqrt(norm_squared()); }

cxd inner(const WaveFunction& a, const WaveFunction& b) {
    if (a.grid() != b.grid()) {
        throw StructuralError("inner product requires matching grids");
    }
    // Eigen's dot conjugates the left factor.
    return a.amplitudes().dot(b.amplitudes()) * a.grid().cell_volume();
}

WaveFunction normalize(const WaveFunction& psi) {
    const double n = psi.norm();
    if (n <= 1e-14) {
        throw DegenerateStateError("cannot normalize a state with norm " + std::to_string(n));
    }
    return WaveFunction(psi.grid(), psi.amplitudes() / n);
}

WaveFunction gaussian_packet(const Grid& grid, double x0, double sigma, double k0) {
    if (grid.dim() != 1) throw StructuralError("gaussian_packet expects a 1D grid");
    if (!(sigma > 0.0)) throw DomainError("gaussian width must be positive");
    const long n = grid.size();
    Eigen::VectorXcd amp(n);
    const double pref = std::pow(2.0 * kPi * sigma * sigma, -0.25);
    for (long i = 0; i < n; ++i) {
        const double x = grid.coord(0, i);
        const double arg = (x - x0) / (2.0 * sigma);
        amp[i] = pref * std::exp(-arg * arg) * std::polar(1.0, k0 * x);
    }
    return WaveFunction(grid, std::move(amp));
}

} // namespace zeno
