#include "zeno/dirichlet.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace zeno {

namespace {

// Strictly-inside test with the same rounding snap as the region indicator:
// the boundary samples themselves are excluded, which is where the Dirichlet
// walls sit.
bool strictly_inside(double x, double a, double b) {
    const double scale = std::max({1.0, std::abs(a), std::abs(b)});
    const double tol = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    return x > a + tol && x < b - tol;
}

void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
    for (long i = 0; i < v.size(); ++i) {
        if (std::abs(v[i]) > 1e-8) {
            if (v[i] < 0.0) v = -v;
            return;
        }
    }
}

struct AxisProblem {
    std::vector<long> indices;  // axis sample indices strictly inside
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;  // l2-normalized columns
};

// Tridiagonal interior eigenproblem along one axis with an additive potential
// sampled at the interior points.
AxisProblem solve_axis(const Grid& grid, int axis_index, double a, double b,
                       const std::function<double(double)>& v_axis,
                       double mass, double hbar, int want) {
    AxisProblem out;
    const Axis& ax = grid.axis(axis_index);
    for (long i = 0; i < ax.count; ++i) {
        if (strictly_inside(grid.coord(axis_index, i), a, b)) out.indices.push_back(i);
    }
    const long m = static_cast<long>(out.indices.size());
    if (m < 3) throw StructuralError("region interior holds fewer than 3 grid points");
    if (want > m) {
        throw CapacityError("requested " + std::to_string(want) + " modes from " +
                            std::to_string(m) + " interior points");
    }
    const double dx = ax.spacing();
    const double hop = hbar * hbar / (2.0 * mass * dx * dx);
    Eigen::VectorXd d(m), e(m - 1);
    for (long i = 0; i < m; ++i) {
        d[i] = 2.0 * hop + v_axis(grid.coord(axis_index, out.indices[static_cast<std::size_t>(i)]));
        if (i + 1 < m) e[i] = -hop;
    }
    Eigen::VectorXd w(m);
    Eigen::MatrixXd z(m, want);
    std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * std::max(1, want)));
    lapack_int found = 0;
    const int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', static_cast<lapack_int>(m),
                                    d.data(), e.data(), 0.0, 0.0, 1, want, 0.0, &found,
                                    w.data(), z.data(), static_cast<lapack_int>(m), isuppz.data());
    if (info != 0 || found != want) {
        throw NumericalError("LAPACK dstevr failed (info " + std::to_string(info) + ")");
    }
    out.eigenvalues = w.head(want);
    out.eigenvectors = z;
    for (int k = 0; k < want; ++k) fix_sign(out.eigenvectors.col(k));
    return out;
}

bool potential_is_separable(const Potential& p) {
    return p.kind() != Potential::Kind::Tabulated;
}

} // namespace

double analytic_box_eigenvalue(int n, double L, double mass, double hbar) {
    if (n < 1) throw DomainError("box eigenvalue index must be >= 1");
    if (!(L > 0.0)) throw DomainError("box length must be positive");
    return hbar * hbar * static_cast<double>(n) * static_cast<double>(n) * kPi * kPi /
           (2.0 * mass * L * L);
}

double analytic_rectangle_eigenvalue(int nx, int ny, double Lx, double Ly, double mass, double hbar) {
    return analytic_box_eigenvalue(nx, Lx, mass, hbar) + analytic_box_eigenvalue(ny, Ly, mass, hbar);
}

Eigen::VectorXcd DirichletSpectrum::coefficients(const WaveFunction& psi) const {
    if (psi.grid() != grid) throw StructuralError("state grid does not match the spectrum grid");
    const long m = static_cast<long>(interior.size());
    Eigen::VectorXcd restricted(m);
    for (long i = 0; i < m; ++i) restricted[i] = psi.amplitudes()[interior[static_cast<std::size_t>(i)]];
    return (eigenvectors.transpose() * restricted) * grid.cell_volume();
}

WaveFunction DirichletSpectrum::embed(const Eigen::VectorXcd& coeffs) const {
    if (coeffs.size() != count()) throw StructuralError("coefficient count does not match spectrum");
    const Eigen::VectorXcd interior_values = eigenvectors * coeffs;
    Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(grid.size());
    for (std::size_t i = 0; i < interior.size(); ++i) {
        amp[interior[i]] = interior_values[static_cast<long>(i)];
    }
    return WaveFunction(grid, std::move(amp));
}

std::optional<double> DirichletSpectrum::analytic_eigenvalue(int k, double mass, double hbar,
                                                             bool potential_zero) const {
    if (!potential_zero || k < 0 || k >= count()) return std::nullopt;
    const auto& id = mode_ids[static_cast<std::size_t>(k)];
    if (id[0] < 1) return std::nullopt;
    if (region.kind() == Region::Kind::Interval) {
        return analytic_box_eigenvalue(id[0], region.extent(0), mass, hbar);
    }
    if (region.kind() == Region::Kind::Rectangle && id[1] >= 1) {
        return analytic_rectangle_eigenvalue(id[0], id[1], region.extent(0), region.extent(1), mass, hbar);
    }
    return std::nullopt;
}

DirichletSpectrum solve_spectrum(const Region& region, const Potential& potential,
                                 const PropagatorSpec& spec, int count) {
    if (count < 1) throw DomainError("spectrum mode count must be >= 1");
    const Grid& grid = spec.grid;
    if (grid.dim() != region.dim()) {
        throw StructuralError("region dimension does not match the grid");
    }

    DirichletSpectrum out{region, grid, {}, {}, {}, {}};

    if (region.kind() == Region::Kind::Interval) {
        auto axis = solve_axis(grid, 0, region.lower(0), region.upper(0),
                               [&](double x) { return potential.value(x, spec.mass); },
                               spec.mass, spec.hbar, count);
        const long m = static_cast<long>(axis.indices.size());
        if (count > m / 8) {
            throw CapacityError("mode count " + std::to_string(count) +
                                " exceeds the anti-aliasing bound (interior points / 8 = " +
                                std::to_string(m / 8) + ")");
        }
        out.interior = axis.indices;
        out.eigenvalues.assign(axis.eigenvalues.data(), axis.eigenvalues.data() + count);
        // l2-normalized -> integral-normalized samples.
        out.eigenvectors = axis.eigenvectors / std::sqrt(grid.axis(0).spacing());
        for (int k = 1; k <= count; ++k) out.mode_ids.push_back({k, 0});
        return out;
    }

    if (region.kind() != Region::Kind::Rectangle) {
        throw StructuralError("spectrum solves support single intervals and rectangles");
    }

    // Interior index set of the rectangle.
    std::vector<long> ix_list, iy_list;
    for (long i = 0; i < grid.axis(0).count; ++i) {
        if (strictly_inside(grid.coord(0, i), region.lower(0), region.upper(0))) ix_list.push_back(i);
    }
    for (long j = 0; j < grid.axis(1).count; ++j) {
        if (strictly_inside(grid.coord(1, j), region.lower(1), region.upper(1))) iy_list.push_back(j);
    }
    const long mx = static_cast<long>(ix_list.size()), my = static_cast<long>(iy_list.size());
    for (long i = 0; i < mx; ++i) {
        for (long j = 0; j < my; ++j) {
            out.interior.push_back(grid.flat_index(ix_list[static_cast<std::size_t>(i)],
                                                   iy_list[static_cast<std::size_t>(j)]));
        }
    }
    if (count > mx * my / 8) {
        throw CapacityError("mode count exceeds the anti-aliasing bound for the rectangle");
    }

    if (potential_is_separable(potential)) {
        // Per-axis solves; V(x,y) = Vx(x) + Vy(y) for every supported kind.
        const int per_axis = std::min<long>({mx, my, static_cast<long>(count)});
        auto px = solve_axis(grid, 0, region.lower(0), region.upper(0),
                             [&](double x) { return potential.value(x, 0.0, spec.mass); },
                             spec.mass, spec.hbar, per_axis);
        auto py = solve_axis(grid, 1, region.lower(1), region.upper(1),
                             [&](double y) { return potential.value(0.0, y, spec.mass); },
                             spec.mass, spec.hbar, per_axis);
        struct Mode { double e; int kx, ky; };
        std::vector<Mode> modes;
        for (int a = 0; a < per_axis; ++a) {
            for (int b = 0; b < per_axis; ++b) {
                modes.push_back({px.eigenvalues[a] + py.eigenvalues[b], a, b});
            }
        }
        std::sort(modes.begin(), modes.end(), [](const Mode& l, const Mode& r) {
            if (l.e != r.e) return l.e < r.e;
            if (l.kx != r.kx) return l.kx < r.kx;
            return l.ky < r.ky;
        });
        if (static_cast<int>(modes.size()) < count) {
            throw CapacityError("separable mode pool smaller than the requested count");
        }
        const double cell_norm = std::sqrt(grid.cell_volume());
        out.eigenvectors.resize(mx * my, count);
        for (int k = 0; k < count; ++k) {
            const Mode& md = modes[static_cast<std::size_t>(k)];
            out.eigenvalues.push_back(md.e);
            out.mode_ids.push_back({md.kx + 1, md.ky + 1});
            for (long i = 0; i < mx; ++i) {
                for (long j = 0; j < my; ++j) {
                    out.eigenvectors(i * my + j, k) =
                        px.eigenvectors(i, md.kx) * py.eigenvectors(j, md.ky) / cell_norm;
                }
            }
        }
        return out;
    }

    // Dense fallback for non-separable (tabulated) potentials.
    const long m = mx * my;
    if (m > 2048) {
        throw CapacityError("dense 2D spectrum solve capped at 2048 interior points, got " +
                            std::to_string(m));
    }
    const Eigen::VectorXd v = potential.sample(grid, spec.mass);
    const double dx = grid.axis(0).spacing(), dy = grid.axis(1).spacing();
    const double hx = spec.hbar * spec.hbar / (2.0 * spec.mass * dx * dx);
    const double hy = spec.hbar * spec.hbar / (2.0 * spec.mass * dy * dy);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
    auto local = [&](long i, long j) { return i * my + j; };
    for (long i = 0; i < mx; ++i) {
        for (long j = 0; j < my; ++j) {
            const long r = local(i, j);
            h(r, r) = 2.0 * (hx + hy) + v[out.interior[static_cast<std::size_t>(r)]];
            if (i + 1 < mx) h(r, local(i + 1, j)) = -hx;
            if (i > 0) h(r, local(i - 1, j)) = -hx;
            if (j + 1 < my) h(r, local(i, j + 1)) = -hy;
            if (j > 0) h(r, local(i, j - 1)) = -hy;
        }
    }
    Eigen::VectorXd w(m);
    Eigen::MatrixXd z(m, count);
    std::vector<lapack_int> isuppz(static_cast<std::size_t>(2 * count));
    lapack_int found = 0;
    const int info = LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'L', static_cast<lapack_int>(m),
                                    h.data(), static_cast<lapack_int>(m), 0.0, 0.0, 1, count, 0.0,
                                    &found, w.data(), z.data(), static_cast<lapack_int>(m),
                                    isuppz.data());
    if (info != 0 || found != count) {
        throw NumericalError("LAPACK dsyevr failed (info " + std::to_string(info) + ")");
    }
    const double cell_norm = std::sqrt(grid.cell_volume());
    out.eigenvectors = z / cell_norm;
    for (int k = 0; k < count; ++k) {
        fix_sign(out.eigenvectors.col(k));
        out.eigenvalues.push_back(w[k]);
        out.mode_ids.push_back({0, 0});
    }
    return out;
}

WaveFunction dirichlet_evolve(const WaveFunction& psi, double T, const DirichletSpectrum& spectrum,
                              double hbar) {
    Eigen::VectorXcd c = spectrum.coefficients(psi);
    const double total = psi.norm_squared();
    if (total > 0.0) {
        const double covered = c.squaredNorm();
        const double missing = (total - covered) / total;
        if (missing > 1e-8) {
            throw NumericalError(
                "state has spectral weight " + std::to_string(missing) +
                " outside the retained Dirichlet modes; increase the mode count");
        }
    }
    for (int k = 0; k < spectrum.count(); ++k) {
        c[k] *= std::polar(1.0, -spectrum.eigenvalues[static_cast<std::size_t>(k)] * T / hbar);
    }
    return spectrum.embed(c);
}

} // namespace zeno
