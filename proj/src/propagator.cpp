#include "zeno/propagator.hpp"

#include <fftw3.h>
#include <lapacke.h>

#include <cmath>
#include <mutex>
#include <optional>
#include <vector>

namespace zeno {

Backend backend_from_string(const std::string& name) {
    if (name == "dense") return Backend::Dense;
    if (name == "spectral") return Backend::Spectral;
    throw ConfigError("unknown backend '" + name + "' (expected 'dense' or 'spectral')");
}

std::string to_string(Backend backend) {
    return backend == Backend::Dense ? "dense" : "spectral";
}

void PropagatorSpec::validate() const {
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    if (!(hbar > 0.0)) throw DomainError("hbar must be positive");
    if (!(padding_factor >= 2.0)) throw DomainError("padding_factor must be >= 2");
    if (!(dt_max > 0.0)) throw DomainError("dt_max must be positive");
}

void validate_padding(const PropagatorSpec& spec, const Region& region) {
    spec.validate();
    if (spec.grid.dim() != region.dim()) {
        throw StructuralError("region dimension does not match the propagation grid");
    }
    for (int a = 0; a < spec.grid.dim(); ++a) {
        const Axis& ax = spec.grid.axis(a);
        const double extent = region.extent(a);
        const double period = ax.spacing() * ax.count;  // FFT box is periodic past the last point
        if (period < spec.padding_factor * extent * (1.0 - 1e-12)) {
            throw StructuralError("computational box is smaller than padding_factor * region extent");
        }
        const double tol = 1e-9 * ax.spacing();
        if (region.lower(a) - ax.lower < 0.5 * extent - tol ||
            ax.upper - region.upper(a) < 0.5 * extent - tol) {
            throw StructuralError("region needs at least half an extent of padding on each side");
        }
    }
}

cxd free_kernel(double x, double y, double t, double mass, double hbar) {
    if (!(t > 0.0)) throw DomainError("free_kernel requires t > 0 (use the identity at t = 0)");
    const double amp = std::sqrt(mass / (2.0 * kPi * hbar * t));
    const double phase = mass * (x - y) * (x - y) / (2.0 * hbar * t);
    // 1/sqrt(i) = exp(-i pi/4) on the principal branch.
    return amp * std::polar(1.0, phase - kPi / 4.0);
}

cxd potential_kernel(double x, double y, double t, const PropagatorSpec& spec) {
    const cxd free = free_kernel(x, y, t, spec.mass, spec.hbar);
    const double vsum = spec.potential.value(x, spec.mass) + spec.potential.value(y, spec.mass);
    return free * std::polar(1.0, -t * vsum / (2.0 * spec.hbar));
}

namespace {

constexpr long kDenseCapacity = 2048;

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftPlans {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    long n = 0;

    ~FftPlans() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
        if (buf) fftw_free(buf);
    }
};

} // namespace

struct Propagator::Impl {
    PropagatorSpec spec;
    mutable std::mutex mutex;

    // Dense backend cache: H = Q diag(lambda) Q^T.
    mutable std::optional<Eigen::MatrixXd> dense_q;
    mutable Eigen::VectorXd dense_lambda;

    // Spectral backend cache.
    mutable std::unique_ptr<FftPlans> fft;
    mutable Eigen::ArrayXd kinetic;            // per-mode K eigenvalue / hbar
    mutable Eigen::VectorXd potential_samples; // empty when V = 0

    explicit Impl(PropagatorSpec s) : spec(std::move(s)) { spec.validate(); }

    void ensure_dense() const {
        if (dense_q) return;
        const long n = spec.grid.size();
        if (n > kDenseCapacity) {
            throw CapacityError("dense backend supports at most " + std::to_string(kDenseCapacity) +
                                " grid points, got " + std::to_string(n) +
                                " (use the spectral backend)");
        }
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
        const Eigen::VectorXd v = spec.potential.sample(spec.grid, spec.mass);
        const double hb = spec.hbar, m = spec.mass;
        if (spec.grid.dim() == 1) {
            const double dx = spec.grid.axis(0).spacing();
            const double hop = hb * hb / (2.0 * m * dx * dx);
            for (long i = 0; i < n; ++i) {
                h(i, i) = 2.0 * hop + v[i];
                h(i, (i + 1) % n) -= hop;
                h(i, (i - 1 + n) % n) -= hop;
            }
        } else {
            const long nx = spec.grid.axis(0).count, ny = spec.grid.axis(1).count;
            const double dx = spec.grid.axis(0).spacing(), dy = spec.grid.axis(1).spacing();
            const double hx = hb * hb / (2.0 * m * dx * dx), hy = hb * hb / (2.0 * m * dy * dy);
            for (long ix = 0; ix < nx; ++ix) {
                for (long iy = 0; iy < ny; ++iy) {
                    const long i = spec.grid.flat_index(ix, iy);
                    h(i, i) = 2.0 * (hx + hy) + v[i];
                    h(i, spec.grid.flat_index((ix + 1) % nx, iy)) -= hx;
                    h(i, spec.grid.flat_index((ix - 1 + nx) % nx, iy)) -= hx;
                    h(i, spec.grid.flat_index(ix, (iy + 1) % ny)) -= hy;
                    h(i, spec.grid.flat_index(ix, (iy - 1 + ny) % ny)) -= hy;
                }
            }
        }
        Eigen::VectorXd w(n);
        const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<int>(n),
                                        h.data(), static_cast<int>(n), w.data());
        if (info != 0) {
            throw NumericalError("LAPACK dsyevd failed with info " + std::to_string(info));
        }
        dense_lambda = std::move(w);
        dense_q = std::move(h);
    }

    void ensure_spectral() const {
        if (fft) return;
        const long n = spec.grid.size();
        auto plans = std::make_unique<FftPlans>();
        plans->n = n;
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            plans->buf = fftw_alloc_complex(static_cast<std::size_t>(n));
            if (spec.grid.dim() == 1) {
                plans->fwd = fftw_plan_dft_1d(static_cast<int>(n), plans->buf, plans->buf,
                                              FFTW_FORWARD, FFTW_ESTIMATE);
                plans->bwd = fftw_plan_dft_1d(static_cast<int>(n), plans->buf, plans->buf,
                                              FFTW_BACKWARD, FFTW_ESTIMATE);
            } else {
                const int nx = spec.grid.axis(0).count, ny = spec.grid.axis(1).count;
                plans->fwd = fftw_plan_dft_2d(nx, ny, plans->buf, plans->buf,
                                              FFTW_FORWARD, FFTW_ESTIMATE);
                plans->bwd = fftw_plan_dft_2d(nx, ny, plans->buf, plans->buf,
                                              FFTW_BACKWARD, FFTW_ESTIMATE);
            }
        }
        // Kinetic eigenvalues of the same three-/five-point stencil the dense
        // backend exponentiates; the DFT diagonalizes the periodic stencil
        // exactly, so both backends share one discrete Hamiltonian.
        kinetic.resize(n);
        const double hb = spec.hbar, m = spec.mass;
        if (spec.grid.dim() == 1) {
            const double dx = spec.grid.axis(0).spacing();
            for (long j = 0; j < n; ++j) {
                kinetic[j] = hb * (1.0 - std::cos(2.0 * kPi * static_cast<double>(j) / static_cast<double>(n))) / (m * dx * dx);
            }
        } else {
            const long nx = spec.grid.axis(0).count, ny = spec.grid.axis(1).count;
            const double dx = spec.grid.axis(0).spacing(), dy = spec.grid.axis(1).spacing();
            for (long ix = 0; ix < nx; ++ix) {
                const double kx = hb * (1.0 - std::cos(2.0 * kPi * static_cast<double>(ix) / static_cast<double>(nx))) / (m * dx * dx);
                for (long iy = 0; iy < ny; ++iy) {
                    const double ky = hb * (1.0 - std::cos(2.0 * kPi * static_cast<double>(iy) / static_cast<double>(ny))) / (m * dy * dy);
                    kinetic[spec.grid.flat_index(ix, iy)] = kx + ky;
                }
            }
        }
        if (!spec.potential.is_zero()) {
            potential_samples = spec.potential.sample(spec.grid, spec.mass);
        }
        fft = std::move(plans);
    }

    void check_edge_amplitude(const Eigen::VectorXcd& amp) const {
        const double nrm = std::sqrt(amp.squaredNorm() * spec.grid.cell_volume());
        if (nrm < 1e-300) return;
        double worst = 0.0;
        if (spec.grid.dim() == 1) {
            worst = std::max(std::abs(amp[0]), std::abs(amp[amp.size() - 1]));
        } else {
            const long nx = spec.grid.axis(0).count, ny = spec.grid.axis(1).count;
            for (long ix = 0; ix < nx; ++ix) {
                worst = std::max({worst, std::abs(amp[spec.grid.flat_index(ix, 0)]),
                                  std::abs(amp[spec.grid.flat_index(ix, ny - 1)])});
            }
            for (long iy = 0; iy < ny; ++iy) {
                worst = std::max({worst, std::abs(amp[spec.grid.flat_index(0, iy)]),
                                  std::abs(amp[spec.grid.flat_index(nx - 1, iy)])});
            }
        }
        const double rel = worst * std::sqrt(spec.grid.cell_volume()) / nrm;
        if (rel >= 1e-10) {
            throw NumericalError("state amplitude at the box edge (relative " + std::to_string(rel) +
                                 ") violates the wrap-around guard; increase padding_factor");
        }
    }
};

Propagator::Propagator(PropagatorSpec spec) : impl_(std::make_unique<Impl>(std::move(spec))) {}
Propagator::~Propagator() = default;
Propagator::Propagator(Propagator&&) noexcept = default;
Propagator& Propagator::operator=(Propagator&&) noexcept = default;

const PropagatorSpec& Propagator::spec() const { return impl_->spec; }

WaveFunction Propagator::evolve_dense(const WaveFunction& psi, double t) const {
    if (psi.grid() != impl_->spec.grid) {
        throw StructuralError("state grid does not match the propagator grid");
    }
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->ensure_dense();
    if (t == 0.0) return psi;
    const Eigen::MatrixXd& q = *impl_->dense_q;
    const Eigen::VectorXd cr = q.transpose() * psi.amplitudes().real().matrix();
    const Eigen::VectorXd ci = q.transpose() * psi.amplitudes().imag().matrix();
    const long n = cr.size();
    Eigen::VectorXd outr(n), outi(n);
    const double hb = impl_->spec.hbar;
    for (long i = 0; i < n; ++i) {
        const cxd c = cxd(cr[i], ci[i]) * std::polar(1.0, -impl_->dense_lambda[i] * t / hb);
        outr[i] = c.real();
        outi[i] = c.imag();
    }
    Eigen::VectorXcd out(n);
    out.real() = q * outr;
    out.imag() = q * outi;
    return WaveFunction(psi.grid(), std::move(out));
}

WaveFunction Propagator::evolve_spectral(const WaveFunction& psi, double t) const {
    if (psi.grid() != impl_->spec.grid) {
        throw StructuralError("state grid does not match the propagator grid");
    }
    std::lock_guard<std::mutex> lock(impl_->mutex);
    impl_->ensure_spectral();
    if (t == 0.0) return psi;
    impl_->check_edge_amplitude(psi.amplitudes());

    const long n = impl_->fft->n;
    cxd* buf = reinterpret_cast<cxd*>(impl_->fft->buf);
    Eigen::Map<Eigen::ArrayXcd> work(buf, n);
    work = psi.amplitudes().array();

    const bool with_v = !impl_->spec.potential.is_zero();
    const long nsub = with_v
        ? std::max<long>(1, static_cast<long>(std::ceil(std::abs(t) / impl_->spec.dt_max)))
        : 1;
    const double dt = t / static_cast<double>(nsub);
    const double hb = impl_->spec.hbar;

    const Eigen::ArrayXcd kin_phase =
        (cxd(0.0, -dt) * impl_->kinetic.cast<cxd>()).exp();
    const double inv_n = 1.0 / static_cast<double>(n);

    if (!with_v) {
        fftw_execute(impl_->fft->fwd);
        work *= kin_phase;
        fftw_execute(impl_->fft->bwd);
        work *= inv_n;
    } else {
        const Eigen::ArrayXcd v_half =
            (cxd(0.0, -0.5 * dt / hb) * impl_->potential_samples.array().cast<cxd>()).exp();
        const Eigen::ArrayXcd v_full = v_half.square();
        work *= v_half;
        for (long s = 0; s < nsub; ++s) {
            fftw_execute(impl_->fft->fwd);
            work *= kin_phase;
            fftw_execute(impl_->fft->bwd);
            work *= inv_n;
            work *= (s + 1 < nsub) ? v_full : v_half;
        }
    }
    return WaveFunction(psi.grid(), Eigen::VectorXcd(work.matrix()));
}

WaveFunction Propagator::evolve(const WaveFunction& psi, double t, Backend backend) const {
    return backend == Backend::Dense ? evolve_dense(psi, t) : evolve_spectral(psi, t);
}

} // namespace zeno
