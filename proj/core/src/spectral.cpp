#include "kmlab/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

namespace kmlab {

namespace {

// FFTW's planner is not thread safe; execution of a plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

// Unnormalized c2c DFT, sign = FFTW_FORWARD or FFTW_BACKWARD, in place.
void dft(std::vector<std::complex<double>>& data, int sign) {
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), ptr, ptr, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(plan);
    }
}

}  // namespace

SpectralField forward_transform(const RealField& f) {
    f.validate();
    const int n = f.grid.n_points;
    std::vector<std::complex<double>> buf(f.samples.begin(), f.samples.end());
    dft(buf, FFTW_FORWARD);
    // The DFT index m corresponds to wavenumber k = m (m < n/2) or m - n.
    // The grid offset x_0 = -L contributes the phase (-1)^k.
    SpectralField F(f.grid);
    const double inv_n = 1.0 / n;
    for (int k = F.min_wavenumber(); k <= F.max_wavenumber(); ++k) {
        const int m = k >= 0 ? k : k + n;
        const double phase = (k & 1) ? -1.0 : 1.0;
        F.at(k) = phase * inv_n * buf[static_cast<size_t>(m)];
    }
    // Real input: enforce Hermitian symmetry exactly so that downstream real
    // even multipliers (|xi|^r, heat) cannot amplify the FFT's asymmetric
    // rounding noise into a spurious imaginary part.
    F.at(0) = F.at(0).real();
    F.at(F.min_wavenumber()) = F.at(F.min_wavenumber()).real();
    for (int k = 1; k <= F.max_wavenumber(); ++k) {
        const std::complex<double> sym = 0.5 * (F.at(k) + std::conj(F.at(-k)));
        F.at(k) = sym;
        F.at(-k) = std::conj(sym);
    }
    return F;
}

RealField inverse_transform(const SpectralField& F) {
    const int n = F.grid.n_points;
    std::vector<std::complex<double>> buf(static_cast<size_t>(n));
    for (int k = F.min_wavenumber(); k <= F.max_wavenumber(); ++k) {
        const int m = k >= 0 ? k : k + n;
        const double phase = (k & 1) ? -1.0 : 1.0;
        buf[static_cast<size_t>(m)] = phase * F.at(k);
    }
    dft(buf, FFTW_BACKWARD);

    double max_re = 0.0, max_im = 0.0;
    for (const auto& z : buf) {
        max_re = std::max(max_re, std::abs(z.real()));
        max_im = std::max(max_im, std::abs(z.imag()));
    }
    if (max_im > 1e-12 * std::max(max_re, 1e-300))
        throw NonRealFieldError("inverse_transform: imaginary residual " + std::to_string(max_im) +
                                " exceeds tolerance (field is not Hermitian symmetric)");

    RealField f(F.grid);
    for (int j = 0; j < n; ++j) f.samples[static_cast<size_t>(j)] = buf[static_cast<size_t>(j)].real();
    return f;
}

SpectralField riesz_derivative(const SpectralField& F, double r) {
    if (r < -1.0 || r > 2.0)
        throw std::invalid_argument("riesz_derivative: exponent outside [-1, 2]");
    SpectralField G = F;
    for (int k = G.min_wavenumber(); k <= G.max_wavenumber(); ++k) {
        if (k == 0) {
            if (r != 0.0) G.at(0) = 0.0;  // modulo constants; 0^0 := 1 keeps the mean at r = 0
        } else {
            G.at(k) *= std::pow(std::abs(F.grid.xi(k)), r);
        }
    }
    return G;
}

SpectralField heat_semigroup(const SpectralField& F, double t) {
    if (t < 0.0) throw std::invalid_argument("heat_semigroup: negative time");
    SpectralField G = F;
    for (int k = G.min_wavenumber(); k <= G.max_wavenumber(); ++k) {
        const double xi = F.grid.xi(k);
        G.at(k) *= std::exp(-t * xi * xi);
    }
    return G;
}

SpectralField dealias_two_thirds(const SpectralField& F) {
    SpectralField G = F;
    const int keep = F.grid.n_points / 3;
    for (int k = G.min_wavenumber(); k <= G.max_wavenumber(); ++k)
        if (std::abs(k) > keep) G.at(k) = 0.0;
    return G;
}

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finalizer over the combined state
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

// Box-Muller on explicit 53-bit uniforms; std::normal_distribution is
// implementation defined and would break bitwise reproducibility.
class GaussianDraw {
  public:
    explicit GaussianDraw(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

  private:
    double uniform_open() {
        // in (0, 1]
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace

RealField random_band_limited_field(std::uint64_t seed, int cutoff, double amplitude,
                                    const GridSpec& grid) {
    grid.validate();
    if (cutoff < 1 || cutoff >= grid.n_points / 2)
        throw std::invalid_argument("random_band_limited_field: cutoff must lie in [1, n/2)");
    if (!(amplitude > 0.0))
        throw std::invalid_argument("random_band_limited_field: amplitude must be positive");

    GaussianDraw draw(seed);
    SpectralField F(grid);
    double sum_sq = 0.0;
    for (int k = 1; k <= cutoff; ++k) {
        const std::complex<double> c(0.5 * draw(), 0.5 * draw());
        F.at(k) = c;
        F.at(-k) = std::conj(c);
        sum_sq += 2.0 * std::norm(c);
    }
    // ||f||_{L^2}^2 = 2L * sum_k |c_k|^2 under the mode-amplitude convention.
    const double l2 = std::sqrt(2.0 * grid.half_length * sum_sq);
    const double factor = amplitude / l2;
    for (int k = 1; k <= cutoff; ++k) {
        F.at(k) *= factor;
        F.at(-k) *= factor;
    }
    return inverse_transform(F);
}

RealField gaussian_bump(double center, double width, double height, const GridSpec& grid) {
    grid.validate();
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_bump: width must be positive");
    RealField f(grid);
    for (int j = 0; j < grid.n_points; ++j) {
        const double d = grid.x(j) - center;
        f.samples[static_cast<size_t>(j)] = height * std::exp(-d * d / (2.0 * width * width));
    }
    return f;
}

namespace {
void require_same_grid(const RealField& a, const RealField& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("fields live on different grids");
}
}  // namespace

RealField add(const RealField& a, const RealField& b) {
    require_same_grid(a, b);
    RealField r(a.grid);
    for (size_t j = 0; j < r.samples.size(); ++j) r.samples[j] = a.samples[j] + b.samples[j];
    return r;
}

RealField sub(const RealField& a, const RealField& b) {
    require_same_grid(a, b);
    RealField r(a.grid);
    for (size_t j = 0; j < r.samples.size(); ++j) r.samples[j] = a.samples[j] - b.samples[j];
    return r;
}

RealField scale(const RealField& f, double c) {
    RealField r(f.grid);
    for (size_t j = 0; j < r.samples.size(); ++j) r.samples[j] = c * f.samples[j];
    return r;
}

RealField pointwise_product(const RealField& a, const RealField& b) {
    require_same_grid(a, b);
    RealField r(a.grid);
    for (size_t j = 0; j < r.samples.size(); ++j) r.samples[j] = a.samples[j] * b.samples[j];
    return r;
}

}  // namespace kmlab
