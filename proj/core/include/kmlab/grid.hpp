// Periodic grid and field containers for the spectral solver.
//
// The spatial domain is the torus [-L, L) sampled at n equispaced points
// x_j = -L + j*dx, dx = 2L/n.  Spectral coefficients are indexed by integer
// wavenumbers k in {-n/2, ..., n/2 - 1} with continuous frequency
// xi_k = pi*k/L.  The coefficient normalization is fixed so that a pure mode
// cos(k*pi*x/L) has coefficients 1/2 at wavenumbers +-k.

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kmlab {

struct GridSpec {
    int n_points = 0;
    double half_length = 0.0;

    GridSpec() = default;
    GridSpec(int n, double L) : n_points(n), half_length(L) { validate(); }

    void validate() const {
        if (n_points < 8 || (n_points & (n_points - 1)) != 0)
            throw std::invalid_argument("GridSpec: n_points must be a power of two >= 8");
        if (!(half_length > 0.0) || !std::isfinite(half_length))
            throw std::invalid_argument("GridSpec: half_length must be positive");
    }

    double dx() const { return 2.0 * half_length / n_points; }
    double x(int j) const { return -half_length + j * dx(); }
    // Continuous frequency of integer wavenumber k.
    double xi(int k) const { return M_PI * k / half_length; }

    bool operator==(const GridSpec&) const = default;
};

struct RealField {
    GridSpec grid;
    std::vector<double> samples;

    RealField() = default;
    explicit RealField(const GridSpec& g) : grid(g), samples(g.n_points, 0.0) {}
    RealField(const GridSpec& g, std::vector<double> s) : grid(g), samples(std::move(s)) {
        validate();
    }

    void validate() const {
        grid.validate();
        if (static_cast<int>(samples.size()) != grid.n_points)
            throw std::invalid_argument("RealField: sample count does not match grid");
        for (double v : samples)
            if (!std::isfinite(v))
                throw std::invalid_argument("RealField: non-finite sample");
    }
};

// Complex coefficients stored in wavenumber order k = -n/2, ..., n/2-1
// (index i = k + n/2).
struct SpectralField {
    GridSpec grid;
    std::vector<std::complex<double>> coef;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coef(g.n_points, 0.0) {}

    int min_wavenumber() const { return -grid.n_points / 2; }
    int max_wavenumber() const { return grid.n_points / 2 - 1; }

    std::complex<double>& at(int k) { return coef[static_cast<size_t>(k + grid.n_points / 2)]; }
    const std::complex<double>& at(int k) const {
        return coef[static_cast<size_t>(k + grid.n_points / 2)];
    }
};

}  // namespace kmlab
