// Discrete Fourier machinery on the periodic grid: transforms, Riesz
// fractional derivatives |xi|^r, the heat semigroup e^{-t xi^2}, dealiasing,
// and seeded random test fields.
//
// All operations are pure; fields are safe to share across threads.

#pragma once

#include <cstdint>
#include <stdexcept>

#include "kmlab/grid.hpp"

namespace kmlab {

class NonRealFieldError : public std::runtime_error {
  public:
    explicit NonRealFieldError(const std::string& what) : std::runtime_error(what) {}
};

SpectralField forward_transform(const RealField& f);

// Throws NonRealFieldError if the imaginary residual of the inverse exceeds
// 1e-12 relative to the real magnitude (broken Hermitian symmetry).
RealField inverse_transform(const SpectralField& F);

// Multiply coefficient k by |xi_k|^r.  The zero mode is kept when r = 0 and
// annihilated otherwise (homogeneous spaces are defined modulo constants).
SpectralField riesz_derivative(const SpectralField& F, double r);

// Multiply coefficient k by e^{-t xi_k^2}; t = 0 is the identity.
SpectralField heat_semigroup(const SpectralField& F, double t);

// Zero all coefficients with |k| > n/3 (2/3 rule for quadratic products).
SpectralField dealias_two_thirds(const SpectralField& F);

// Mean-zero field with spectral support in |k| <= cutoff, coefficients drawn
// from a seeded normal generator and scaled to L^2 norm `amplitude`.  The
// per-mode draws depend only on (seed, k), so refining the grid reproduces
// the same continuum function.
RealField random_band_limited_field(std::uint64_t seed, int cutoff, double amplitude,
                                    const GridSpec& grid);

// height * exp(-(x-center)^2 / (2 width^2)) sampled on the grid.
RealField gaussian_bump(double center, double width, double height, const GridSpec& grid);

// Pointwise helpers.
RealField add(const RealField& a, const RealField& b);
RealField sub(const RealField& a, const RealField& b);
RealField scale(const RealField& f, double c);
RealField pointwise_product(const RealField& a, const RealField& b);

// Deterministic splittable seeding (splitmix64 over a running state).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace kmlab
