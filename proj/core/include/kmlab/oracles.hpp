// Independent reference computations: an RK4 integrator for the space-free
// SIR reduction, a Strang-splitting PDE integrator (exact spectral heat step,
// RK4 reaction step), and open-rule adaptive quadrature for singular
// integrands.
//
// The splitting solver deliberately shares only the spectral primitives with
// the Picard path; it uses a different time-discretization family.

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "kmlab/dynamics.hpp"

namespace kmlab {

class QuadratureError : public std::runtime_error {
  public:
    explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

class ReactionOverflowError : public std::runtime_error {
  public:
    explicit ReactionOverflowError(const std::string& what) : std::runtime_error(what) {}
};

struct OdeTrajectory {
    std::vector<double> times;
    std::vector<std::array<double, 2>> uv;  // (u, v) per time point
};

// Classical RK4 for u' = -uv, v' = uv + sigma*mu*v with sigma per mu_sign.
OdeTrajectory rk4_sir(double u0, double v0, double mu, MuSign mu_sign, double T, double dt);

// Strang splitting: half reaction step (RK4), full exact heat step, half
// reaction step.  Second order in dt.  Throws ReactionOverflowError when a
// field magnitude exceeds 1e6.
Trajectory splitting_solve(const RealField& phi, const RealField& psi, const KmParams& params,
                           double T, double dt);

// Globally adaptive Gauss-Legendre quadrature on (a, b).  All nodes are
// interior, so integrable endpoint singularities are admissible.  Returns a
// value within `tol` (absolute); throws QuadratureError if the subdivision
// budget is exhausted first.
double adaptive_quadrature(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_intervals = 200000);

}  // namespace kmlab
