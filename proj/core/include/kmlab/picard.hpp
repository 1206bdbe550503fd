// Fixed-point machinery: the smallness/horizon gate, Picard iteration of the
// Duhamel map from the zero trajectory, and contraction / Lipschitz probes
// that measure the operator's behaviour on seeded ensembles.

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "kmlab/dynamics.hpp"

namespace kmlab {

struct PicardDiagnostics {
    int iterations = 0;
    std::vector<double> successive_diffs;  // ||w_{k+1} - w_k||_{X^s x X^s}
    double rate_estimate = 0.0;            // geometric mean of consecutive diff ratios
    bool converged = false;
};

class SolverError : public std::runtime_error {
  public:
    explicit SolverError(const std::string& what, PicardDiagnostics diag = {})
        : std::runtime_error(what), diagnostics(std::move(diag)) {}

    PicardDiagnostics diagnostics;
};

// Empirical gate constants; rho = 1/(3 c_b), data threshold = 1/(18 c_l c_b),
// horizon bound = 1/(6 mu) (infinite when mu = 0).
struct WellPosednessGate {
    double c_ell_hat = 1.0;
    double c_b_hat = 1.0;
    double mu = 0.0;

    WellPosednessGate() = default;
    WellPosednessGate(double c_ell, double c_b, double mu_) : c_ell_hat(c_ell), c_b_hat(c_b), mu(mu_) {
        if (!(c_ell_hat > 0.0) || !(c_b_hat > 0.0) || !(mu >= 0.0))
            throw std::invalid_argument("WellPosednessGate: constants must be positive");
    }

    double rho() const { return 1.0 / (3.0 * c_b_hat); }
    double data_threshold() const { return 1.0 / (18.0 * c_ell_hat * c_b_hat); }
    double horizon_bound() const {
        return mu > 0.0 ? 1.0 / (6.0 * mu) : std::numeric_limits<double>::infinity();
    }
};

struct SmallnessDecision {
    double data_norm = 0.0;
    double data_threshold = 0.0;
    double horizon = 0.0;
    double horizon_bound = 0.0;
    bool admitted = false;
};

SmallnessDecision smallness_check(const RealField& phi, const RealField& psi,
                                  const SobolevIndex& idx, const WellPosednessGate& gate,
                                  double horizon);

struct PicardResult {
    Trajectory trajectory;
    PicardDiagnostics diagnostics;
};

// Iterates w_{k+1} = T(w_k) from the zero trajectory until the X^s x X^s
// difference of successive iterates falls below tol.  With a gate supplied,
// tol is relative to rho and an iterate norm above 10*rho signals divergence.
// Throws SolverError on divergence or when max_iter is reached.
PicardResult picard_solve(const RealField& phi, const RealField& psi, const KmParams& params,
                          const SobolevIndex& idx, double T, int n_t, double tol = 1e-10,
                          int max_iter = 50,
                          const std::optional<WellPosednessGate>& gate = std::nullopt);

struct ContractionProbe {
    std::vector<double> ratios;  // ||T(w1)-T(w2)|| / ||w1-w2|| per pair
    double max_ratio = 0.0;
    double theoretical_factor = 0.0;  // 2 rho C_b + 2 mu T at the gate constants
};

// Draws seeded pairs of trajectories inside the ball of radius rho and
// measures the Duhamel map's contraction ratio on each.  Data must be
// admitted by smallness_check.
ContractionProbe contraction_probe(const RealField& phi, const RealField& psi,
                                   const KmParams& params, const SobolevIndex& idx, double T,
                                   int n_t, const WellPosednessGate& gate, std::uint64_t seed,
                                   int n_pairs);

struct LipschitzProbe {
    std::vector<double> ratios;  // solution-difference / data-difference norms
    double max_ratio = 0.0;
    double contraction_factor = 0.0;  // max measured contraction factor C
    double bound = 0.0;               // C_ell / (1 - C)
};

// Solves the system for seeded admitted data pairs and measures the solution
// map's Lipschitz ratios against the Theorem 1.1 bound C_ell/(1 - C).
LipschitzProbe lipschitz_probe(const KmParams& params, const SobolevIndex& idx, double T, int n_t,
                               const WellPosednessGate& gate, std::uint64_t seed, int n_pairs);

}  // namespace kmlab
