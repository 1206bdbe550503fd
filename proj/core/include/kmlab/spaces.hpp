// Norms: discrete L^p, homogeneous Sobolev H^s via the Riesz multiplier, and
// the time-weighted X^s norm
//
//   ||u||_{X^s} = sup_t ||u||_{H^s} + sup_{t>0} t^alpha ||u||_{L^4},
//   alpha = 1/2 - s/4.

#pragma once

#include <limits>
#include <vector>

#include "kmlab/grid.hpp"

namespace kmlab {

struct SobolevIndex {
    double s = 0.0;
    double alpha = 0.5;  // always 1/2 - s/4

    SobolevIndex() = default;
    explicit SobolevIndex(double s_) : s(s_), alpha(0.5 - s_ / 4.0) {
        if (!(s >= 0.0 && s < 2.0))
            throw std::invalid_argument("SobolevIndex: s must lie in [0, 2)");
    }
};

inline constexpr double kPInf = std::numeric_limits<double>::infinity();

// (sum |f(x_j)|^p dx)^{1/p} for p in {1, 2, 4}; max_j |f(x_j)| for p = inf.
double lp_norm(const RealField& f, double p);

// || |xi|^s f^hat ||_{L^2} under Parseval weighting; equals lp_norm(f, 2)
// exactly at s = 0 (0^0 := 1 keeps the zero mode).
double sobolev_norm(const RealField& f, const SobolevIndex& idx);

struct XsNormReport {
    double sobolev_sup = 0.0;
    double weighted_l4_sup = 0.0;
    double total = 0.0;
};

// One scalar field per time slice on a uniform grid starting at t = 0.
struct FieldTrajectory {
    std::vector<double> times;
    std::vector<RealField> slices;

    void validate() const;
};

// The t = 0 slice contributes to the Sobolev sup only; the weighted sup runs
// over t > 0 (the limit clause of C^alpha_0 sends its contribution to zero).
XsNormReport xs_norm(const FieldTrajectory& traj, const SobolevIndex& idx);

double pair_norm(const XsNormReport& report_u, const XsNormReport& report_v);

}  // namespace kmlab
