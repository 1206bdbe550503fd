#include "kmlab/spaces.hpp"

#include <algorithm>
#include <cmath>

#include "kmlab/spectral.hpp"

namespace kmlab {

double lp_norm(const RealField& f, double p) {
    f.validate();
    if (p == kPInf) {
        double m = 0.0;
        for (double v : f.samples) m = std::max(m, std::abs(v));
        return m;
    }
    if (p != 1.0 && p != 2.0 && p != 4.0)
        throw std::invalid_argument("lp_norm: p must be one of {1, 2, 4, inf}");
    const double dx = f.grid.dx();
    double sum = 0.0;
    if (p == 1.0) {
        for (double v : f.samples) sum += std::abs(v);
    } else if (p == 2.0) {
        for (double v : f.samples) sum += v * v;
    } else {
        for (double v : f.samples) sum += v * v * v * v;
    }
    return std::pow(sum * dx, 1.0 / p);
}

double sobolev_norm(const RealField& f, const SobolevIndex& idx) {
    const SpectralField F = forward_transform(f);
    const double two_l = 2.0 * f.grid.half_length;
    double sum = 0.0;
    for (int k = F.min_wavenumber(); k <= F.max_wavenumber(); ++k) {
        const double w = (k == 0) ? (idx.s == 0.0 ? 1.0 : 0.0)
                                  : std::pow(std::abs(F.grid.xi(k)), 2.0 * idx.s);
        sum += w * std::norm(F.at(k));
    }
    return std::sqrt(two_l * sum);
}

void FieldTrajectory::validate() const {
    if (times.size() < 2 || times.size() != slices.size())
        throw std::invalid_argument("FieldTrajectory: need >= 2 slices with matching times");
    if (times.front() != 0.0)
        throw std::invalid_argument("FieldTrajectory: first slice must be at t = 0");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("FieldTrajectory: times must be strictly increasing");
}

XsNormReport xs_norm(const FieldTrajectory& traj, const SobolevIndex& idx) {
    traj.validate();
    XsNormReport r;
    for (size_t i = 0; i < traj.slices.size(); ++i) {
        r.sobolev_sup = std::max(r.sobolev_sup, sobolev_norm(traj.slices[i], idx));
        if (traj.times[i] > 0.0) {
            const double w = std::pow(traj.times[i], idx.alpha) * lp_norm(traj.slices[i], 4.0);
            r.weighted_l4_sup = std::max(r.weighted_l4_sup, w);
        }
    }
    r.total = r.sobolev_sup + r.weighted_l4_sup;
    return r;
}

double pair_norm(const XsNormReport& report_u, const XsNormReport& report_v) {
    return report_u.total + report_v.total;
}

}  // namespace kmlab
