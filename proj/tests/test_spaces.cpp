#include <cmath>
#include <doctest.h>

#include "kmlab/spaces.hpp"
#include "kmlab/spectral.hpp"

using namespace kmlab;

namespace {

const GridSpec g(256, 32.0 * M_PI);
const double L = g.half_length;

RealField cosine_mode(int k) {
    RealField f(g);
    for (int j = 0; j < g.n_points; ++j)
        f.samples[static_cast<size_t>(j)] = std::cos(g.xi(k) * g.x(j));
    return f;
}

}  // namespace

TEST_CASE("Lp norms of the constant field") {
    RealField one(g);
    for (auto& v : one.samples) v = 1.0;
    CHECK(lp_norm(one, 1.0) == doctest::Approx(2.0 * L).epsilon(1e-13));
    CHECK(lp_norm(one, 2.0) == doctest::Approx(std::sqrt(2.0 * L)).epsilon(1e-13));
    CHECK(lp_norm(one, 4.0) == doctest::Approx(std::pow(2.0 * L, 0.25)).epsilon(1e-13));
    CHECK(lp_norm(one, kPInf) == 1.0);
    CHECK_THROWS_AS((void)lp_norm(one, 3.0), std::invalid_argument);
}

TEST_CASE("Sobolev norm at s = 0 coincides with L2, zero mode included") {
    RealField f = random_band_limited_field(5, 20, 1.3, g);
    for (auto& v : f.samples) v += 0.7;  // non-trivial mean
    CHECK(sobolev_norm(f, SobolevIndex(0.0)) == doctest::Approx(lp_norm(f, 2.0)).epsilon(1e-12));
}

TEST_CASE("Sobolev norm of a single mode is |xi|^s times its L2 norm") {
    const int k = 10;
    const RealField f = cosine_mode(k);
    const double l2 = lp_norm(f, 2.0);
    for (double s : {0.0, 0.5, 1.0, 1.9}) {
        CHECK(sobolev_norm(f, SobolevIndex(s)) ==
              doctest::Approx(std::pow(g.xi(k), s) * l2).epsilon(1e-12));
    }
}

TEST_CASE("Sobolev norm annihilates the mean for s > 0") {
    RealField c(g);
    for (auto& v : c.samples) v = 5.0;
    CHECK(sobolev_norm(c, SobolevIndex(1.0)) == 0.0);
    CHECK(sobolev_norm(c, SobolevIndex(0.0)) == doctest::Approx(5.0 * std::sqrt(2.0 * L)));
}

TEST_CASE("SobolevIndex validates its range and fixes alpha") {
    CHECK(SobolevIndex(0.0).alpha == 0.5);
    CHECK(SobolevIndex(1.0).alpha == 0.25);
    CHECK(SobolevIndex(2.0 - 1e-12).alpha > 0.0);
    CHECK_THROWS_AS(SobolevIndex(2.0), std::invalid_argument);
    CHECK_THROWS_AS(SobolevIndex(-0.1), std::invalid_argument);
}

TEST_CASE("X^s norm: sups over the right time ranges") {
    const SobolevIndex idx(1.0);
    const RealField f = cosine_mode(4);

    FieldTrajectory traj;
    traj.times = {0.0, 0.5, 1.0};
    traj.slices = {scale(f, 3.0), scale(f, 1.0), scale(f, 2.0)};

    const XsNormReport r = xs_norm(traj, idx);
    // The Sobolev sup sees the t = 0 slice.
    CHECK(r.sobolev_sup == doctest::Approx(sobolev_norm(scale(f, 3.0), idx)).epsilon(1e-12));
    // The weighted L4 sup runs over t > 0 only.
    const double w1 = std::pow(0.5, idx.alpha) * lp_norm(scale(f, 1.0), 4.0);
    const double w2 = std::pow(1.0, idx.alpha) * lp_norm(scale(f, 2.0), 4.0);
    CHECK(r.weighted_l4_sup == doctest::Approx(std::max(w1, w2)).epsilon(1e-12));
    CHECK(r.total == doctest::Approx(r.sobolev_sup + r.weighted_l4_sup).epsilon(1e-15));
}

TEST_CASE("a huge t = 0 slice does not pollute the weighted sup") {
    const SobolevIndex idx(0.0);
    FieldTrajectory traj;
    traj.times = {0.0, 1.0};
    traj.slices = {gaussian_bump(0.0, 1.0, 1e6, g), gaussian_bump(0.0, 1.0, 1.0, g)};
    const XsNormReport r = xs_norm(traj, idx);
    CHECK(r.weighted_l4_sup == doctest::Approx(lp_norm(traj.slices[1], 4.0)).epsilon(1e-12));
}

TEST_CASE("trajectory validation") {
    FieldTrajectory bad_start;
    bad_start.times = {0.1, 0.2};
    bad_start.slices = {RealField(g), RealField(g)};
    CHECK_THROWS_AS(bad_start.validate(), std::invalid_argument);

    FieldTrajectory not_increasing;
    not_increasing.times = {0.0, 0.2, 0.1};
    not_increasing.slices = {RealField(g), RealField(g), RealField(g)};
    CHECK_THROWS_AS(not_increasing.validate(), std::invalid_argument);
}

TEST_CASE("pair norm adds the component totals") {
    XsNormReport a{1.0, 2.0, 3.0}, b{0.5, 0.25, 0.75};
    CHECK(pair_norm(a, b) == 3.75);
}
