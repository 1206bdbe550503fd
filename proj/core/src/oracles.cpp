#include "kmlab/oracles.hpp"

#include <cmath>
#include <queue>

#include "kmlab/spectral.hpp"

namespace kmlab {

namespace {

struct SirRhs {
    double mu;
    double sigma;

    std::array<double, 2> operator()(const std::array<double, 2>& s) const {
        const double uv = s[0] * s[1];
        return {-uv, uv + sigma * mu * s[1]};
    }
};

std::array<double, 2> rk4_step(const SirRhs& rhs, const std::array<double, 2>& s, double h) {
    const auto k1 = rhs(s);
    const auto k2 = rhs({s[0] + 0.5 * h * k1[0], s[1] + 0.5 * h * k1[1]});
    const auto k3 = rhs({s[0] + 0.5 * h * k2[0], s[1] + 0.5 * h * k2[1]});
    const auto k4 = rhs({s[0] + h * k3[0], s[1] + h * k3[1]});
    return {s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])};
}

}  // namespace

OdeTrajectory rk4_sir(double u0, double v0, double mu, MuSign mu_sign, double T, double dt) {
    if (!(T > 0.0) || !(dt > 0.0) || dt > T / 10.0)
        throw std::invalid_argument("rk4_sir: require 0 < dt <= T/10");
    const int n_steps = static_cast<int>(std::lround(T / dt));
    const double h = T / n_steps;
    const SirRhs rhs{mu, mu_term_sign(mu_sign)};

    OdeTrajectory traj;
    traj.times.reserve(static_cast<size_t>(n_steps) + 1);
    traj.uv.reserve(static_cast<size_t>(n_steps) + 1);
    std::array<double, 2> s{u0, v0};
    traj.times.push_back(0.0);
    traj.uv.push_back(s);
    for (int n = 1; n <= n_steps; ++n) {
        s = rk4_step(rhs, s, h);
        traj.times.push_back(T * n / n_steps);
        traj.uv.push_back(s);
    }
    return traj;
}

namespace {

// One RK4 step of the pointwise reaction system u' = -uv, v' = uv + sigma*mu*v.
void reaction_step(RealField& u, RealField& v, double mu, double sigma, double h) {
    const SirRhs rhs{mu, sigma};
    for (size_t j = 0; j < u.samples.size(); ++j) {
        const auto s = rk4_step(rhs, {u.samples[j], v.samples[j]}, h);
        u.samples[j] = s[0];
        v.samples[j] = s[1];
    }
}

void check_overflow(const RealField& u, const RealField& v) {
    for (size_t j = 0; j < u.samples.size(); ++j)
        if (std::abs(u.samples[j]) > 1e6 || std::abs(v.samples[j]) > 1e6)
            throw ReactionOverflowError("splitting_solve: field magnitude exceeded 1e6");
}

}  // namespace

Trajectory splitting_solve(const RealField& phi, const RealField& psi, const KmParams& params,
                           double T, double dt) {
    phi.validate();
    psi.validate();
    params.validate();
    if (!(phi.grid == psi.grid))
        throw std::invalid_argument("splitting_solve: fields live on different grids");
    if (!(T > 0.0) || !(dt > 0.0) || dt > T / 10.0)
        throw std::invalid_argument("splitting_solve: require 0 < dt <= T/10");

    const int n_steps = static_cast<int>(std::lround(T / dt));
    const double h = T / n_steps;
    const double sigma = mu_term_sign(params.mu_sign);

    Trajectory traj;
    traj.params = params;
    traj.idx = SobolevIndex(0.0);
    traj.times.reserve(static_cast<size_t>(n_steps) + 1);
    traj.states.reserve(static_cast<size_t>(n_steps) + 1);
    RealField u = phi, v = psi;
    traj.times.push_back(0.0);
    traj.states.push_back(KmState{u, v});
    for (int n = 1; n <= n_steps; ++n) {
        reaction_step(u, v, params.mu, sigma, 0.5 * h);
        u = inverse_transform(heat_semigroup(forward_transform(u), h));
        v = inverse_transform(heat_semigroup(forward_transform(v), h));
        reaction_step(u, v, params.mu, sigma, 0.5 * h);
        check_overflow(u, v);
        traj.times.push_back(T * n / n_steps);
        traj.states.push_back(KmState{u, v});
    }
    return traj;
}

namespace {

// Gauss-Legendre nodes (nonnegative half) and weights on [-1, 1].
constexpr double kG7Nodes[] = {0.0, 0.4058451513773972, 0.7415311855993945, 0.9491079123427585};
constexpr double kG7Weights[] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892766,
                                 0.1294849661688697};
constexpr double kG15Nodes[] = {0.0,
                                0.2011940939974345,
                                0.3941513470775634,
                                0.5709721726085388,
                                0.7244177313601700,
                                0.8482065834104272,
                                0.9372733924007060,
                                0.9879925180204854};
constexpr double kG15Weights[] = {0.2025782419255613, 0.1984314853271116, 0.1861610000155622,
                                  0.1662692058169939, 0.1395706779261543, 0.1071592204671719,
                                  0.0703660474881081, 0.0307532419961173};

template <size_t N>
double gauss(const std::function<double(double)>& f, double a, double b, const double (&nodes)[N],
             const double (&weights)[N]) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    double sum = weights[0] * f(c);
    for (size_t i = 1; i < N; ++i)
        sum += weights[i] * (f(c - hw * nodes[i]) + f(c + hw * nodes[i]));
    return hw * sum;
}

struct Panel {
    double err;
    double a, b;
    double value;

    bool operator<(const Panel& other) const { return err < other.err; }
};

Panel make_panel(const std::function<double(double)>& f, double a, double b) {
    const double coarse = gauss(f, a, b, kG7Nodes, kG7Weights);
    const double fine = gauss(f, a, b, kG15Nodes, kG15Weights);
    return Panel{std::abs(fine - coarse), a, b, fine};
}

}  // namespace

double adaptive_quadrature(const std::function<double(double)>& f, double a, double b, double tol,
                           int max_intervals) {
    if (!(a < b)) throw std::invalid_argument("adaptive_quadrature: require a < b");
    if (!(tol > 0.0)) throw std::invalid_argument("adaptive_quadrature: require tol > 0");

    std::priority_queue<Panel> panels;
    panels.push(make_panel(f, a, b));
    double total_err = panels.top().err;
    int count = 1;
    while (total_err > tol) {
        if (count >= max_intervals)
            throw QuadratureError("adaptive_quadrature: subdivision budget exhausted, error " +
                                  std::to_string(total_err));
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = make_panel(f, worst.a, mid);
        Panel right = make_panel(f, mid, worst.b);
        total_err += left.err + right.err - worst.err;
        panels.push(left);
        panels.push(right);
        ++count;
    }
    double sum = 0.0;
    while (!panels.empty()) {
        sum += panels.top().value;
        panels.pop();
    }
    return sum;
}

}  // namespace kmlab
