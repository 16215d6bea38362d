#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bdpp/ctmc.hpp"
#include "bdpp/model.hpp"
#include "bdpp/rng.hpp"

namespace testsupport {

// Deterministic scalar draws for building randomized fixtures, on a counter
// partition (kind = 100) no library stream uses.
class Draw {
public:
    explicit Draw(std::uint64_t seed, std::uint32_t stream = 0)
        : u_(seed, stream, 100u) {}
    double uniform(double lo, double hi) { return lo + (hi - lo) * u_.next(); }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(u_.next() * (hi - lo + 1));
    }
private:
    bdpp::UniformStream u_;
};

inline bdpp::RegimeParameterSet unit_regime() {
    bdpp::RegimeParameterSet r;
    r.a1 = r.b1 = r.c1 = r.a2 = r.b2 = r.c2 = r.m1 = r.m2 = r.m3 = 1.0;
    r.alpha = r.beta = 1.0;
    return r;
}

inline bdpp::Scenario single_regime_scenario(const bdpp::RegimeParameterSet& r,
                                             double x0 = 1.0, double y0 = 1.0) {
    bdpp::Scenario s;
    s.regimes = {r};
    s.generator = bdpp::GeneratorMatrix::from_rows({{0.0}});
    s.x0 = x0;
    s.y0 = y0;
    return s;
}

// The two-regime motif: one regime fatal for the prey, the other viable,
// symmetric switching.
inline bdpp::Scenario rainy_dry_scenario() {
    bdpp::RegimeParameterSet rainy;
    rainy.a1 = 1.0; rainy.b1 = 1.0; rainy.c1 = 0.5;
    rainy.a2 = 1.0; rainy.b2 = 0.5; rainy.c2 = 0.5;
    rainy.m1 = 1.0; rainy.m2 = 1.0; rainy.m3 = 1.0;
    rainy.alpha = 0.5; rainy.beta = 0.2;
    bdpp::RegimeParameterSet dry = rainy;
    dry.a1 = 0.2; dry.alpha = 1.0;
    bdpp::Scenario s;
    s.regimes = {rainy, dry};
    s.generator = bdpp::GeneratorMatrix::from_rows({{-1.0, 1.0}, {1.0, -1.0}});
    s.x0 = 0.5;
    s.y0 = 0.5;
    return s;
}

inline bdpp::GeneratorMatrix random_irreducible_generator(Draw& draw, int n) {
    bdpp::GeneratorMatrix g(n);
    if (n == 1) return g;
    for (int i = 0; i < n; ++i) {
        double off = 0.0;
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            // a ring of guaranteed rates keeps the chain irreducible even when
            // the remaining entries draw near zero or are switched off
            const bool ring = (j == (i + 1) % n);
            double rate = draw.uniform(0.05, 2.0);
            if (!ring && draw.uniform(0.0, 1.0) < 0.3) rate = 0.0;
            g.at(i, j) = rate;
            off += rate;
        }
        g.at(i, i) = -off;
    }
    return g;
}

inline bdpp::Scenario random_scenario(Draw& draw, int max_regimes = 3) {
    const int n = draw.uniform_int(1, max_regimes);
    bdpp::Scenario s;
    for (int i = 0; i < n; ++i) {
        bdpp::RegimeParameterSet r;
        r.a1 = draw.uniform(0.2, 1.5);
        r.b1 = draw.uniform(0.3, 1.5);
        r.c1 = draw.uniform(0.1, 1.0);
        r.a2 = draw.uniform(0.1, 0.8);
        r.b2 = draw.uniform(0.3, 1.5);
        r.c2 = draw.uniform(0.2, 2.0);
        r.m1 = draw.uniform(0.5, 2.0);
        r.m2 = draw.uniform(0.5, 1.5);
        r.m3 = draw.uniform(0.5, 1.5);
        r.alpha = draw.uniform(0.1, 0.8);
        r.beta = draw.uniform(0.1, 0.8);
        s.regimes.push_back(r);
    }
    s.generator = random_irreducible_generator(draw, n);
    s.x0 = draw.uniform(0.2, 2.0);
    s.y0 = draw.uniform(0.2, 2.0);
    s.initial_regime = draw.uniform_int(0, n - 1);
    return s;
}

// Independent stationary-law oracle: Gauss-Jordan with partial pivoting on
// Q^T with the last equation replaced by sum(mu) = 1. Deliberately a
// different algorithm from the library's least-squares route.
inline std::vector<double> stationary_oracle(const bdpp::GeneratorMatrix& g) {
    const int n = g.n;
    std::vector<std::vector<double>> a(static_cast<size_t>(n),
                                       std::vector<double>(static_cast<size_t>(n) + 1, 0.0));
    for (int i = 0; i < n - 1; ++i) {
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = g.at(j, i);
        a[static_cast<size_t>(i)][static_cast<size_t>(n)] = 0.0;
    }
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(n - 1)][static_cast<size_t>(j)] = 1.0;
    a[static_cast<size_t>(n - 1)][static_cast<size_t>(n)] = 1.0;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int row = col + 1; row < n; ++row)
            if (std::abs(a[static_cast<size_t>(row)][static_cast<size_t>(col)]) >
                std::abs(a[static_cast<size_t>(pivot)][static_cast<size_t>(col)]))
                pivot = row;
        std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(pivot)]);
        const double d = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
        if (d == 0.0) throw std::runtime_error("oracle: singular system");
        for (int j = col; j <= n; ++j) a[static_cast<size_t>(col)][static_cast<size_t>(j)] /= d;
        for (int row = 0; row < n; ++row) {
            if (row == col) continue;
            const double f = a[static_cast<size_t>(row)][static_cast<size_t>(col)];
            if (f == 0.0) continue;
            for (int j = col; j <= n; ++j)
                a[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                    f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
        }
    }
    std::vector<double> mu(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) mu[static_cast<size_t>(i)] = a[static_cast<size_t>(i)][static_cast<size_t>(n)];
    return mu;
}

// Occupation fraction of each state inside [t0, t1] for one switching path.
inline std::vector<double> occupation_in_window(const bdpp::SwitchingPath& p, int n_states,
                                                double t0, double t1) {
    std::vector<double> time_in(static_cast<size_t>(n_states), 0.0);
    double prev = 0.0;
    int state = p.states[0];
    auto add = [&](double a, double b, int st) {
        const double lo = std::max(a, t0), hi = std::min(b, t1);
        if (hi > lo) time_in[static_cast<size_t>(st)] += hi - lo;
    };
    for (size_t j = 0; j < p.jump_times.size(); ++j) {
        add(prev, p.jump_times[j], state);
        prev = p.jump_times[j];
        state = p.states[j + 1];
    }
    add(prev, p.horizon, state);
    for (double& v : time_in) v /= (t1 - t0);
    return time_in;
}

// Batch-means standard errors of per-state occupation fractions.
inline std::vector<double> occupation_batch_se(const bdpp::SwitchingPath& p, int n_states,
                                               int batches) {
    std::vector<std::vector<double>> bm(static_cast<size_t>(batches));
    for (int b = 0; b < batches; ++b)
        bm[static_cast<size_t>(b)] = occupation_in_window(
            p, n_states, p.horizon * b / batches, p.horizon * (b + 1) / batches);
    std::vector<double> se(static_cast<size_t>(n_states), 0.0);
    for (int s = 0; s < n_states; ++s) {
        double mean = 0.0;
        for (int b = 0; b < batches; ++b) mean += bm[static_cast<size_t>(b)][static_cast<size_t>(s)];
        mean /= batches;
        double var = 0.0;
        for (int b = 0; b < batches; ++b) {
            const double d = bm[static_cast<size_t>(b)][static_cast<size_t>(s)] - mean;
            var += d * d;
        }
        var /= (batches - 1);
        se[static_cast<size_t>(s)] = std::sqrt(var / batches);
    }
    return se;
}

// Classic RK4 on the deterministic system in density coordinates; written
// directly from the model equations, independent of the library drifts.
inline void rk4_reference(const bdpp::RegimeParameterSet& r, double& x, double& y,
                          double t_end, double dt) {
    auto fx = [&r](double xs, double ys) {
        return xs * (r.a1 - r.b1 * xs - r.c1 * ys / (r.m1 + r.m2 * xs + r.m3 * ys));
    };
    auto fy = [&r](double xs, double ys) {
        return ys * (-r.a2 - r.b2 * ys + r.c2 * xs / (r.m1 + r.m2 * xs + r.m3 * ys));
    };
    const long long n = std::llround(t_end / dt);
    for (long long k = 0; k < n; ++k) {
        const double k1x = fx(x, y), k1y = fy(x, y);
        const double k2x = fx(x + 0.5 * dt * k1x, y + 0.5 * dt * k1y);
        const double k2y = fy(x + 0.5 * dt * k1x, y + 0.5 * dt * k1y);
        const double k3x = fx(x + 0.5 * dt * k2x, y + 0.5 * dt * k2y);
        const double k3y = fy(x + 0.5 * dt * k2x, y + 0.5 * dt * k2y);
        const double k4x = fx(x + dt * k3x, y + dt * k3y);
        const double k4y = fy(x + dt * k3x, y + dt * k3y);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += dt / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    }
}

// Multiplies every rate-dimension coefficient by kappa (noise intensities by
// sqrt(kappa), generator rates by kappa); density-dimension quantities stay.
inline bdpp::Scenario scale_rates(const bdpp::Scenario& s, double kappa) {
    bdpp::Scenario out = s;
    const double root = std::sqrt(kappa);
    for (auto& r : out.regimes) {
        r.a1 *= kappa; r.b1 *= kappa; r.c1 *= kappa;
        r.a2 *= kappa; r.b2 *= kappa; r.c2 *= kappa;
        r.alpha *= root; r.beta *= root;
    }
    for (double& v : out.generator.q) v *= kappa;
    return out;
}

} // namespace testsupport
