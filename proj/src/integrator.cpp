#include "bdpp/integrator.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "bdpp/errors.hpp"
#include "bdpp/rng.hpp"
#include "bdpp/textio.hpp"

namespace bdpp {

namespace {

void check_grid(const GridSpec& grid) {
    if (!(grid.dt > 0.0)) throw InvalidArgument("grid dt must be positive");
    if (!(grid.horizon >= grid.dt)) throw InvalidArgument("grid horizon must be >= dt");
    if (grid.record_stride < 1) throw InvalidArgument("record_stride must be >= 1");
}

// Step-size cap for a dominating process: the one-step log-space map
// z -> z + (.. - b e^z) h is order-preserving below e^z = 1/(b h), and we keep
// a factor-2 margin so the contraction never degenerates to zero.
double log_cap(double max_b, double dt) {
    if (max_b <= 0.0) return std::numeric_limits<double>::infinity();
    return std::log(0.5 / (dt * max_b));
}

struct CoreResult {
    PathBundle bundle;  // series for inactive processes stay empty
};

// One recursion serves simulate_bundle and both auxiliaries, so that with the
// same (seed, path_id) the phi / psi series agree bit for bit between calls.
CoreResult simulate_core(const Scenario& s, const GridSpec& grid, std::uint64_t seed,
                         std::uint32_t path_id, bool with_xy, bool with_phi,
                         bool with_psi) {
    check_grid(grid);
    const std::int64_t n_steps = grid.num_steps();
    const double dt = grid.dt;
    const double horizon = static_cast<double>(n_steps) * dt;

    const SwitchingPath switching =
        sample_switching_path(s.generator, s.initial_regime, horizon, seed, path_id);

    double max_b1 = 0.0, max_b2 = 0.0;
    for (const auto& r : s.regimes) {
        max_b1 = std::max(max_b1, r.b1);
        max_b2 = std::max(max_b2, r.b2);
    }
    const double phi_cap = log_cap(max_b1, dt);
    const double psi_cap = log_cap(max_b2, dt);

    const double rho = s.rho;
    const double rho_perp = std::sqrt(1.0 - rho * rho);

    double u = std::log(s.x0);  // log X
    double v = std::log(s.y0);  // log Y
    double z = u;               // log phi
    double w = v;               // log psi

    CoreResult out;
    PathBundle& b = out.bundle;
    b.seed = seed;
    b.path_id = path_id;
    b.grid = grid;

    const std::int64_t n_records = 2 + n_steps / grid.record_stride;
    b.times.reserve(static_cast<size_t>(n_records));
    b.regime.reserve(static_cast<size_t>(n_records));
    if (with_xy) {
        b.log_x.reserve(static_cast<size_t>(n_records));
        b.log_y.reserve(static_cast<size_t>(n_records));
    }
    if (with_phi) b.log_phi.reserve(static_cast<size_t>(n_records));
    if (with_psi) b.log_psi.reserve(static_cast<size_t>(n_records));

    int regime_index = s.initial_regime;
    size_t next_jump_pos = 0;
    auto next_jump_time = [&]() {
        return next_jump_pos < switching.jump_times.size()
                   ? switching.jump_times[next_jump_pos]
                   : std::numeric_limits<double>::infinity();
    };

    auto record = [&](double t) {
        b.times.push_back(t);
        b.regime.push_back(regime_index);
        if (with_xy) {
            b.log_x.push_back(u);
            b.log_y.push_back(v);
        }
        if (with_phi) b.log_phi.push_back(z);
        if (with_psi) b.log_psi.push_back(w);
    };
    record(0.0);

    for (std::int64_t k = 0; k < n_steps; ++k) {
        const double t1 = static_cast<double>(k + 1) * dt;
        double t_cur = static_cast<double>(k) * dt;
        std::uint32_t sub = 0;

        auto advance = [&](double h) {
            const RegimeParameterSet& p = s.regimes[static_cast<size_t>(regime_index)];
            if (with_phi && z > phi_cap)
                throw StepTooLarge("phi exceeded the order-preservation cap at t=" +
                                       format_g17(t_cur) + "; reduce dt",
                                   0.25 * std::exp(-z) / std::max(max_b1, 1e-300));
            if (with_psi && w > psi_cap)
                throw StepTooLarge("psi exceeded the order-preservation cap at t=" +
                                       format_g17(t_cur) + "; reduce dt",
                                   0.25 * std::exp(-w) / std::max(max_b2, 1e-300));

            const auto [z1, z2] = normal_pair(seed, path_id, StreamKind::kBrownian,
                                              static_cast<std::uint32_t>(k), sub);
            ++sub;
            const double sqrt_h = std::sqrt(h);
            const double dw1 = sqrt_h * z1;
            const double dw2 = sqrt_h * (rho * z1 + rho_perp * z2);

            if (with_xy) {
                const double nu = u + log_drift_x(u, v, p) * h + p.alpha * dw1;
                const double nv = v + log_drift_y(u, v, p) * h + p.beta * dw2;
                u = nu;
                v = nv;
            }
            if (with_phi) z = z + log_drift_phi(z, p) * h + p.alpha * dw1;
            if (with_psi) w = w + log_drift_psi(w, p) * h + p.beta * dw2;

            if ((with_xy && (!std::isfinite(u) || !std::isfinite(v))) ||
                (with_phi && !std::isfinite(z)) || (with_psi && !std::isfinite(w)))
                throw NonFiniteState("non-finite log state at t=" + format_g17(t_cur) +
                                     "; dt is far too large for this scenario");
            if (with_xy && with_phi && u > z) ++b.domination_violations;
            if (with_xy && with_psi && v > w) ++b.domination_violations;
        };

        while (next_jump_time() < t1) {
            const double tj = next_jump_time();
            const double h = tj - t_cur;
            if (h > 0.0) advance(h);
            t_cur = tj;
            ++next_jump_pos;
            regime_index = switching.states[next_jump_pos];
        }
        if (t1 > t_cur) advance(t1 - t_cur);
        while (next_jump_time() <= t1) {  // jump landing exactly on a grid point
            ++next_jump_pos;
            regime_index = switching.states[next_jump_pos];
        }

        if ((k + 1) % grid.record_stride == 0 || k + 1 == n_steps) record(t1);
    }
    return out;
}

} // namespace

PathBundle simulate_bundle(const Scenario& s, const GridSpec& grid, std::uint64_t seed,
                           std::uint32_t path_id) {
    return simulate_core(s, grid, seed, path_id, true, true, true).bundle;
}

AuxPath simulate_auxiliary(const Scenario& s, Auxiliary which, const GridSpec& grid,
                           std::uint64_t seed, std::uint32_t path_id) {
    const bool phi = which == Auxiliary::kPhi;
    CoreResult core = simulate_core(s, grid, seed, path_id, false, phi, !phi);
    AuxPath path;
    path.times = std::move(core.bundle.times);
    path.log_value = phi ? std::move(core.bundle.log_phi) : std::move(core.bundle.log_psi);
    path.regime = std::move(core.bundle.regime);
    path.seed = seed;
    path.path_id = path_id;
    path.grid = grid;
    path.which = which;
    return path;
}

void write_bundle_csv(const PathBundle& bundle, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "time,regime,logX,logY,logPhi,logPsi\n";
    for (size_t i = 0; i < bundle.times.size(); ++i) {
        out << format_g17(bundle.times[i]) << ',' << bundle.regime[i] + 1 << ','
            << format_g17(bundle.log_x[i]) << ',' << format_g17(bundle.log_y[i]) << ','
            << format_g17(bundle.log_phi[i]) << ',' << format_g17(bundle.log_psi[i]) << '\n';
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace bdpp
