#pragma once

#include <cstdint>
#include <vector>

namespace bdpp {

// Switching-rate matrix of the environment chain. Rows must sum to zero,
// off-diagonal entries are jump rates and must be nonnegative, and the rate
// graph must be strongly connected (irreducible).
struct GeneratorMatrix {
    int n = 0;
    std::vector<double> q;  // row-major n*n

    GeneratorMatrix() = default;
    explicit GeneratorMatrix(int size) : n(size), q(static_cast<size_t>(size) * size, 0.0) {}

    static GeneratorMatrix from_rows(const std::vector<std::vector<double>>& rows);

    double& at(int i, int j) { return q[static_cast<size_t>(i) * n + j]; }
    double at(int i, int j) const { return q[static_cast<size_t>(i) * n + j]; }

    double max_abs_rate() const;
};

struct StationaryLaw {
    std::vector<double> mu;  // strictly positive, sums to 1
};

// One sampled trajectory of the switching chain: piecewise-constant states
// with exact (non-discretized) jump times.
struct SwitchingPath {
    std::vector<double> jump_times;  // strictly increasing, all in (0, horizon)
    std::vector<int> states;         // jump_times.size() + 1 entries; consecutive differ
    double horizon = 0.0;
    int num_states = 0;              // dimension of the generator that produced the path

    // State at time t, cadlag convention (post-jump state at a jump time).
    int state_at(double t) const;
};

// Throws NegativeOffDiagonal / RowSumNonzero / NotIrreducible.
// Row-sum tolerance is 1e-9 * max |q_ij|: scenario files carry finite-precision
// decimals.
void check_generator(const GeneratorMatrix& q);

// Unique stationary law mu of an irreducible conservative generator,
// solved from the augmented system [Q^T; 1^T] mu = [0; 1] in least squares.
// Residual ||mu Q||_inf must come out below 1e-12 * max |q_ij|.
StationaryLaw stationary_law(const GeneratorMatrix& q);

// Exact jump-chain sampling: holding time Exp(q_k), next state l with
// probability q_kl / q_k. Deterministic given (seed, path_id).
SwitchingPath sample_switching_path(const GeneratorMatrix& q, int initial_state,
                                    double horizon, std::uint64_t seed,
                                    std::uint32_t path_id = 0);

// Fraction of [0, horizon] spent in each state; sums to 1.
std::vector<double> occupation_fractions(const SwitchingPath& path);

} // namespace bdpp
