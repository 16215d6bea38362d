#include "bdpp/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bdpp/errors.hpp"
#include "bdpp/rng.hpp"

namespace bdpp {

GeneratorMatrix GeneratorMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    GeneratorMatrix g(static_cast<int>(rows.size()));
    for (int i = 0; i < g.n; ++i) {
        if (static_cast<int>(rows[i].size()) != g.n) {
            throw DimensionMismatch("generator row " + std::to_string(i + 1) +
                                    " has " + std::to_string(rows[i].size()) +
                                    " entries, expected " + std::to_string(g.n));
        }
        for (int j = 0; j < g.n; ++j) g.at(i, j) = rows[i][j];
    }
    return g;
}

double GeneratorMatrix::max_abs_rate() const {
    double m = 0.0;
    for (double v : q) m = std::max(m, std::abs(v));
    return m;
}

int SwitchingPath::state_at(double t) const {
    const auto it = std::upper_bound(jump_times.begin(), jump_times.end(), t);
    return states[static_cast<size_t>(it - jump_times.begin())];
}

namespace {

// Strong connectivity of the directed graph with an edge i->j iff q_ij > 0.
bool strongly_connected(const GeneratorMatrix& g) {
    const int n = g.n;
    if (n <= 1) return true;
    auto reaches_all = [&](bool transpose) {
        std::vector<char> seen(n, 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int k = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (j == k || seen[j]) continue;
                const double rate = transpose ? g.at(j, k) : g.at(k, j);
                if (rate > 0.0) {
                    seen[j] = 1;
                    ++count;
                    stack.push_back(j);
                }
            }
        }
        return count == n;
    };
    return reaches_all(false) && reaches_all(true);
}

// Symmetric positive definite solve, used on the tiny normal-equations system.
std::vector<double> cholesky_solve(std::vector<double> m, std::vector<double> rhs, int n) {
    for (int k = 0; k < n; ++k) {
        double d = m[static_cast<size_t>(k) * n + k];
        for (int j = 0; j < k; ++j) {
            const double l = m[static_cast<size_t>(k) * n + j];
            d -= l * l;
        }
        if (!(d > 0.0)) throw SolverFailure("stationary law: normal equations not positive definite");
        d = std::sqrt(d);
        m[static_cast<size_t>(k) * n + k] = d;
        for (int i = k + 1; i < n; ++i) {
            double v = m[static_cast<size_t>(i) * n + k];
            for (int j = 0; j < k; ++j)
                v -= m[static_cast<size_t>(i) * n + j] * m[static_cast<size_t>(k) * n + j];
            m[static_cast<size_t>(i) * n + k] = v / d;
        }
    }
    for (int i = 0; i < n; ++i) {  // forward
        double v = rhs[i];
        for (int j = 0; j < i; ++j) v -= m[static_cast<size_t>(i) * n + j] * rhs[j];
        rhs[i] = v / m[static_cast<size_t>(i) * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {  // backward
        double v = rhs[i];
        for (int j = i + 1; j < n; ++j) v -= m[static_cast<size_t>(j) * n + i] * rhs[j];
        rhs[i] = v / m[static_cast<size_t>(i) * n + i];
    }
    return rhs;
}

} // namespace

void check_generator(const GeneratorMatrix& g) {
    const int n = g.n;
    if (n < 1 || static_cast<int>(g.q.size()) != n * n)
        throw InvalidGenerator("generator must be a nonempty square matrix");
    const double max_rate = g.max_abs_rate();
    const double row_tol = 1e-9 * max_rate;
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double v = g.at(i, j);
            if (i != j && v < 0.0) {
                throw NegativeOffDiagonal("q[" + std::to_string(i + 1) + "][" +
                                          std::to_string(j + 1) + "] = " + std::to_string(v) +
                                          " < 0");
            }
            row_sum += v;
        }
        if (std::abs(row_sum) > row_tol) {
            throw RowSumNonzero("row " + std::to_string(i + 1) + " sums to " +
                                std::to_string(row_sum) + " (tolerance " +
                                std::to_string(row_tol) + ")");
        }
    }
    if (!strongly_connected(g))
        throw NotIrreducible("rate graph is not strongly connected");
}

StationaryLaw stationary_law(const GeneratorMatrix& g) {
    check_generator(g);
    const int n = g.n;
    // Least squares on A mu = b with A = [Q^T; 1^T], b = [0; 1]:
    // M = A^T A has M_kl = sum_i q_ki q_li + 1, and A^T b = 1.
    std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            double s = 1.0;
            for (int i = 0; i < n; ++i) s += g.at(k, i) * g.at(l, i);
            m[static_cast<size_t>(k) * n + l] = s;
        }
    }
    std::vector<double> mu = cholesky_solve(std::move(m), std::vector<double>(n, 1.0), n);

    double total = 0.0;
    for (double v : mu) total += v;
    for (double& v : mu) v /= total;

    const double residual_tol = 1e-12 * std::max(g.max_abs_rate(), 1e-300);
    for (int j = 0; j < n; ++j) {
        double r = 0.0;
        for (int i = 0; i < n; ++i) r += mu[i] * g.at(i, j);
        if (std::abs(r) > residual_tol)
            throw SolverFailure("stationary law residual " + std::to_string(r) +
                                " exceeds tolerance");
    }
    for (double v : mu) {
        if (!(v > 0.0)) throw SolverFailure("stationary law has a nonpositive component");
    }
    return StationaryLaw{std::move(mu)};
}

SwitchingPath sample_switching_path(const GeneratorMatrix& g, int initial_state,
                                    double horizon, std::uint64_t seed,
                                    std::uint32_t path_id) {
    if (initial_state < 0 || initial_state >= g.n)
        throw InvalidArgument("initial state out of range");
    if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");

    SwitchingPath path;
    path.horizon = horizon;
    path.num_states = g.n;
    path.states.push_back(initial_state);
    if (g.n == 1) return path;

    UniformStream stream(seed, path_id, StreamKind::kSwitching);
    int state = initial_state;
    double t = 0.0;
    for (;;) {
        const double rate = -g.at(state, state);
        if (!(rate > 0.0)) break;  // absorbing; impossible after check_generator
        t += stream.next_exponential(rate);
        if (t >= horizon) break;
        // Embedded chain: next state l != state with probability q_sl / rate.
        const double u = stream.next() * rate;
        double acc = 0.0;
        int next = -1;
        for (int l = 0; l < g.n; ++l) {
            if (l == state) continue;
            acc += g.at(state, l);
            if (u <= acc) {
                next = l;
                break;
            }
            next = l;  // fp slack: fall through to the last candidate
        }
        path.jump_times.push_back(t);
        path.states.push_back(next);
        state = next;
    }
    return path;
}

std::vector<double> occupation_fractions(const SwitchingPath& path) {
    if (!(path.horizon > 0.0)) throw InvalidArgument("path horizon must be positive");
    const int n = std::max(path.num_states,
                           1 + *std::max_element(path.states.begin(), path.states.end()));
    std::vector<double> time_in(static_cast<size_t>(n), 0.0);
    double prev = 0.0;
    for (size_t j = 0; j < path.jump_times.size(); ++j) {
        time_in[static_cast<size_t>(path.states[j])] += path.jump_times[j] - prev;
        prev = path.jump_times[j];
    }
    time_in[static_cast<size_t>(path.states.back())] += path.horizon - prev;
    for (double& v : time_in) v /= path.horizon;
    return time_in;
}

} // namespace bdpp
