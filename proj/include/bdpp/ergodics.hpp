#pragma once

#include <functional>
#include <span>
#include <vector>

#include "bdpp/integrator.hpp"

namespace bdpp {

// Read-only view of one recorded (time, log-density, regime) series.
struct SeriesView {
    std::span<const double> times;
    std::span<const double> log_values;
    std::span<const int> regimes;

    std::size_t size() const { return times.size(); }

    // Restriction to recorded times in [t0, t1].
    SeriesView slice_time(double t0, double t1) const;
};

SeriesView view(const AuxPath& path);
SeriesView view_x(const PathBundle& b);
SeriesView view_y(const PathBundle& b);
SeriesView view_phi(const PathBundle& b);
SeriesView view_psi(const PathBundle& b);

struct TimeAverageEstimate {
    double value = 0.0;
    double half_width = 0.0;  // 97.5% t-quantile x batch-means standard error
    int batches = 0;
    double burn_in = 0.0;
};

// Occupation-time histogram over log-spaced density bins x regime.
struct EmpiricalDistribution {
    std::vector<double> bin_edges;        // densities, increasing, bins+1 entries
    std::vector<std::vector<double>> mass;  // [regime][bin], sums to 1
    double total_time = 0.0;

    int num_regimes() const { return static_cast<int>(mass.size()); }
    int num_bins() const { return static_cast<int>(bin_edges.size()) - 1; }
    std::vector<double> regime_marginal() const;
};

struct SlopeEstimate {
    double slope = 0.0;        // least-squares slope of log-density vs time
    double half_width = 0.0;   // regression error, batch-means inflated
    double endpoint_slope = 0.0;  // (log s(t_end) - log s(t_start)) / window
    double t_start = 0.0;
    double t_end = 0.0;
};

// Trapezoidal time average of f(density, regime) over (burn_in, horizon],
// half-width from batch means over `batches` equal batches.
TimeAverageEstimate time_average(const SeriesView& path,
                                 const std::function<double(double, int)>& f,
                                 double burn_in, int batches);

// Histogram of the view over `bins` log-spaced bins spanning the observed
// range (or explicit density bin edges). Meaningful as a stationary-law
// estimate only when the sampled process is positive recurrent; that is the
// caller's responsibility and is not enforced here.
EmpiricalDistribution empirical_stationary(const SeriesView& path, int bins);
EmpiricalDistribution empirical_stationary(const SeriesView& path,
                                           const std::vector<double>& bin_edges);

// CSV export with columns bin_low, bin_high, regime, mass (header included,
// regimes 1-based, 17 significant digits).
void write_histogram_csv(const EmpiricalDistribution& dist, const std::string& path);

SlopeEstimate lyapunov_slope(const SeriesView& path, double t_start, double t_end);

struct MomentEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

// Sample mean of exp(p * log_state) over >= 30 replicas at a common time.
MomentEstimate ensemble_moment(std::span<const double> log_states, double p);

// Total-variation distance between two mass vectors of equal layout.
double total_variation(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

// 97.5% two-sided Student-t quantile used by the batch-means half-widths.
double student_t_975(int dof);

} // namespace bdpp
