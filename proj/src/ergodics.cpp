#include "bdpp/ergodics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <boost/math/distributions/students_t.hpp>

#include "bdpp/errors.hpp"
#include "bdpp/textio.hpp"

namespace bdpp {

SeriesView SeriesView::slice_time(double t0, double t1) const {
    const auto first = std::lower_bound(times.begin(), times.end(), t0);
    const auto last = std::upper_bound(first, times.end(), t1);
    const size_t i = static_cast<size_t>(first - times.begin());
    const size_t count = static_cast<size_t>(last - first);
    return SeriesView{times.subspan(i, count), log_values.subspan(i, count),
                      regimes.subspan(i, count)};
}

SeriesView view(const AuxPath& p) { return {p.times, p.log_value, p.regime}; }
SeriesView view_x(const PathBundle& b) { return {b.times, b.log_x, b.regime}; }
SeriesView view_y(const PathBundle& b) { return {b.times, b.log_y, b.regime}; }
SeriesView view_phi(const PathBundle& b) { return {b.times, b.log_phi, b.regime}; }
SeriesView view_psi(const PathBundle& b) { return {b.times, b.log_psi, b.regime}; }

double student_t_975(int dof) {
    boost::math::students_t_distribution<double> dist(static_cast<double>(std::max(dof, 1)));
    return boost::math::quantile(dist, 0.975);
}

std::vector<double> EmpiricalDistribution::regime_marginal() const {
    std::vector<double> marginal(mass.size(), 0.0);
    for (size_t r = 0; r < mass.size(); ++r)
        for (double m : mass[r]) marginal[r] += m;
    return marginal;
}

TimeAverageEstimate time_average(const SeriesView& path,
                                 const std::function<double(double, int)>& f,
                                 double burn_in, int batches) {
    if (batches < 2) throw InvalidArgument("time_average needs at least 2 batches");
    const auto first =
        std::lower_bound(path.times.begin(), path.times.end(), burn_in);
    const size_t i0 = static_cast<size_t>(first - path.times.begin());
    const size_t n = path.size();
    if (i0 + 1 >= n) throw WindowTooShort("no recorded samples after the burn-in");
    const size_t n_int = n - 1 - i0;
    if (n_int < static_cast<size_t>(batches))
        throw WindowTooShort("window holds fewer intervals than batches");

    // Trapezoid per batch of contiguous intervals; equal counts on a uniform
    // recording grid means equal-time batches.
    const size_t base = n_int / static_cast<size_t>(batches);
    const size_t rem = n_int % static_cast<size_t>(batches);

    std::vector<double> batch_means(static_cast<size_t>(batches), 0.0);
    double total_integral = 0.0;
    double total_length = 0.0;
    size_t i = i0;
    double f_left = f(std::exp(path.log_values[i]), path.regimes[i]);
    for (int b = 0; b < batches; ++b) {
        const size_t count = base + (static_cast<size_t>(b) < rem ? 1 : 0);
        double integral = 0.0;
        double length = 0.0;  // accumulated like the integral, so a constant
                              // integrand averages to itself exactly
        for (size_t s = 0; s < count; ++s, ++i) {
            const double dt_i = path.times[i + 1] - path.times[i];
            const double f_right = f(std::exp(path.log_values[i + 1]), path.regimes[i + 1]);
            integral += 0.5 * (f_left + f_right) * dt_i;
            length += dt_i;
            f_left = f_right;
        }
        batch_means[static_cast<size_t>(b)] = integral / length;
        total_integral += integral;
        total_length += length;
    }

    TimeAverageEstimate est;
    est.value = total_integral / total_length;
    est.batches = batches;
    est.burn_in = burn_in;

    double mean = 0.0;
    for (double m : batch_means) mean += m;
    mean /= static_cast<double>(batches);
    double var = 0.0;
    for (double m : batch_means) var += (m - mean) * (m - mean);
    var /= static_cast<double>(batches - 1);
    est.half_width = student_t_975(batches - 1) * std::sqrt(var / batches);
    return est;
}

namespace {

EmpiricalDistribution histogram(const SeriesView& path, std::vector<double> density_edges) {
    const size_t n = path.size();
    if (n < 2) throw WindowTooShort("histogram needs at least two recorded samples");
    const int bins = static_cast<int>(density_edges.size()) - 1;
    int n_regimes = 0;
    for (int r : path.regimes) n_regimes = std::max(n_regimes, r + 1);

    std::vector<double> log_edges(density_edges.size());
    for (size_t i = 0; i < density_edges.size(); ++i)
        log_edges[i] = std::log(density_edges[i]);

    EmpiricalDistribution dist;
    dist.bin_edges = std::move(density_edges);
    dist.mass.assign(static_cast<size_t>(n_regimes),
                     std::vector<double>(static_cast<size_t>(bins), 0.0));

    double total = 0.0;
    for (size_t i = 0; i + 1 < n; ++i) {
        const double wt = path.times[i + 1] - path.times[i];
        // Out-of-range samples land in the boundary bins, so histograms on
        // shared edges remain comparable.
        const auto it = std::upper_bound(log_edges.begin() + 1, log_edges.end() - 1,
                                         path.log_values[i]);
        const int bin = static_cast<int>(it - log_edges.begin()) - 1;
        dist.mass[static_cast<size_t>(path.regimes[i])][static_cast<size_t>(bin)] += wt;
        total += wt;
    }
    dist.total_time = total;
    for (auto& row : dist.mass)
        for (double& m : row) m /= total;
    return dist;
}

} // namespace

EmpiricalDistribution empirical_stationary(const SeriesView& path, int bins) {
    if (bins < 1) throw InvalidArgument("bins must be >= 1");
    if (path.size() < 2) throw WindowTooShort("histogram needs at least two recorded samples");
    auto [lo_it, hi_it] =
        std::minmax_element(path.log_values.begin(), path.log_values.end());
    double lo = *lo_it, hi = *hi_it;
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    std::vector<double> edges(static_cast<size_t>(bins) + 1);
    for (int i = 0; i <= bins; ++i)
        edges[static_cast<size_t>(i)] = std::exp(lo + (hi - lo) * i / bins);
    return histogram(path, std::move(edges));
}

EmpiricalDistribution empirical_stationary(const SeriesView& path,
                                           const std::vector<double>& bin_edges) {
    if (bin_edges.size() < 2) throw InvalidArgument("need at least two bin edges");
    return histogram(path, bin_edges);
}

SlopeEstimate lyapunov_slope(const SeriesView& path, double t_start, double t_end) {
    const auto first = std::lower_bound(path.times.begin(), path.times.end(), t_start);
    const auto last = std::upper_bound(first, path.times.end(), t_end);
    const size_t i0 = static_cast<size_t>(first - path.times.begin());
    const size_t n = static_cast<size_t>(last - first);
    if (n < 8) throw WindowTooShort("slope window holds fewer than 8 samples");

    double t_mean = 0.0, y_mean = 0.0;
    for (size_t i = 0; i < n; ++i) {
        t_mean += path.times[i0 + i];
        y_mean += path.log_values[i0 + i];
    }
    t_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double tc = path.times[i0 + i] - t_mean;
        sxx += tc * tc;
        sxy += tc * (path.log_values[i0 + i] - y_mean);
    }
    SlopeEstimate est;
    est.slope = sxy / sxx;
    est.t_start = path.times[i0];
    est.t_end = path.times[i0 + n - 1];
    est.endpoint_slope = (path.log_values[i0 + n - 1] - path.log_values[i0]) /
                         (est.t_end - est.t_start);

    std::vector<double> resid(n);
    double ssr = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double tc = path.times[i0 + i] - t_mean;
        resid[i] = path.log_values[i0 + i] - y_mean - est.slope * tc;
        ssr += resid[i] * resid[i];
    }
    const double sigma2 = ssr / static_cast<double>(n - 2);
    if (!(sigma2 > 0.0)) {
        est.half_width = 0.0;
        return est;
    }
    const double se = std::sqrt(sigma2 / sxx);

    // OLS standard errors assume independent residuals; inflate by the
    // batch-means estimate of the integrated autocorrelation.
    const int b_count = std::min<int>(20, static_cast<int>(n / 4));
    double inflation = 1.0;
    int dof = static_cast<int>(n) - 2;
    if (b_count >= 2) {
        const size_t base = n / static_cast<size_t>(b_count);
        const size_t rem = n % static_cast<size_t>(b_count);
        std::vector<double> bm(static_cast<size_t>(b_count), 0.0);
        size_t i = 0;
        for (int b = 0; b < b_count; ++b) {
            const size_t count = base + (static_cast<size_t>(b) < rem ? 1 : 0);
            double s = 0.0;
            for (size_t k = 0; k < count; ++k, ++i) s += resid[i];
            bm[static_cast<size_t>(b)] = s / static_cast<double>(count);
        }
        double mean = 0.0;
        for (double m : bm) mean += m;
        mean /= static_cast<double>(b_count);
        double var_bm = 0.0;
        for (double m : bm) var_bm += (m - mean) * (m - mean);
        var_bm /= static_cast<double>(b_count - 1);
        const double mean_len = static_cast<double>(n) / b_count;
        inflation = std::max(1.0, var_bm * mean_len / sigma2);
        dof = b_count - 1;
    }
    est.half_width = student_t_975(dof) * se * std::sqrt(inflation);
    return est;
}

MomentEstimate ensemble_moment(std::span<const double> log_states, double p) {
    if (!(p > 1.0)) throw InvalidArgument("moment exponent must satisfy p > 1");
    const size_t r = log_states.size();
    if (r < 30) throw TooFewReplicas("ensemble_moment needs at least 30 replicas");
    double mean = 0.0;
    for (double lv : log_states) mean += std::exp(p * lv);
    mean /= static_cast<double>(r);
    double var = 0.0;
    for (double lv : log_states) {
        const double d = std::exp(p * lv) - mean;
        var += d * d;
    }
    var /= static_cast<double>(r - 1);
    return {mean, std::sqrt(var / static_cast<double>(r))};
}

void write_histogram_csv(const EmpiricalDistribution& dist, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << "bin_low,bin_high,regime,mass\n";
    for (size_t r = 0; r < dist.mass.size(); ++r) {
        for (size_t b = 0; b < dist.mass[r].size(); ++b) {
            out << format_g17(dist.bin_edges[b]) << ',' << format_g17(dist.bin_edges[b + 1])
                << ',' << r + 1 << ',' << format_g17(dist.mass[r][b]) << '\n';
        }
    }
    if (!out) throw IoError("failed writing '" + path + "'");
}

double total_variation(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
    if (a.mass.size() != b.mass.size() || a.bin_edges.size() != b.bin_edges.size())
        throw InvalidArgument("total_variation needs histograms with identical layout");
    double tv = 0.0;
    for (size_t r = 0; r < a.mass.size(); ++r)
        for (size_t i = 0; i < a.mass[r].size(); ++i)
            tv += std::abs(a.mass[r][i] - b.mass[r][i]);
    return 0.5 * tv;
}

} // namespace bdpp
