#include "bdpp/model.hpp"

#include <cmath>
#include <string>

#include "bdpp/errors.hpp"

namespace bdpp {

Scenario validate_scenario(const Scenario& raw) {
    if (raw.regimes.empty())
        throw DimensionMismatch("scenario needs at least one regime");
    if (raw.generator.n != raw.num_regimes())
        throw DimensionMismatch("generator is " + std::to_string(raw.generator.n) + "x" +
                                std::to_string(raw.generator.n) + " but there are " +
                                std::to_string(raw.num_regimes()) + " regimes");
    for (int r = 0; r < raw.num_regimes(); ++r) {
        for (const auto& field : kCoefficientFields) {
            const double v = raw.regimes[static_cast<size_t>(r)].*(field.member);
            if (!(v > 0.0) || !std::isfinite(v))
                throw NonPositiveParameter(r + 1, field.name);
        }
    }
    if (!(raw.x0 > 0.0) || !std::isfinite(raw.x0) || !(raw.y0 > 0.0) || !std::isfinite(raw.y0))
        throw InvalidInitialCondition("x0 and y0 must be strictly positive");
    if (raw.initial_regime < 0 || raw.initial_regime >= raw.num_regimes())
        throw InvalidInitialCondition("initial regime " +
                                      std::to_string(raw.initial_regime + 1) +
                                      " out of range 1.." + std::to_string(raw.num_regimes()));
    if (!(raw.rho >= -1.0 && raw.rho <= 1.0))
        throw InvalidInitialCondition("noise correlation rho must lie in [-1, 1]");
    check_generator(raw.generator);
    return raw;
}

ParameterExtremes parameter_extremes(const Scenario& s) {
    ParameterExtremes ext{s.regimes.front(), s.regimes.front()};
    for (const auto& regime : s.regimes) {
        for (const auto& field : kCoefficientFields) {
            const double v = regime.*(field.member);
            double& lo = ext.hat.*(field.member);
            double& hi = ext.check.*(field.member);
            if (v < lo) lo = v;
            if (v > hi) hi = v;
        }
    }
    return ext;
}

} // namespace bdpp
