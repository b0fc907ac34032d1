#include "sweep/scenario.hpp"

#include <stdexcept>

#include "sweep/critical_speeds.hpp"

namespace sweep {

Scenario validate_scenario(const Scenario& s) {
    if (!(s.R0 > 0.0)) throw std::invalid_argument("R0 must be positive");
    if (!(s.r > 0.0)) throw std::invalid_argument("r must be positive");
    if (!(s.VT > 0.0)) throw std::invalid_argument("VT must be positive");
    if (s.R0 < 2.0 * s.r)
        throw std::invalid_argument(
            "sensor does not fit: R0 must be at least 2r so the sensor starts "
            "inside the region");
    return s;
}

double resolve_speed(const Scenario& s, const SpeedSpec& spec) {
    if (spec.mode == SpeedSpec::Mode::Absolute) {
        if (!(spec.value > s.VT))
            throw std::invalid_argument("sweeper speed must exceed evader speed VT");
        return spec.value;
    }
    if (!(spec.value > 0.0))
        throw std::invalid_argument("speed increment above critical must be positive");
    double critical = 0.0;
    switch (spec.protocol) {
        case ProtocolKind::DriftingSpiral:
            critical = drifting_spiral_critical_speed(s);
            break;
        case ProtocolKind::ImprovedSpiral: {
            NewtonReport report = improved_spiral_critical_speed(s);
            if (!report.converged)
                throw std::runtime_error("critical-speed solve did not converge");
            critical = report.root;
            break;
        }
        case ProtocolKind::CircularBaseline:
            critical = circular_critical_speed(s);
            break;
    }
    return critical + spec.value;
}

}  // namespace sweep
