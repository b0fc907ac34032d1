#include "sweep/drifting_spiral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sweep/critical_speeds.hpp"

namespace sweep::drifting {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double lateral_speed(const Scenario& s, double Vs) {
    if (!(Vs > s.VT)) throw std::invalid_argument("sweeper speed must exceed VT");
    return std::sqrt(Vs * Vs - s.VT * s.VT);
}

// Unit direction at sweep angle theta, measured from +y toward +x.
Vec2 ray_dir(double theta) { return {std::sin(theta), std::cos(theta)}; }

void require_above_critical(const Scenario& s, double Vs) {
    const double critical = drifting_spiral_critical_speed(s);
    if (!(Vs > critical * (1.0 + 1e-12)))
        throw std::domain_error("no shrinkage: speed at or below the critical " +
                                std::to_string(critical));
}

}  // namespace

RecurrenceCoeffs recurrence_coeffs(const Scenario& s, double Vs) {
    const double c2 = std::exp(kTwoPi * s.VT / lateral_speed(s, Vs));
    return {-s.r, c2, -s.r * (c2 - 1.0) / s.VT};
}

double time_to_angle(const Scenario& s, double Vs, double Ri, double theta) {
    if (!(Ri > s.r)) throw std::invalid_argument("sweep radius must exceed r");
    if (theta < 0.0) throw std::invalid_argument("angle must be nonnegative");
    const double k = s.VT / lateral_speed(s, Vs);
    return (Ri - s.r) * std::expm1(theta * k) / s.VT;
}

SpiralTrajectorySample trajectory_sample(const Scenario& s, double Vs, double Ri,
                                         double theta) {
    SpiralTrajectorySample out;
    out.theta = theta;
    out.t = time_to_angle(s, Vs, Ri, theta);
    const Vec2 u = ray_dir(theta);
    const double grow = s.VT * out.t;
    out.center_point = (Ri - s.r + grow) * u;
    out.upper_tip = (Ri + grow) * u;
    out.lower_tip = (Ri - 2.0 * s.r + grow) * u;
    return out;
}

Vec2 wavefront_point(const Scenario& s, double Vs, double theta, double psi) {
    const SpiralTrajectorySample at = trajectory_sample(s, Vs, s.R0, theta);
    const double t_full = time_to_angle(s, Vs, s.R0, kTwoPi);
    const double spread = s.VT * (t_full - at.t);
    return at.lower_tip + spread * Vec2{std::sin(psi), std::cos(psi)};
}

SweepStep radius_after_sweep(const Scenario& s, double Vs, double Ri) {
    if (!(Ri > s.r)) throw std::invalid_argument("sweep radius must exceed r");
    const RecurrenceCoeffs c = recurrence_coeffs(s, Vs);
    return {(Ri - s.r) * c.c2, s.r};
}

int iterations_to_contain(const Scenario& s, double Vs) {
    require_above_critical(s, Vs);
    const double c2 = recurrence_coeffs(s, Vs).c2;
    int n = 0;
    double Ri = s.R0;
    while (Ri > 2.0 * s.r) {
        Ri = (Ri - s.r) * c2;
        ++n;
    }
    return n;
}

int closed_form_iterations(const Scenario& s, double Vs) {
    require_above_critical(s, Vs);
    const double c2 = recurrence_coeffs(s, Vs).c2;
    if (s.R0 <= 2.0 * s.r) return 0;
    const double ratio =
        s.r * (2.0 - c2) / (s.R0 * (1.0 - c2) + s.r * c2);
    const double raw = lateral_speed(s, Vs) / (kTwoPi * s.VT) * std::log(ratio);
    return static_cast<int>(std::ceil(raw));
}

double closed_form_containment_radius(const Scenario& s, double Vs, int N) {
    const double c2 = recurrence_coeffs(s, Vs).c2;
    const double fix = -s.r / (1.0 - c2);
    return fix + std::pow(c2, N) * (s.R0 - s.r - fix) + s.r;
}

double closed_form_containment_time(const Scenario& s, double Vs, int N) {
    const double c2 = recurrence_coeffs(s, Vs).c2;
    return N * s.r / s.VT + (std::pow(c2, N) - 1.0) *
                                (s.R0 * (c2 - 1.0) - s.r * c2) /
                                (s.VT * (c2 - 1.0));
}

SweepSchedule schedule(const Scenario& s, double Vs) {
    require_above_critical(s, Vs);
    const RecurrenceCoeffs c = recurrence_coeffs(s, Vs);

    SweepSchedule out;
    double Ri = s.R0;
    int i = 0;
    while (Ri > 2.0 * s.r) {
        SweepIterationRecord rec;
        rec.index = i;
        rec.radius_before = Ri;
        rec.sweep_time = (Ri - s.r) * (c.c2 - 1.0) / s.VT;
        rec.radius_after = (Ri - s.r) * c.c2;
        rec.center_after = {0.0, (i + 1) * s.r};
        out.iterations.push_back(rec);
        out.containment_time += rec.sweep_time;
        Ri = rec.radius_after;
        ++i;
    }
    out.containment_radius = Ri;
    out.iteration_count = i;
    return out;
}

EndGamePlan endgame(const Scenario& s, double Vs, double RN) {
    if (!(RN <= 2.0 * s.r))
        throw std::invalid_argument("end game requires containment radius <= 2r");
    const double c2 = recurrence_coeffs(s, Vs).c2;

    EndGamePlan plan;
    plan.protocol = ProtocolKind::DriftingSpiral;
    // The re-entry gap and the final descent are both closed at the rate
    // Vs + VT because the confinement boundary keeps spreading while the
    // formation moves inward.
    plan.entry_time = (2.0 * s.r - (RN - s.r)) / (Vs + s.VT);
    plan.entry_distance = plan.entry_time * Vs;
    plan.spiral_time = s.r * (c2 - 1.0) / s.VT;
    plan.spread_radius = s.VT * plan.spiral_time;
    plan.descent_time = (s.r - plan.spread_radius) / (Vs + s.VT);
    plan.descent_distance = plan.descent_time * Vs;
    plan.final_radius = plan.spread_radius + s.VT * plan.descent_time;
    plan.t_right = plan.final_radius / (Vs - s.VT);
    plan.t_back = 2.0 * Vs * plan.final_radius / ((Vs - s.VT) * (Vs - s.VT));
    plan.linear_time = plan.t_right + plan.t_back;
    plan.total_time = plan.entry_time + plan.spiral_time + plan.descent_time +
                      plan.linear_time;

    plan.feasible = true;
    if (!last_sweep_feasibility(s)) {
        plan.feasible = false;
        plan.infeasible_reason = "R0/r below the linear-sweep ratio threshold";
    } else if (!(plan.final_radius < s.r) ||
               !(Vs > endgame_speed_floor(s.r, plan.final_radius, s.VT))) {
        plan.feasible = false;
        plan.infeasible_reason = "speed below the end-game floor for R_f";
    }
    return plan;
}

TimeBreakdown total_time(const Scenario& s, double Vs) {
    TimeBreakdown out;
    out.spiral = schedule(s, Vs);
    out.end_game = endgame(s, Vs, out.spiral.containment_radius);
    out.total = out.spiral.containment_time + out.end_game.total_time;
    return out;
}

}  // namespace sweep::drifting
