#include "sweep/improved_spiral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sweep/critical_speeds.hpp"
#include "sweep/drifting_spiral.hpp"

namespace sweep::improved {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double lateral_speed(const Scenario& s, double Vs) {
    if (!(Vs > s.VT)) throw std::invalid_argument("sweeper speed must exceed VT");
    return std::sqrt(Vs * Vs - s.VT * s.VT);
}

}  // namespace

double beta_angle(const Scenario& s, double Vs, double Ri) {
    if (!(Ri > 2.0 * s.r))
        throw std::invalid_argument("beta requires region radius above 2r");
    if (Ri >= 4.0 * s.r) {
        const double arg = 2.0 * s.r * Vs / ((Vs + s.VT) * (Ri - 2.0 * s.r));
        if (arg > 1.0)
            throw std::domain_error(
                "beta undefined: region too small for spiral arc");
        return std::asin(arg);
    }
    return std::asin(Vs / (Vs + s.VT));
}

double sweep_time_with_beta(const Scenario& s, double Vs, double Ri, double beta) {
    if (!(Ri > s.r)) throw std::invalid_argument("sweep radius must exceed r");
    const double k = s.VT / lateral_speed(s, Vs);
    return (Ri - s.r) * std::expm1((kTwoPi + beta) * k) / s.VT;
}

ImprovedIterationState iteration_step(const Scenario& s, double Vs, double Ri) {
    ImprovedIterationState st;
    st.Ri = Ri;
    st.beta = beta_angle(s, Vs, Ri);
    st.sweep_time = sweep_time_with_beta(s, Vs, Ri, st.beta);
    st.delta = 2.0 * s.r - s.VT * st.sweep_time;
    if (st.delta < 0.0)
        throw std::domain_error("region expands: speed below critical");
    st.delta_eff = st.delta * Vs / (Vs + s.VT);
    st.inward_time = st.delta_eff / Vs;
    st.R_next = Ri - st.delta_eff;
    return st;
}

SweepSchedule schedule(const Scenario& s, double Vs, std::size_t max_iterations) {
    SweepSchedule out;
    double Ri = s.R0;
    int i = 0;
    while (Ri > 2.0 * s.r) {
        if (static_cast<std::size_t>(i) >= max_iterations)
            throw std::runtime_error(
                "iteration cap exceeded without containment: speed too close to "
                "critical");
        const ImprovedIterationState st = iteration_step(s, Vs, Ri);
        SweepIterationRecord rec;
        rec.index = i;
        rec.radius_before = Ri;
        rec.radius_after = st.R_next;
        rec.sweep_time = st.sweep_time;
        rec.beta = st.beta;
        rec.inward_time = st.inward_time;
        rec.center_after = {0.0, 0.0};
        out.iterations.push_back(rec);
        out.containment_time += st.sweep_time + st.inward_time;
        Ri = st.R_next;
        ++i;
    }
    out.containment_radius = Ri;
    out.iteration_count = i;
    return out;
}

EndGamePlan endgame(const Scenario& s, double Vs, double RN) {
    if (!(RN <= 2.0 * s.r))
        throw std::invalid_argument("end game requires containment radius <= 2r");
    const double c2 = drifting::recurrence_coeffs(s, Vs).c2;

    EndGamePlan plan;
    plan.protocol = ProtocolKind::ImprovedSpiral;
    plan.entry_time = RN / Vs;
    plan.entry_distance = RN;
    plan.spiral_time = s.r * (c2 - 1.0) / s.VT;
    plan.spread_radius = s.VT * plan.spiral_time;
    plan.descent_time = (s.r + plan.spread_radius / 2.0) / (Vs + s.VT);
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

}  // namespace sweep::improved
