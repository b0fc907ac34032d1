#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sweep/critical_speeds.hpp"
#include "sweep/drifting_spiral.hpp"
#include "sweep/improved_spiral.hpp"

using namespace sweep;
using namespace sweep::improved;

namespace {
const Scenario kRef{100.0, 10.0, 1.0};

double critical() {
    static const double vc = improved_spiral_critical_speed(kRef).root;
    return vc;
}
double ref_speed() { return critical() + 1.0; }
}  // namespace

TEST_CASE("beta angle") {
    CHECK(beta_angle(kRef, critical(), kRef.R0) ==
          doctest::Approx(0.2451881).epsilon(1e-5));
    CHECK(beta_angle(kRef, ref_speed(), 1e7) ==
          doctest::Approx(0.0).epsilon(1e-5));

    // Small-region regime uses the radius-free reduced form.
    const double Vs = ref_speed();
    CHECK(beta_angle(kRef, Vs, 3.5 * kRef.r) ==
          doctest::Approx(std::asin(Vs / (Vs + kRef.VT))));

    // Nondecreasing as the region shrinks within the large-radius regime.
    double prev = 0.0;
    for (double Ri : {100.0, 80.0, 60.0, 40.0}) {
        const double b = beta_angle(kRef, Vs, Ri);
        CHECK(b >= prev);
        prev = b;
    }
    CHECK_THROWS_AS(beta_angle(kRef, Vs, 2.0 * kRef.r), std::invalid_argument);
}

TEST_CASE("sweep time with beta") {
    const double Vs = ref_speed();
    const double beta0 = beta_angle(kRef, critical(), kRef.R0);
    CHECK(kRef.VT * sweep_time_with_beta(kRef, critical(), kRef.R0, beta0) ==
          doctest::Approx(19.4191011).epsilon(1e-6));

    CHECK(sweep_time_with_beta(kRef, Vs, kRef.R0, 0.0) ==
          doctest::Approx(drifting::time_to_angle(kRef, Vs, kRef.R0,
                                                  2.0 * std::numbers::pi)));

    double prev = 0.0;
    for (double beta : {0.0, 0.1, 0.2, 0.4}) {
        const double t = sweep_time_with_beta(kRef, Vs, kRef.R0, beta);
        CHECK(t > prev);
        prev = t;
    }
}

TEST_CASE("iteration step") {
    const ImprovedIterationState st = iteration_step(kRef, ref_speed(), kRef.R0);
    CHECK(st.R_next < kRef.R0);
    CHECK(st.delta > 0.0);
    CHECK(st.delta <= 2.0 * kRef.r);
    CHECK(st.delta_eff / st.delta ==
          doctest::Approx(ref_speed() / (ref_speed() + kRef.VT)));
    CHECK(st.R_next == doctest::Approx(kRef.R0 - st.delta_eff));

    // At the critical speed the spread during the first arc exactly matches
    // the inward allowance bought by beta.
    const ImprovedIterationState at_crit = iteration_step(kRef, critical(), kRef.R0);
    const double allowance = 2.0 * kRef.r * critical() / (critical() + kRef.VT);
    CHECK(kRef.VT * at_crit.sweep_time == doctest::Approx(allowance).epsilon(1e-6));
    CHECK(kRef.VT * at_crit.sweep_time == doctest::Approx(19.4191011).epsilon(1e-6));

    CHECK_THROWS_AS(iteration_step(kRef, 32.0, kRef.R0), std::domain_error);
}

TEST_CASE("schedule at reference parameters") {
    const SweepSchedule sched = schedule(kRef, ref_speed());
    CHECK(sched.iteration_count == 16);
    CHECK(sched.containment_radius == doctest::Approx(4.78466181).epsilon(1e-7));
    CHECK(sched.containment_time == doctest::Approx(224.784661815).epsilon(1e-6));

    double sweep_sum = 0.0;
    double inward_sum = 0.0;
    double prev = kRef.R0 + 1.0;
    const double rhs_factor = 2.0 * kRef.r * ref_speed() / (ref_speed() + kRef.VT);
    for (const SweepIterationRecord& rec : sched.iterations) {
        CHECK(rec.radius_before < prev);
        CHECK(rec.radius_after < rec.radius_before);
        CHECK(rec.center_after.x == 0.0);
        CHECK(rec.center_after.y == 0.0);
        // Confinement margin: spread during the arc never exceeds the inward
        // allowance bought by beta.
        CHECK(kRef.VT * rec.sweep_time <= rhs_factor * (1.0 + 1e-12));
        sweep_sum += rec.sweep_time;
        inward_sum += rec.inward_time;
        prev = rec.radius_before;
    }
    CHECK(sweep_sum == doctest::Approx(222.019137779).epsilon(1e-8));
    CHECK(inward_sum == doctest::Approx(2.7655240363).epsilon(1e-8));
}

TEST_CASE("schedule enforces the iteration cap") {
    CHECK_THROWS_AS(schedule(kRef, ref_speed(), 5), std::runtime_error);
}

TEST_CASE("end game at reference parameters") {
    const double Vs = ref_speed();
    const SweepSchedule sched = schedule(kRef, Vs);
    const EndGamePlan plan = endgame(kRef, Vs, sched.containment_radius);
    CHECK(plan.feasible);
    CHECK(plan.entry_time == doctest::Approx(0.138970228).epsilon(1e-6));
    CHECK(plan.spiral_time == doctest::Approx(2.00300309).epsilon(1e-6));
    CHECK(plan.descent_time == doctest::Approx(0.310518975).epsilon(1e-6));
    CHECK(plan.final_radius == doctest::Approx(2.31352206).epsilon(1e-6));
    CHECK(plan.t_right == doctest::Approx(0.0692062).epsilon(1e-4));
    CHECK(plan.t_back == doctest::Approx(0.1425529).epsilon(1e-4));
    CHECK(plan.linear_time == doctest::Approx(0.2117591).epsilon(1e-5));
    CHECK(plan.spread_radius < 2.0 * kRef.r);
}

TEST_CASE("total time at reference parameters") {
    const TimeBreakdown breakdown = total_time(kRef, ref_speed());
    CHECK(breakdown.total == doctest::Approx(227.448913162).epsilon(1e-7));
    CHECK(breakdown.total > breakdown.spiral.containment_time);
}

TEST_CASE("containment time decreases with deltaV") {
    double prev = std::numeric_limits<double>::infinity();
    for (double dv : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double t = schedule(kRef, critical() + dv).containment_time;
        CHECK(t < prev);
        prev = t;
    }
}

TEST_CASE("improved beats drifting above the circular critical speed") {
    const double circ = circular_critical_speed(kRef);
    for (double dv : {0.5, 1.0, 5.0, 10.0}) {
        const double Vs = circ + dv;
        CHECK(total_time(kRef, Vs).total < drifting::total_time(kRef, Vs).total);
    }
}
