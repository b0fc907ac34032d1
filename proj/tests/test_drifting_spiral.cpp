#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "sweep/critical_speeds.hpp"
#include "sweep/drifting_spiral.hpp"

using namespace sweep;
using namespace sweep::drifting;

namespace {
const Scenario kRef{100.0, 10.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double ref_speed() { return drifting_spiral_critical_speed(kRef) + 1.0; }
}  // namespace

TEST_CASE("recurrence coefficients") {
    const RecurrenceCoeffs c = recurrence_coeffs(kRef, ref_speed());
    CHECK(c.c1 == -kRef.r);
    CHECK(c.c2 > 1.0);
    CHECK(c.c3 < 0.0);
}

TEST_CASE("time to angle") {
    const double vc = drifting_spiral_critical_speed(kRef);
    CHECK(time_to_angle(kRef, vc, kRef.R0, kTwoPi) ==
          doctest::Approx(10.0).epsilon(1e-9));
    CHECK(time_to_angle(kRef, ref_speed(), kRef.R0, 0.0) == 0.0);
    CHECK(time_to_angle(kRef, 60.6435, kRef.R0, kTwoPi) ==
          doctest::Approx(9.8263636).epsilon(1e-7));
    CHECK_THROWS_AS(time_to_angle(kRef, ref_speed(), 5.0, kTwoPi),
                    std::invalid_argument);
}

TEST_CASE("trajectory sample") {
    const double Vs = ref_speed();
    const SpiralTrajectorySample start = trajectory_sample(kRef, Vs, kRef.R0, 0.0);
    CHECK(start.center_point.x == doctest::Approx(0.0));
    CHECK(start.center_point.y == doctest::Approx(kRef.R0 - kRef.r));
    CHECK(start.upper_tip.y == doctest::Approx(kRef.R0));
    CHECK(start.lower_tip.y == doctest::Approx(kRef.R0 - 2.0 * kRef.r));

    const double t_full = time_to_angle(kRef, Vs, kRef.R0, kTwoPi);
    const SpiralTrajectorySample end = trajectory_sample(kRef, Vs, kRef.R0, kTwoPi);
    CHECK(norm(end.upper_tip) == doctest::Approx(kRef.R0 + kRef.VT * t_full));

    for (double theta : {0.3, 1.0, 2.5, 4.0, 6.0}) {
        const SpiralTrajectorySample at = trajectory_sample(kRef, Vs, kRef.R0, theta);
        CHECK(norm(at.upper_tip - at.lower_tip) == doctest::Approx(2.0 * kRef.r));
        CHECK(norm(at.center_point) ==
              doctest::Approx(kRef.R0 - kRef.r + kRef.VT * at.t));
    }
}

TEST_CASE("wavefront point") {
    const double Vs = ref_speed();
    const double t_full = time_to_angle(kRef, Vs, kRef.R0, kTwoPi);

    const Vec2 bottom = wavefront_point(kRef, Vs, std::numbers::pi, std::numbers::pi);
    CHECK(bottom.x == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(bottom.y ==
          doctest::Approx(-kRef.R0 + 2.0 * kRef.r - kRef.VT * t_full).epsilon(1e-9));

    const Vec2 closing = wavefront_point(kRef, Vs, kTwoPi, 1.234);
    const SpiralTrajectorySample end = trajectory_sample(kRef, Vs, kRef.R0, kTwoPi);
    CHECK(closing.x == doctest::Approx(end.lower_tip.x));
    CHECK(closing.y == doctest::Approx(end.lower_tip.y));

    // Every wavefront sample stays inside the post-sweep bounding disk.
    const double bound = kRef.R0 - kRef.r + kRef.VT * t_full;
    for (int i = 0; i <= 40; ++i) {
        for (int j = 0; j <= 40; ++j) {
            const Vec2 p = wavefront_point(kRef, Vs, kTwoPi * i / 40.0, kTwoPi * j / 40.0);
            CHECK(norm(p - Vec2{0.0, kRef.r}) <= bound * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("radius after sweep") {
    const double vc = drifting_spiral_critical_speed(kRef);
    CHECK(radius_after_sweep(kRef, vc, kRef.R0).next_radius ==
          doctest::Approx(kRef.R0).epsilon(1e-9));
    CHECK(radius_after_sweep(kRef, 60.6435, kRef.R0).next_radius ==
          doctest::Approx(99.8263636).epsilon(1e-7));
    CHECK(radius_after_sweep(kRef, ref_speed(), kRef.R0).center_shift == kRef.r);
}

TEST_CASE("iterations to contain") {
    CHECK(iterations_to_contain(kRef, ref_speed()) == 39);
    CHECK(iterations_to_contain({20.0, 10.0, 1.0}, 40.0) == 0);
    CHECK_THROWS_AS(iterations_to_contain(kRef, drifting_spiral_critical_speed(kRef)),
                    std::domain_error);
    CHECK_THROWS_AS(iterations_to_contain(kRef, 30.0), std::domain_error);
}

TEST_CASE("closed forms match direct iteration") {
    std::mt19937 rng(918273);
    std::uniform_real_distribution<double> alpha_dist(3.0, 100.0);
    std::uniform_real_distribution<double> r_dist(0.5, 20.0);
    std::uniform_real_distribution<double> vt_dist(0.1, 5.0);
    std::uniform_real_distribution<double> dv_dist(0.1, 10.0);
    for (int i = 0; i < 40; ++i) {
        const double r = r_dist(rng);
        const Scenario s{alpha_dist(rng) * r, r, vt_dist(rng)};
        const double Vs = drifting_spiral_critical_speed(s) + dv_dist(rng) * s.VT;
        const int n_iter = iterations_to_contain(s, Vs);
        CHECK(closed_form_iterations(s, Vs) == n_iter);
        const SweepSchedule sched = schedule(s, Vs);
        CHECK(sched.iteration_count == n_iter);
        CHECK(closed_form_containment_radius(s, Vs, n_iter) ==
              doctest::Approx(sched.containment_radius).epsilon(1e-9));
        CHECK(closed_form_containment_time(s, Vs, n_iter) ==
              doctest::Approx(sched.containment_time).epsilon(1e-9));
    }
}

TEST_CASE("schedule at reference parameters") {
    const SweepSchedule sched = schedule(kRef, ref_speed());
    CHECK(sched.iteration_count == 39);
    CHECK(sched.containment_radius == doctest::Approx(11.1020336864).epsilon(1e-8));
    CHECK(sched.containment_time == doctest::Approx(301.102033686).epsilon(1e-8));
    CHECK(sched.containment_radius <= 2.0 * kRef.r);

    double prev = kRef.R0 + 1.0;
    double sum = 0.0;
    for (const SweepIterationRecord& rec : sched.iterations) {
        CHECK(rec.radius_after < rec.radius_before);
        CHECK(rec.radius_before < prev);
        CHECK(rec.sweep_time > 0.0);
        CHECK(rec.beta == 0.0);
        CHECK(rec.inward_time == 0.0);
        CHECK(rec.center_after.y == doctest::Approx((rec.index + 1) * kRef.r));
        prev = rec.radius_before;
        sum += rec.sweep_time;
    }
    CHECK(sum ==
          doctest::Approx(closed_form_containment_time(kRef, ref_speed(), 39))
              .epsilon(1e-9));
}

TEST_CASE("end game at reference parameters") {
    const double Vs = ref_speed();
    const SweepSchedule sched = schedule(kRef, Vs);
    const EndGamePlan plan = endgame(kRef, Vs, sched.containment_radius);
    CHECK(plan.feasible);
    CHECK(plan.entry_time == doctest::Approx(0.306568739).epsilon(1e-6));
    CHECK(plan.spiral_time == doctest::Approx(1.0918184).epsilon(1e-6));
    CHECK(plan.descent_time == doctest::Approx(0.144511317).epsilon(1e-6));
    CHECK(plan.final_radius == doctest::Approx(1.23632973).epsilon(1e-6));
    CHECK(plan.t_right == doctest::Approx(0.0207287).epsilon(1e-4));
    CHECK(plan.t_back == doctest::Approx(0.0421524).epsilon(1e-4));
    CHECK(plan.linear_time == doctest::Approx(plan.t_right + plan.t_back));
    CHECK(plan.total_time ==
          doctest::Approx(plan.entry_time + plan.spiral_time + plan.descent_time +
                          plan.linear_time));
    CHECK_THROWS_AS(endgame(kRef, Vs, 3.0 * kRef.r), std::invalid_argument);
}

TEST_CASE("total time at reference parameters") {
    const TimeBreakdown breakdown = total_time(kRef, ref_speed());
    CHECK(breakdown.total == doctest::Approx(302.707813228).epsilon(1e-8));
    CHECK(breakdown.total > breakdown.spiral.containment_time);
}

TEST_CASE("total time decreases with deltaV") {
    const double vc = drifting_spiral_critical_speed(kRef);
    double prev = std::numeric_limits<double>::infinity();
    for (double dv : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double total = total_time(kRef, vc + dv).total;
        CHECK(total < prev);
        prev = total;
    }
}
