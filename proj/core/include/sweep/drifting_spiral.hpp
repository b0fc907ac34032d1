#pragma once

#include "sweep/scenario.hpp"

namespace sweep::drifting {

/// Sweeper pose on a spiral sweep, in the current sweep's region-centered
/// frame. The sensor lies on the ray at angle theta (measured from +y,
/// clockwise toward +x), tips at distances R-2r+VT*t and R+VT*t.
struct SpiralTrajectorySample {
    double t = 0.0;
    double theta = 0.0;
    Vec2 center_point;
    Vec2 upper_tip;
    Vec2 lower_tip;
};

/// Coefficients of the shifted-radius recurrence Rt_{i+1} = c2*Rt_i + c1
/// with Rt = R - r; c3 relates sweep time to radius, T_i = c3 + (c2-1)/VT*R_i.
struct RecurrenceCoeffs {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
};

RecurrenceCoeffs recurrence_coeffs(const Scenario& s, double Vs);

/// Time for the formation to travel an angle theta around a region of
/// current radius Ri: (Ri-r)*(e^{theta*VT/sqrt(Vs^2-VT^2)} - 1)/VT.
double time_to_angle(const Scenario& s, double Vs, double Ri, double theta);

/// Sensor pose after traveling angle theta on the sweep that started at
/// region radius Ri.
SpiralTrajectorySample trajectory_sample(const Scenario& s, double Vs, double Ri,
                                         double theta);

/// Worst-case evader position seeded at the lower tip at angle theta and
/// spreading in direction psi until the sweep completes at t_{2pi}.
Vec2 wavefront_point(const Scenario& s, double Vs, double theta, double psi);

struct SweepStep {
    double next_radius = 0.0;
    double center_shift = 0.0;  // the region center rises by r each sweep
};

/// Region radius after one full 2pi sweep: (Ri-r)*e^{2pi*VT/sqrt(Vs^2-VT^2)}.
SweepStep radius_after_sweep(const Scenario& s, double Vs, double Ri);

/// Number of full sweeps until the region is bounded by a disk of radius at
/// most 2r. Throws std::domain_error when Vs is at or below the critical
/// speed (the region never shrinks).
int iterations_to_contain(const Scenario& s, double Vs);

/// Closed-form counterparts of the iterative schedule, used as cross-checks.
int closed_form_iterations(const Scenario& s, double Vs);
double closed_form_containment_radius(const Scenario& s, double Vs, int N);
double closed_form_containment_time(const Scenario& s, double Vs, int N);

/// Full iteration-by-iteration schedule until containment.
SweepSchedule schedule(const Scenario& s, double Vs);

/// End game from containment radius RN: re-entry, one last spiral turn,
/// downward advance, and the two-leg linear sweep.
EndGamePlan endgame(const Scenario& s, double Vs, double RN);

struct TimeBreakdown {
    SweepSchedule spiral;
    EndGamePlan end_game;
    double total = 0.0;
};

TimeBreakdown total_time(const Scenario& s, double Vs);

}  // namespace sweep::drifting
