#pragma once

#include "sweep/scenario.hpp"

namespace sweep::improved {

/// One iteration of the improved protocol: a spiral arc of 2pi+beta_i
/// followed by an inward advance of delta_eff.
struct ImprovedIterationState {
    double Ri = 0.0;
    double beta = 0.0;
    double sweep_time = 0.0;
    double delta = 0.0;      // 2r - VT*sweep_time, the inward margin gained
    double delta_eff = 0.0;  // delta*Vs/(Vs+VT), net after spread during entry
    double inward_time = 0.0;
    double R_next = 0.0;
};

/// Extra arc beyond 2pi for a region of radius Ri:
/// arcsin(2r*Vs/((Vs+VT)*(Ri-2r))) for Ri >= 4r, arcsin(Vs/(Vs+VT)) for
/// 2r < Ri < 4r. Throws std::domain_error when the argument exceeds 1.
double beta_angle(const Scenario& s, double Vs, double Ri);

/// Time for a spiral arc of 2pi+beta at region radius Ri.
double sweep_time_with_beta(const Scenario& s, double Vs, double Ri, double beta);

/// One full iteration at radius Ri. Throws std::domain_error when the
/// region expands (speed below critical for this radius).
ImprovedIterationState iteration_step(const Scenario& s, double Vs, double Ri);

/// Iterates from R0 until the region radius is at most 2r.
SweepSchedule schedule(const Scenario& s, double Vs,
                       std::size_t max_iterations = 1000000);

/// End game from containment radius RN: center entry, one last spiral turn,
/// downward advance, and the two-leg linear sweep.
EndGamePlan endgame(const Scenario& s, double Vs, double RN);

struct TimeBreakdown {
    SweepSchedule spiral;
    EndGamePlan end_game;
    double total = 0.0;
};

TimeBreakdown total_time(const Scenario& s, double Vs);

}  // namespace sweep::improved
