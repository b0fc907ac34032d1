#pragma once

#include "sweep/scenario.hpp"

namespace sweep {

struct NewtonReport {
    double root = 0.0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

/// Universal lower bound pi*R0*VT/r: no sweeping protocol can succeed below it.
double lower_bound_speed(const Scenario& s);

/// Angle arcsin(VT/Vs) between the sweep direction and the region normal.
/// Requires Vs > VT.
double tangent_angle_phi(double VT, double Vs);

/// Critical speed of the drifting spiral protocol,
/// VT*sqrt(4*pi^2/ln^2(R0/(R0-r)) + 1). Requires R0 > r.
double drifting_spiral_critical_speed(const Scenario& s);

/// Critical speed of the improved spiral protocol: Newton solve of
/// 2*r*Vs/(Vs+VT) = (R0-r)*(e^{(2pi+beta0)*VT/sqrt(Vs^2-VT^2)} - 1)
/// with beta0 = arcsin(2*r*Vs/((Vs+VT)*(R0-2r))), started from the lower
/// bound speed. Derivative by central finite differences; steps that push
/// the arcsin argument out of range are halved.
NewtonReport improved_spiral_critical_speed(const Scenario& s, double tol = 1e-10,
                                            int max_iter = 100);

/// Critical speed of the circular baseline protocol, 2*pi*R0*VT/r + VT.
double circular_critical_speed(const Scenario& s);

/// Minimal speed for the linear end-game sweep to outrun the spread:
/// VT*(2r + Rf + sqrt(8*r*Rf + Rf^2))/(2*(r - Rf)). Requires Rf < r.
double endgame_speed_floor(double r, double Rf, double VT);

/// Ratio threshold sqrt(4/ln^2(2) + 1/pi^2) on R0/r above which the final
/// spread fits the linear end-game sweep.
double last_sweep_ratio_threshold();

/// True iff R0/r strictly exceeds last_sweep_ratio_threshold().
bool last_sweep_feasibility(const Scenario& s);

}  // namespace sweep
