#include "sweep/critical_speeds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sweep {

namespace {

constexpr double kPi = std::numbers::pi;

// Confinement residual for the improved protocol: spread during the first
// sweep of 2pi+beta0 minus the inward margin the extra arc buys. The critical
// speed is its root.
double improved_residual(const Scenario& s, double Vs) {
    // Small regions (R0 < 4r) use the radius-free arc extension; larger ones
    // scale it by the chord available at radius R0.
    double arg = Vs / (Vs + s.VT);
    if (s.R0 >= 4.0 * s.r)
        arg = 2.0 * s.r * Vs / ((Vs + s.VT) * (s.R0 - 2.0 * s.r));
    if (std::abs(arg) > 1.0) throw std::domain_error("arcsin argument out of range");
    const double beta0 = std::asin(arg);
    const double k = s.VT / std::sqrt(Vs * Vs - s.VT * s.VT);
    const double spread = (s.R0 - s.r) * (std::exp((2.0 * kPi + beta0) * k) - 1.0);
    return 2.0 * s.r * Vs / (Vs + s.VT) - spread;
}

}  // namespace

double lower_bound_speed(const Scenario& s) { return kPi * s.R0 * s.VT / s.r; }

double tangent_angle_phi(double VT, double Vs) {
    if (!(Vs > VT)) throw std::invalid_argument("tangent angle requires Vs > VT");
    return std::asin(VT / Vs);
}

double drifting_spiral_critical_speed(const Scenario& s) {
    if (!(s.R0 > s.r))
        throw std::invalid_argument("drifting critical speed requires R0 > r");
    const double lg = std::log(s.R0 / (s.R0 - s.r));
    return s.VT * std::sqrt(4.0 * kPi * kPi / (lg * lg) + 1.0);
}

NewtonReport improved_spiral_critical_speed(const Scenario& s, double tol,
                                            int max_iter) {
    if (!(s.R0 > 2.0 * s.r))
        throw std::invalid_argument("improved critical speed requires R0 > 2r");

    NewtonReport report;
    double Vs = lower_bound_speed(s);
    double f = improved_residual(s, Vs);
    for (int iter = 0; iter < max_iter; ++iter) {
        report.iterations = iter + 1;
        if (std::abs(f) <= tol) {
            report.root = Vs;
            report.residual = std::abs(f);
            report.converged = true;
            return report;
        }
        const double h = std::max(1e-6 * Vs, 1e-6);
        const double df = (improved_residual(s, Vs + h) - improved_residual(s, Vs - h)) /
                          (2.0 * h);
        double step = -f / df;
        double next = Vs + step;
        double f_next = 0.0;
        bool ok = false;
        for (int damp = 0; damp < 50; ++damp) {
            try {
                if (next > s.VT) {
                    f_next = improved_residual(s, next);
                    ok = true;
                    break;
                }
            } catch (const std::domain_error&) {
            }
            step *= 0.5;
            next = Vs + step;
        }
        if (!ok) throw std::domain_error("step damping failed: arcsin out of range");
        Vs = next;
        f = f_next;
    }
    report.root = Vs;
    report.residual = std::abs(f);
    report.converged = std::abs(f) <= tol;
    return report;
}

double circular_critical_speed(const Scenario& s) {
    return 2.0 * kPi * s.R0 * s.VT / s.r + s.VT;
}

double endgame_speed_floor(double r, double Rf, double VT) {
    if (!(Rf < r))
        throw std::invalid_argument(
            "end game infeasible: region spread exceeds sensor margin");
    return VT * (2.0 * r + Rf + std::sqrt(8.0 * r * Rf + Rf * Rf)) /
           (2.0 * (r - Rf));
}

double last_sweep_ratio_threshold() {
    const double l2 = std::log(2.0);
    return std::sqrt(4.0 / (l2 * l2) + 1.0 / (kPi * kPi));
}

bool last_sweep_feasibility(const Scenario& s) {
    return s.R0 / s.r > last_sweep_ratio_threshold();
}

}  // namespace sweep
