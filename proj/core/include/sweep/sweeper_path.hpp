#pragma once

#include <vector>

#include "sweep/scenario.hpp"

namespace sweep::oracle {

struct SensorPose {
    Vec2 inner;
    Vec2 outer;
};

/// One piece of the replayed sweeper trajectory. All phases carry the claim
/// disk asserted by the protocol for their time span: the evader region must
/// stay within claim_r0 + VT*(t - claim_t0) of claim_center.
struct PathPhase {
    enum class Kind { Spiral, Radial, Linear };

    Kind kind = Kind::Spiral;
    double t0 = 0.0;
    double duration = 0.0;
    Vec2 center;          // sweep center for this phase
    double theta0 = 0.0;  // ray angle, measured from +y toward +x

    // Spiral: inner tip radius R - 2r + VT*tau, angle theta0 + unwound arc.
    double R = 0.0;

    // Radial: inner tip radius interpolates a0 -> a1 along the theta0 ray.
    double a0 = 0.0;
    double a1 = 0.0;

    // Linear: sensor spans [a0, a0+2r] along the theta0 ray and translates
    // perpendicular to it, offset x_start + vx*tau.
    double x_start = 0.0;
    double vx = 0.0;

    Vec2 claim_center;
    double claim_r0 = 0.0;
    double claim_t0 = 0.0;
};

/// Analytic sweeper trajectory replayed in a fixed world frame, for either
/// spiral protocol, at any speed above VT (including below-critical speeds,
/// where sweeps keep growing until the horizon).
class SweeperPath {
  public:
    /// pad_length extends the final linear sweep legs beyond their analytic
    /// endpoints (grid boundary coverage); it does not affect analytic_total.
    static SweeperPath build(const Scenario& s, double Vs, ProtocolKind protocol,
                             double horizon, double pad_length = 0.0);

    SensorPose pose(double t) const;
    RegionDisk claim(double t) const;

    const std::vector<PathPhase>& phases() const { return phases_; }

    /// End of the replayed path (including padding); +infinity when the
    /// horizon cut generation short of containment.
    double end_time() const { return end_time_; }

    /// Closed-form total detection time; +infinity when containment was not
    /// reached before the horizon.
    double analytic_total() const { return analytic_total_; }

  private:
    const PathPhase& phase_at(double t) const;
    void push_phase(const PathPhase& ph);
    void append_endgame(Vec2 c, double theta0, double RN, const EndGamePlan& plan,
                        double pad, double& t);

    std::vector<PathPhase> phases_;
    double r_ = 0.0;
    double VT_ = 0.0;
    double Vs_ = 0.0;
    double lateral_ = 0.0;
    double end_time_ = 0.0;
    double analytic_total_ = 0.0;
};

}  // namespace sweep::oracle
