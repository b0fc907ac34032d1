#pragma once

#include <cmath>
#include <string>
#include <vector>

namespace sweep {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Problem instance: a disk of radius R0 holds evaders of maximal speed VT;
/// the sweeper carries a line sensor of half-length r (full length 2r).
struct Scenario {
    double R0 = 0.0;
    double r = 0.0;
    double VT = 0.0;
};

enum class ProtocolKind {
    DriftingSpiral,
    ImprovedSpiral,
    CircularBaseline,  // critical-speed queries only
};

/// Sweeper speed, either absolute or as an increment above a protocol's
/// critical speed.
struct SpeedSpec {
    enum class Mode { Absolute, AboveCritical };

    Mode mode = Mode::Absolute;
    double value = 0.0;  // Vs when Absolute, deltaV when AboveCritical
    ProtocolKind protocol = ProtocolKind::DriftingSpiral;

    static SpeedSpec absolute(double vs) {
        return {Mode::Absolute, vs, ProtocolKind::DriftingSpiral};
    }
    static SpeedSpec above_critical(ProtocolKind p, double delta_v) {
        return {Mode::AboveCritical, delta_v, p};
    }
};

struct RegionDisk {
    Vec2 center;
    double radius = 0.0;
};

struct SweepIterationRecord {
    int index = 0;
    double radius_before = 0.0;
    double radius_after = 0.0;
    double sweep_time = 0.0;
    double beta = 0.0;         // zero for the drifting protocol
    double inward_time = 0.0;  // zero for the drifting protocol
    Vec2 center_after;
};

struct SweepSchedule {
    std::vector<SweepIterationRecord> iterations;
    double containment_radius = 0.0;  // R_N, at most 2r
    double containment_time = 0.0;    // sum of sweep and inward times
    int iteration_count = 0;          // N
};

/// Stage breakdown of the end game, started once the region fits in a disk
/// of radius at most 2r. Field roles by protocol:
///   entry_time      drifting T_out / improved T_e
///   spiral_time     T_l (one last full spiral turn)
///   descent_time    drifting T_in_last / improved T_down
///   t_right/t_back  the two legs of the final linear sweep
struct EndGamePlan {
    ProtocolKind protocol = ProtocolKind::DriftingSpiral;
    double entry_time = 0.0;
    double spiral_time = 0.0;
    double descent_time = 0.0;
    double t_right = 0.0;
    double t_back = 0.0;
    double linear_time = 0.0;  // t_right + t_back

    double entry_distance = 0.0;    // distance covered during entry_time
    double descent_distance = 0.0;  // R_down
    double spread_radius = 0.0;     // R_last, spread during the last turn
    double final_radius = 0.0;      // R_f, spread entering the linear sweep

    bool feasible = false;
    std::string infeasible_reason;
    double total_time = 0.0;
};

/// Returns the scenario unchanged if all invariants hold, otherwise throws
/// std::invalid_argument naming the violated constraint.
Scenario validate_scenario(const Scenario& s);

/// Turns a SpeedSpec into an absolute sweeper speed. Throws
/// std::invalid_argument for Absolute speeds at or below VT and for
/// non-positive increments.
double resolve_speed(const Scenario& s, const SpeedSpec& spec);

}  // namespace sweep
