#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sweep/scenario.hpp"
#include "sweep/sweeper_path.hpp"

namespace sweep::oracle {

/// Discretized evader-region occupancy. A cell is occupied iff an evader
/// could currently be at its center, so the grid region under-approximates
/// the continuous region.
struct RegionGrid {
    double cell_size = 0.0;
    Vec2 origin;  // world position of cell (0, 0)'s center
    int nx = 0;
    int ny = 0;
    std::vector<std::uint8_t> occupancy;
    long occupied = 0;

    static RegionGrid make(Vec2 lo, Vec2 hi, double cell_size, Vec2 region_center,
                           double R0);

    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * nx + ix;
    }
    Vec2 cell_center(int ix, int iy) const {
        return {origin.x + ix * cell_size, origin.y + iy * cell_size};
    }

    /// Grows the occupied set by dist (exact Euclidean distance transform).
    void dilate(double dist);

    /// Clears cells covered by the convex hull of the sensor segment's start
    /// and end poses. When `swath` is given, every covered cell is also
    /// marked there, occupied or not.
    void sweep_subtract(const SensorPose& from, const SensorPose& to,
                        std::vector<std::uint8_t>* swath = nullptr);

    /// Farthest occupied cell center from `center`; returns -1 when empty.
    double max_distance_from(Vec2 center, Vec2* witness = nullptr) const;

    void write_pgm(const std::string& file) const;
};

enum class VerdictKind { ConfinementHeld, EscapeWitness, DetectionComplete, TimedOut };

struct SimVerdict {
    VerdictKind kind = VerdictKind::TimedOut;
    double time = 0.0;
    Vec2 witness;  // escaping cell center for EscapeWitness
};

struct SimParams {
    double cell_size = 0.0;
    double dt = 0.0;
    double horizon = 0.0;
    double dilation_quantum_cells = 5.0;  // growth batched into EDT passes
    double escape_slack_cells = 2.0;
    std::string frames_dir;  // empty = no frame export
    int frame_stride = 50;
};

struct SimResult {
    SimVerdict verdict;
    double analytic_total = 0.0;  // +infinity when containment is not reached
    long steps = 0;
    int dilation_events = 0;
};

/// Replays the protocol's analytic trajectory against the dilating grid
/// region: alternates dilate / sweep_subtract, flags occupancy escaping the
/// protocol's claimed bounding disk, and reports completion when the grid
/// empties.
SimResult simulate(const Scenario& s, double Vs, ProtocolKind protocol,
                   const SimParams& params);

/// Fixed-step fourth-order integration of the spiral sweep with theta as the
/// independent variable: dt/dtheta = Rs/sqrt(Vs^2-VT^2), dRs/dtheta =
/// VT*Rs/sqrt(Vs^2-VT^2), from Rs = R_start - r. Returns elapsed time at
/// theta_target; cross-checks the closed-form sweep time.
double integrate_spiral_ode(const Scenario& s, double Vs, double R_start,
                            double theta_target, int steps);

/// Samples the first-sweep wavefront on a grid_n x grid_n (theta, psi)
/// lattice and checks every point stays within the post-sweep bounding disk
/// centered at (0, r), with 1e-9 relative slack.
bool verify_confinement_inequality(const Scenario& s, double Vs, int grid_n);

}  // namespace sweep::oracle
