#include "sweep/sweeper_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sweep/drifting_spiral.hpp"
#include "sweep/improved_spiral.hpp"

namespace sweep::oracle {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec2 ray_dir(double theta) { return {std::sin(theta), std::cos(theta)}; }
Vec2 ray_perp(double theta) { return {std::cos(theta), -std::sin(theta)}; }

}  // namespace

void SweeperPath::push_phase(const PathPhase& ph) {
    if (ph.duration > 0.0) phases_.push_back(ph);
}

// Shared end-game shape: radial entry to the center, one spiral turn at
// radius 2r, radial descent, then the two linear legs.
void SweeperPath::append_endgame(Vec2 c, double theta0, double RN,
                                 const EndGamePlan& plan, double pad, double& t) {
    const double eg_t0 = t;
    auto with_claim = [&](PathPhase ph) {
        ph.claim_center = c;
        ph.claim_r0 = RN;
        ph.claim_t0 = eg_t0;
        return ph;
    };

    PathPhase entry;
    entry.kind = PathPhase::Kind::Radial;
    entry.t0 = t;
    entry.duration = plan.entry_time;
    entry.center = c;
    entry.theta0 = theta0;
    entry.a0 = RN - 2.0 * r_;
    entry.a1 = 0.0;
    push_phase(with_claim(entry));
    t += plan.entry_time;

    PathPhase turn;
    turn.kind = PathPhase::Kind::Spiral;
    turn.t0 = t;
    turn.duration = plan.spiral_time;
    turn.center = c;
    turn.theta0 = theta0;
    turn.R = 2.0 * r_;
    push_phase(with_claim(turn));
    t += plan.spiral_time;

    PathPhase descent;
    descent.kind = PathPhase::Kind::Radial;
    descent.t0 = t;
    descent.duration = plan.descent_time;
    descent.center = c;
    descent.theta0 = theta0;
    descent.a0 = plan.spread_radius;
    descent.a1 = plan.spread_radius - plan.descent_distance;
    push_phase(with_claim(descent));
    t += plan.descent_time;

    const double a_lin = plan.spread_radius - plan.descent_distance;
    PathPhase right;
    right.kind = PathPhase::Kind::Linear;
    right.t0 = t;
    right.duration = plan.t_right + pad / Vs_;
    right.center = c;
    right.theta0 = theta0;
    right.a0 = a_lin;
    right.x_start = 0.0;
    right.vx = Vs_;
    push_phase(with_claim(right));
    t += right.duration;

    PathPhase left;
    left.kind = PathPhase::Kind::Linear;
    left.t0 = t;
    left.duration = plan.t_back + 2.0 * pad / Vs_;
    left.center = c;
    left.theta0 = theta0;
    left.a0 = a_lin;
    left.x_start = Vs_ * plan.t_right + pad;
    left.vx = -Vs_;
    push_phase(with_claim(left));
    t += left.duration;
}

SweeperPath SweeperPath::build(const Scenario& s, double Vs, ProtocolKind protocol,
                               double horizon, double pad_length) {
    if (!(Vs > s.VT)) throw std::invalid_argument("sweeper speed must exceed VT");
    if (protocol == ProtocolKind::CircularBaseline)
        throw std::invalid_argument("no replay for the circular baseline");

    SweeperPath path;
    path.r_ = s.r;
    path.VT_ = s.VT;
    path.Vs_ = Vs;
    path.lateral_ = std::sqrt(Vs * Vs - s.VT * s.VT);

    const double c2 = drifting::recurrence_coeffs(s, Vs).c2;

    double t = 0.0;
    double Ri = s.R0;
    bool contained = false;

    if (protocol == ProtocolKind::DriftingSpiral) {
        int i = 0;
        while (t < horizon) {
            if (Ri <= 2.0 * s.r) {
                contained = true;
                break;
            }
            PathPhase ph;
            ph.kind = PathPhase::Kind::Spiral;
            ph.t0 = t;
            ph.duration = (Ri - s.r) * (c2 - 1.0) / s.VT;
            ph.center = {0.0, i * s.r};
            ph.theta0 = 0.0;
            ph.R = Ri;
            ph.claim_center = ph.center;
            ph.claim_r0 = std::min(Ri, s.R0);
            ph.claim_t0 = t;
            path.push_phase(ph);
            t += ph.duration;
            Ri = (Ri - s.r) * c2;
            ++i;
        }
        if (contained) {
            const double containment_time = t;
            const EndGamePlan plan = drifting::endgame(s, Vs, Ri);
            path.append_endgame({0.0, i * s.r}, 0.0, Ri, plan, pad_length, t);
            path.analytic_total_ = containment_time + plan.total_time;
            path.end_time_ = t;
        }
    } else {
        double theta0 = 0.0;
        while (t < horizon) {
            if (Ri <= 2.0 * s.r) {
                contained = true;
                break;
            }
            const double beta = improved::beta_angle(s, Vs, Ri);
            const double Tsp = improved::sweep_time_with_beta(s, Vs, Ri, beta);
            const double delta = 2.0 * s.r - s.VT * Tsp;
            const double delta_eff = delta * Vs / (Vs + s.VT);
            const double R_next = Ri - delta_eff;

            PathPhase sweep;
            sweep.kind = PathPhase::Kind::Spiral;
            sweep.t0 = t;
            sweep.duration = Tsp;
            sweep.center = {0.0, 0.0};
            sweep.theta0 = theta0;
            sweep.R = Ri;
            sweep.claim_center = sweep.center;
            sweep.claim_r0 = std::min(Ri, s.R0);
            sweep.claim_t0 = t;
            path.push_phase(sweep);
            t += Tsp;

            const double theta_end = theta0 + kTwoPi + beta;
            if (delta > 0.0) {
                PathPhase inward;
                inward.kind = PathPhase::Kind::Radial;
                inward.t0 = t;
                inward.duration = delta / (Vs + s.VT);
                inward.center = {0.0, 0.0};
                inward.theta0 = theta_end;
                inward.a0 = Ri - delta;
                inward.a1 = R_next - 2.0 * s.r;
                inward.claim_center = inward.center;
                inward.claim_r0 = sweep.claim_r0;
                inward.claim_t0 = sweep.claim_t0;
                path.push_phase(inward);
                t += inward.duration;
            }
            theta0 = theta_end;
            Ri = R_next;
        }
        if (contained) {
            const double containment_time = t;
            const EndGamePlan plan = improved::endgame(s, Vs, Ri);
            path.append_endgame({0.0, 0.0}, theta0, Ri, plan, pad_length, t);
            path.analytic_total_ = containment_time + plan.total_time;
            path.end_time_ = t;
        }
    }

    if (!contained) {
        path.analytic_total_ = std::numeric_limits<double>::infinity();
        path.end_time_ = std::numeric_limits<double>::infinity();
    }
    return path;
}

const PathPhase& SweeperPath::phase_at(double t) const {
    if (phases_.empty()) throw std::logic_error("empty sweeper path");
    for (const PathPhase& ph : phases_) {
        if (t < ph.t0 + ph.duration) return ph;
    }
    return phases_.back();
}

SensorPose SweeperPath::pose(double t) const {
    const PathPhase& ph = phase_at(t);
    const double tau = std::clamp(t - ph.t0, 0.0, ph.duration);
    const double span = 2.0 * r_;

    SensorPose out;
    switch (ph.kind) {
        case PathPhase::Kind::Spiral: {
            const double a = ph.R - span + VT_ * tau;
            const double theta =
                ph.theta0 + lateral_ / VT_ * std::log1p(VT_ * tau / (ph.R - r_));
            const Vec2 u = ray_dir(theta);
            out.inner = ph.center + a * u;
            out.outer = ph.center + (a + span) * u;
            break;
        }
        case PathPhase::Kind::Radial: {
            const double frac = ph.duration > 0.0 ? tau / ph.duration : 1.0;
            const double a = ph.a0 + (ph.a1 - ph.a0) * frac;
            const Vec2 u = ray_dir(ph.theta0);
            out.inner = ph.center + a * u;
            out.outer = ph.center + (a + span) * u;
            break;
        }
        case PathPhase::Kind::Linear: {
            const Vec2 u = ray_dir(ph.theta0);
            const Vec2 base =
                ph.center + (ph.x_start + ph.vx * tau) * ray_perp(ph.theta0);
            out.inner = base + ph.a0 * u;
            out.outer = base + (ph.a0 + span) * u;
            break;
        }
    }
    return out;
}

RegionDisk SweeperPath::claim(double t) const {
    const PathPhase& ph = phase_at(t);
    return {ph.claim_center, ph.claim_r0 + VT_ * (t - ph.claim_t0)};
}

}  // namespace sweep::oracle
