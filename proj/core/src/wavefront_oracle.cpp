#include "sweep/wavefront_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sweep/drifting_spiral.hpp"

namespace sweep::oracle {

namespace {

constexpr double kBigDist = 1e20;

// 1-D squared distance transform (lower envelope of parabolas).
void dt_1d(const std::vector<double>& f, std::vector<double>& d, int n,
           std::vector<int>& v, std::vector<double>& z) {
    int k = 0;
    v[0] = 0;
    z[0] = -kBigDist;
    z[1] = kBigDist;
    for (int q = 1; q < n; ++q) {
        double sx =
            ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
            (2.0 * q - 2.0 * v[k]);
        while (sx <= z[k]) {
            --k;
            sx = ((f[q] + double(q) * q) - (f[v[k]] + double(v[k]) * v[k])) /
                 (2.0 * q - 2.0 * v[k]);
        }
        ++k;
        v[k] = q;
        z[k] = sx;
        z[k + 1] = kBigDist;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        d[q] = double(q - v[k]) * (q - v[k]) + f[v[k]];
    }
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const int n = static_cast<int>(pts.size());
    if (n < 3) return pts;
    std::vector<Vec2> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0)
            --k;
        hull[k++] = pts[i];
    }
    const int lower = k + 1;
    for (int i = n - 2; i >= 0; --i) {
        while (k >= lower &&
               cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0)
            --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

}  // namespace

RegionGrid RegionGrid::make(Vec2 lo, Vec2 hi, double cell_size, Vec2 region_center,
                            double R0) {
    if (!(cell_size > 0.0)) throw std::invalid_argument("cell_size must be positive");
    RegionGrid g;
    g.cell_size = cell_size;
    g.origin = lo;
    g.nx = static_cast<int>(std::ceil((hi.x - lo.x) / cell_size)) + 1;
    g.ny = static_cast<int>(std::ceil((hi.y - lo.y) / cell_size)) + 1;
    g.occupancy.assign(static_cast<std::size_t>(g.nx) * g.ny, 0);
    for (int iy = 0; iy < g.ny; ++iy) {
        for (int ix = 0; ix < g.nx; ++ix) {
            if (norm(g.cell_center(ix, iy) - region_center) <= R0) {
                g.occupancy[g.index(ix, iy)] = 1;
                ++g.occupied;
            }
        }
    }
    return g;
}

void RegionGrid::dilate(double dist) {
    if (occupied == 0 || !(dist > 0.0)) return;
    const double limit = dist / cell_size;
    const double limit2 = limit * limit;

    const int n_max = std::max(nx, ny);
    std::vector<double> f(n_max), d(n_max), z(n_max + 1);
    std::vector<int> v(n_max);
    std::vector<double> field(occupancy.size());

    for (int ix = 0; ix < nx; ++ix) {
        for (int iy = 0; iy < ny; ++iy)
            f[iy] = occupancy[index(ix, iy)] ? 0.0 : kBigDist;
        dt_1d(f, d, ny, v, z);
        for (int iy = 0; iy < ny; ++iy) field[index(ix, iy)] = d[iy];
    }
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) f[ix] = field[index(ix, iy)];
        dt_1d(f, d, nx, v, z);
        for (int ix = 0; ix < nx; ++ix) {
            const std::size_t id = index(ix, iy);
            if (!occupancy[id] && d[ix] <= limit2) {
                occupancy[id] = 1;
                ++occupied;
            }
        }
    }
}

void RegionGrid::sweep_subtract(const SensorPose& from, const SensorPose& to,
                                std::vector<std::uint8_t>* swath) {
    const std::vector<Vec2> hull =
        convex_hull({from.inner, from.outer, to.outer, to.inner});
    if (hull.size() < 3) return;

    double min_x = hull[0].x, max_x = hull[0].x;
    double min_y = hull[0].y, max_y = hull[0].y;
    for (const Vec2& p : hull) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    int ix0 = std::max(0, static_cast<int>(std::floor((min_x - origin.x) / cell_size)));
    int ix1 = std::min(nx - 1,
                       static_cast<int>(std::ceil((max_x - origin.x) / cell_size)));
    int iy0 = std::max(0, static_cast<int>(std::floor((min_y - origin.y) / cell_size)));
    int iy1 = std::min(ny - 1,
                       static_cast<int>(std::ceil((max_y - origin.y) / cell_size)));

    const double eps = 1e-9 * cell_size;
    const std::size_t m = hull.size();
    for (int iy = iy0; iy <= iy1; ++iy) {
        for (int ix = ix0; ix <= ix1; ++ix) {
            const std::size_t id = index(ix, iy);
            if (!occupancy[id] && !swath) continue;
            const Vec2 p = cell_center(ix, iy);
            bool inside = true;
            for (std::size_t i = 0; i < m; ++i) {
                const Vec2 a = hull[i];
                const Vec2 b = hull[(i + 1) % m];
                if (cross(b - a, p - a) < -eps) {
                    inside = false;
                    break;
                }
            }
            if (!inside) continue;
            if (swath) (*swath)[id] = 1;
            if (occupancy[id]) {
                occupancy[id] = 0;
                --occupied;
            }
        }
    }
}

double RegionGrid::max_distance_from(Vec2 center, Vec2* witness) const {
    double best = -1.0;
    for (int iy = 0; iy < ny; ++iy) {
        for (int ix = 0; ix < nx; ++ix) {
            if (!occupancy[index(ix, iy)]) continue;
            const Vec2 p = cell_center(ix, iy);
            const double d = norm(p - center);
            if (d > best) {
                best = d;
                if (witness) *witness = p;
            }
        }
    }
    return best;
}

void RegionGrid::write_pgm(const std::string& file) const {
    std::ofstream out(file, std::ios::binary);
    out << "P5\n" << nx << " " << ny << "\n255\n";
    std::vector<char> row(nx);
    for (int iy = ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < nx; ++ix)
            row[ix] = occupancy[index(ix, iy)] ? char(255) : char(0);
        out.write(row.data(), nx);
    }
}

SimResult simulate(const Scenario& s, double Vs, ProtocolKind protocol,
                   const SimParams& params) {
    if (!(params.cell_size > 0.0))
        throw std::invalid_argument("cell_size must be positive");
    if (!(params.dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(params.horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
    if (!(Vs * params.dt < params.cell_size))
        throw std::invalid_argument(
            "dt too large for anti-tunneling: require dt < " +
            std::to_string(params.cell_size / Vs));

    const double cell = params.cell_size;
    SweeperPath path = SweeperPath::build(s, Vs, protocol, params.horizon, 3.0 * cell);

    double bound = s.R0;
    for (const PathPhase& ph : path.phases()) {
        const double c_dist = norm(ph.center);
        double reach = 0.0;
        switch (ph.kind) {
            case PathPhase::Kind::Spiral:
                reach = c_dist + ph.R + s.VT * ph.duration;
                break;
            case PathPhase::Kind::Radial:
                reach = c_dist + std::max(std::abs(ph.a0), std::abs(ph.a1)) + 2.0 * s.r;
                break;
            case PathPhase::Kind::Linear:
                reach = c_dist + std::abs(ph.a0) + 2.0 * s.r +
                        std::max(std::abs(ph.x_start),
                                 std::abs(ph.x_start + ph.vx * ph.duration));
                break;
        }
        const double claim_reach = norm(ph.claim_center) + ph.claim_r0 +
                                   s.VT * (ph.t0 + ph.duration - ph.claim_t0);
        bound = std::max({bound, reach, claim_reach});
    }
    bound += (params.dilation_quantum_cells + params.escape_slack_cells + 4.0) * cell;

    RegionGrid grid =
        RegionGrid::make({-bound, -bound}, {bound, bound}, cell, {0.0, 0.0}, s.R0);

    const double slack = params.escape_slack_cells * cell;
    const double quantum = params.dilation_quantum_cells * cell;

    SimResult result;
    result.analytic_total = path.analytic_total();

    const double stop =
        std::min(params.horizon, path.end_time() + 2.0 * params.dt);
    double t = 0.0;
    double pending = 0.0;
    int frame_id = 0;
    SensorPose prev = path.pose(0.0);

    // Cells the sensor covered since the last dilation event. Growth applied
    // in a lump must not jump across the band swept inside the same window:
    // a real evader crossing it would have met the sensor. Recontamination of
    // the swath is deferred to the next window instead.
    std::vector<std::uint8_t> swath(grid.occupancy.size(), 0);
    auto apply_dilation = [&](double dist) {
        grid.dilate(dist);
        for (std::size_t i = 0; i < swath.size(); ++i) {
            if (swath[i] && grid.occupancy[i]) {
                grid.occupancy[i] = 0;
                --grid.occupied;
            }
        }
        std::fill(swath.begin(), swath.end(), std::uint8_t{0});
        ++result.dilation_events;
    };

    while (t < stop && grid.occupied > 0) {
        t += params.dt;
        ++result.steps;
        pending += s.VT * params.dt;
        if (pending >= quantum) {
            apply_dilation(pending);
            pending = 0.0;
            const RegionDisk cl = path.claim(t);
            Vec2 witness;
            const double far = grid.max_distance_from(cl.center, &witness);
            if (far > cl.radius + slack) {
                result.verdict = {VerdictKind::EscapeWitness, t, witness};
                return result;
            }
        }
        const SensorPose cur = path.pose(t);
        grid.sweep_subtract(prev, cur, &swath);
        prev = cur;

        if (!params.frames_dir.empty() && params.frame_stride > 0 &&
            result.steps % params.frame_stride == 0) {
            char name[32];
            std::snprintf(name, sizeof(name), "frame_%06d.pgm", frame_id++);
            grid.write_pgm(params.frames_dir + "/" + name);
        }
    }

    if (grid.occupied == 0) {
        result.verdict = {VerdictKind::DetectionComplete, t, {}};
        return result;
    }
    if (pending > 0.0) apply_dilation(pending);
    const RegionDisk cl = path.claim(t);
    Vec2 witness;
    const double far = grid.max_distance_from(cl.center, &witness);
    if (far > cl.radius + slack) {
        result.verdict = {VerdictKind::EscapeWitness, t, witness};
    } else if (!std::isfinite(path.end_time()) && far <= s.R0 + slack) {
        result.verdict = {VerdictKind::ConfinementHeld, t, {}};
    } else {
        result.verdict = {VerdictKind::TimedOut, t, {}};
    }
    return result;
}

double integrate_spiral_ode(const Scenario& s, double Vs, double R_start,
                            double theta_target, int steps) {
    if (!(Vs > s.VT)) throw std::invalid_argument("sweeper speed must exceed VT");
    if (steps <= 0) throw std::invalid_argument("steps must be positive");
    const double lateral = std::sqrt(Vs * Vs - s.VT * s.VT);
    const double h = theta_target / steps;

    // State (t, Rs) with theta independent: dt/dtheta = Rs/lateral,
    // dRs/dtheta = VT*Rs/lateral.
    double t = 0.0;
    double Rs = R_start - s.r;
    for (int i = 0; i < steps; ++i) {
        const double k1t = Rs / lateral;
        const double k1R = s.VT * Rs / lateral;
        const double k2t = (Rs + 0.5 * h * k1R) / lateral;
        const double k2R = s.VT * (Rs + 0.5 * h * k1R) / lateral;
        const double k3t = (Rs + 0.5 * h * k2R) / lateral;
        const double k3R = s.VT * (Rs + 0.5 * h * k2R) / lateral;
        const double k4t = (Rs + h * k3R) / lateral;
        const double k4R = s.VT * (Rs + h * k3R) / lateral;
        t += h / 6.0 * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
        Rs += h / 6.0 * (k1R + 2.0 * k2R + 2.0 * k3R + k4R);
    }
    return t;
}

bool verify_confinement_inequality(const Scenario& s, double Vs, int grid_n) {
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    const double t_full = drifting::time_to_angle(s, Vs, s.R0, kTwoPi);
    const double rhs = s.R0 - s.r + s.VT * t_full;
    const Vec2 shifted_center{0.0, s.r};
    for (int i = 0; i < grid_n; ++i) {
        for (int j = 0; j < grid_n; ++j) {
            const double theta = grid_n > 1 ? kTwoPi * i / (grid_n - 1) : 0.0;
            const double psi = grid_n > 1 ? kTwoPi * j / (grid_n - 1) : 0.0;
            const Vec2 p = drifting::wavefront_point(s, Vs, theta, psi);
            if (norm(p - shifted_center) > rhs * (1.0 + 1e-9)) return false;
        }
    }
    return true;
}

}  // namespace sweep::oracle
