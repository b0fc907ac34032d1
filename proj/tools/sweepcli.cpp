// Command-line front end: critical-speed queries, sweep schedules with end
// game, parameter studies as CSV, and grid-oracle simulation runs.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sweep/critical_speeds.hpp"
#include "sweep/drifting_spiral.hpp"
#include "sweep/improved_spiral.hpp"
#include "sweep/scenario.hpp"
#include "sweep/wavefront_oracle.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitTimeout = 4;

// Expands `--config path` into `--key value` pairs appended to the argument
// list. The file is flat key=value text mirroring the subcommand's flags;
// keys already given on the command line keep their values.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);

    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + i, args.begin() + i + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + i);
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read config file: " + path);

    auto flag_given = [&](const std::string& name) {
        const std::string full = "--" + name;
        for (const std::string& a : args)
            if (a == full || a.rfind(full + "=", 0) == 0) return true;
        return false;
    };
    const bool speed_given = flag_given("Vs") || flag_given("deltaV");

    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("config line is not key=value: " + line);
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw CLI::ValidationError("config line is not key=value: " + line);
        if (flag_given(key)) continue;
        // --Vs and --deltaV are mutually exclusive, so either flag on the
        // command line overrides both keys.
        if (speed_given && (key == "Vs" || key == "deltaV")) continue;
        args.push_back("--" + key);
        if (!value.empty()) args.push_back(value);
    }
    return args;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

struct ScenarioFlags {
    double R0 = 0.0;
    double r = 0.0;
    double VT = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--R0", R0, "initial evader-region radius")->required();
        cmd->add_option("--r", r, "sensor half-length")->required();
        cmd->add_option("--VT", VT, "maximal evader speed")->required();
    }
    sweep::Scenario validated() const {
        return sweep::validate_scenario({R0, r, VT});
    }
};

struct SpeedFlags {
    std::optional<double> Vs;
    std::optional<double> deltaV;

    void attach(CLI::App* cmd) {
        cmd->add_option("--Vs", Vs, "absolute sweeper speed");
        cmd->add_option("--deltaV", deltaV, "speed increment above critical");
    }
    double resolve(const sweep::Scenario& s, sweep::ProtocolKind protocol) const {
        if (Vs.has_value() == deltaV.has_value())
            throw CLI::ValidationError("exactly one of --Vs/--deltaV is required");
        const sweep::SpeedSpec spec =
            Vs ? sweep::SpeedSpec::absolute(*Vs)
               : sweep::SpeedSpec::above_critical(protocol, *deltaV);
        return sweep::resolve_speed(s, spec);
    }
};

sweep::ProtocolKind parse_protocol(const std::string& name) {
    if (name == "drifting") return sweep::ProtocolKind::DriftingSpiral;
    if (name == "improved") return sweep::ProtocolKind::ImprovedSpiral;
    if (name == "circular") return sweep::ProtocolKind::CircularBaseline;
    throw CLI::ValidationError("unknown protocol: " + name);
}

// Inclusive range "a:b:step"; a single number yields one sample.
std::vector<double> parse_range(const std::string& text) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(std::stod(tok));
    if (parts.size() == 1) return parts;
    if (parts.size() != 3) throw CLI::ValidationError("range must be a:b:step");
    const double a = parts[0], b = parts[1], step = parts[2];
    if (!(step > 0.0) || b < a)
        throw CLI::ValidationError("empty or inverted range: " + text);
    std::vector<double> out;
    for (double v = a; v <= b + 1e-12 * std::max(1.0, std::abs(b)); v += step)
        out.push_back(v);
    return out;
}

class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

int run_critical(const ScenarioFlags& sf, const std::string& format,
                 const std::string& out_path) {
    const sweep::Scenario s = sf.validated();
    const double lb = sweep::lower_bound_speed(s);
    const sweep::NewtonReport improved = sweep::improved_spiral_critical_speed(s);
    const double drift = sweep::drifting_spiral_critical_speed(s);
    const double circ = sweep::circular_critical_speed(s);

    Output out(out_path);
    std::ostream& os = out.stream();
    if (format == "csv") {
        os << "# schema=1\n";
        os << "R0,r,VT,V_LB,V_c_improved,V_c_drifting,V_c_circular\n";
        os << fmt(s.R0) << "," << fmt(s.r) << "," << fmt(s.VT) << "," << fmt(lb)
           << "," << fmt(improved.root) << "," << fmt(drift) << "," << fmt(circ)
           << "\n";
    } else {
        os << "V_LB          " << fmt(lb) << "\n";
        os << "V_c_improved  " << fmt(improved.root) << "\n";
        os << "V_c_drifting  " << fmt(drift) << "\n";
        os << "V_c_circular  " << fmt(circ) << "\n";
    }
    return kExitOk;
}

int run_schedule(const ScenarioFlags& sf, const SpeedFlags& speed,
                 const std::string& protocol_name, const std::string& out_path) {
    const sweep::Scenario s = sf.validated();
    const sweep::ProtocolKind protocol = parse_protocol(protocol_name);
    if (protocol == sweep::ProtocolKind::CircularBaseline)
        throw CLI::ValidationError("schedule supports drifting|improved");
    const double Vs = speed.resolve(s, protocol);

    sweep::SweepSchedule sched;
    sweep::EndGamePlan plan;
    try {
        if (protocol == sweep::ProtocolKind::DriftingSpiral) {
            sched = sweep::drifting::schedule(s, Vs);
            plan = sweep::drifting::endgame(s, Vs, sched.containment_radius);
        } else {
            sched = sweep::improved::schedule(s, Vs);
            plan = sweep::improved::endgame(s, Vs, sched.containment_radius);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    }
    if (!plan.feasible) {
        std::cerr << "infeasible end game: " << plan.infeasible_reason << "\n";
        return kExitInfeasible;
    }

    Output out(out_path);
    std::ostream& os = out.stream();
    os << "# schema=1\n";
    os << "index,R_before,R_after,beta,sweep_time,inward_time,center_y\n";
    for (const sweep::SweepIterationRecord& rec : sched.iterations) {
        os << rec.index << "," << fmt(rec.radius_before) << ","
           << fmt(rec.radius_after) << "," << fmt(rec.beta) << ","
           << fmt(rec.sweep_time) << "," << fmt(rec.inward_time) << ","
           << fmt(rec.center_after.y) << "\n";
    }
    const bool drifting = protocol == sweep::ProtocolKind::DriftingSpiral;
    os << "# N=" << sched.iteration_count << "\n";
    os << "# R_N=" << fmt(sched.containment_radius) << "\n";
    os << "# T_containment=" << fmt(sched.containment_time) << "\n";
    os << "# " << (drifting ? "T_out" : "T_e") << "=" << fmt(plan.entry_time) << "\n";
    os << "# T_l=" << fmt(plan.spiral_time) << "\n";
    os << "# " << (drifting ? "T_in_last" : "T_down") << "="
       << fmt(plan.descent_time) << "\n";
    os << "# R_f=" << fmt(plan.final_radius) << "\n";
    os << "# t=" << fmt(plan.t_right) << "\n";
    os << "# t_tilde=" << fmt(plan.t_back) << "\n";
    os << "# T_linear=" << fmt(plan.linear_time) << "\n";
    os << "# T_total=" << fmt(sched.containment_time + plan.total_time) << "\n";
    return kExitOk;
}

int run_study(const ScenarioFlags& sf, const std::string& alpha_range,
              const std::string& deltaV_range, bool fig14,
              const std::string& protocol_name, const std::string& out_path) {
    const sweep::Scenario base = sf.validated();
    Output out(out_path);
    std::ostream& os = out.stream();

    if (fig14) {
        if (deltaV_range.empty())
            throw CLI::ValidationError("--fig14 requires a --deltaV range");
        const double circ = sweep::circular_critical_speed(base);
        os << "# schema=1\n";
        os << "deltaV,T_total_drifting,T_total_improved\n";
        for (double dv : parse_range(deltaV_range)) {
            const double Vs = circ + dv;
            const auto drift = sweep::drifting::total_time(base, Vs);
            const auto improved = sweep::improved::total_time(base, Vs);
            os << fmt(dv) << "," << fmt(drift.total) << "," << fmt(improved.total)
               << "\n";
        }
        return kExitOk;
    }

    if (!alpha_range.empty() == !deltaV_range.empty())
        throw CLI::ValidationError("exactly one of --alpha/--deltaV is required");
    const sweep::ProtocolKind protocol = parse_protocol(protocol_name);
    if (protocol == sweep::ProtocolKind::CircularBaseline)
        throw CLI::ValidationError("study supports drifting|improved");
    const bool drifting = protocol == sweep::ProtocolKind::DriftingSpiral;

    if (!alpha_range.empty()) {
        // Scale R0 = alpha*r at a fixed speed increment above critical.
        os << "# schema=1\n";
        os << "alpha,N,T_containment\n";
        for (double alpha : parse_range(alpha_range)) {
            sweep::Scenario s = base;
            s.R0 = alpha * s.r;
            s = sweep::validate_scenario(s);
            const double Vs =
                sweep::resolve_speed(s, sweep::SpeedSpec::above_critical(protocol, 1.0));
            const sweep::SweepSchedule sched = drifting
                                                   ? sweep::drifting::schedule(s, Vs)
                                                   : sweep::improved::schedule(s, Vs);
            os << fmt(alpha) << "," << sched.iteration_count << ","
               << fmt(sched.containment_time) << "\n";
        }
        return kExitOk;
    }

    os << "# schema=1\n";
    os << "deltaV,N,T_containment,T_total\n";
    for (double dv : parse_range(deltaV_range)) {
        const double Vs =
            sweep::resolve_speed(base, sweep::SpeedSpec::above_critical(protocol, dv));
        int iteration_count = 0;
        double containment = 0.0;
        double total = 0.0;
        if (drifting) {
            const auto breakdown = sweep::drifting::total_time(base, Vs);
            iteration_count = breakdown.spiral.iteration_count;
            containment = breakdown.spiral.containment_time;
            total = breakdown.total;
        } else {
            const auto breakdown = sweep::improved::total_time(base, Vs);
            iteration_count = breakdown.spiral.iteration_count;
            containment = breakdown.spiral.containment_time;
            total = breakdown.total;
        }
        os << fmt(dv) << "," << iteration_count << "," << fmt(containment) << ","
           << fmt(total) << "\n";
    }
    return kExitOk;
}

int run_simulate(const ScenarioFlags& sf, const SpeedFlags& speed,
                 const std::string& protocol_name, double cell_size, double dt,
                 double horizon, const std::string& frames_dir, int frame_stride) {
    const sweep::Scenario s = sf.validated();
    const sweep::ProtocolKind protocol = parse_protocol(protocol_name);
    if (protocol == sweep::ProtocolKind::CircularBaseline)
        throw CLI::ValidationError("simulate supports drifting|improved");
    const double Vs = speed.resolve(s, protocol);

    sweep::oracle::SimParams params;
    params.cell_size = cell_size > 0.0 ? cell_size : s.r / 20.0;
    params.dt = dt > 0.0 ? dt : 0.5 * params.cell_size / Vs;
    params.horizon = horizon;
    params.frames_dir = frames_dir;
    params.frame_stride = frame_stride;

    sweep::oracle::SimResult result;
    try {
        result = sweep::oracle::simulate(s, Vs, protocol, params);
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid oracle parameters: " << e.what() << "\n";
        return kExitUsage;
    }

    const char* kind = "TimedOut";
    switch (result.verdict.kind) {
        case sweep::oracle::VerdictKind::ConfinementHeld: kind = "ConfinementHeld"; break;
        case sweep::oracle::VerdictKind::EscapeWitness: kind = "EscapeWitness"; break;
        case sweep::oracle::VerdictKind::DetectionComplete: kind = "DetectionComplete"; break;
        case sweep::oracle::VerdictKind::TimedOut: kind = "TimedOut"; break;
    }
    std::cout << "verdict: " << kind << "\n";
    std::cout << "time: " << fmt(result.verdict.time) << "\n";
    if (result.verdict.kind == sweep::oracle::VerdictKind::EscapeWitness)
        std::cout << "witness: " << fmt(result.verdict.witness.x) << ","
                  << fmt(result.verdict.witness.y) << "\n";
    std::cout << "analytic_total: " << fmt(result.analytic_total) << "\n";
    if (result.verdict.kind == sweep::oracle::VerdictKind::DetectionComplete &&
        std::isfinite(result.analytic_total) && result.analytic_total > 0.0) {
        std::cout << "relative_error: "
                  << fmt(std::abs(result.verdict.time - result.analytic_total) /
                         result.analytic_total)
                  << "\n";
    }
    return result.verdict.kind == sweep::oracle::VerdictKind::TimedOut ? kExitTimeout
                                                                       : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Guaranteed-detection sweep search planner and verifier"};
    app.require_subcommand(1);

    static constexpr const char* kConfigHelp =
        "flat key=value file mirroring this subcommand's flags; flags override";
    std::string config_path;
    ScenarioFlags scn_critical, scn_schedule, scn_study, scn_simulate;
    SpeedFlags speed_schedule, speed_simulate;
    std::string format = "text";
    std::string out_critical, out_schedule, out_study;
    std::string protocol_schedule, protocol_study = "drifting", protocol_simulate;
    std::string alpha_range, deltaV_range, frames_dir;
    bool fig14 = false;
    double cell_size = 0.0, dt = 0.0, horizon = 0.0;
    int frame_stride = 50;

    CLI::App* critical = app.add_subcommand("critical", "critical speeds for all protocols");
    scn_critical.attach(critical);
    critical->add_option("--format", format)->check(CLI::IsMember({"text", "csv"}));
    critical->add_option("--out", out_critical, "output path (default stdout)");
    critical->add_option("--config", config_path, kConfigHelp);

    CLI::App* schedule = app.add_subcommand("schedule", "per-iteration sweep schedule with end game");
    scn_schedule.attach(schedule);
    speed_schedule.attach(schedule);
    schedule->add_option("--protocol", protocol_schedule)->required();
    schedule->add_option("--out", out_schedule, "output path (default stdout)");
    schedule->add_option("--config", config_path, kConfigHelp);

    CLI::App* study = app.add_subcommand("study", "parameter studies as CSV");
    scn_study.attach(study);
    study->add_option("--alpha", alpha_range, "alpha range a:b:step (R0 = alpha*r)");
    study->add_option("--deltaV", deltaV_range, "deltaV range a:b:step");
    study->add_flag("--fig14", fig14, "compare protocols at deltaV above the circular critical speed");
    study->add_option("--protocol", protocol_study);
    study->add_option("--out", out_study, "output path (default stdout)");
    study->add_option("--config", config_path, kConfigHelp);

    CLI::App* simulate = app.add_subcommand("simulate", "grid-oracle verification run");
    scn_simulate.attach(simulate);
    speed_simulate.attach(simulate);
    simulate->add_option("--protocol", protocol_simulate)->required();
    simulate->add_option("--cell-size", cell_size, "grid cell size (default r/20)");
    simulate->add_option("--dt", dt, "time step (default 0.5*cell/Vs)");
    simulate->add_option("--horizon", horizon, "simulation horizon")->required();
    simulate->add_option("--frames", frames_dir, "directory for PGM occupancy frames");
    simulate->add_option("--frame-stride", frame_stride, "steps between frames");
    simulate->add_option("--config", config_path, kConfigHelp);

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*critical) return run_critical(scn_critical, format, out_critical);
        if (*schedule)
            return run_schedule(scn_schedule, speed_schedule, protocol_schedule,
                                out_schedule);
        if (*study)
            return run_study(scn_study, alpha_range, deltaV_range, fig14,
                             protocol_study, out_study);
        if (*simulate)
            return run_simulate(scn_simulate, speed_simulate, protocol_simulate,
                                cell_size, dt, horizon, frames_dir, frame_stride);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
