// pstcube: plan, simulate, and certify perfect state transfer on switched
// hypercube qubit networks.
//
// Exit codes: 0 success, 2 validation error, 3 numerical-contract violation,
// 4 I/O failure.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pstcube/coupler.hpp"
#include "pstcube/graph.hpp"
#include "pstcube/io.hpp"
#include "pstcube/robustness.hpp"
#include "pstcube/spinsim.hpp"
#include "pstcube/walker.hpp"

namespace {

using nlohmann::json;
using namespace pstcube;

constexpr double kPi = std::numbers::pi;
constexpr double kUnitarityTol = 1e-10;

struct NumericalContractViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Output sink: file when --out is given, stdout otherwise.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::ios_base::failure("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        stream().flush();
        if (file_.is_open() && !file_)
            throw std::ios_base::failure("write failure on output file");
    }

private:
    std::ofstream file_;
};

std::vector<std::string> config_comments(const json& config) {
    std::vector<std::string> lines;
    for (const auto& [key, value] : config.items())
        lines.push_back(key + "=" + (value.is_string() ? value.get<std::string>()
                                                       : value.dump()));
    return lines;
}

void emit_json(Sink& sink, json j, const json& config) {
    j["config"] = config;
    sink.stream() << j.dump(2) << '\n';
    sink.finish();
}

HamiltonianKind parse_kind(const std::string& model) {
    if (model == "adjacency") return HamiltonianKind::Adjacency;
    if (model == "laplacian") return HamiltonianKind::Laplacian;
    throw std::invalid_argument("unknown model '" + model +
                                "' (expected adjacency or laplacian)");
}

// ---------------------------------------------------------------- plan ----

int cmd_plan(int n, const std::string& x_text, const std::string& y_text,
             const std::string& out, const std::string& format) {
    const VertexLabel x = VertexLabel::parse(n, x_text);
    const VertexLabel y = VertexLabel::parse(n, y_text);
    const SubcubeSpec spec = induced_subcube(x, y);

    std::cout << "subcube dimension d = " << spec.d << " (Hamming distance of endpoints)\n";
    std::cout << "fixed positions:";
    for (const auto& [pos, bit] : spec.fixed_positions)
        std::cout << " " << pos << "=" << bit;
    std::cout << "\nfree positions:";
    for (int pos : spec.free_positions) std::cout << " " << pos;
    std::cout << "\nvertices (" << spec.vertices.size() << "):";
    for (const auto& v : spec.vertices) std::cout << " " << v.to_string();
    const bool antipodal = hamming_distance(x, y) == spec.d;
    std::cout << "\nendpoints antipodal within the subcube: " << (antipodal ? "yes" : "no")
              << "\n";

    json config{{"command", "plan"}, {"n", n}, {"x", x.to_string()}, {"y", y.to_string()},
                {"format", format}};
    Sink sink(out);
    if (format == "csv") {
        io::CsvWriter csv(sink.stream(), {"vertex", "index"});
        for (const auto& line : config_comments(config)) csv.comment(line);
        for (const auto& v : spec.vertices)
            csv.row(std::vector<std::string>{v.to_string(), std::to_string(v.index)});
        sink.finish();
    } else {
        emit_json(sink, io::subcube_to_json(spec), config);
    }
    return 0;
}

// -------------------------------------------------------------- evolve ----

int cmd_evolve(int n, const std::string& x_text, const std::string& y_text,
               const std::string& model, double t_max, int t_steps,
               const std::string& out, const std::string& format) {
    if (t_steps < 1) throw std::invalid_argument("--t-steps must be at least 1");
    if (t_max < 0.0) throw std::invalid_argument("--t-max must be nonnegative");
    const VertexLabel x = VertexLabel::parse(n, x_text);
    const VertexLabel y = VertexLabel::parse(n, y_text);
    const SubcubeSpec spec = induced_subcube(x, y);
    const WeightedGraph switched = apply_switching(make_hypercube(n), spec);
    const WalkHamiltonian h = WalkHamiltonian::of(switched, parse_kind(model));

    std::vector<double> grid(static_cast<std::size_t>(t_steps));
    for (int i = 0; i < t_steps; ++i)
        grid[static_cast<std::size_t>(i)] =
            t_steps == 1 ? 0.0 : t_max * i / (t_steps - 1);
    const auto curve = fidelity_curve(h, x.index, y.index, grid);

    const SpectralPropagator prop(h);
    const double defect = prop.unitarity_defect(t_max);
    if (defect > kUnitarityTol)
        throw NumericalContractViolation("propagator unitarity defect " +
                                         io::format_double(defect));

    const double t0 = kPi / 2.0;
    const FidelityReport at_t0 = transfer_fidelity(h, t0, x.index, y.index);
    std::cout << "fidelity at t0 = pi/2: " << io::format_double(at_t0.fidelity) << "\n";

    json config{{"command", "evolve"},  {"n", n},
                {"x", x.to_string()},   {"y", y.to_string()},
                {"model", model},       {"t_max", t_max},
                {"t_steps", t_steps},   {"format", format}};
    Sink sink(out);
    if (format == "json") {
        json points = json::array();
        for (const auto& r : curve) points.push_back(io::fidelity_report_to_json(r));
        emit_json(sink, json{{"curve", std::move(points)},
                             {"fidelity_at_t0", at_t0.fidelity}}, config);
    } else {
        io::CsvWriter csv(sink.stream(), {"t", "re_amplitude", "im_amplitude", "fidelity"});
        for (const auto& line : config_comments(config)) csv.comment(line);
        csv.comment("fidelity_at_t0=" + io::format_double(at_t0.fidelity));
        for (const auto& r : curve)
            csv.row({r.time, r.amplitude.real(), r.amplitude.imag(), r.fidelity});
        sink.finish();
    }
    return 0;
}

// ------------------------------------------------------ coupling-curve ----

int cmd_coupling_curve(const std::string& params_path, double omega_c_min,
                       double omega_c_max, int points, const std::string& out,
                       const std::string& format) {
    if (points < 2) throw std::invalid_argument("--points must be at least 2");
    if (!(omega_c_min < omega_c_max))
        throw std::invalid_argument("--omega-c-min must be below --omega-c-max");
    const CouplerParams base = io::load_coupler_params(params_path);

    std::string cutoff_note = "none within [omega + 0.01, 4 omega]";
    double cutoff = 0.0;
    bool has_cutoff = false;
    try {
        cutoff = cutoff_frequency(base);
        has_cutoff = true;
        cutoff_note = io::format_double(cutoff);
    } catch (const std::domain_error&) {
    }

    json config{{"command", "coupling-curve"}, {"params", params_path},
                {"omega_c_min", omega_c_min},  {"omega_c_max", omega_c_max},
                {"points", points},            {"format", format}};
    Sink sink(out);
    if (format == "json") {
        json rows = json::array();
        for (int i = 0; i < points; ++i) {
            const double wc = omega_c_min + (omega_c_max - omega_c_min) * i / (points - 1);
            const double j = effective_coupling_full(base.with_omega_c(wc));
            rows.push_back({{"omega_c", wc}, {"delta", base.omega_i - wc}, {"J", j}});
        }
        json j{{"curve", std::move(rows)}};
        if (has_cutoff) j["cutoff_omega"] = cutoff;
        emit_json(sink, std::move(j), config);
    } else {
        io::CsvWriter csv(sink.stream(), {"omega_c", "delta", "J"});
        for (const auto& line : config_comments(config)) csv.comment(line);
        csv.comment("cutoff_omega=" + cutoff_note);
        for (int i = 0; i < points; ++i) {
            const double wc = omega_c_min + (omega_c_max - omega_c_min) * i / (points - 1);
            csv.row({wc, base.omega_i - wc, effective_coupling_full(base.with_omega_c(wc))});
        }
        sink.finish();
    }
    return 0;
}

// ------------------------------------------------------------ schedule ----

int cmd_schedule(int n, const std::string& x_text, const std::string& y_text,
                 const std::string& params_path, double omega_on, const std::string& out) {
    const VertexLabel x = VertexLabel::parse(n, x_text);
    const VertexLabel y = VertexLabel::parse(n, y_text);
    const CouplerParams base = io::load_coupler_params(params_path);

    const WeightedGraph ambient = make_hypercube(n);
    EdgeParamsMap per_edge;
    for (const auto& [edge, w] : ambient.edges()) {
        (void)w;
        per_edge[edge] = base;
    }
    const Schedule schedule = compile_schedule(n, x, y, per_edge, omega_on);
    if (!schedule.warning.empty()) std::cerr << "warning: " << schedule.warning << "\n";

    std::size_t on = 0;
    for (const auto& e : schedule.edges)
        if (e.state == EdgeState::On) ++on;
    std::cout << "edges on: " << on << ", off: " << schedule.edges.size() - on
              << ", J_on = " << io::format_double(schedule.j_on)
              << " GHz, t0 = " << io::format_double(schedule.t0_ns) << " ns\n";

    json config{{"command", "schedule"}, {"n", n},
                {"x", x.to_string()},    {"y", y.to_string()},
                {"params", params_path}, {"omega_on", omega_on}};
    Sink sink(out);
    emit_json(sink, io::schedule_to_json(schedule), config);
    return 0;
}

// ---------------------------------------------------------- robustness ----

int cmd_robustness(int n, const std::string& x_text, const std::string& y_text,
                   double delta_rel, double off_leakage, std::uint64_t trials,
                   std::uint64_t seed, const std::string& out, const std::string& format) {
    const VertexLabel x = VertexLabel::parse(n, x_text);
    const VertexLabel y = VertexLabel::parse(n, y_text);
    const SubcubeSpec spec = induced_subcube(x, y);
    const WeightedGraph switched = apply_switching(make_hypercube(n), spec);

    const double j_on = 1.0;  // dimensionless schedule units
    const double t0 = kPi / 2.0;
    const RobustnessReport report =
        monte_carlo_fidelity(switched, spec, delta_rel, j_on, t0, trials, seed, off_leakage);

    for (const TrialRecord& rec : report.records)
        if (rec.fidelity < rec.bound - 1e-12)
            throw NumericalContractViolation(
                "certified bound violated on trial " + std::to_string(rec.trial) +
                ": fidelity " + io::format_double(rec.fidelity) + " < bound " +
                io::format_double(rec.bound));

    std::cout << "min fidelity " << io::format_double(report.min_fidelity)
              << ", certified spectral bound " << io::format_double(report.bound_spectral)
              << " over " << trials << " trials\n";

    json config{{"command", "robustness"}, {"n", n},
                {"x", x.to_string()},      {"y", y.to_string()},
                {"delta_rel", delta_rel},  {"off_leakage", off_leakage},
                {"trials", trials},        {"seed", seed},
                {"format", format}};
    Sink sink(out);
    if (format == "csv") {
        io::write_robustness_csv(sink.stream(), report, config_comments(config));
        sink.finish();
    } else {
        emit_json(sink, io::robustness_report_to_json(report), config);
    }
    return 0;
}

// ---------------------------------------------------------- spin-check ----

int cmd_spin_check(const std::string& out) {
    int failures = 0;
    const auto check = [&failures](const std::string& name, bool ok, const std::string& detail) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << detail << "\n";
        if (!ok) ++failures;
    };

    const std::vector<std::pair<std::string, WeightedGraph>> graphs = {
        {"K2", make_hypercube(1)},
        {"P3", make_path(3)},
        {"Q2", make_hypercube(2)},
        {"Q3", make_hypercube(3)},
    };

    for (const auto& [name, g] : graphs) {
        const auto xy = build_xy_hamiltonian(SpinNetworkSpec::normalized(g, SpinModel::XY));
        const double dev =
            (single_excitation_block(xy) - g.adjacency_matrix()).cwiseAbs().maxCoeff();
        check("XY single-excitation block equals adjacency on " + name, dev == 0.0,
              "max deviation " + io::format_double(dev));
    }

    for (const auto& [name, g] : graphs) {
        auto spec = SpinNetworkSpec::normalized(g, SpinModel::Heisenberg);
        const FieldCalibration cal = calibrate_local_fields(g, spec.coupling_J);
        spec.local_fields_B = cal.B;
        const Eigen::MatrixXd block = single_excitation_block(build_heisenberg_hamiltonian(spec));
        const Eigen::MatrixXd expected =
            cal.offset_c * Eigen::MatrixXd::Identity(block.rows(), block.cols()) +
            g.laplacian_matrix();
        const double dev = (block - expected).cwiseAbs().maxCoeff();
        check("calibrated Heisenberg block equals c*I + Laplacian on " + name, dev <= 1e-12,
              "max deviation " + io::format_double(dev));
    }

    // Effective-model error vs coupling strength: fixed 2 ns horizon, couplings
    // co-scaled so the direct and mediated parts keep their ratio.
    const double omega = 4.0, omega_c = 5.426;
    const double detuning = std::abs(omega - omega_c);
    std::vector<double> gs, devs;
    for (double frac : {0.025, 0.05, 0.1}) {
        const double g = frac * detuning;
        CouplerParams p;
        p.C_i = p.C_j = 71.0;
        p.C_c = 200.0;
        p.omega_i = p.omega_j = omega;
        p.omega_c = omega_c;
        p.C_ic = p.C_jc = 2.0 * g * std::sqrt(p.C_i * p.C_c) / std::sqrt(omega * omega_c);
        p.C_ij = 2.0 * (1.2 * g) * std::sqrt(p.C_i * p.C_j) / omega - p.C_ic * p.C_jc / p.C_c;
        gs.push_back(g);
        devs.push_back(sw_effective_coupling_check(p, 2.0).max_deviation);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
        const double lx = std::log(gs[i]), ly = std::log(devs[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double m = static_cast<double>(gs.size());
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    check("effective-model error scales cubically with g", slope >= 2.5 && slope <= 3.5,
          "log-log slope " + io::format_double(slope));

    if (!out.empty()) {
        Sink sink(out);
        io::CsvWriter csv(sink.stream(), {"g", "deviation"});
        csv.comment("command=spin-check");
        csv.comment("slope=" + io::format_double(slope));
        for (std::size_t i = 0; i < gs.size(); ++i) csv.row({gs[i], devs[i]});
        sink.finish();
    }
    return failures == 0 ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perfect state transfer on switched hypercube qubit networks"};
    app.require_subcommand(1);

    int n = 4;
    std::string x_text, y_text;
    std::string model = "adjacency";
    double t_max = kPi;
    int t_steps = 201;
    std::string params_path;
    double omega_on = 0.0;
    double omega_c_min = 0.0, omega_c_max = 0.0;
    int points = 201;
    double delta_rel = 0.005;
    double off_leakage = 0.0;
    std::uint64_t trials = 1000, seed = 42;
    std::string out;
    std::string plan_format = "json", evolve_format = "csv", curve_format = "csv",
                robust_format = "json";

    const auto add_pair = [&](CLI::App* cmd) {
        cmd->add_option("--n", n, "hypercube dimension")->required();
        cmd->add_option("--x", x_text, "source vertex (bit string or integer)")->required();
        cmd->add_option("--y", y_text, "target vertex (bit string or integer)")->required();
    };
    const auto add_output = [&](CLI::App* cmd, std::string& format) {
        cmd->add_option("--out", out, "output file (default: stdout)");
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    auto* plan = app.add_subcommand("plan", "select the induced sub-hypercube for a pair");
    add_pair(plan);
    add_output(plan, plan_format);

    auto* evolve = app.add_subcommand("evolve", "switch, run the walk, emit the fidelity curve");
    add_pair(evolve);
    evolve->add_option("--model", model, "adjacency or laplacian")
        ->check(CLI::IsMember({"adjacency", "laplacian"}));
    evolve->add_option("--t-max", t_max, "end of the time grid (units 1/J)");
    evolve->add_option("--t-steps", t_steps, "number of grid points");
    add_output(evolve, evolve_format);

    auto* curve = app.add_subcommand("coupling-curve", "effective coupling vs coupler frequency");
    curve->add_option("--params", params_path, "coupler parameter JSON file")->required();
    curve->add_option("--omega-c-min", omega_c_min, "low end of the coupler sweep (GHz)")
        ->required();
    curve->add_option("--omega-c-max", omega_c_max, "high end of the coupler sweep (GHz)")
        ->required();
    curve->add_option("--points", points, "number of sweep points");
    add_output(curve, curve_format);

    auto* sched = app.add_subcommand("schedule", "compile the per-edge switching schedule");
    add_pair(sched);
    sched->add_option("--params", params_path, "coupler parameter JSON file")->required();
    sched->add_option("--omega-on", omega_on, "coupler frequency for On edges (GHz)")
        ->required();
    sched->add_option("--out", out, "output file (default: stdout)");

    auto* robust = app.add_subcommand("robustness", "Monte-Carlo fidelity with certified bounds");
    add_pair(robust);
    robust->add_option("--delta-rel", delta_rel, "relative On-edge miscalibration");
    robust->add_option("--off-leakage", off_leakage, "relative leakage on Off edges");
    robust->add_option("--trials", trials, "Monte-Carlo trials");
    robust->add_option("--seed", seed, "root RNG seed");
    add_output(robust, robust_format);

    auto* spin = app.add_subcommand("spin-check", "run the spin-model validation suites");
    spin->add_option("--out", out, "write the scaling study as CSV (g, deviation)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (plan->parsed()) return cmd_plan(n, x_text, y_text, out, plan_format);
        if (evolve->parsed())
            return cmd_evolve(n, x_text, y_text, model, t_max, t_steps, out, evolve_format);
        if (curve->parsed())
            return cmd_coupling_curve(params_path, omega_c_min, omega_c_max, points, out,
                                      curve_format);
        if (sched->parsed())
            return cmd_schedule(n, x_text, y_text, params_path, omega_on, out);
        if (robust->parsed())
            return cmd_robustness(n, x_text, y_text, delta_rel, off_leakage, trials, seed,
                                  out, robust_format);
        return cmd_spin_check(out);
    } catch (const NumericalContractViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
