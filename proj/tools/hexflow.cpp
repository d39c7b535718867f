// hexflow command-line entry point
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "hexflow/chfield.hpp"
#include "hexflow/error.hpp"
#include "hexflow/flow.hpp"
#include "hexflow/network.hpp"
#include "hexflow/scenarios.hpp"
#include "hexflow/shrinker.hpp"

#ifndef HEXFLOW_FIXTURE_DIR
#define HEXFLOW_FIXTURE_DIR "fixtures"
#endif

namespace fs = std::filesystem;
using namespace hexflow;
using json = nlohmann::ordered_json;

namespace {

enum Exit { Ok = 0, DomainFailure = 1, InputError = 2 };

struct RunConfig {
    std::string format = "text";
    std::string config_path;
    unsigned long seed = 0;
    ValidateOptions validate;
    FlowOptions flow;
};

// tolerances and integrator parameters from a JSON file
void load_config(RunConfig& rc) {
    if (rc.config_path.empty()) return;
    std::ifstream in(rc.config_path);
    if (!in) throw Error(ErrorCode::SchemaError, "cannot open config " + rc.config_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, std::string("config: ") + e.what());
    }
    auto positive = [&](const char* key, double& slot) {
        if (!j.contains(key)) return;
        double v = j[key].get<double>();
        if (!(v > 0)) throw Error(ErrorCode::SchemaError, std::string("config: ") + key + " must be positive");
        slot = v;
    };
    positive("angle_tol", rc.validate.angle_tol);
    positive("incidence_tol", rc.validate.incidence_tol);
    positive("eta", rc.flow.eta);
    positive("speed_fraction", rc.flow.speed_fraction);
    positive("rebase_theta", rc.flow.rebase_theta);
    positive("eps_len_rel", rc.flow.eps_len_rel);
    positive("compat_tol", rc.flow.compat_tol);
    if (j.contains("max_steps")) rc.flow.max_steps = j["max_steps"].get<long>();
    if (j.contains("sample_interval")) rc.flow.sample_interval = j["sample_interval"].get<double>();
    if (j.contains("seed")) rc.seed = j["seed"].get<unsigned long>();
}

// a path, or a fixture name looked up in HEXFLOW_FIXTURES and the bundled directory
std::string resolve(const std::string& arg) {
    if (fs::exists(arg)) return arg;
    std::vector<fs::path> dirs;
    if (const char* env = std::getenv("HEXFLOW_FIXTURES")) dirs.emplace_back(env);
    dirs.emplace_back(HEXFLOW_FIXTURE_DIR);
    for (const auto& d : dirs)
        for (const std::string& name : {arg, arg + ".json", fs::path(arg).filename().string()}) {
            fs::path p = d / name;
            if (fs::exists(p)) return p.string();
        }
    throw Error(ErrorCode::SchemaError, "no such network file or fixture: " + arg);
}

std::string g6(double x) { return fmt::format("{:.6g}", x); }

int cmd_validate(const RunConfig& rc, const std::string& path) {
    Network net = load_network(resolve(path));
    ValidationReport rep = validate_admissible(net, rc.validate);
    std::vector<std::string> warnings;
    std::vector<JunctionInfo> junctions;
    if (rep.ok) {
        junctions = classify_junctions(net, rc.validate.angle_tol);
        try {
            minimal_field(net);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::NoCHField || e.code() == ErrorCode::UnsupportedJunction) warnings.push_back(e.what());
            else throw;
        }
    }
    if (rc.format == "json") {
        json j;
        j["valid"] = rep.ok;
        j["violations"] = json::array();
        for (const auto& v : rep.violations) j["violations"].push_back({{"kind", v.kind}, {"message", v.message}});
        j["junctions"] = json::array();
        for (const auto& ji : junctions)
            j["junctions"].push_back({{"vertex", net.vertices[ji.vertex].id},
                                      {"degree", ji.degree},
                                      {"type", junction_type_name(ji.type)}});
        j["warnings"] = warnings;
        std::cout << j.dump(2) << "\n";
    } else {
        fmt::print("{}: {}\n", path, rep.ok ? "admissible" : "NOT admissible");
        for (const auto& v : rep.violations) fmt::print("  violation [{}] {}\n", v.kind, v.message);
        for (const auto& ji : junctions)
            fmt::print("  junction {} degree {} type {}\n", net.vertices[ji.vertex].id, ji.degree,
                       junction_type_name(ji.type));
        for (const auto& w : warnings) fmt::print("  warning: {}\n", w);
    }
    return rep.ok ? Ok : DomainFailure;
}

int cmd_chfield(const RunConfig& rc, const std::string& path, std::optional<double> eps) {
    Network net = load_network(resolve(path));
    ValidationReport rep = validate_admissible(net, rc.validate);
    if (!rep.ok) {
        fmt::print(std::cerr, "network is not admissible: {}\n", rep.violations.front().message);
        return DomainFailure;
    }
    MinimalCHField f = minimal_field(net);
    std::optional<QPSolution> abstract;
    if (eps) abstract = solve(broken_turlik_program(*eps));

    if (rc.format == "json") {
        json j = json::parse(curvature_report_json(net, f));
        if (abstract) {
            ArmCurvatures k = broken_turlik_arms(abstract->x);
            j["broken_turlik"] = {{"eps", *eps},
                                  {"x", abstract->x},
                                  {"kappa", {{"S12", k.s12}, {"S11", k.s11}, {"S10", k.s10}, {"S9", k.s9}}}};
        }
        std::cout << j.dump(2) << "\n";
        return Ok;
    }
    fmt::print("{:<10} {:>6} {:>12} {:>12} {:>12} {:>12}  {}\n", "edge", "facet", "length", "s_from", "s_to",
               "kappa", "class");
    for (size_t e = 0; e < net.edges.size(); ++e) {
        std::string len = net.edges[e].is_segment() ? g6(f.length[e]) : "inf";
        fmt::print("{:<10} {:>6} {:>12} {:>12} {:>12} {:>12}  {}\n", net.edges[e].id, f.facet[e], len, g6(f.s_from[e]),
                   g6(f.s_to[e]), g6(f.kappa[e]), f.bc_flag[e] ? "bc" : "ic");
    }
    fmt::print("critical: {}\n", is_critical(f) ? "yes" : "no");
    auto viol = verify_balance(net, f);
    fmt::print("balance violations: {}\n", viol.size());
    if (abstract) {
        ArmCurvatures k = broken_turlik_arms(abstract->x);
        fmt::print("quadruple-junction program, eps = {}\n", g6(*eps));
        for (int i = 0; i < 6; ++i) fmt::print("  x{} = {}\n", i + 1, g6(abstract->x[i]));
        fmt::print("  kappa S12 = {}\n  kappa S11 = {}\n  kappa S10 = {}\n  kappa S9  = {}\n", g6(k.s12), g6(k.s11),
                   g6(k.s10), g6(k.s9));
    }
    return Ok;
}

int cmd_evolve(const RunConfig& rc, const std::string& path, double horizon, const std::string& csv,
               const std::string& svg_dir) {
    Network net = load_network(resolve(path));
    ValidationReport rep = validate_admissible(net, rc.validate);
    if (!rep.ok) {
        fmt::print(std::cerr, "network is not admissible: {}\n", rep.violations.front().message);
        return DomainFailure;
    }
    Trajectory traj = evolve(net, horizon, rc.flow);
    if (!csv.empty()) {
        std::ofstream out(csv);
        if (!out) throw Error(ErrorCode::SchemaError, "cannot write " + csv);
        write_csv(traj, out);
    }
    int frames = svg_dir.empty() ? 0 : write_svg_frames(traj, svg_dir);

    bool failed = false;
    for (const auto& ev : traj.events) failed = failed || ev.reason.rfind("no evolution law", 0) == 0;
    if (rc.format == "json") {
        json j;
        j["steps"] = traj.steps;
        j["samples"] = traj.samples.size();
        j["frames"] = frames;
        j["events"] = json::array();
        for (const auto& ev : traj.events)
            j["events"].push_back({{"kind", event_kind_name(ev.kind)},
                                   {"t", ev.t},
                                   {"reason", ev.reason},
                                   {"critical", ev.critical},
                                   {"higher_multiplicity", ev.higher_multiplicity}});
        std::cout << j.dump(2) << "\n";
    } else {
        fmt::print("steps {}  samples {}\n", traj.steps, traj.samples.size());
        for (const auto& ev : traj.events)
            fmt::print("  {:<10} t = {:.10g}  {}{}{}\n", event_kind_name(ev.kind), ev.t, ev.reason,
                       ev.critical ? " [critical]" : "", ev.higher_multiplicity ? " [multiplicity > 1]" : "");
        if (frames) fmt::print("wrote {} frames to {}\n", frames, svg_dir);
    }
    return failed ? DomainFailure : Ok;
}

int cmd_shrink(const RunConfig& rc, bool classify, const std::string& verify, int jobs, double a0) {
    if (classify) {
        auto rows = classify_all(jobs);
        if (rc.format == "json") std::cout << classification_json(rows) << "\n";
        else std::cout << classification_text(rows);
        return Ok;
    }
    ShrinkerConfig cfg = ShrinkerConfig::parse(verify);
    std::optional<ShrinkerSolution> sol;
    if (!cfg.vertex_centered) sol = solve_config(cfg);
    FlowVerification fv = verify_by_flow(cfg, a0, 0.5, rc.flow);
    bool yes = fv.homothetic;
    if (rc.format == "json") {
        json j;
        j["config"] = normalize(cfg).name();
        j["shrinker"] = yes;
        if (sol) {
            j["sides"] = sol->sides;
            j["theta"] = sol->theta;
            j["theta_bar"] = sol->theta_bar;
            j["lambda"] = sol->lambda;
        }
        j["flow"] = {{"horizon", fv.horizon},
                     {"lambda_measured", fv.lambda_measured},
                     {"residual", fv.residual},
                     {"homothetic", fv.homothetic},
                     {"discrepancy", fv.discrepancy}};
        std::cout << j.dump(2) << "\n";
    } else {
        fmt::print("{}: {}\n", normalize(cfg).name(), yes ? "shrinker" : "NOT a shrinker");
        if (sol) {
            std::string sides;
            for (double s : sol->sides) sides += (sides.empty() ? "" : ", ") + g6(s * a0);
            fmt::print("  sides ({})\n", sides);
            fmt::print("  theta {} {} {} {}  theta_bar {} {} {} {}\n", g6(sol->theta[0]), g6(sol->theta[1]),
                       g6(sol->theta[2]), g6(sol->theta[3]), g6(sol->theta_bar[0]), g6(sol->theta_bar[1]),
                       g6(sol->theta_bar[2]), g6(sol->theta_bar[3]));
            fmt::print("  lambda {}  collapse time {}\n", g6(sol->lambda), g6(sol->collapse_time * a0 * a0));
        } else if (!cfg.vertex_centered) {
            fmt::print("  no positive solution of the angle system\n");
        }
        fmt::print("  flow to t = {}: homothety residual {}, measured lambda {}\n", g6(fv.horizon), g6(fv.residual),
                   g6(fv.lambda_measured));
        if (!fv.discrepancy.empty()) fmt::print("  {}\n", fv.discrepancy);
    }
    return yes ? Ok : DomainFailure;
}

int cmd_render(const std::string& path, const std::string& out) {
    Network net = load_network(resolve(path));
    double xmin = 1e300, ymin = 1e300, xmax = -1e300, ymax = -1e300;
    for (const auto& v : net.vertices) {
        xmin = std::min(xmin, v.pos.x);
        ymin = std::min(ymin, v.pos.y);
        xmax = std::max(xmax, v.pos.x);
        ymax = std::max(ymax, v.pos.y);
    }
    double w = std::max(xmax - xmin, 1.0), h = std::max(ymax - ymin, 1.0);
    double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax), s = 1.6 * std::max(w, h);
    std::string svg = render_svg(net, cx - s / 2, cy - s / 2, s, s);
    if (out.empty() || out == "-") {
        std::cout << svg;
    } else {
        std::ofstream f(out);
        if (!f) throw Error(ErrorCode::SchemaError, "cannot write " + out);
        f << svg;
    }
    return Ok;
}

int exit_for(const Error& e) {
    switch (e.code()) {
    case ErrorCode::SchemaError:
    case ErrorCode::DanglingReference:
    case ErrorCode::DuplicateId:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnboundedEdge: return InputError;
    default: return DomainFailure;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"crystalline curvature flow of hexagonal networks"};
    app.require_subcommand(1);
    RunConfig rc;
    app.add_option("--format", rc.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--config", rc.config_path, "JSON file with tolerances and integrator parameters");
    app.add_option("--seed", rc.seed, "seed for randomized runs");

    std::string path;
    auto* validate = app.add_subcommand("validate", "check admissibility and classify junctions");
    validate->add_option("network", path, "network file or fixture name")->required();

    auto* chfield = app.add_subcommand("chfield", "minimal Cahn-Hoffman field and curvatures");
    chfield->add_option("network", path, "network file or fixture name")->required();
    std::optional<double> eps;
    chfield->add_option("--eps", eps, "also solve the quadruple-junction program for this leg deficit");

    auto* evolve_cmd = app.add_subcommand("evolve", "run the crystalline curvature flow");
    evolve_cmd->add_option("network", path, "network file or fixture name")->required();
    double horizon = 1.0;
    std::string csv, svg_dir;
    evolve_cmd->add_option("--horizon", horizon, "final time")->check(CLI::PositiveNumber);
    evolve_cmd->add_option("--csv", csv, "write the trajectory as CSV");
    evolve_cmd->add_option("--svg-dir", svg_dir, "write one SVG frame per sample");
    evolve_cmd->add_option("--eta", rc.flow.eta, "step bound factor")->check(CLI::PositiveNumber);

    auto* shrink = app.add_subcommand("shrink", "homothetic shrinkers");
    bool classify = false;
    std::string verify;
    int jobs = 1;
    double a0 = 1.0;
    auto* g = shrink->add_option_group("mode");
    g->add_flag("--classify", classify, "classify every configuration");
    g->add_option("--verify", verify, "solve and cross-check one configuration, e.g. A1,A2 or vertex:a");
    g->require_option(1);
    shrink->add_option("--jobs", jobs, "parallel configurations")->check(CLI::PositiveNumber);
    shrink->add_option("--a0", a0, "scale of the first side")->check(CLI::PositiveNumber);

    auto* render = app.add_subcommand("render", "draw a network as SVG");
    render->add_option("network", path, "network file or fixture name")->required();
    std::string out;
    render->add_option("-o,--out", out, "output file, stdout by default");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? Ok : InputError;
    }

    try {
        load_config(rc);
        if (*validate) return cmd_validate(rc, path);
        if (*chfield) return cmd_chfield(rc, path, eps);
        if (*evolve_cmd) return cmd_evolve(rc, path, horizon, csv, svg_dir);
        if (*shrink) return cmd_shrink(rc, classify, verify, jobs, a0);
        if (*render) return cmd_render(path, out);
    } catch (const Error& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return exit_for(e);
    } catch (const std::exception& e) {
        fmt::print(std::cerr, "error: {}\n", e.what());
        return InputError;
    }
    return Ok;
}
