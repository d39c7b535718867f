#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hexflow/anisotropy.hpp"
#include "hexflow/chfield.hpp"
#include "hexflow/error.hpp"
#include "hexflow/flow.hpp"
#include "hexflow/network.hpp"
#include "hexflow/scenarios.hpp"
#include "hexflow/shrinker.hpp"

namespace py = pybind11;
using namespace hexflow;

namespace {

py::dict sample_dict(const Sample& s) {
    py::dict d;
    d["t"] = s.t;
    d["phase"] = s.phase;
    std::vector<std::pair<double, double>> pos;
    for (const auto& v : s.network.vertices) pos.emplace_back(v.pos.x, v.pos.y);
    d["positions"] = pos;
    d["length"] = s.length;
    d["kappa"] = s.kappa;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "crystalline curvature flow of hexagonal networks";

    py::register_exception<Error>(m, "HexflowError", PyExc_RuntimeError);

    py::class_<Network>(m, "Network")
        .def_static("from_json", &parse_network, py::arg("text"))
        .def_static("load", &load_network, py::arg("path"))
        .def("to_json", [](const Network& n) { return serialize_network(n); })
        .def_readonly("source", &Network::source)
        .def_property_readonly("vertex_ids",
                               [](const Network& n) {
                                   std::vector<std::string> ids;
                                   for (const auto& v : n.vertices) ids.push_back(v.id);
                                   return ids;
                               })
        .def_property_readonly("edge_ids",
                               [](const Network& n) {
                                   std::vector<std::string> ids;
                                   for (const auto& e : n.edges) ids.push_back(e.id);
                                   return ids;
                               })
        .def_property_readonly("positions",
                               [](const Network& n) {
                                   std::vector<std::pair<double, double>> pos;
                                   for (const auto& v : n.vertices) pos.emplace_back(v.pos.x, v.pos.y);
                                   return pos;
                               })
        .def("length", &Network::length, py::arg("edge"))
        .def("find_edge", &Network::find_edge, py::arg("id"));

    m.def("fixtures", [] {
        py::dict d;
        for (const auto& f : all_fixtures()) d[py::str(f.name)] = f.network;
        return d;
    });
    m.def("wulff_hexagon", &wulff_hexagon, py::arg("R") = 1.0);
    m.def("chuvaks", &chuvaks, py::arg("a0"), py::arg("b0"));
    m.def("hexagon_abc", &hexagon_abc, py::arg("a0"), py::arg("b0"), py::arg("c0"));

    m.def("is_admissible", [](const Network& n) { return validate_admissible(n).ok; });
    m.def("is_critical", py::overload_cast<const Network&, double>(&is_critical), py::arg("network"),
          py::arg("tol") = 1e-12);
    m.def("curvatures", [](const Network& n) { return minimal_field(n).kappa; });
    m.def("curvature_report", [](const Network& n) { return curvature_report_json(n, minimal_field(n)); });

    m.def(
        "solve_program",
        [](std::vector<double> a, std::vector<double> b, std::vector<std::tuple<int, int, double>> c) {
            if (a.size() != b.size()) throw Error(ErrorCode::InvalidArgument, "a and b differ in length");
            CHProgram p(static_cast<int>(a.size()));
            p.d = kSide;
            p.a = a;
            p.b = b;
            for (auto [k, l, w] : c) p.add_c(k, l, w);
            return solve(p).x;
        },
        py::arg("a"), py::arg("b"), py::arg("c") = std::vector<std::tuple<int, int, double>>{},
        "minimize sum a x^2 + b (d - x)^2 + sum c (x_k - x_l)^2 over [0, d]^n");

    m.def(
        "evolve",
        [](const Network& n, double horizon, double eta) {
            FlowOptions opt;
            opt.eta = eta;
            Trajectory tr;
            {
                py::gil_scoped_release release;
                tr = evolve(n, horizon, opt);
            }
            py::list samples, events;
            for (const auto& s : tr.samples) samples.append(sample_dict(s));
            for (const auto& e : tr.events) {
                py::dict d;
                d["kind"] = event_kind_name(e.kind);
                d["t"] = e.t;
                d["reason"] = e.reason;
                d["critical"] = e.critical;
                d["higher_multiplicity"] = e.higher_multiplicity;
                events.append(d);
            }
            py::dict out;
            out["samples"] = samples;
            out["events"] = events;
            out["steps"] = tr.steps;
            return out;
        },
        py::arg("network"), py::arg("horizon"), py::arg("eta") = 0.1);

    m.def(
        "solve_shrinker",
        [](const std::string& cfg) -> py::object {
            auto sol = solve_config(ShrinkerConfig::parse(cfg));
            if (!sol) return py::none();
            py::dict d;
            d["config"] = sol->config.name();
            d["sides"] = sol->sides;
            d["theta"] = sol->theta;
            d["theta_bar"] = sol->theta_bar;
            d["lambda"] = sol->lambda;
            d["collapse_time"] = sol->collapse_time;
            d["center_split"] = sol->center_split;
            return d;
        },
        py::arg("config"));
    m.def(
        "classify",
        [](int jobs) {
            std::vector<ClassificationRow> rows;
            {
                py::gil_scoped_release release;
                rows = classify_all(jobs);
            }
            return classification_json(rows);
        },
        py::arg("jobs") = 1, "classification table as JSON text");
    m.def(
        "verify_by_flow",
        [](const std::string& cfg, double a0, double fraction) {
            auto v = verify_by_flow(ShrinkerConfig::parse(cfg), a0, fraction);
            py::dict d;
            d["lambda_predicted"] = v.lambda_predicted;
            d["lambda_measured"] = v.lambda_measured;
            d["residual"] = v.residual;
            d["homothetic"] = v.homothetic;
            d["consistent"] = v.consistent;
            d["discrepancy"] = v.discrepancy;
            return d;
        },
        py::arg("config"), py::arg("a0") = 1.0, py::arg("horizon_fraction") = 0.5);
}
