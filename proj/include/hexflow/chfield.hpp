#pragma once

#include <string>
#include <vector>

#include "hexflow/network.hpp"

namespace hexflow {

// Where the CH parameter of one edge end comes from.
struct EndSource {
    enum Kind { Pinned, Variable } kind = Pinned;
    double value = 0.0;  // Pinned
    int var = -1;        // Variable
};

// Feasible CH parameters at one vertex: the balance condition cuts a polytope
// out of [0,d]^n. When that polytope is a box it splits into pinned ends and
// groups of ends sharing one free parameter in [0,d].
struct JunctionStructure {
    bool feasible = true;
    bool product = true;            // false: pinned to one polytope vertex
    std::vector<int> group;          // per end: group index or -1 if pinned
    std::vector<double> pinned;      // per end, valid when group < 0
    int groups = 0;
    std::vector<std::vector<double>> vertices;  // polytope vertices
};

// away_facets[i]: facet index of the end seen as leaving the vertex
JunctionStructure analyze_junction(const std::vector<int>& away_facets);

struct Anchor {
    int var = -1;
    double weight = 0.0;
    double value = 0.0;
};

// psi(x) = sum a_k x_k^2 + b_k (d - x_k)^2 + sum_{k<l} c_kl (x_k - x_l)^2
//          + sum w (x_k - value)^2 over general anchors, x in [0,d]^n
struct CHProgram {
    int n = 0;
    double d = 0.0;
    std::vector<double> a, b;
    std::vector<std::vector<double>> c;
    std::vector<Anchor> anchors;

    // bookkeeping, filled by assemble()
    std::vector<EndSource> from_src, to_src;  // per edge
    std::vector<int> var_vertex;              // junction of each variable
    std::vector<std::vector<EdgeEnd>> var_ends;
    std::vector<int> fallback_vertices;       // junctions pinned to a polytope vertex

    explicit CHProgram(int n_vars = 0);
    void add_c(int k, int l, double w);
    double objective(const std::vector<double>& x) const;
};

// Facets and lengths to use instead of those implied by vertex positions
// (the flow keeps the reference facets while segments become tiny).
struct EdgeGeometry {
    std::vector<int> facets;
    std::vector<double> lengths;
};

CHProgram assemble(const Network& net, const EdgeGeometry* geo = nullptr);

enum class JunctionClass { IC, BC };

struct QPSolution {
    std::vector<double> x;
    std::vector<int> component;            // per variable
    std::vector<JunctionClass> comp_class;  // per component
};

QPSolution solve(const CHProgram& prog);

struct MinimalCHField {
    CHProgram program;
    QPSolution solution;
    std::vector<double> s_from, s_to;  // per edge, CH parameter on the edge's facet
    std::vector<double> kappa;         // per edge, 0 on half-lines
    std::vector<int> facet;            // per edge
    std::vector<double> length;        // per edge, inf on half-lines
    std::vector<bool> bc_flag;         // edge touches a bc junction
};

MinimalCHField minimal_field(const Network& net, const EdgeGeometry* geo = nullptr);
// kappa_e = (s_to - s_from)/length; half-lines 0
std::vector<double> curvatures(const Network& net, const MinimalCHField& field);

struct BalanceViolation {
    int vertex = -1;
    std::string kind;  // "vector" or "curvature"
    double residual = 0.0;
};

std::vector<BalanceViolation> verify_balance(const Network& net, const MinimalCHField& field, double tol = 1e-10);

bool is_critical(const Network& net, double tol = 1e-12);
bool is_critical(const MinimalCHField& field, double tol = 1e-12);
bool is_simple_with_multiple_junctions(const Network& net, double tol = 1e-12);
bool is_simple_with_multiple_junctions(const Network& net, const MinimalCHField& field, double tol = 1e-12);

std::string curvature_report_json(const Network& net, const MinimalCHField& field, int indent = 2);

} // namespace hexflow
