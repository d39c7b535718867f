#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hexflow/vec2.hpp"

namespace hexflow {

enum class EdgeKind { Segment, HalfLine };

struct Vertex {
    std::string id;
    Vec2 pos;
};

struct Edge {
    std::string id;
    EdgeKind kind = EdgeKind::Segment;
    int from = -1;
    int to = -1;   // segments only
    Vec2 dir;      // half-lines only, unit
    std::string curve;
    int multiplicity = 1;

    bool is_segment() const { return kind == EdgeKind::Segment; }
    bool is_halfline() const { return kind == EdgeKind::HalfLine; }
};

struct Network {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::string source;

    int find_vertex(const std::string& id) const;
    int find_edge(const std::string& id) const;

    Vec2 tangent(int e) const;
    // counterclockwise quarter turn of the tangent
    Vec2 normal(int e) const;
    double length(int e) const;
    // facet index of the edge normal; throws NonAdmissibleDirection
    int facet(int e, double tol_angle = 1e-9) const;
    double diameter() const;
};

// One end of an edge seen from a vertex. at_from = true means the edge is
// oriented away from the vertex (sigma = 0).
struct EdgeEnd {
    int edge = -1;
    bool at_from = true;
    bool operator==(const EdgeEnd&) const = default;
};

std::vector<std::vector<EdgeEnd>> incidence(const Network& net);
// direction of the edge leaving the vertex at this end
Vec2 away_dir(const Network& net, EdgeEnd end);

// -- serialization ---------------------------------------------------------

Network parse_network(const std::string& json_text);
Network load_network(const std::string& path);
std::string serialize_network(const Network& net, int indent = 2);
void save_network(const Network& net, const std::string& path);

// -- validation ------------------------------------------------------------

struct Violation {
    std::string kind;
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<int> facets;  // per edge, -1 if not admissible
    std::vector<Violation> violations;
};

struct ValidateOptions {
    double angle_tol = 1e-9;
    double incidence_tol = 1e-9;  // relative to the bounding box diameter
};

ValidationReport validate_admissible(const Network& net, const ValidateOptions& opt = {});

// -- junctions -------------------------------------------------------------

enum class JunctionType { Triod120, TriodT, TriodFan, W, Psi, X, Five, Six, Other };
const char* junction_type_name(JunctionType t);

struct JunctionInfo {
    int vertex = -1;
    int degree = 0;
    std::vector<EdgeEnd> ends;
    std::vector<int> sigma;       // 0 if the edge leaves the junction
    std::vector<int> directions;  // away directions in units of 60 degrees, sorted
    std::vector<int> gaps;        // cyclic gaps between consecutive directions
    bool balanced120 = false;
    JunctionType type = JunctionType::Other;
};

std::vector<JunctionInfo> classify_junctions(const Network& net, double tol_angle = 1e-9);

// degree-2 vertex with a 120 degree angle
bool is_simple_vertex(const Network& net, int v, double tol_angle = 1e-9);
bool is_simple(const Network& net);

struct Subgraph {
    std::vector<int> edges;
    std::vector<int> junctions;
};
std::vector<Subgraph> partition_graphs(const Network& net);

bool is_conical(const Network& net);
// Critical iff the half-lines split into triplets crossing three non-adjacent
// facets of the Wulff shape and doublets crossing opposite facets.
bool is_conical_critical(const Network& net);
// per half-line, the facets it may be assigned to
bool conical_facets_critical(const std::vector<std::vector<int>>& options);
// directions of half-lines in units of 60 degrees
bool conical_directions_critical(const std::vector<int>& dirs);
// facets of the Wulff shape met by the ray from the origin (two at a vertex)
std::vector<int> facets_crossed(Vec2 dir, double tol_angle = 1e-9);

// edge ids in chain order; returns the constant value when it exists
std::optional<Vec2> constant_ch_value(const Network& net, const std::vector<int>& chain);
bool has_constant_ch_chain(const Network& net, const std::vector<int>& chain);

// -- construction helpers --------------------------------------------------

class NetworkBuilder {
public:
    int vertex(const std::string& id, Vec2 pos);
    int segment(const std::string& id, int from, int to, const std::string& curve = "");
    int halfline(const std::string& id, int from, Vec2 dir, const std::string& curve = "");
    int halfline(const std::string& id, int from, int lattice_j, const std::string& curve = "");
    Network build(const std::string& source = "") const;
    Network& net() { return net_; }

private:
    Network net_;
};

Network translated(const Network& net, Vec2 shift);
Network scaled(const Network& net, double s, Vec2 center = {});
// rotation by 60k degrees about center, optionally preceded by the mirror y -> -y
Network transformed(const Network& net, int k, bool mirror, Vec2 center = {});

} // namespace hexflow
