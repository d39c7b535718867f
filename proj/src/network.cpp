#include "hexflow/network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "hexflow/anisotropy.hpp"
#include "hexflow/error.hpp"
#include "hexflow/geometry.hpp"

namespace hexflow {

int Network::find_vertex(const std::string& id) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i].id == id) return static_cast<int>(i);
    return -1;
}

int Network::find_edge(const std::string& id) const {
    for (size_t i = 0; i < edges.size(); ++i)
        if (edges[i].id == id) return static_cast<int>(i);
    return -1;
}

Vec2 Network::tangent(int e) const {
    const Edge& ed = edges[e];
    if (ed.is_halfline()) return ed.dir;
    return (vertices[ed.to].pos - vertices[ed.from].pos).normalized();
}

Vec2 Network::normal(int e) const { return perp(tangent(e)); }

double Network::length(int e) const {
    const Edge& ed = edges[e];
    if (ed.is_halfline()) return std::numeric_limits<double>::infinity();
    return dist(vertices[ed.to].pos, vertices[ed.from].pos);
}

int Network::facet(int e, double tol_angle) const { return facet_of_normal(normal(e), tol_angle); }

double Network::diameter() const {
    if (vertices.empty()) return 0.0;
    Vec2 lo = vertices[0].pos, hi = vertices[0].pos;
    for (const auto& v : vertices) {
        lo = {std::min(lo.x, v.pos.x), std::min(lo.y, v.pos.y)};
        hi = {std::max(hi.x, v.pos.x), std::max(hi.y, v.pos.y)};
    }
    return (hi - lo).norm();
}

std::vector<std::vector<EdgeEnd>> incidence(const Network& net) {
    std::vector<std::vector<EdgeEnd>> inc(net.vertices.size());
    for (size_t e = 0; e < net.edges.size(); ++e) {
        const Edge& ed = net.edges[e];
        inc[ed.from].push_back({static_cast<int>(e), true});
        if (ed.is_segment()) inc[ed.to].push_back({static_cast<int>(e), false});
    }
    return inc;
}

Vec2 away_dir(const Network& net, EdgeEnd end) {
    Vec2 t = net.tangent(end.edge);
    return end.at_from ? t : -t;
}

// -- geometry of edges -------------------------------------------------------

Piece piece_of(const Network& net, int e) {
    const Edge& ed = net.edges[e];
    Piece p;
    p.start = net.vertices[ed.from].pos;
    if (ed.is_halfline()) {
        p.dir = ed.dir;
        p.len = std::numeric_limits<double>::infinity();
    } else {
        Vec2 d = net.vertices[ed.to].pos - p.start;
        p.len = d.norm();
        p.dir = p.len > 0 ? d / p.len : Vec2{1, 0};
    }
    return p;
}

double point_piece_distance(Vec2 q, const Piece& p) {
    double s = dot(q - p.start, p.dir);
    s = std::clamp(s, 0.0, p.len);
    return dist(q, p.start + p.dir * s);
}

double piece_distance(const Piece& a, const Piece& b) {
    double den = cross(a.dir, b.dir);
    if (std::abs(den) > 1e-14) {
        Vec2 w = b.start - a.start;
        double s = cross(w, b.dir) / den;
        double t = cross(w, a.dir) / den;
        if (s >= 0 && s <= a.len && t >= 0 && t <= b.len) return 0.0;
    }
    double m = std::min(point_piece_distance(a.start, b), point_piece_distance(b.start, a));
    if (std::isfinite(a.len)) m = std::min(m, point_piece_distance(a.start + a.dir * a.len, b));
    if (std::isfinite(b.len)) m = std::min(m, point_piece_distance(b.start + b.dir * b.len, a));
    return m;
}

double edge_distance(const Network& net, int a, int b) {
    return piece_distance(piece_of(net, a), piece_of(net, b));
}

bool edges_share_vertex(const Network& net, int a, int b) {
    const Edge& x = net.edges[a];
    const Edge& y = net.edges[b];
    auto has = [](const Edge& e, int v) { return e.from == v || (e.is_segment() && e.to == v); };
    return has(y, x.from) || (x.is_segment() && has(y, x.to));
}

// -- validation ------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

double turn_angle(Vec2 a, Vec2 b) { return std::abs(std::atan2(cross(a, b), dot(a, b))); }

} // namespace

ValidationReport validate_admissible(const Network& net, const ValidateOptions& opt) {
    ValidationReport rep;
    auto fail = [&](const std::string& kind, const std::string& msg) {
        rep.ok = false;
        rep.violations.push_back({kind, msg});
    };

    rep.facets.assign(net.edges.size(), -1);
    for (size_t e = 0; e < net.edges.size(); ++e) {
        const Edge& ed = net.edges[e];
        if (ed.is_segment() && net.length(static_cast<int>(e)) == 0.0) {
            fail("degenerate segment", ed.id + " has zero length");
            continue;
        }
        try {
            rep.facets[e] = net.facet(static_cast<int>(e), opt.angle_tol);
        } catch (const Error&) {
            fail("non-facet direction", ed.id + " is not parallel to a facet of the Wulff shape");
        }
    }

    auto inc = incidence(net);
    for (size_t v = 0; v < net.vertices.size(); ++v) {
        const auto& ends = inc[v];
        const std::string& id = net.vertices[v].id;
        if (ends.empty()) fail("isolated vertex", id + " has no incident edge");
        else if (ends.size() == 1) fail("free endpoint", id + " is an endpoint of a single edge");
        else if (ends.size() > 6) fail("degree", id + " has degree " + std::to_string(ends.size()));
        if (ends.size() == 2) {
            double ang = turn_angle(away_dir(net, ends[0]), away_dir(net, ends[1]));
            bool straight = std::abs(ang - kPi) <= opt.angle_tol;
            if (std::abs(ang - 2 * kPi / 3) > opt.angle_tol && !straight)
                fail("simple vertex angle", id + " has angle " + std::to_string(ang * 180 / kPi) + " degrees");
            if (ends[0].at_from == ends[1].at_from)
                fail("orientation", "edges at " + id + " are not oriented consistently");
        }
        for (size_t i = 0; i < ends.size(); ++i)
            for (size_t j = i + 1; j < ends.size(); ++j)
                if (turn_angle(away_dir(net, ends[i]), away_dir(net, ends[j])) <= opt.angle_tol)
                    fail("overlapping edges", net.edges[ends[i].edge].id + " and " +
                                                  net.edges[ends[j].edge].id + " overlap at " + id);
    }

    UnionFind uf(net.vertices.size());
    for (const auto& ed : net.edges)
        if (ed.is_segment()) uf.unite(ed.from, ed.to);
    int comps = 0;
    for (size_t v = 0; v < net.vertices.size(); ++v)
        if (uf.find(static_cast<int>(v)) == static_cast<int>(v)) ++comps;
    if (comps > 1) fail("disconnected", "network has " + std::to_string(comps) + " components");

    double tol = opt.incidence_tol * std::max(1.0, net.diameter());
    for (size_t a = 0; a < net.vertices.size(); ++a)
        for (size_t b = a + 1; b < net.vertices.size(); ++b)
            if (dist(net.vertices[a].pos, net.vertices[b].pos) <= tol)
                fail("coincident vertices", net.vertices[a].id + " and " + net.vertices[b].id);

    for (size_t a = 0; a < net.edges.size(); ++a)
        for (size_t b = a + 1; b < net.edges.size(); ++b) {
            if (edges_share_vertex(net, static_cast<int>(a), static_cast<int>(b))) continue;
            if (edge_distance(net, static_cast<int>(a), static_cast<int>(b)) <= tol)
                fail("crossing edges", net.edges[a].id + " meets " + net.edges[b].id);
        }
    return rep;
}

// -- junctions -------------------------------------------------------------

const char* junction_type_name(JunctionType t) {
    switch (t) {
    case JunctionType::Triod120: return "triod120";
    case JunctionType::TriodT: return "T";
    case JunctionType::TriodFan: return "fan";
    case JunctionType::W: return "W";
    case JunctionType::Psi: return "Psi";
    case JunctionType::X: return "X";
    case JunctionType::Five: return "five";
    case JunctionType::Six: return "six";
    case JunctionType::Other: return "other";
    }
    return "other";
}

static JunctionType type_from_gaps(const std::vector<int>& gaps) {
    std::vector<int> g = gaps;
    std::sort(g.begin(), g.end());
    switch (gaps.size()) {
    case 3:
        if (g == std::vector<int>{2, 2, 2}) return JunctionType::Triod120;
        if (g == std::vector<int>{1, 2, 3}) return JunctionType::TriodT;
        if (g == std::vector<int>{1, 1, 4}) return JunctionType::TriodFan;
        break;
    case 4:
        if (g == std::vector<int>{1, 1, 1, 3}) return JunctionType::W;
        if (g == std::vector<int>{1, 1, 2, 2})
            return gaps[0] == gaps[2] ? JunctionType::X : JunctionType::Psi;
        break;
    case 5: return JunctionType::Five;
    case 6: return JunctionType::Six;
    default: break;
    }
    return JunctionType::Other;
}

std::vector<JunctionInfo> classify_junctions(const Network& net, double tol_angle) {
    std::vector<JunctionInfo> out;
    auto inc = incidence(net);
    for (size_t v = 0; v < net.vertices.size(); ++v) {
        if (inc[v].size() < 3) continue;
        if (inc[v].size() > 6)
            throw Error(ErrorCode::UnsupportedJunction, net.vertices[v].id + " has degree above 6");
        JunctionInfo j;
        j.vertex = static_cast<int>(v);
        j.degree = static_cast<int>(inc[v].size());
        j.ends = inc[v];
        bool lattice = true;
        for (const auto& end : inc[v]) {
            j.sigma.push_back(end.at_from ? 0 : 1);
            int d = lattice_index(away_dir(net, end), tol_angle);
            if (d < 0) lattice = false;
            j.directions.push_back(d);
        }
        std::sort(j.directions.begin(), j.directions.end());
        bool distinct = std::adjacent_find(j.directions.begin(), j.directions.end()) == j.directions.end();
        if (lattice && distinct) {
            for (size_t i = 0; i < j.directions.size(); ++i) {
                int a = j.directions[i], b = j.directions[(i + 1) % j.directions.size()];
                j.gaps.push_back(mod6(b - a) == 0 ? 6 : mod6(b - a));
            }
            j.type = type_from_gaps(j.gaps);
        }
        j.balanced120 = j.type == JunctionType::Triod120;
        out.push_back(std::move(j));
    }
    return out;
}

bool is_simple_vertex(const Network& net, int v, double tol_angle) {
    auto inc = incidence(net);
    if (inc[v].size() != 2) return false;
    double ang = turn_angle(away_dir(net, inc[v][0]), away_dir(net, inc[v][1]));
    return std::abs(ang - 2 * kPi / 3) <= tol_angle;
}

bool is_simple(const Network& net) {
    auto inc = incidence(net);
    for (const auto& ends : inc)
        if (ends.size() > 3) return false;
    for (const auto& j : classify_junctions(net))
        if (!j.balanced120) return false;
    return true;
}

std::vector<Subgraph> partition_graphs(const Network& net) {
    auto inc = incidence(net);
    UnionFind uf(net.edges.size());
    for (size_t v = 0; v < net.vertices.size(); ++v) {
        if (inc[v].size() < 2 || is_simple_vertex(net, static_cast<int>(v))) continue;
        for (size_t i = 1; i < inc[v].size(); ++i) uf.unite(inc[v][0].edge, inc[v][i].edge);
    }
    std::vector<int> slot(net.edges.size(), -1);
    std::vector<Subgraph> out;
    for (size_t e = 0; e < net.edges.size(); ++e) {
        int r = uf.find(static_cast<int>(e));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].edges.push_back(static_cast<int>(e));
    }
    for (size_t v = 0; v < net.vertices.size(); ++v) {
        if (inc[v].size() < 3) continue;
        out[slot[uf.find(inc[v][0].edge)]].junctions.push_back(static_cast<int>(v));
    }
    return out;
}

bool is_conical(const Network& net) {
    if (net.edges.empty()) return false;
    for (const auto& e : net.edges)
        if (!e.is_halfline() || e.from != net.edges[0].from) return false;
    return true;
}

bool conical_facets_critical(const std::vector<std::vector<int>>& options) {
    const int n = static_cast<int>(options.size());
    std::vector<bool> used(n, false);
    auto offers = [&](int i, int f) {
        for (int g : options[i])
            if (mod6(g) == mod6(f)) return true;
        return false;
    };
    std::function<bool()> rec = [&]() -> bool {
        int i = 0;
        while (i < n && used[i]) ++i;
        if (i == n) return true;
        used[i] = true;
        for (int f : options[i]) {
            for (int k = i + 1; k < n; ++k) {
                if (used[k]) continue;
                if (offers(k, f + 3)) {
                    used[k] = true;
                    if (rec()) return true;
                    used[k] = false;
                }
                for (int l = k + 1; l < n; ++l) {
                    if (used[l]) continue;
                    bool ok = (offers(k, f + 2) && offers(l, f + 4)) || (offers(k, f + 4) && offers(l, f + 2));
                    if (!ok) continue;
                    used[k] = used[l] = true;
                    if (rec()) return true;
                    used[k] = used[l] = false;
                }
            }
        }
        used[i] = false;
        return false;
    };
    return rec();
}

bool conical_directions_critical(const std::vector<int>& dirs) {
    // a half-line in direction j crosses the Wulff vertex j, shared by facets j-1 and j
    std::vector<std::vector<int>> options;
    for (int j : dirs) options.push_back({mod6(j - 1), mod6(j)});
    return conical_facets_critical(options);
}

std::vector<int> facets_crossed(Vec2 dir, double tol_angle) {
    double a = std::atan2(dir.y, dir.x);
    if (a < 0) a += 2 * kPi;
    std::vector<int> out;
    for (int k = 0; k < 6; ++k) {
        double lo = k * kPi / 3, hi = lo + kPi / 3;
        auto inside = [&](double x) { return x >= lo - tol_angle && x <= hi + tol_angle; };
        if (inside(a) || inside(a - 2 * kPi) || inside(a + 2 * kPi)) out.push_back(k);
    }
    return out;
}

bool is_conical_critical(const Network& net) {
    if (!is_conical(net)) throw Error(ErrorCode::NotConical, "network is not a cone of half-lines");
    std::vector<std::vector<int>> options;
    for (const auto& e : net.edges) options.push_back(facets_crossed(e.dir));
    return conical_facets_critical(options);
}

std::optional<Vec2> constant_ch_value(const Network& net, const std::vector<int>& chain) {
    std::vector<int> ks;
    for (int e : chain) {
        int k = net.facet(e);
        if (std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
    }
    if (ks.empty()) return std::nullopt;
    if (ks.size() == 1) return facet_normal(ks[0]);
    if (ks.size() > 2) return std::nullopt;
    if (mod6(ks[1] - ks[0]) == 1) return wulff_vertex(ks[1]);
    if (mod6(ks[0] - ks[1]) == 1) return wulff_vertex(ks[0]);
    return std::nullopt;
}

bool has_constant_ch_chain(const Network& net, const std::vector<int>& chain) {
    return constant_ch_value(net, chain).has_value();
}

// -- construction ----------------------------------------------------------

int NetworkBuilder::vertex(const std::string& id, Vec2 pos) {
    net_.vertices.push_back({id, pos});
    return static_cast<int>(net_.vertices.size()) - 1;
}

int NetworkBuilder::segment(const std::string& id, int from, int to, const std::string& curve) {
    Edge e;
    e.id = id;
    e.kind = EdgeKind::Segment;
    e.from = from;
    e.to = to;
    e.curve = curve;
    net_.edges.push_back(e);
    return static_cast<int>(net_.edges.size()) - 1;
}

int NetworkBuilder::halfline(const std::string& id, int from, Vec2 dir, const std::string& curve) {
    Edge e;
    e.id = id;
    e.kind = EdgeKind::HalfLine;
    e.from = from;
    e.dir = dir.normalized();
    e.curve = curve;
    net_.edges.push_back(e);
    return static_cast<int>(net_.edges.size()) - 1;
}

int NetworkBuilder::halfline(const std::string& id, int from, int lattice_j, const std::string& curve) {
    return halfline(id, from, lattice_dir(lattice_j), curve);
}

Network NetworkBuilder::build(const std::string& source) const {
    Network n = net_;
    n.source = source;
    return n;
}

Network translated(const Network& net, Vec2 shift) {
    Network out = net;
    for (auto& v : out.vertices) v.pos += shift;
    return out;
}

Network scaled(const Network& net, double s, Vec2 center) {
    Network out = net;
    for (auto& v : out.vertices) v.pos = center + (v.pos - center) * s;
    return out;
}

Network transformed(const Network& net, int k, bool mirror, Vec2 center) {
    Vec2 c = lattice_dir(k);
    auto apply = [&](Vec2 p) {
        if (mirror) p.y = -p.y;
        return Vec2{c.x * p.x - c.y * p.y, c.y * p.x + c.x * p.y};
    };
    Network out = net;
    for (auto& v : out.vertices) v.pos = center + apply(v.pos - center);
    for (auto& e : out.edges)
        if (e.is_halfline()) e.dir = apply(e.dir);
    return out;
}

} // namespace hexflow
