#include "hexflow/chfield.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "hexflow/anisotropy.hpp"
#include "hexflow/error.hpp"
#include "json.hpp"

namespace hexflow {

namespace {

constexpr double kVertexTol = 1e-9;

bool near(double a, double b, double tol = kVertexTol) { return std::abs(a - b) <= tol; }

double snap(double s) {
    if (near(s, 0.0)) return 0.0;
    if (near(s, kSide)) return kSide;
    return s;
}

JunctionStructure compute_structure(const std::vector<int>& facets) {
    const int n = static_cast<int>(facets.size());
    const double d = kSide;
    JunctionStructure js;

    std::vector<Vec2> col(n);
    Vec2 rhs;
    for (int i = 0; i < n; ++i) {
        col[i] = facet_tangent(facets[i]);
        rhs -= wulff_vertex(facets[i]);
    }

    // every vertex of {s in [0,d]^n : sum s_i t_i = rhs} has at most two
    // coordinates strictly inside (0,d)
    std::vector<int> choice(n, 0);  // 0 -> 0, 1 -> d, 2 -> free
    auto add_vertex = [&](const std::vector<double>& s) {
        for (const auto& w : js.vertices) {
            bool same = true;
            for (int i = 0; i < n && same; ++i) same = near(w[i], s[i]);
            if (same) return;
        }
        js.vertices.push_back(s);
    };
    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
        int c = code, nfree = 0;
        std::vector<int> free;
        for (int i = 0; i < n; ++i) {
            choice[i] = c % 3;
            c /= 3;
            if (choice[i] == 2) free.push_back(i);
        }
        nfree = static_cast<int>(free.size());
        if (nfree > 2) continue;
        std::vector<double> s(n, 0.0);
        Vec2 r = rhs;
        for (int i = 0; i < n; ++i)
            if (choice[i] == 1) {
                s[i] = d;
                r -= col[i] * d;
            }
        if (nfree == 0) {
            if (r.norm() > 1e-12) continue;
        } else if (nfree == 1) {
            double x = dot(col[free[0]], r);
            if ((r - col[free[0]] * x).norm() > 1e-12) continue;
            s[free[0]] = x;
        } else {
            Vec2 p = col[free[0]], q = col[free[1]];
            double det = cross(p, q);
            if (std::abs(det) < 1e-12) continue;
            s[free[0]] = cross(r, q) / det;
            s[free[1]] = cross(p, r) / det;
        }
        bool inside = true;
        for (int i : free) {
            if (s[i] < -kVertexTol || s[i] > d + kVertexTol) inside = false;
            s[i] = snap(std::clamp(s[i], 0.0, d));
        }
        if (inside) add_vertex(s);
    }

    if (js.vertices.empty()) {
        js.feasible = false;
        return js;
    }

    js.group.assign(n, -1);
    js.pinned.assign(n, 0.0);
    std::vector<int> loose;
    for (int i = 0; i < n; ++i) {
        double lo = js.vertices[0][i], hi = lo;
        for (const auto& w : js.vertices) {
            lo = std::min(lo, w[i]);
            hi = std::max(hi, w[i]);
        }
        if (near(lo, hi)) js.pinned[i] = snap(lo);
        else loose.push_back(i);
    }
    for (int i : loose) {
        if (js.group[i] >= 0) continue;
        js.group[i] = js.groups++;
        for (int j : loose) {
            if (js.group[j] >= 0) continue;
            bool same = true;
            for (const auto& w : js.vertices) same = same && near(w[i], w[j]);
            if (same) js.group[j] = js.group[i];
        }
    }

    // box check: the vertices are exactly all {0,d} choices per group
    bool box = js.vertices.size() == (size_t{1} << js.groups);
    for (const auto& w : js.vertices)
        for (int i : loose) box = box && (near(w[i], 0.0) || near(w[i], d));
    if (box) {
        std::vector<bool> hit(js.vertices.size(), false);
        for (const auto& w : js.vertices) {
            size_t code = 0;
            for (int i : loose) code |= near(w[i], d) ? (size_t{1} << js.group[i]) : 0;
            if (code >= hit.size() || hit[code]) box = false;
            else hit[code] = true;
        }
    }
    js.product = box;
    return js;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

} // namespace

JunctionStructure analyze_junction(const std::vector<int>& away_facets) {
    thread_local std::map<std::vector<int>, JunctionStructure> cache;
    std::vector<int> key;
    for (int k : away_facets) key.push_back(mod6(k));
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    JunctionStructure js = compute_structure(key);
    cache.emplace(key, js);
    return js;
}

CHProgram::CHProgram(int n_vars)
    : n(n_vars), d(kSide), a(n_vars, 0.0), b(n_vars, 0.0), c(n_vars, std::vector<double>(n_vars, 0.0)) {}

void CHProgram::add_c(int k, int l, double w) {
    c[k][l] += w;
    c[l][k] += w;
}

double CHProgram::objective(const std::vector<double>& x) const {
    double f = 0.0;
    for (int k = 0; k < n; ++k) {
        f += a[k] * x[k] * x[k] + b[k] * (d - x[k]) * (d - x[k]);
        for (int l = k + 1; l < n; ++l) f += c[k][l] * (x[k] - x[l]) * (x[k] - x[l]);
    }
    for (const auto& an : anchors) f += an.weight * (x[an.var] - an.value) * (x[an.var] - an.value);
    return f;
}

CHProgram assemble(const Network& net, const EdgeGeometry* geo) {
    const size_t ne = net.edges.size();
    std::vector<int> facet(ne);
    std::vector<double> length(ne);
    for (size_t e = 0; e < ne; ++e) {
        facet[e] = geo ? geo->facets[e] : net.facet(static_cast<int>(e));
        length[e] = geo ? geo->lengths[e] : net.length(static_cast<int>(e));
    }

    auto inc = incidence(net);
    std::vector<EndSource> from_src(ne), to_src(ne);
    auto src_of = [&](EdgeEnd end) -> EndSource& { return end.at_from ? from_src[end.edge] : to_src[end.edge]; };

    std::vector<int> var_vertex;
    std::vector<std::vector<EdgeEnd>> var_ends;
    std::vector<std::pair<int, JunctionStructure>> deferred;

    for (size_t v = 0; v < net.vertices.size(); ++v) {
        const auto& ends = inc[v];
        if (ends.empty()) continue;
        if (ends.size() > 6)
            throw Error(ErrorCode::UnsupportedJunction, net.vertices[v].id + " has degree above 6");
        if (ends.size() == 1) {
            // loose end: unconstrained parameter
            src_of(ends[0]) = {EndSource::Variable, 0.0, static_cast<int>(var_vertex.size())};
            var_vertex.push_back(static_cast<int>(v));
            var_ends.push_back(ends);
            continue;
        }
        std::vector<int> away;
        for (const auto& end : ends) away.push_back(end.at_from ? facet[end.edge] : facet[end.edge] + 3);
        JunctionStructure js = analyze_junction(away);
        if (!js.feasible)
            throw Error(ErrorCode::NoCHField, "no CH field at junction " + net.vertices[v].id);
        if (!js.product) {
            deferred.emplace_back(static_cast<int>(v), js);
            continue;
        }
        int base = static_cast<int>(var_vertex.size());
        for (int g = 0; g < js.groups; ++g) {
            var_vertex.push_back(static_cast<int>(v));
            var_ends.emplace_back();
        }
        for (size_t i = 0; i < ends.size(); ++i) {
            if (js.group[i] < 0) {
                src_of(ends[i]) = {EndSource::Pinned, js.pinned[i], -1};
            } else {
                src_of(ends[i]) = {EndSource::Variable, 0.0, base + js.group[i]};
                var_ends[base + js.group[i]].push_back(ends[i]);
            }
        }
    }

    std::vector<int> fallback;
    for (const auto& [v, js] : deferred) {
        // pin to the polytope vertex closest to the pinned far ends
        const auto& ends = inc[v];
        double best = INFINITY;
        size_t pick = 0;
        for (size_t w = 0; w < js.vertices.size(); ++w) {
            double cost = 0.0;
            for (size_t i = 0; i < ends.size(); ++i) {
                const Edge& ed = net.edges[ends[i].edge];
                if (!ed.is_segment()) continue;
                const EndSource& far = ends[i].at_from ? to_src[ends[i].edge] : from_src[ends[i].edge];
                if (far.kind != EndSource::Pinned) continue;
                double diff = js.vertices[w][i] - far.value;
                cost += diff * diff / length[ends[i].edge];
            }
            if (cost < best - 1e-15) {
                best = cost;
                pick = w;
            }
        }
        for (size_t i = 0; i < ends.size(); ++i) src_of(ends[i]) = {EndSource::Pinned, js.vertices[pick][i], -1};
        fallback.push_back(v);
    }

    CHProgram prog(static_cast<int>(var_vertex.size()));
    prog.var_vertex = std::move(var_vertex);
    prog.var_ends = std::move(var_ends);
    prog.fallback_vertices = std::move(fallback);

    for (size_t e = 0; e < ne; ++e) {
        if (!net.edges[e].is_segment()) continue;
        const EndSource& f = from_src[e];
        const EndSource& t = to_src[e];
        double w = 1.0 / length[e];
        bool fv = f.kind == EndSource::Variable, tv = t.kind == EndSource::Variable;
        if (fv && tv) {
            if (f.var != t.var) prog.add_c(f.var, t.var, w);
        } else if (fv || tv) {
            int k = fv ? f.var : t.var;
            double value = fv ? t.value : f.value;
            if (value == 0.0) prog.a[k] += w;
            else if (value == kSide) prog.b[k] += w;
            else prog.anchors.push_back({k, w, value});
        }
    }
    prog.from_src = std::move(from_src);
    prog.to_src = std::move(to_src);
    return prog;
}

QPSolution solve(const CHProgram& prog) {
    const int n = prog.n;
    QPSolution sol;
    sol.x.assign(n, 0.0);
    sol.component.assign(n, -1);

    UnionFind uf(n);
    for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
            if (prog.c[k][l] > 0) uf.unite(k, l);
    std::vector<std::vector<int>> comps;
    std::vector<int> slot(n, -1);
    for (int k = 0; k < n; ++k) {
        int r = uf.find(k);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[slot[r]].push_back(k);
        sol.component[k] = slot[r];
    }

    std::vector<std::vector<Anchor>> anchors(n);
    for (const auto& an : prog.anchors) anchors[an.var].push_back(an);

    for (const auto& vars : comps) {
        bool has_a = false, has_b = false, has_anchor = false;
        for (int k : vars) {
            has_a = has_a || prog.a[k] > 0;
            has_b = has_b || prog.b[k] > 0;
            has_anchor = has_anchor || !anchors[k].empty();
        }
        if (!has_anchor && !(has_a && has_b)) {
            double x = has_a ? 0.0 : has_b ? prog.d : prog.d / 2;
            for (int k : vars) sol.x[k] = x;
            sol.comp_class.push_back(JunctionClass::BC);
            continue;
        }
        const int m = static_cast<int>(vars.size());
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
        for (int i = 0; i < m; ++i) {
            int k = vars[i];
            A(i, i) += prog.a[k] + prog.b[k];
            rhs(i) += prog.b[k] * prog.d;
            for (const auto& an : anchors[k]) {
                A(i, i) += an.weight;
                rhs(i) += an.weight * an.value;
            }
            for (int j = 0; j < m; ++j) {
                if (i == j) continue;
                double w = prog.c[k][vars[j]];
                A(i, i) += w;
                A(i, j) -= w;
            }
        }
        Eigen::LLT<Eigen::MatrixXd> llt(A);
        if (llt.info() != Eigen::Success) throw Error(ErrorCode::SingularSystem, "CH system is not positive definite");
        Eigen::VectorXd x = llt.solve(rhs);
        double scale = A.norm() * x.norm() + rhs.norm();
        if (!x.allFinite() || (A * x - rhs).norm() > 1e-10 * std::max(1.0, scale))
            throw Error(ErrorCode::SingularSystem, "CH system solve did not converge");
        for (int i = 0; i < m; ++i) sol.x[vars[i]] = std::clamp(x(i), 0.0, prog.d);
        sol.comp_class.push_back(JunctionClass::IC);
    }
    return sol;
}

MinimalCHField minimal_field(const Network& net, const EdgeGeometry* geo) {
    MinimalCHField f;
    f.program = assemble(net, geo);
    f.solution = solve(f.program);
    const size_t ne = net.edges.size();
    f.s_from.resize(ne);
    f.s_to.resize(ne);
    f.facet.resize(ne);
    f.length.resize(ne);
    f.bc_flag.assign(ne, false);
    auto value = [&](const EndSource& s) {
        return s.kind == EndSource::Pinned ? s.value : f.solution.x[s.var];
    };
    auto is_bc = [&](const EndSource& s) {
        return s.kind == EndSource::Variable &&
               f.solution.comp_class[f.solution.component[s.var]] == JunctionClass::BC;
    };
    for (size_t e = 0; e < ne; ++e) {
        f.facet[e] = geo ? geo->facets[e] : net.facet(static_cast<int>(e));
        f.length[e] = geo ? geo->lengths[e] : net.length(static_cast<int>(e));
        f.s_from[e] = value(f.program.from_src[e]);
        if (net.edges[e].is_segment()) {
            f.s_to[e] = value(f.program.to_src[e]);
            f.bc_flag[e] = is_bc(f.program.from_src[e]) || is_bc(f.program.to_src[e]);
        } else {
            f.s_to[e] = f.s_from[e];
            f.bc_flag[e] = is_bc(f.program.from_src[e]);
        }
    }
    f.kappa = curvatures(net, f);
    return f;
}

std::vector<double> curvatures(const Network& net, const MinimalCHField& field) {
    std::vector<double> k(net.edges.size(), 0.0);
    for (size_t e = 0; e < net.edges.size(); ++e)
        if (net.edges[e].is_segment()) k[e] = (field.s_to[e] - field.s_from[e]) / field.length[e];
    return k;
}

std::vector<BalanceViolation> verify_balance(const Network& net, const MinimalCHField& field, double tol) {
    std::vector<BalanceViolation> out;
    auto inc = incidence(net);
    for (size_t v = 0; v < net.vertices.size(); ++v) {
        if (inc[v].size() < 3) continue;
        Vec2 sum;
        for (const auto& end : inc[v]) {
            double s = end.at_from ? field.s_from[end.edge] : field.s_to[end.edge];
            Vec2 n = ch_point(field.facet[end.edge], std::clamp(s, 0.0, kSide));
            sum += end.at_from ? n : -n;
        }
        if (sum.norm() > tol) out.push_back({static_cast<int>(v), "vector", sum.norm()});
    }
    double scale = 1.0;
    for (double k : field.kappa) scale = std::max(scale, std::abs(k));
    const auto& prog = field.program;
    for (int k = 0; k < prog.n; ++k) {
        if (field.solution.comp_class[field.solution.component[k]] != JunctionClass::IC) continue;
        double sum = 0.0;
        for (const auto& end : prog.var_ends[k]) sum += end.at_from ? -field.kappa[end.edge] : field.kappa[end.edge];
        if (std::abs(sum) > tol * scale) out.push_back({prog.var_vertex[k], "curvature", std::abs(sum)});
    }
    return out;
}

bool is_critical(const MinimalCHField& field, double tol) {
    for (double k : field.kappa)
        if (std::abs(k) > tol) return false;
    return true;
}

bool is_critical(const Network& net, double tol) { return is_critical(minimal_field(net), tol); }

bool is_simple_with_multiple_junctions(const Network& net, const MinimalCHField& field, double tol) {
    for (const auto& j : classify_junctions(net)) {
        if (j.degree == 3) {
            if (!j.balanced120) return false;
            continue;
        }
        for (const auto& end : j.ends)
            if (std::abs(field.kappa[end.edge]) > tol) return false;
    }
    return true;
}

bool is_simple_with_multiple_junctions(const Network& net, double tol) {
    return is_simple_with_multiple_junctions(net, minimal_field(net), tol);
}

std::string curvature_report_json(const Network& net, const MinimalCHField& field, int indent) {
    using nlohmann::json;
    json doc;
    doc["edges"] = json::array();
    for (size_t e = 0; e < net.edges.size(); ++e)
        doc["edges"].push_back({{"id", net.edges[e].id},
                                {"kappa", field.kappa[e]},
                                {"facet", field.facet[e]},
                                {"bc_flag", static_cast<bool>(field.bc_flag[e])},
                                {"s_from", field.s_from[e]},
                                {"s_to", field.s_to[e]}});
    auto violations = verify_balance(net, field);
    doc["junctions"] = json::array();
    auto inc = incidence(net);
    for (size_t v = 0; v < net.vertices.size(); ++v) {
        if (inc[v].size() < 3) continue;
        double res = 0.0;
        for (const auto& bv : violations)
            if (bv.vertex == static_cast<int>(v)) res = std::max(res, bv.residual);
        doc["junctions"].push_back({{"id", net.vertices[v].id}, {"degree", inc[v].size()}, {"residual", res}});
    }
    doc["variables"] = json::array();
    for (int k = 0; k < field.program.n; ++k) {
        int c = field.solution.component[k];
        doc["variables"].push_back({{"vertex", net.vertices[field.program.var_vertex[k]].id},
                                    {"x", field.solution.x[k]},
                                    {"class", field.solution.comp_class[c] == JunctionClass::IC ? "ic" : "bc"}});
    }
    doc["critical"] = is_critical(field);
    return doc.dump(indent);
}

} // namespace hexflow
