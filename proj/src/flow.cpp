#include "hexflow/flow.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hexflow/anisotropy.hpp"
#include "hexflow/error.hpp"
#include "hexflow/geometry.hpp"

namespace hexflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec2 tangent_of_facet(int k) {
    Vec2 n = facet_normal(k);
    return {n.y, -n.x};  // normal = counterclockwise quarter turn of the tangent
}

std::vector<int> facets_of(const Network& net) {
    std::vector<int> f(net.edges.size());
    for (size_t e = 0; e < net.edges.size(); ++e) f[e] = net.facet(static_cast<int>(e));
    return f;
}

int nearest_facet(Vec2 nu) {
    int best = 0;
    for (int k = 1; k < 6; ++k)
        if (dot(nu, facet_normal(k)) > dot(nu, facet_normal(best))) best = k;
    return best;
}

std::vector<double> lengths_along(const Network& net, const std::vector<int>& facets) {
    std::vector<double> L(net.edges.size(), kInf);
    for (size_t e = 0; e < net.edges.size(); ++e) {
        const Edge& ed = net.edges[e];
        if (ed.is_segment())
            L[e] = dot(net.vertices[ed.to].pos - net.vertices[ed.from].pos, tangent_of_facet(facets[e]));
    }
    return L;
}

double min_segment_length(const std::vector<double>& L) {
    double m = kInf;
    for (double l : L) m = std::min(m, l);
    return m;
}

double delta2(const Network& net) {
    double m = kInf;
    for (size_t a = 0; a < net.edges.size(); ++a)
        for (size_t b = a + 1; b < net.edges.size(); ++b) {
            if (edges_share_vertex(net, static_cast<int>(a), static_cast<int>(b))) continue;
            m = std::min(m, edge_distance(net, static_cast<int>(a), static_cast<int>(b)));
        }
    return m / 6.0;
}

double delta_min(const Network& net, const std::vector<double>& L) {
    return std::min(min_segment_length(L) / (3.0 * kSqrt3), delta2(net));
}

Network reconstruct_with(const Network& ref, const std::vector<int>& facets, const std::vector<double>& h,
                         double compat_tol) {
    Network out = ref;
    auto inc = incidence(ref);
    double tol = compat_tol * std::max(ref.diameter(), 1e-300);
    for (size_t v = 0; v < ref.vertices.size(); ++v) {
        const auto& ends = inc[v];
        if (ends.empty()) continue;
        double m00 = 0, m01 = 0, m11 = 0, b0 = 0, b1 = 0;
        bool moved = false;
        for (const auto& end : ends) {
            Vec2 nu = facet_normal(facets[end.edge]);
            double r = -h[end.edge];
            moved = moved || r != 0.0;
            m00 += nu.x * nu.x;
            m01 += nu.x * nu.y;
            m11 += nu.y * nu.y;
            b0 += nu.x * r;
            b1 += nu.y * r;
        }
        if (!moved) continue;
        Vec2 delta;
        double det = m00 * m11 - m01 * m01;
        if (det > 1e-10) {
            delta = {(m11 * b0 - m01 * b1) / det, (m00 * b1 - m01 * b0) / det};
        } else {
            // all lines parallel: move along the common normal
            Vec2 nu0 = facet_normal(facets[ends[0].edge]);
            double acc = 0;
            for (const auto& end : ends) acc += dot(nu0, facet_normal(facets[end.edge])) * -h[end.edge];
            delta = nu0 * (acc / static_cast<double>(ends.size()));
        }
        for (const auto& end : ends) {
            double res = dot(facet_normal(facets[end.edge]), delta) + h[end.edge];
            if (std::abs(res) > tol)
                throw Error(ErrorCode::CompatibilityViolation,
                            "heights are not compatible at " + ref.vertices[v].id);
        }
        out.vertices[v].pos = ref.vertices[v].pos + delta;
    }
    return out;
}

// facet-based test: a degree-3 junction whose away facets are pairwise 120 degrees apart
bool is_triod120(const Network& net, const std::vector<int>& facets, const std::vector<EdgeEnd>& ends) {
    if (ends.size() != 3) return false;
    std::vector<int> k;
    for (const auto& end : ends) k.push_back(mod6(end.at_from ? facets[end.edge] : facets[end.edge] + 3));
    std::sort(k.begin(), k.end());
    (void)net;
    return k[1] - k[0] == 2 && k[2] - k[1] == 2;
}

void check_evolvable(const Network& net, const std::vector<int>& facets, const std::vector<double>& kappa) {
    double scale = 0;
    for (double k : kappa) scale = std::max(scale, std::abs(k));
    auto inc = incidence(net);
    for (size_t v = 0; v < net.vertices.size(); ++v) {
        if (inc[v].size() < 3 || is_triod120(net, facets, inc[v])) continue;
        for (const auto& end : inc[v])
            if (std::abs(kappa[end.edge]) > 1e-12 * std::max(1.0, scale))
                throw Error(ErrorCode::NotEvolvable, "edge " + net.edges[end.edge].id +
                                                         " at multiple junction " + net.vertices[v].id +
                                                         " has nonzero curvature");
    }
}

std::vector<double> kappa_at(const Network& net, const std::vector<int>& facets, const std::vector<double>& L) {
    for (size_t e = 0; e < L.size(); ++e)
        if (net.edges[e].is_segment() && !(L[e] > 0))
            throw Error(ErrorCode::StepTooLarge, "segment " + net.edges[e].id + " inverted");
    EdgeGeometry geo{facets, L};
    return minimal_field(net, &geo).kappa;
}

std::vector<double> stage_rate(const FlowState& s, const std::vector<double>& h, double compat_tol) {
    Network net = reconstruct_with(s.reference, s.facets, h, compat_tol);
    std::vector<double> k = kappa_at(net, s.facets, lengths_along(net, s.facets));
    for (double& x : k) x = -x;
    return k;
}

FlowState rk4(const FlowState& s, double dt, const FlowOptions& opt) {
    const size_t n = s.h.size();
    auto axpy = [&](const std::vector<double>& k, double c) {
        std::vector<double> y = s.h;
        for (size_t i = 0; i < n; ++i) y[i] += c * k[i];
        return y;
    };
    auto k1 = stage_rate(s, s.h, opt.compat_tol);
    auto k2 = stage_rate(s, axpy(k1, dt / 2), opt.compat_tol);
    auto k3 = stage_rate(s, axpy(k2, dt / 2), opt.compat_tol);
    auto k4 = stage_rate(s, axpy(k3, dt), opt.compat_tol);
    FlowState out = s;
    out.t = s.t + dt;
    for (size_t i = 0; i < n; ++i) out.h[i] = s.h[i] + dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    out.network = reconstruct_with(s.reference, s.facets, out.h, opt.compat_tol);
    out.lengths = lengths_along(out.network, s.facets);
    for (size_t e = 0; e < n; ++e)
        if (out.network.edges[e].is_segment() && !(out.lengths[e] > 0))
            throw Error(ErrorCode::StepTooLarge, "segment " + out.network.edges[e].id + " inverted");

    double hmax = 0;
    for (double x : out.h) hmax = std::max(hmax, std::abs(x));
    double ref_delta = delta_min(s.reference, lengths_along(s.reference, s.facets));
    if (hmax > opt.rebase_theta * ref_delta) {
        for (size_t i = 0; i < n; ++i) out.h_total[i] += out.h[i];
        out.reference = out.network;
        std::fill(out.h.begin(), out.h.end(), 0.0);
    }
    return out;
}

double max_dt_from(const FlowState& s, const std::vector<double>& kappa, const FlowOptions& opt) {
    double leff = kInf, kmax = 0;
    for (size_t e = 0; e < kappa.size(); ++e) {
        if (!s.network.edges[e].is_segment()) continue;
        double k = std::abs(kappa[e]);
        kmax = std::max(kmax, k);
        leff = std::min(leff, std::max(s.lengths[e], k > 0 ? 1.0 / k : kInf));
    }
    double dt = opt.eta * (kSqrt3 / 8) * leff * leff;
    if (kmax > 0) dt = std::min(dt, opt.speed_fraction * delta_min(s.network, s.lengths) / kmax);
    if (opt.dt_cap > 0) dt = std::min(dt, opt.dt_cap);
    return dt;
}

} // namespace

std::pair<double, double> delta_bounds(const Network& net) {
    double minl = kInf;
    for (size_t e = 0; e < net.edges.size(); ++e)
        if (net.edges[e].is_segment()) minl = std::min(minl, net.length(static_cast<int>(e)));
    return {minl / (3.0 * kSqrt3), delta2(net)};
}

Network reconstruct(const Network& reference, const std::vector<double>& h, double compat_tol, bool check_bounds) {
    if (h.size() != reference.edges.size())
        throw Error(ErrorCode::InvalidArgument, "height vector does not match the edges");
    std::vector<double> hh = h;
    for (size_t e = 0; e < h.size(); ++e)
        if (reference.edges[e].is_halfline() && h[e] != 0.0)
            throw Error(ErrorCode::CompatibilityViolation, "half-line " + reference.edges[e].id + " has nonzero height");
    if (check_bounds) {
        auto [d1, d2] = delta_bounds(reference);
        double bound = std::min(d1, d2);
        for (size_t e = 0; e < h.size(); ++e)
            if (std::abs(h[e]) > bound)
                throw Error(ErrorCode::HeightBoundViolation, "height of " + reference.edges[e].id + " exceeds the bound");
    }
    return reconstruct_with(reference, facets_of(reference), hh, compat_tol);
}

std::vector<double> signed_lengths(const Network& reference, const Network& net) {
    return lengths_along(net, facets_of(reference));
}

FlowState make_state(const Network& net, double t) {
    FlowState s;
    s.t = t;
    s.reference = net;
    s.network = net;
    s.facets = facets_of(net);
    s.h.assign(net.edges.size(), 0.0);
    s.h_total.assign(net.edges.size(), 0.0);
    s.lengths = lengths_along(net, s.facets);
    return s;
}

std::vector<double> velocities(const FlowState& state) {
    std::vector<double> k = kappa_at(state.network, state.facets, state.lengths);
    check_evolvable(state.network, state.facets, k);
    for (double& x : k) x = -x;
    return k;
}

double max_dt(const FlowState& state, const FlowOptions& opt) {
    return max_dt_from(state, kappa_at(state.network, state.facets, state.lengths), opt);
}

FlowState step(const FlowState& state, double dt, const FlowOptions& opt) {
    if (!(dt > 0)) throw Error(ErrorCode::InvalidArgument, "time step must be positive");
    std::vector<double> k = kappa_at(state.network, state.facets, state.lengths);
    check_evolvable(state.network, state.facets, k);
    double bound = max_dt_from(state, k, opt);
    if (dt > bound * (1 + 1e-12))
        throw Error(ErrorCode::StepTooLarge, "time step exceeds the stability bound");
    return rk4(state, dt, opt);
}

const char* event_kind_name(FlowEvent::Kind k) {
    switch (k) {
    case FlowEvent::Collapse: return "collapse";
    case FlowEvent::Restart: return "restart";
    case FlowEvent::Terminate: return "terminate";
    }
    return "?";
}

Network collapse_limit(const FlowState& state, double eps_len) {
    const Network& net = state.network;
    std::vector<int> parent(net.vertices.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    std::vector<bool> gone(net.edges.size(), false);
    for (size_t e = 0; e < net.edges.size(); ++e) {
        const Edge& ed = net.edges[e];
        if (ed.is_segment() && state.lengths[e] <= eps_len) {
            gone[e] = true;
            parent[find(ed.from)] = find(ed.to);
        }
    }

    // merged vertices at the average of their members
    std::vector<int> slot(net.vertices.size(), -1);
    std::vector<Vec2> sum;
    std::vector<int> count;
    Network out;
    out.source = net.source;
    std::vector<int> vmap(net.vertices.size());
    for (size_t v = 0; v < net.vertices.size(); ++v) {
        int r = find(static_cast<int>(v));
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.vertices.size());
            out.vertices.push_back({net.vertices[v].id, {}});
            sum.emplace_back();
            count.push_back(0);
        }
        vmap[v] = slot[r];
        sum[slot[r]] += net.vertices[v].pos;
        ++count[slot[r]];
    }
    for (size_t i = 0; i < out.vertices.size(); ++i) out.vertices[i].pos = sum[i] / count[i];

    std::vector<int> facets;
    for (size_t e = 0; e < net.edges.size(); ++e) {
        if (gone[e]) continue;
        Edge ed = net.edges[e];
        ed.from = vmap[ed.from];
        if (ed.is_segment()) {
            ed.to = vmap[ed.to];
            if (ed.to == ed.from) continue;
        }
        bool merged = false;
        for (auto& other : out.edges) {
            bool same = other.kind == ed.kind &&
                        (ed.is_segment() ? ((other.from == ed.from && other.to == ed.to) ||
                                            (other.from == ed.to && other.to == ed.from))
                                         : (other.from == ed.from && dist(other.dir, ed.dir) < 1e-9));
            if (same) {
                other.multiplicity += ed.multiplicity;
                merged = true;
                break;
            }
        }
        if (merged) continue;
        out.edges.push_back(ed);
        facets.push_back(state.facets[e]);
    }

    // drop isolated vertices
    std::vector<int> degree(out.vertices.size(), 0);
    for (const auto& e : out.edges) {
        ++degree[e.from];
        if (e.is_segment()) ++degree[e.to];
    }
    std::vector<int> remap(out.vertices.size(), -1);
    std::vector<Vertex> kept;
    for (size_t v = 0; v < out.vertices.size(); ++v)
        if (degree[v] > 0 || out.edges.empty()) {
            remap[v] = static_cast<int>(kept.size());
            kept.push_back(out.vertices[v]);
        }
    if (out.edges.empty() && kept.size() > 1) {
        Vec2 c;
        for (const auto& v : kept) c += v.pos;
        kept = {{kept[0].id, c / static_cast<double>(kept.size())}};
    }
    out.vertices = kept;
    for (auto& e : out.edges) {
        e.from = remap[e.from];
        if (e.is_segment()) e.to = remap[e.to];
    }

    // restore exact facet directions: smallest vertex motion making every segment
    // orthogonal to its facet normal
    int m = 0;
    for (const auto& e : out.edges) m += e.is_segment() ? 1 : 0;
    if (m > 0) {
        const int nv = static_cast<int>(out.vertices.size());
        Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, 2 * nv);
        Eigen::VectorXd p(2 * nv);
        for (int v = 0; v < nv; ++v) {
            p(2 * v) = out.vertices[v].pos.x;
            p(2 * v + 1) = out.vertices[v].pos.y;
        }
        int row = 0;
        for (size_t e = 0; e < out.edges.size(); ++e) {
            const Edge& ed = out.edges[e];
            if (!ed.is_segment()) continue;
            Vec2 nu = facet_normal(facets[e]);
            C(row, 2 * ed.to) += nu.x;
            C(row, 2 * ed.to + 1) += nu.y;
            C(row, 2 * ed.from) -= nu.x;
            C(row, 2 * ed.from + 1) -= nu.y;
            ++row;
        }
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(C);
        Eigen::VectorXd delta = cod.solve(-(C * p));
        for (int v = 0; v < nv; ++v) out.vertices[v].pos += Vec2{delta(2 * v), delta(2 * v + 1)};
    }
    return out;
}

Network collapse_limit(const Network& net, double eps_len) {
    FlowState s;
    s.network = net;
    s.facets.resize(net.edges.size());
    for (size_t e = 0; e < net.edges.size(); ++e) s.facets[e] = nearest_facet(net.normal(static_cast<int>(e)));
    s.lengths = lengths_along(net, s.facets);
    return collapse_limit(s, eps_len);
}

namespace {

Sample make_sample(const FlowState& s, int phase) {
    Sample smp;
    smp.t = s.t;
    smp.phase = phase;
    smp.network = s.network;
    smp.length = s.lengths;
    smp.kappa = kappa_at(s.network, s.facets, s.lengths);
    smp.h.resize(s.h.size());
    for (size_t i = 0; i < s.h.size(); ++i) smp.h[i] = s.h_total[i] + s.h[i];
    return smp;
}

} // namespace

Trajectory evolve(const Network& net, double horizon, const FlowOptions& opt) {
    if (!(horizon > 0)) throw Error(ErrorCode::InvalidArgument, "horizon must be positive");
    Trajectory traj;

    FlowState s = make_state(net);
    {
        auto k = kappa_at(s.network, s.facets, s.lengths);
        check_evolvable(s.network, s.facets, k);
    }
    double minl0 = min_segment_length(s.lengths);
    const double eps_len = opt.eps_len_rel * (std::isfinite(minl0) ? minl0 : std::max(1.0, net.diameter()));

    int phase = 0;
    traj.samples.push_back(make_sample(s, phase));
    double last_sample = s.t;

    while (true) {
        bool collapsed = false;
        while (s.t < horizon) {
            if (traj.steps >= opt.max_steps) throw Error(ErrorCode::NotEvolvable, "step limit reached");
            double dt = std::min(max_dt(s, opt), horizon - s.t);
            FlowState next;
            bool ok = false;
            for (int tries = 0; tries <= opt.max_bisections && !ok; ++tries) {
                try {
                    next = rk4(s, dt, opt);
                    ok = true;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::StepTooLarge && e.code() != ErrorCode::CompatibilityViolation &&
                        e.code() != ErrorCode::NoCHField)
                        throw;
                    dt /= 2;
                }
            }
            if (!ok) throw Error(ErrorCode::StepTooLarge, "step size bisection failed");
            if (horizon - next.t < 1e-14 * std::max(1.0, horizon)) next.t = horizon;
            s = std::move(next);
            ++traj.steps;
            collapsed = min_segment_length(s.lengths) <= eps_len;
            if (collapsed || s.t >= horizon || s.t - last_sample >= opt.sample_interval) {
                traj.samples.push_back(make_sample(s, phase));
                last_sample = s.t;
            }
            if (collapsed) break;
        }

        if (!collapsed) {
            FlowEvent ev;
            ev.kind = FlowEvent::Terminate;
            ev.t = s.t;
            ev.reason = "horizon reached";
            ev.limit = s.network;
            traj.events.push_back(ev);
            break;
        }

        Network limit = collapse_limit(s, eps_len * opt.merge_factor);
        FlowEvent col;
        col.kind = FlowEvent::Collapse;
        col.t = s.t;
        col.limit = limit;
        for (const auto& e : limit.edges) col.higher_multiplicity = col.higher_multiplicity || e.multiplicity > 1;
        col.reason = col.higher_multiplicity ? "segments vanished; overlapping edges merged" : "segments vanished";
        traj.events.push_back(col);

        FlowEvent next;
        next.t = s.t;
        next.limit = limit;
        next.kind = FlowEvent::Terminate;
        next.higher_multiplicity = col.higher_multiplicity;
        if (limit.edges.empty()) {
            next.reason = "network shrank to a point";
        } else {
            try {
                MinimalCHField f = minimal_field(limit);
                next.critical = is_critical(f);
                if (col.higher_multiplicity) next.reason = "higher multiplicity";
                else if (next.critical) next.reason = "critical";
                else if (is_simple_with_multiple_junctions(limit, f)) next.kind = FlowEvent::Restart;
                else next.reason = "not evolvable: nonzero curvature at a multiple junction";
            } catch (const Error& e) {
                next.reason = std::string("no evolution law: ") + e.what();
            }
        }
        if (next.kind == FlowEvent::Restart) {
            next.reason = "limit is simple with multiple junctions";
            if (phase + 1 > opt.max_restarts) {
                next.kind = FlowEvent::Terminate;
                next.reason = "restart limit reached";
            }
        }
        traj.events.push_back(next);
        if (next.kind != FlowEvent::Restart) break;

        ++phase;
        s = make_state(limit, s.t);
        traj.samples.push_back(make_sample(s, phase));
        last_sample = s.t;
    }
    return traj;
}

HomothetyResult homothety_check(const Trajectory& traj, Vec2 center, double tol, double t_max) {
    double t_end = kInf;
    for (const auto& ev : traj.events)
        if (ev.kind != FlowEvent::Terminate || ev.reason != "horizon reached") {
            t_end = ev.t;
            break;
        }
    std::vector<const Sample*> use;
    for (const auto& s : traj.samples)
        if (s.phase == 0 && s.t < t_end && s.t <= t_max) use.push_back(&s);
    if (use.size() < 10) throw Error(ErrorCode::NoSamples, "homothety check needs at least 10 samples");

    HomothetyResult res;
    const Network& ref = use[0]->network;
    double diam = std::max(ref.diameter(), 1e-300);
    for (const Sample* s : use) {
        std::vector<double> ratios;
        for (size_t v = 0; v < ref.vertices.size(); ++v) {
            double d0 = dist(ref.vertices[v].pos, center);
            if (d0 > 1e-9 * diam) ratios.push_back(dist(s->network.vertices[v].pos, center) / d0);
        }
        double r = 1.0;
        if (!ratios.empty()) {
            std::sort(ratios.begin(), ratios.end());
            size_t n = ratios.size();
            r = n % 2 ? ratios[n / 2] : 0.5 * (ratios[n / 2 - 1] + ratios[n / 2]);
        }
        double worst = 0;
        for (size_t v = 0; v < ref.vertices.size(); ++v) {
            Vec2 expect = center + (ref.vertices[v].pos - center) * r;
            worst = std::max(worst, dist(s->network.vertices[v].pos, expect) / diam);
        }
        res.t.push_back(s->t);
        res.r.push_back(r);
        res.residual = std::max(res.residual, worst);
    }
    bool decreasing = true;
    for (size_t i = 1; i < res.r.size(); ++i) decreasing = decreasing && res.r[i] < res.r[i - 1];

    double n = static_cast<double>(res.t.size()), st = 0, sy = 0, stt = 0, sty = 0;
    for (size_t i = 0; i < res.t.size(); ++i) {
        double y = res.r[i] * res.r[i];
        st += res.t[i];
        sy += y;
        stt += res.t[i] * res.t[i];
        sty += res.t[i] * y;
    }
    double den = n * stt - st * st;
    res.slope = den > 0 ? (n * sty - st * sy) / den : 0.0;
    res.is_homothetic = decreasing && res.residual <= tol;
    return res;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
    std::ostringstream buf;
    buf << std::setprecision(15);
    buf << "t,edge,length,kappa,h\n";
    for (const auto& s : traj.samples)
        for (size_t e = 0; e < s.network.edges.size(); ++e) {
            buf << s.t << ',' << s.network.edges[e].id << ',';
            if (std::isfinite(s.length[e])) buf << s.length[e];
            else buf << "inf";
            buf << ',' << s.kappa[e] << ',' << s.h[e] << '\n';
        }
    out << buf.str();
}

std::string render_svg(const Network& net, double xmin, double ymin, double width, double height) {
    std::ostringstream o;
    o << std::setprecision(10);
    double xmax = xmin + width, ymax = ymin + height;
    double stroke = 0.004 * std::max(width, height);
    // y axis points up in the network, down in SVG
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << xmin << ' ' << -ymax << ' ' << width << ' '
      << height << "\">\n";
    for (const auto& e : net.edges) {
        Vec2 a = net.vertices[e.from].pos, b;
        if (e.is_segment()) {
            b = net.vertices[e.to].pos;
        } else {
            // clip the ray to the view box
            double tmax = kInf;
            if (e.dir.x > 0) tmax = std::min(tmax, (xmax - a.x) / e.dir.x);
            if (e.dir.x < 0) tmax = std::min(tmax, (xmin - a.x) / e.dir.x);
            if (e.dir.y > 0) tmax = std::min(tmax, (ymax - a.y) / e.dir.y);
            if (e.dir.y < 0) tmax = std::min(tmax, (ymin - a.y) / e.dir.y);
            if (!std::isfinite(tmax) || tmax < 0) tmax = 0;
            b = a + e.dir * tmax;
        }
        o << "  <line x1=\"" << a.x << "\" y1=\"" << -a.y << "\" x2=\"" << b.x << "\" y2=\"" << -b.y
          << "\" stroke=\"black\" stroke-width=\"" << stroke * e.multiplicity << "\"/>\n";
    }
    o << "</svg>\n";
    return o.str();
}

int write_svg_frames(const Trajectory& traj, const std::string& dir) {
    if (traj.samples.empty()) return 0;
    std::filesystem::create_directories(dir);
    const Network& first = traj.samples.front().network;
    Vec2 lo{kInf, kInf}, hi{-kInf, -kInf};
    for (const auto& v : first.vertices) {
        lo = {std::min(lo.x, v.pos.x), std::min(lo.y, v.pos.y)};
        hi = {std::max(hi.x, v.pos.x), std::max(hi.y, v.pos.y)};
    }
    Vec2 c = (lo + hi) / 2;
    double w = std::max(hi.x - lo.x, 1e-6) * 1.2, h = std::max(hi.y - lo.y, 1e-6) * 1.2;
    if (first.edges.size() && w < 1e-3) w = 1.0;
    if (first.edges.size() && h < 1e-3) h = 1.0;
    int n = 0;
    for (const auto& s : traj.samples) {
        std::ostringstream name;
        name << dir << "/frame_" << std::setw(5) << std::setfill('0') << n++ << ".svg";
        std::ofstream out(name.str());
        if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + name.str());
        out << render_svg(s.network, c.x - w / 2, c.y - h / 2, w, h);
    }
    return n;
}

} // namespace hexflow
