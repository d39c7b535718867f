// Acceptance checks: one PASS/FAIL line per criterion. The exit code counts
// failures outside the expected set.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hexflow/anisotropy.hpp"
#include "hexflow/chfield.hpp"
#include "hexflow/error.hpp"
#include "hexflow/flow.hpp"
#include "hexflow/network.hpp"
#include "hexflow/scenarios.hpp"
#include "hexflow/shrinker.hpp"

using namespace hexflow;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

double edge_length(const Sample& s, const Network& ref, const std::string& id) {
    return s.length[ref.find_edge(id)];
}

// --- 1 ---------------------------------------------------------------------

Outcome quadratic_solver() {
    double worst_x = 0, worst_k = 0;
    for (double eps : {0.1, 0.5}) {
        const double r3 = std::sqrt(3.0), p = 7 - 3 * eps, q = 3 - eps;
        const std::vector<double> expect = {2 * q / (r3 * p), (5 - eps) / (r3 * q), 2 * (1 - eps) / (r3 * p),
                                            (1 - eps) / (r3 * q), 2 * (2 - eps) / (r3 * p), 1 / r3};
        auto x = solve(broken_turlik_program(eps)).x;
        for (int i = 0; i < 6; ++i) worst_x = std::max(worst_x, std::abs(x[i] - expect[i]));
        auto k = broken_turlik_arms(x);
        worst_k = std::max({worst_k, std::abs(k.s12 - 2 / (r3 * p)), std::abs(k.s10 - 2 / (r3 * p)),
                            std::abs(k.s11 - 2 / (r3 * q)), std::abs(k.s9 + 2 / (r3 * q))});
    }
    return {worst_x <= 1e-10 && worst_k <= 1e-10,
            fmt("max |x - x0| = %.3g", worst_x) + fmt(", max kappa error = %.3g", worst_k)};
}

// --- 2 ---------------------------------------------------------------------

std::vector<double> brute_force(const CHProgram& p) {
    const int pts = 50;
    std::vector<double> best(p.n), x(p.n);
    double fbest = INFINITY;
    std::function<void(int)> rec = [&](int i) {
        if (i == p.n) {
            double f = p.objective(x);
            if (f < fbest) fbest = f, best = x;
            return;
        }
        for (int g = 0; g < pts; ++g) {
            x[i] = p.d * g / (pts - 1);
            rec(i + 1);
        }
    };
    rec(0);
    // projected coordinate descent from the best grid point
    x = best;
    for (int sweep = 0; sweep < 20000; ++sweep) {
        double change = 0;
        for (int k = 0; k < p.n; ++k) {
            double num = p.b[k] * p.d, den = p.a[k] + p.b[k];
            for (int l = 0; l < p.n; ++l)
                if (l != k) {
                    double c = k < l ? p.c[k][l] : p.c[l][k];
                    num += c * x[l];
                    den += c;
                }
            for (const auto& an : p.anchors)
                if (an.var == k) num += an.weight * an.value, den += an.weight;
            double nx = den > 0 ? std::clamp(num / den, 0.0, p.d) : x[k];
            change = std::max(change, std::abs(nx - x[k]));
            x[k] = nx;
        }
        if (change < 1e-15) break;
    }
    return x;
}

Outcome oracle_equivalence() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> U(0, 1);
    double worst = 0, worst_obj = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + trial % 4;
        CHProgram p(n);
        p.d = kSide;
        for (int k = 0; k < n; ++k) {
            p.a[k] = U(rng) < 0.4 ? 0.0 : 3 * U(rng);
            p.b[k] = U(rng) < 0.4 ? 0.0 : 3 * U(rng);
        }
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
                if (U(rng) < 0.7) p.add_c(k, l, 0.1 + 2 * U(rng));
        if (U(rng) < 0.3) p.anchors.push_back({static_cast<int>(rng() % n), 0.1 + U(rng), p.d * U(rng)});
        if (U(rng) < 0.5) p.a[0] += 0.05;  // keep most programs strictly convex
        auto x = solve(p).x;
        auto y = brute_force(p);
        double fx = p.objective(x), fy = p.objective(y);
        worst_obj = std::max(worst_obj, fx - fy);
        // flat directions make the minimizer non-unique; compare objective there
        bool unique = true;
        for (int k = 0; k < n; ++k) {
            double diag = p.a[k] + p.b[k];
            for (const auto& an : p.anchors)
                if (an.var == k) diag += an.weight;
            if (diag == 0) unique = false;
        }
        if (unique)
            for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
    }
    return {worst <= 1e-6 && worst_obj <= 1e-12,
            fmt("max |x - oracle| = %.3g", worst) + fmt(", objective excess = %.3g", worst_obj)};
}

// --- 3 ---------------------------------------------------------------------

Outcome wulff_shrinking() {
    Network net = wulff_hexagon(1.0);
    FlowOptions opt;
    opt.eta = 0.02;
    auto traj = evolve(net, 1.0, opt);
    double side0 = net.length(net.find_edge("S0")), worst = 0, t_collapse = NAN;
    for (const auto& ev : traj.events)
        if (ev.kind == FlowEvent::Collapse) {
            t_collapse = ev.t;
            break;
        }
    for (const auto& s : traj.samples) {
        if (s.phase != 0) continue;
        double r = edge_length(s, net, "S0") / side0;
        if (r < 0.01) continue;
        double expect = std::sqrt(1 - 8.0 / 3.0 * s.t);
        worst = std::max(worst, std::abs(r - expect) / expect);
    }
    bool ok = worst <= 1e-6 && std::abs(t_collapse - 0.375) <= 1e-6;
    return {ok, fmt("max rel. error = %.3g", worst) + fmt(", collapse at t = %.10f", t_collapse)};
}

// --- 4 ---------------------------------------------------------------------

Outcome hexagon09o1() {
    const double a0 = 2, b0 = 1, c0 = 1;
    Network net = hexagon_abc(a0, b0, c0);
    auto traj = evolve(net, 2.0);
    // As printed, F solves F' = 2F/(2a-a0+c0) - 2 rather than the stated
    // F' = 2F/(2a-a0+c0) - 1; the solution of the latter has half the logarithm.
    double worst_f = 0, worst_half = 0, worst_inv = 0;
    int used = 0;
    for (const auto& s : traj.samples) {
        if (s.phase != 0) continue;
        double a = edge_length(s, net, "S0"), b = edge_length(s, net, "S1"), c = edge_length(s, net, "S2");
        double f = (2 * a - a0 + c0) * (b0 / (a0 + c0) + std::log((a0 + c0) / (2 * a - a0 + c0)));
        double g = (2 * a - a0 + c0) * (b0 / (a0 + c0) + 0.5 * std::log((a0 + c0) / (2 * a - a0 + c0)));
        worst_f = std::max(worst_f, std::abs(b - f));
        worst_half = std::max(worst_half, std::abs(b - g));
        worst_inv = std::max(worst_inv, std::abs((a - c) - (a0 - c0)));
        ++used;
    }
    return {used > 10 && worst_f <= 1e-6 && worst_inv <= 1e-8,
            fmt("%.0f samples", used) + fmt(", max |b - F(a)| = %.3g", worst_f) +
                fmt(" (half-log form %.3g)", worst_half) +
                fmt(", max |(a-c) - (a0-c0)| = %.3g", worst_inv)};
}

// --- 5 ---------------------------------------------------------------------

Outcome chuvaks_cases() {
    std::string detail;
    bool ok = true;
    // b - a along the flow, and the collapse of the long case
    {
        Network net = chuvaks(1.0, 2.0);
        auto traj = evolve(net, 3.0);
        double worst = 0;
        for (const auto& s : traj.samples)
            if (s.phase == 0)
                worst = std::max(worst, std::abs(edge_length(s, net, "S1") - edge_length(s, net, "S0") - 1.0));
        bool multiplicity = false, critical = false;
        for (const auto& ev : traj.events) {
            multiplicity = multiplicity || ev.higher_multiplicity;
            if (ev.kind == FlowEvent::Terminate) {
                int halflines = 0, segments = 0;
                for (const auto& e : ev.limit.edges) (e.is_halfline() ? halflines : segments)++;
                critical = is_critical(ev.limit) && halflines == 4 && segments == 1;
            }
        }
        ok = ok && worst <= 1e-8 && multiplicity && critical;
        detail += fmt("max |(b-a) - 1| = %.3g", worst) + ", multiplicity-2 tag " + (multiplicity ? "yes" : "no") +
                  ", critical segment limit " + (critical ? "yes" : "no");
    }
    {
        Network net = chuvaks(1.0, 1.0);
        auto traj = evolve(net, 1.0);
        auto h = homothety_check(traj, {0, 0}, 1e-6);
        double lambda = -h.slope;  // a0 = 1
        bool lam_ok = h.is_homothetic && std::abs(lambda - 4.0 / 9.0) <= 1e-3;
        ok = ok && lam_ok;
        detail += fmt("; a0=b0=1: lambda = %.6f", lambda) + " (target 4/9)" +
                  (h.is_homothetic ? ", homothetic" : ", not homothetic");
    }
    return {ok, detail};
}

// --- 6 ---------------------------------------------------------------------

Outcome classification() {
    auto rows = classify_all(4);
    std::set<std::string> yes, stationary;
    for (const auto& r : rows) {
        if (r.verdict == Verdict::Yes) yes.insert(r.config.name());
        if (r.verdict == Verdict::Stationary) stationary.insert(r.config.name());
    }
    const std::set<std::string> want_yes = {"A1", "A1,A2", "A1,A3,A5", "A1,A2,A4,A5", "A1,A2,A3,A4,A5", "vertex:a",
                                            "vertex:c"};
    const std::set<std::string> want_stat = {"A1,A2,A3,A4,A5,A6"};
    bool sets = yes == want_yes && stationary == want_stat;

    auto two = solve_config(ShrinkerConfig::parse("A1,A2"));
    double side_err = INFINITY, theta_err = INFINITY;
    if (two) {
        side_err = std::max({std::abs(two->sides[1] - 2.94771), std::abs(two->sides[2] - 2.33925),
                             std::abs(two->sides[3] - 1.60847)});
        theta_err = std::abs(two->theta[2] - 100.51566);
    }
    auto spoon = solve_config(ShrinkerConfig::parse("A1"));
    double spoon_err = INFINITY, split_err = INFINITY;
    if (spoon) {
        const double want[6] = {1, 2, 1, 1, 2, 1};
        spoon_err = 0;
        for (int i = 0; i < 6; ++i) spoon_err = std::max(spoon_err, std::abs(spoon->sides[i] - want[i]));
        split_err = std::abs(spoon->center_split - 0.5);
    }
    bool ok = sets && side_err <= 1e-4 && theta_err <= 1e-3 && spoon_err <= 1e-10 && split_err <= 1e-10;
    return {ok, fmt("%.0f YES", yes.size()) + fmt(" + %.0f stationary", stationary.size()) +
                    (sets ? " (expected set)" : " (unexpected set)") + fmt(", two-half-line sides error %.2g", side_err) +
                    fmt(", theta3 error %.2g deg", theta_err) + fmt(", spoon error %.2g", spoon_err)};
}

// --- 7 ---------------------------------------------------------------------

Outcome flow_slopes() {
    struct Case {
        const char* cfg;
        double target;
    };
    const Case cases[] = {{"A1", 2.0 / 3}, {"A1,A2", 2.0 / 3}, {"A1,A3,A5", 2.0 / 3},
                          {"A1,A2,A4,A5", 4.0 / 9}, {"A1,A2,A3,A4,A5", 4.0 / 9}};
    bool ok = true;
    std::string detail;
    for (const auto& c : cases) {
        auto v = verify_by_flow(ShrinkerConfig::parse(c.cfg));
        bool hit = v.homothetic && std::abs(v.lambda_measured - c.target) <= 1e-4;
        ok = ok && hit;
        detail += std::string(c.cfg) + fmt(" %.6f", v.lambda_measured) + (hit ? " ok; " : " off; ");
    }
    auto va = verify_by_flow(ShrinkerConfig::parse("vertex:a"));
    detail += fmt("vertex (a) measured %.6f", va.lambda_measured) + (va.homothetic ? "" : " (not homothetic)");
    return {ok, detail};
}

// --- 8 ---------------------------------------------------------------------

// random simple network: a lattice hexagon with random sides and radial half-lines
Network random_simple(std::mt19937_64& rng, bool rays = true) {
    std::uniform_real_distribution<double> U(0.3, 2.0);
    // sides i along direction i+2; closure needs s0-s3 = s4-s1 = s2-s5
    double s0 = U(rng), s1 = U(rng), s2 = U(rng), s3 = U(rng);
    double k = s0 - s3;
    double s4 = s1 + k, s5 = s2 - k;
    if (s4 < 0.2 || s5 < 0.2) return random_simple(rng, rays);
    std::vector<int> verts;
    for (int v = 0; v < 6; ++v)
        if (rays && rng() % 2) verts.push_back(v);
    return lattice_hexagon({s0, s1, s2, s3, s4, s5}, radial_rays(verts));
}

Outcome property_suite() {
    std::mt19937_64 rng(7);
    double kbal = 0, vbal = 0;
    for (int i = 0; i < 50; ++i) {
        Network net = random_simple(rng);
        auto field = minimal_field(net);
        for (const auto& v : verify_balance(net, field, 0.0))
            (v.kind == "curvature" ? kbal : vbal) = std::max(v.kind == "curvature" ? kbal : vbal, v.residual);
    }
    // reconstruction identity and round trip; arbitrary heights are compatible
    // only without half-lines
    double ident = 0, round = 0, disp = 0;
    for (int i = 0; i < 20; ++i) {
        Network net = random_simple(rng, false);
        auto id = reconstruct(net, std::vector<double>(net.edges.size(), 0.0));
        for (size_t v = 0; v < net.vertices.size(); ++v) ident = std::max(ident, dist(id.vertices[v].pos, net.vertices[v].pos));
        auto [d1, d2] = delta_bounds(net);
        std::uniform_real_distribution<double> H(-0.5 * std::min(d1, d2), 0.5 * std::min(d1, d2));
        std::vector<double> h(net.edges.size(), 0.0);
        for (size_t e = 0; e < h.size(); ++e)
            if (net.edges[e].is_segment()) h[e] = H(rng);
        auto moved = reconstruct(net, h);
        // heights back: signed distance between parallel lines
        for (size_t e = 0; e < h.size(); ++e) {
            if (!net.edges[e].is_segment()) continue;
            Vec2 nu = net.normal(static_cast<int>(e));
            double back = dot(net.vertices[net.edges[e].from].pos - moved.vertices[moved.edges[e].from].pos, nu);
            round = std::max(round, std::abs(back - h[e]));
        }
        // displacement of each junction shared by two segments with heights h1, h2
        for (size_t v = 0; v < net.vertices.size(); ++v) {
            std::vector<double> hs;
            for (size_t e = 0; e < h.size(); ++e)
                if (net.edges[e].is_segment() &&
                    (net.edges[e].from == static_cast<int>(v) || net.edges[e].to == static_cast<int>(v)))
                    hs.push_back(h[e]);
            bool has_half = false;
            for (const auto& e : net.edges) has_half = has_half || (e.is_halfline() && e.from == static_cast<int>(v));
            if (hs.size() != 2 || has_half) continue;
            double expect = 2 / std::sqrt(3.0) * std::sqrt(hs[0] * hs[0] + hs[1] * hs[1] - hs[0] * hs[1]);
            disp = std::max(disp, std::abs(dist(moved.vertices[v].pos, net.vertices[v].pos) - expect));
        }
    }
    // mirror symmetry of a symmetric network along the flow
    double sym = 0;
    {
        Network net = chuvaks(1.0, 2.0);
        auto traj = evolve(net, 1.5);
        for (const auto& s : traj.samples) {
            if (s.phase != 0) continue;
            for (const auto& v : s.network.vertices) {
                double best = INFINITY;
                for (const auto& w : s.network.vertices) best = std::min(best, dist(w.pos, Vec2{-v.pos.x, v.pos.y}));
                double best2 = INFINITY;
                for (const auto& w : s.network.vertices) best2 = std::min(best2, dist(w.pos, Vec2{v.pos.x, -v.pos.y}));
                sym = std::max({sym, best, best2});
            }
        }
    }
    // fourth order: Wulff hexagon side at t = 0.3 with fixed steps
    double order = 0;
    {
        Network net = wulff_hexagon(1.0);
        FlowOptions loose;
        loose.eta = 1.0;
        loose.speed_fraction = 0.9;
        auto run = [&](int n) {
            FlowState s = make_state(net);
            for (int i = 0; i < n; ++i) s = step(s, 0.3 / n, loose);
            return s.network.length(net.find_edge("S0"));
        };
        double exact = net.length(net.find_edge("S0")) * std::sqrt(1 - 8.0 / 3.0 * 0.3);
        double e1 = std::abs(run(40) - exact), e2 = std::abs(run(80) - exact);
        order = std::log2(e1 / e2);
    }
    bool ok = kbal <= 1e-10 && vbal <= 1e-10 && ident <= 1e-12 && round <= 1e-12 && disp <= 1e-12 && sym <= 1e-9 &&
              order > 3.7 && order < 4.5;
    return {ok, fmt("kappa balance %.2g", kbal) + fmt(", vector balance %.2g", vbal) + fmt(", identity %.2g", ident) +
                    fmt(", round trip %.2g", round) + fmt(", displacement %.2g", disp) + fmt(", symmetry %.2g", sym) +
                    fmt(", RK4 order %.3f", order)};
}

// --- 9 ---------------------------------------------------------------------

Outcome stationarity() {
    std::vector<Network> nets = {critical_quadruple(1.0), six_halflines(1.0)};
    for (char c = 'b'; c <= 'h'; ++c) nets.push_back(cone(c));
    double worst = 0;
    for (const auto& net : nets) {
        auto traj = evolve(net, 1.0);
        for (const auto& s : traj.samples)
            for (size_t v = 0; v < net.vertices.size() && v < s.network.vertices.size(); ++v)
                worst = std::max(worst, dist(s.network.vertices[v].pos, net.vertices[v].pos));
        if (traj.samples.empty() || traj.samples.back().t < 1.0 - 1e-12) worst = INFINITY;
    }
    return {worst <= 1e-12, fmt("%.0f networks", nets.size()) + fmt(", max displacement %.3g", worst)};
}

// --- 10 --------------------------------------------------------------------

Outcome minimality() {
    const double R = 1.5;
    // the triod's rays leave at 0, 120 and 240 degrees and meet the boundary of
    // the Wulff ball of radius R at its vertices
    std::vector<Vec2> ends;
    for (int j : {0, 2, 4}) ends.push_back(wulff_vertex(j) * R);
    auto length_from = [&](Vec2 p) {
        std::vector<OrientedEdge> chain;
        for (Vec2 q : ends) chain.push_back({p, q});
        return phi_length(chain);
    };
    const double base = length_from({0, 0});
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-R * kSide, R * kSide);
    double worst = INFINITY;
    int n = 0;
    while (n < 200) {
        Vec2 p{U(rng), U(rng)};
        if (phi(p) > R) continue;
        worst = std::min(worst, length_from(p) - base);
        ++n;
    }
    return {worst >= -1e-9, fmt("min excess length %.3g", worst) + fmt(" over %.0f perturbations", n)};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        Outcome (*run)();
    };
    const Criterion all[] = {
        {1, "quadratic CH solver", quadratic_solver}, {2, "oracle equivalence", oracle_equivalence},
        {3, "Wulff shrinking", wulff_shrinking},      {4, "hexagon with two half-lines", hexagon09o1},
        {5, "hexagon with four half-lines", chuvaks_cases}, {6, "shrinker classification", classification},
        {7, "shrink-law slopes by flow", flow_slopes}, {8, "property suite", property_suite},
        {9, "stationarity", stationarity},            {10, "minimality spot check", minimality},
    };
    // 4: the printed closed form drops a factor 1/2 on the logarithm.
    // 5, 7: the target shrink rates for the 1/2/3 and X configurations disagree
    // with the solved and simulated networks. See the README.
    const std::set<int> expected_fail = {4, 5, 7};
    int unexpected = 0;
    for (const auto& c : all) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        bool xfail = expected_fail.count(c.id) > 0;
        if (!o.pass && !xfail) ++unexpected;
        std::printf("%s criterion %d (%s): %s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                    !o.pass && xfail ? " [expected]" : "");
        std::fflush(stdout);
    }
    return unexpected;
}
