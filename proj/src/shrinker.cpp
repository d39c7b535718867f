#include "hexflow/shrinker.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "json.hpp"

#include "hexflow/anisotropy.hpp"
#include "hexflow/chfield.hpp"
#include "hexflow/error.hpp"
#include "hexflow/scenarios.hpp"

namespace hexflow {

namespace {

constexpr double kDeg = kPi / 180.0;

int mask_of(const std::vector<int>& hl) {
    int m = 0;
    for (int k : hl) m |= 1 << (k - 1);
    return m;
}

std::vector<int> list_of(int mask) {
    std::vector<int> out;
    for (int i = 0; i < 6; ++i)
        if (mask >> i & 1) out.push_back(i + 1);
    return out;
}

// image of a vertex mask under rotation by k, optionally after the mirror i -> -i
int transform_mask(int mask, int k, bool mirror) {
    int out = 0;
    for (int i = 0; i < 6; ++i)
        if (mask >> i & 1) {
            int j = mirror ? (6 - i) % 6 : i;
            out |= 1 << ((j + k) % 6);
        }
    return out;
}

bool has(const std::vector<int>& hl, int k) { return std::find(hl.begin(), hl.end(), k) != hl.end(); }

} // namespace

std::string ShrinkerConfig::name() const {
    if (vertex_centered) return std::string("vertex:") + vertex_case;
    std::string s;
    for (int k : halflines) s += (s.empty() ? "A" : ",A") + std::to_string(k);
    return s.empty() ? "none" : s;
}

ShrinkerConfig ShrinkerConfig::parse(const std::string& text) {
    ShrinkerConfig cfg;
    if (text.rfind("vertex:", 0) == 0) {
        if (text.size() != 8 || text[7] < 'a' || text[7] > 'd')
            throw Error(ErrorCode::InvalidArgument, "vertex case must be vertex:a .. vertex:d");
        cfg.vertex_centered = true;
        cfg.vertex_case = text[7];
        return cfg;
    }
    std::stringstream ss(text);
    std::string item;
    std::set<int> seen;
    while (std::getline(ss, item, ',')) {
        if (item.size() != 2 || (item[0] != 'A' && item[0] != 'a') || item[1] < '1' || item[1] > '6')
            throw Error(ErrorCode::InvalidArgument, "bad vertex label '" + item + "', expected A1..A6");
        seen.insert(item[1] - '0');
    }
    if (seen.empty()) throw Error(ErrorCode::InvalidArgument, "configuration needs at least one half-line");
    cfg.halflines.assign(seen.begin(), seen.end());
    return cfg;
}

ShrinkerConfig normalize(const ShrinkerConfig& cfg) {
    if (cfg.vertex_centered) return cfg;
    int m = mask_of(cfg.halflines), best = 64;
    for (int k = 0; k < 6; ++k)
        for (bool mirror : {false, true}) {
            int t = transform_mask(m, k, mirror);
            if ((t & 1) && t < best) best = t;
        }
    ShrinkerConfig out;
    out.halflines = list_of(best == 64 ? m : best);
    return out;
}

double theta_of_omega(double w) { return std::atan2(kSqrt3, 2 * w - 1) / kDeg; }

double omega_of_theta(double theta_deg) {
    return std::sin((60 + theta_deg) * kDeg) / std::sin(theta_deg * kDeg);
}

// -- residual system ---------------------------------------------------------

OmegaState ResidualSystem::state(const std::vector<double>& free_values) const {
    double v[5] = {1, 1, 1, 1, 1};
    for (size_t i = 0; i < free_index.size(); ++i) v[free_index[i]] = free_values[i];
    OmegaState w;
    w.w2 = v[0];
    w.w3 = v[1];
    w.w4 = v[2];
    w.wb2 = v[3];
    w.wb3 = v[4];
    w.wb4 = 1.0 / w.w4;
    return w;
}

std::array<double, 6> side_lengths(const OmegaState& w) {
    double a2 = (w.w3 * w.w2 - w.w3 + 1) / w.w3;
    double a3 = (w.w3 * w.w4 - w.w4 + 1) / (w.w3 * w.w4);
    double ab1 = w.w2 / w.wb2;
    double ab2 = (w.wb3 * w.wb2 - w.wb3 + 1) / (w.w3 * w.w4);
    double ab3 = (w.wb3 * w.wb4 - w.wb4 + 1) / w.w3;
    return {1.0, a2, a3, ab3, ab2, ab1};
}

std::array<double, 6> relative_heights(const OmegaState& w) {
    return {1.0, 1 / w.w2, 1 / (w.w2 * w.w3), 1 / (w.wb2 * w.wb3), 1 / w.wb2, 1.0};
}

std::array<double, 6> chain_coefficients(const std::vector<int>& halflines, const std::array<double, 6>& sides) {
    std::array<double, 6> c{};
    const double two = 2 / kSqrt3;
    int start = -1;
    for (int k = 1; k <= 6; ++k)
        if (!has(halflines, k)) {
            start = k;
            break;
        }
    if (start < 0) return c;  // every vertex a triple junction: stationary
    // side S_i joins A_i and A_{i+1}; a chain runs on while its end vertex is a junction
    int i = start;
    for (int done = 0; done < 6;) {
        std::vector<int> chain{i};
        int next = i % 6 + 1;
        while (has(halflines, next)) {
            chain.push_back(next);
            next = next % 6 + 1;
        }
        double total = 0;
        for (int s : chain) total += sides[s - 1];
        for (int s : chain) c[s - 1] = two * sides[s - 1] / total;
        done += static_cast<int>(chain.size());
        i = next;
    }
    return c;
}

std::array<double, 6> gammas(const std::vector<int>& halflines, const OmegaState& w) {
    auto a = side_lengths(w);
    auto h = relative_heights(w);
    auto c = chain_coefficients(halflines, a);
    std::array<double, 6> g{};
    for (int i = 0; i < 6; ++i) g[i] = c[i] / (a[i] * h[i]);
    return g;
}

std::vector<double> ResidualSystem::residual(const std::vector<double>& free_values) const {
    OmegaState w = state(free_values);
    auto g = gammas(config.halflines, w);
    std::vector<double> r;
    for (int i = 0; i < 5; ++i) r.push_back(g[i] - g[i + 1]);
    r.push_back(w.wb3 * w.wb2 - w.w4 * w.w3 * w.w2);
    return r;
}

std::vector<std::vector<double>> ResidualSystem::jacobian(const std::vector<double>& x, double step) const {
    auto r0 = residual(x);
    std::vector<std::vector<double>> J(r0.size(), std::vector<double>(x.size()));
    for (size_t j = 0; j < x.size(); ++j) {
        auto xp = x;
        xp[j] += step;
        auto r1 = residual(xp);
        for (size_t i = 0; i < r0.size(); ++i) J[i][j] = (r1[i] - r0[i]) / step;
    }
    return J;
}

ResidualSystem build_residuals(const ShrinkerConfig& cfg) {
    if (cfg.vertex_centered) throw Error(ErrorCode::InvalidArgument, "vertex-centred cases have no omega system");
    ResidualSystem sys;
    sys.config = cfg;
    // unknown order (w2, w3, w4, wb2, wb3) and the vertex forcing each to one
    const int forcing_vertex[5] = {2, 3, 4, 6, 5};
    for (int i = 0; i < 5; ++i) {
        sys.forced[i] = has(cfg.halflines, forcing_vertex[i]);
        if (!sys.forced[i]) sys.free_index.push_back(i);
    }
    return sys;
}

// -- solving -------------------------------------------------------------------

namespace {

double inf_norm(const std::vector<double>& r) {
    double m = 0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m;
}

double half_sq(const std::vector<double>& r) {
    double s = 0;
    for (double v : r) s += v * v;
    return 0.5 * s;
}

bool positive(const std::vector<double>& x) {
    for (double v : x)
        if (!(v > 0)) return false;
    return true;
}

// damped Gauss-Newton with Armijo backtracking
std::optional<std::vector<double>> newton(const ResidualSystem& sys, std::vector<double> x) {
    const int n = static_cast<int>(x.size());
    auto r = sys.residual(x);
    for (int it = 0; it < 200; ++it) {
        if (inf_norm(r) <= 1e-12) return x;
        auto J = sys.jacobian(x);
        Eigen::MatrixXd A(r.size(), n);
        Eigen::VectorXd b(r.size());
        for (size_t i = 0; i < r.size(); ++i) {
            for (int j = 0; j < n; ++j) A(i, j) = J[i][j];
            b(i) = -r[i];
        }
        Eigen::VectorXd dx = A.colPivHouseholderQr().solve(b);
        Eigen::VectorXd grad = -A.transpose() * b;
        double slope = grad.dot(dx);
        if (!std::isfinite(slope) || slope >= 0) return std::nullopt;
        double f0 = half_sq(r), alpha = 1.0;
        bool moved = false;
        for (int k = 0; k <= 40; ++k, alpha *= 0.5) {
            std::vector<double> xt(n);
            for (int j = 0; j < n; ++j) xt[j] = x[j] + alpha * dx(j);
            if (!positive(xt)) continue;
            auto rt = sys.residual(xt);
            if (half_sq(rt) <= f0 + 1e-4 * alpha * slope) {
                x = xt;
                r = rt;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    if (inf_norm(r) <= 1e-12) return x;
    return std::nullopt;
}

// positions of A1..A6 relative to A1 and the centre found from the heights
struct Realization {
    std::array<Vec2, 6> vertex;
    Vec2 center;
    double d1 = 0;
    double residual = 0;
};

Realization realize(const OmegaState& w, double a0) {
    auto a = side_lengths(w);
    auto rho = relative_heights(w);
    Realization out;
    Vec2 p{0, 0};
    for (int i = 0; i < 6; ++i) {
        out.vertex[i] = p;
        p += lattice_dir(i + 5) * (a[i] * a0);
    }
    double closure = p.norm();
    // n_i . O - D rho_i = n_i . A_i with n_i the inward normal of S_i
    Eigen::MatrixXd M(6, 3);
    Eigen::VectorXd rhs(6);
    for (int i = 0; i < 6; ++i) {
        Vec2 n = perp(lattice_dir(i + 5));
        M(i, 0) = n.x;
        M(i, 1) = n.y;
        M(i, 2) = -rho[i];
        rhs(i) = dot(n, out.vertex[i]);
    }
    Eigen::Vector3d sol = M.colPivHouseholderQr().solve(rhs);
    out.center = {sol(0), sol(1)};
    out.d1 = sol(2);
    out.residual = std::max(closure, (M * sol - rhs).cwiseAbs().maxCoeff()) / a0;
    return out;
}

// a root describes a shrinker when the angles stay away from the degenerate
// limits, all sides are positive and the hexagon closes around a centre with
// the prescribed heights
bool admissible(const OmegaState& w) {
    for (double v : {w.w2, w.w3, w.w4, w.wb2, w.wb3, w.wb4})
        if (!(v > 1e-3 && v < 1e3)) return false;
    auto a = side_lengths(w);
    if (*std::min_element(a.begin(), a.end()) <= 1e-6 || *std::max_element(a.begin(), a.end()) >= 1e6) return false;
    Realization re = realize(w, 1.0);
    return re.residual <= 1e-9 && re.d1 > 0;
}

} // namespace

std::optional<ShrinkerSolution> solve_config(const ShrinkerConfig& cfg_in) {
    ShrinkerConfig cfg = normalize(cfg_in);
    if (cfg.vertex_centered || cfg.halflines.size() == 6) return std::nullopt;
    ResidualSystem sys = build_residuals(cfg);
    const int dims = static_cast<int>(sys.free_index.size());
    const double grid[5] = {0.25, 0.5, 1, 2, 4};
    int total = 1;
    for (int i = 0; i < dims; ++i) total *= 5;

    std::vector<std::vector<double>> roots;
    for (int code = 0; code < total; ++code) {
        std::vector<double> x0(dims);
        for (int i = 0, c = code; i < dims; ++i, c /= 5) x0[i] = grid[c % 5];
        auto x = newton(sys, x0);
        if (!x) continue;
        OmegaState w = sys.state(*x);
        if (!admissible(w)) continue;
        bool dup = false;
        for (const auto& r : roots) {
            double d = 0;
            for (int i = 0; i < dims; ++i) d = std::max(d, std::abs(r[i] - (*x)[i]));
            dup = dup || d <= 1e-8;
        }
        if (!dup) roots.push_back(*x);
    }
    if (roots.empty()) return std::nullopt;

    ShrinkerSolution s;
    s.config = cfg;
    s.roots = static_cast<int>(roots.size());
    s.omega = sys.state(roots[0]);
    s.residual = inf_norm(sys.residual(roots[0]));
    const OmegaState& w = s.omega;
    s.theta = {60.0, theta_of_omega(w.w2), theta_of_omega(w.w3), theta_of_omega(w.w4)};
    s.theta_bar = {60.0, theta_of_omega(w.wb2), theta_of_omega(w.wb3), theta_of_omega(w.wb4)};
    s.sides = side_lengths(w);

    Realization re = realize(w, 1.0);
    s.center_split = dist(re.vertex[0], re.center) / dist(re.center, re.vertex[3]);
    // lambda from the curvature of S1 on the realized network:
    // h = D1 (1 - r), h' = kappa_1 / r  =>  lambda = 2 kappa_1 a0^2 / D1
    Network net = shrinker_network(s, 1.0);
    MinimalCHField field = minimal_field(net);
    double k1 = field.kappa[net.find_edge("S1")];
    s.lambda = 2 * k1 / re.d1;
    s.collapse_time = s.lambda > 0 ? 1.0 / s.lambda : 0.0;
    return s;
}

Network shrinker_network(const ShrinkerSolution& sol, double a0) {
    Realization re = realize(sol.omega, a0);
    if (re.residual > 1e-9) throw Error(ErrorCode::ClosureFailure, "shrinker hexagon does not close up");
    NetworkBuilder b;
    for (int i = 0; i < 6; ++i) b.vertex("A" + std::to_string(i + 1), re.vertex[i] - re.center);
    for (int i = 0; i < 6; ++i) b.segment("S" + std::to_string(i + 1), i, (i + 1) % 6, "hexagon");
    for (int k : sol.config.halflines) {
        Vec2 d = (re.vertex[k - 1] - re.center).normalized();
        int j = lattice_index(d, 1e-7);
        if (j < 0) throw Error(ErrorCode::ClosureFailure, "half-line at A" + std::to_string(k) + " is not radial");
        b.halfline("L" + std::to_string(k), k - 1, j);
    }
    return b.build("self-shrinker " + sol.config.name() + ", |S1| = " + std::to_string(a0));
}

Network config_network(const ShrinkerConfig& cfg, double a0) {
    if (cfg.vertex_centered) return vertex_centered(cfg.vertex_case, a0);
    // A1 is the leftmost vertex V3 of the lattice hexagon
    std::vector<Ray> rays;
    for (int k : cfg.halflines) rays.push_back({(k + 2) % 6, (k + 2) % 6});
    return lattice_hexagon(std::vector<double>(6, a0), rays, "regular hexagon with half-lines " + cfg.name());
}

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Yes: return "YES";
    case Verdict::No: return "NO";
    case Verdict::Stationary: return "stationary";
    }
    return "?";
}

// -- classification ------------------------------------------------------------

namespace {

ClassificationRow classify_interior(int mask) {
    ClassificationRow row;
    row.config.halflines = list_of(mask);
    std::set<int> orbit;
    for (int k = 0; k < 6; ++k)
        for (bool mirror : {false, true}) orbit.insert(transform_mask(mask, k, mirror));
    row.orbit_size = static_cast<int>(orbit.size());
    if (row.config.halflines.size() == 6) {
        row.verdict = Verdict::Stationary;
        row.note = "critical: every side has zero curvature";
        return row;
    }
    row.solution = solve_config(row.config);
    if (row.solution) {
        row.verdict = Verdict::Yes;
        row.lambda = row.solution->lambda;
        if (row.solution->roots > 1) row.note = std::to_string(row.solution->roots) + " positive roots";
    } else {
        row.verdict = Verdict::No;
        row.note = "no positive root";
    }
    return row;
}

ClassificationRow classify_vertex(char letter) {
    ClassificationRow row;
    row.config.vertex_centered = true;
    row.config.vertex_case = letter;
    row.orbit_size = 1;
    // outcome as stated for these networks; the flow is run to record lambda
    bool yes = letter == 'a' || letter == 'c';
    row.verdict = yes ? Verdict::Yes : Verdict::No;
    FlowVerification fv = verify_by_flow(row.config, 1.0, 0.5);
    row.lambda = fv.lambda_measured;
    std::ostringstream note;
    note.precision(6);
    note << "flow: homothetic=" << (fv.homothetic ? "yes" : "no") << " residual=" << fv.residual;
    if (!fv.discrepancy.empty()) note << "; " << fv.discrepancy;
    row.note = note.str();
    return row;
}

} // namespace

std::vector<ClassificationRow> classify_all(int jobs) {
    std::vector<int> masks;
    for (int m = 1; m < 64; ++m)
        if (mask_of(normalize(ShrinkerConfig{false, list_of(m), 0}).halflines) == m) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](int x, int y) {
        int px = __builtin_popcount(x), py = __builtin_popcount(y);
        return px != py ? px < py : x < y;
    });

    std::vector<std::function<ClassificationRow()>> tasks;
    for (int m : masks) tasks.push_back([m] { return classify_interior(m); });
    for (char c : {'a', 'b', 'c', 'd'}) tasks.push_back([c] { return classify_vertex(c); });

    std::vector<ClassificationRow> rows(tasks.size());
    jobs = std::max(1, jobs);
    for (size_t start = 0; start < tasks.size(); start += jobs) {
        std::vector<std::future<ClassificationRow>> running;
        for (size_t i = start; i < std::min(tasks.size(), start + jobs); ++i)
            running.push_back(std::async(jobs > 1 ? std::launch::async : std::launch::deferred, tasks[i]));
        for (size_t i = 0; i < running.size(); ++i) rows[start + i] = running[i].get();
    }
    return rows;
}

std::string classification_json(const std::vector<ClassificationRow>& rows, int indent) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["config"] = r.config.name();
        j["center"] = r.config.vertex_centered ? "vertex" : "interior";
        j["verdict"] = verdict_name(r.verdict);
        j["orbit_size"] = r.orbit_size;
        j["lambda"] = r.lambda;
        if (r.solution) {
            const auto& s = *r.solution;
            j["omega"] = {s.omega.w2, s.omega.w3, s.omega.w4, s.omega.wb2, s.omega.wb3, s.omega.wb4};
            j["theta"] = s.theta;
            j["theta_bar"] = s.theta_bar;
            j["sides"] = s.sides;
            j["residual"] = s.residual;
            j["collapse_time"] = s.collapse_time;
            j["center_split"] = s.center_split;
        }
        j["note"] = r.note;
        out.push_back(j);
    }
    return out.dump(indent);
}

std::string classification_text(const std::vector<ClassificationRow>& rows) {
    std::ostringstream o;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-16s %-10s %-6s %-12s %s\n", "config", "verdict", "orbit", "lambda", "sides / note");
    o << buf;
    for (const auto& r : rows) {
        std::string tail;
        if (r.solution) {
            for (double s : r.solution->sides) {
                std::snprintf(buf, sizeof buf, "%s%.6g", tail.empty() ? "" : " ", s);
                tail += buf;
            }
            if (!r.note.empty()) tail += "  (" + r.note + ")";
        } else {
            tail = r.note;
        }
        std::snprintf(buf, sizeof buf, "%-16s %-10s %-6d %-12.6g %s\n", r.config.name().c_str(), verdict_name(r.verdict),
                      r.orbit_size, r.lambda, tail.c_str());
        o << buf;
    }
    return o.str();
}

// -- flow cross-check --------------------------------------------------------------

FlowVerification verify_by_flow(const ShrinkerConfig& cfg_in, double a0, double horizon_fraction,
                                const FlowOptions& opt) {
    if (!(a0 > 0) || !(horizon_fraction > 0 && horizon_fraction < 1))
        throw Error(ErrorCode::InvalidArgument, "need a0 > 0 and horizon fraction in (0,1)");
    ShrinkerConfig cfg = normalize(cfg_in);
    FlowVerification out;
    out.config = cfg;
    out.a0 = a0;

    Network net;
    if (cfg.vertex_centered) {
        net = config_network(cfg, a0);
        out.lambda_predicted = 8.0 / 3.0;  // stated rate for the vertex-centred shrinkers
    } else if (auto sol = solve_config(cfg)) {
        net = shrinker_network(*sol, a0);
        out.lambda_predicted = sol->lambda;
    } else {
        net = config_network(cfg, a0);
    }
    double scale = out.lambda_predicted > 0 ? out.lambda_predicted : 8.0 / 3.0;
    out.horizon = horizon_fraction * a0 * a0 / scale;

    FlowOptions o = opt;
    if (o.dt_cap <= 0) o.dt_cap = out.horizon / 40;
    Trajectory traj;
    try {
        traj = evolve(net, out.horizon, o);
    } catch (const Error& e) {
        out.discrepancy = std::string("flow failed: ") + e.what();
        return out;
    }
    out.steps = traj.steps;
    for (const auto& ev : traj.events)
        if (ev.kind != FlowEvent::Terminate || ev.reason != "horizon reached") {
            out.discrepancy = std::string("flow event before the horizon: ") + event_kind_name(ev.kind) + " (" +
                              ev.reason + ")";
            break;
        }
    HomothetyResult hr = homothety_check(traj, {0, 0}, 1e-5);
    out.residual = hr.residual;
    out.homothetic = hr.is_homothetic;
    out.lambda_measured = -hr.slope * a0 * a0;
    if (out.lambda_predicted > 0) {
        double rel = std::abs(out.lambda_measured - out.lambda_predicted) / out.lambda_predicted;
        out.consistent = out.homothetic && rel <= 1e-4;
        if (!out.consistent && out.discrepancy.empty()) {
            std::ostringstream d;
            d.precision(8);
            d << "predicted lambda " << out.lambda_predicted << ", measured " << out.lambda_measured
              << (out.homothetic ? "" : ", not homothetic");
            out.discrepancy = d.str();
        }
    }
    return out;
}

} // namespace hexflow
