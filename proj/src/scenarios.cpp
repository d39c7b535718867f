#include "hexflow/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "hexflow/anisotropy.hpp"
#include "hexflow/error.hpp"

namespace hexflow {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

} // namespace

Network lattice_hexagon(const std::vector<double>& sides, const std::vector<Ray>& rays,
                        const std::string& source) {
    if (sides.size() != 6) throw Error(ErrorCode::InvalidArgument, "hexagon needs six sides");
    std::vector<Vec2> pos(6);
    Vec2 p{0, 0};
    for (int i = 0; i < 6; ++i) {
        if (!(sides[i] > 0)) throw Error(ErrorCode::InvalidArgument, "hexagon side must be positive");
        pos[i] = p;
        p += lattice_dir(i + 2) * sides[i];
    }
    double scale = 0;
    for (double s : sides) scale = std::max(scale, s);
    if (p.norm() > 1e-12 * scale) throw Error(ErrorCode::InvalidArgument, "hexagon sides do not close up");
    Vec2 c{0, 0};
    for (const Vec2& q : pos) c += q;
    c = c / 6.0;

    NetworkBuilder b;
    for (int i = 0; i < 6; ++i) b.vertex("V" + std::to_string(i), pos[i] - c);
    for (int i = 0; i < 6; ++i) b.segment("S" + std::to_string(i), i, (i + 1) % 6, "hexagon");
    for (const Ray& r : rays) {
        b.halfline("H" + std::to_string(r.vertex) + "_" + std::to_string(mod6(r.dir)), r.vertex, r.dir);
    }
    return b.build(source);
}

std::vector<Ray> radial_rays(const std::vector<int>& vertices) {
    std::vector<Ray> out;
    for (int v : vertices) out.push_back({v, v});
    return out;
}

Network wulff_hexagon(double R) {
    return lattice_hexagon(std::vector<double>(6, R), {}, "Wulff hexagon of radius " + num(R));
}

Network triod120() {
    NetworkBuilder b;
    b.vertex("O", {0, 0});
    for (int j : {0, 2, 4}) b.halfline("L" + std::to_string(j), 0, j);
    return b.build("conical 120 degree triod, infinitely many minimal CH fields");
}

std::vector<int> cone_directions(char letter) {
    switch (letter) {
    case 'a': return {0, 1, 2};
    case 'b': return {0, 2, 4};
    case 'c': return {0, 1, 3};
    case 'd': return {0, 1, 2, 3};
    case 'e': return {0, 1, 2, 4};
    case 'f': return {0, 1, 3, 4};
    case 'g': return {0, 1, 2, 3, 4};
    case 'h': return {0, 1, 2, 3, 4, 5};
    default: throw Error(ErrorCode::InvalidArgument, std::string("unknown cone ") + letter);
    }
}

Network cone(char letter) {
    NetworkBuilder b;
    b.vertex("O", {0, 0});
    for (int j : cone_directions(letter)) b.halfline("L" + std::to_string(j), 0, j);
    std::string src = std::string("Fig. 4 (") + letter + "): cone with half-lines along lattice directions";
    for (int j : cone_directions(letter)) src += " " + std::to_string(j);
    return b.build(src);
}

Network admissible_sampler() {
    // centre of degree six, spokes to a unit hexagon, extra half-lines at the rim
    NetworkBuilder b;
    int o = b.vertex("O", {0, 0});
    for (int j = 0; j < 6; ++j) b.vertex("P" + std::to_string(j), lattice_dir(j));
    for (int j = 0; j < 6; ++j) b.segment("R" + std::to_string(j), o, 1 + j);
    for (int j = 0; j < 6; ++j) b.segment("S" + std::to_string(j), 1 + j, 1 + (j + 1) % 6);
    for (int j = 0; j < 6; ++j) {
        b.halfline("H" + std::to_string(j) + "a", 1 + j, j);
        if (j % 2) b.halfline("H" + std::to_string(j) + "b", 1 + j, j + 1);
    }
    return b.build("Fig. 3: admissible network with junctions of degree 4 to 6 and half-lines");
}

Network broken_turlik(double eps) {
    if (!(eps > 0 && eps < 1)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0,1)");
    // quadruple junction A9 with arms of length 1 to four triple junctions; the
    // legs to the simple vertices have length 1 - eps
    NetworkBuilder b;
    const int p = 4, q = 0;
    int a9 = b.vertex("A9", {0, 0});
    int a1 = b.vertex("A1", lattice_dir(p));
    int a12 = b.vertex("A12", lattice_dir(q));
    int a8 = b.vertex("A8", lattice_dir(p + 3));
    int a5 = b.vertex("A5", lattice_dir(q + 3));
    b.segment("S12", a1, a9);
    b.segment("S11", a12, a9);
    b.segment("S10", a8, a9);
    b.segment("S9", a5, a9);
    auto leg = [&](const std::string& seg, const std::string& vert, int from, int dir, int turn) {
        int v = b.vertex(vert, b.net().vertices[from].pos + lattice_dir(dir) * (1 - eps));
        b.segment(seg, from, v);
        b.halfline("L" + seg.substr(1), v, dir + turn);
    };
    leg("S1", "A2", a1, p + 1, -1);
    leg("S13", "A14", a1, p - 1, +1);
    leg("S15", "A13", a12, q + 1, -1);
    leg("S16", "A15", a12, q - 1, -1);
    leg("S7", "A7", a8, p + 4, -1);
    b.halfline("S8", a8, p + 2);
    leg("S4", "A4", a5, q + 4, -1);
    leg("S5", "A6", a5, q + 2, -1);
    return b.build("Fig. 7 (Example broken_turlik), eps = " + num(eps) +
                   ": topology reconstructed; only the arm lengths 1 and leg lengths 1 - eps are pinned, "
                   "the remaining geometry is free");
}

CHProgram broken_turlik_program(double eps) {
    if (!(eps > 0 && eps < 1)) throw Error(ErrorCode::InvalidArgument, "eps must lie in (0,1)");
    const double arm = 1.0, leg = 1.0 - eps;
    CHProgram p(6);
    p.a[0] = 1 / leg;            // S1
    p.b[0] = 1 / leg;            // S13
    p.b[1] = 1 / leg + 1 / leg;  // S15, S16
    p.a[2] = 1 / leg;            // S7
    p.a[3] = 1 / leg + 1 / leg;  // S5, S4
    p.add_c(0, 4, 1 / arm);      // S12
    p.add_c(1, 5, 1 / arm);      // S11
    p.add_c(2, 4, 1 / arm);      // S10
    p.add_c(3, 5, 1 / arm);      // S9
    return p;
}

ArmCurvatures broken_turlik_arms(const std::vector<double>& x) {
    if (x.size() != 6) throw Error(ErrorCode::InvalidArgument, "expected six unknowns");
    return {x[0] - x[4], x[1] - x[5], x[4] - x[2], x[3] - x[5]};
}

namespace {

const int kArms[4] = {1, 2, 4, 5};
int arm_turn(int j) { return (j == 1 || j == 5) ? 0 : 3; }

} // namespace

Network critical_quadruple(double a) {
    NetworkBuilder b;
    int o = b.vertex("O", {0, 0});
    for (int j : kArms) {
        int p = b.vertex("P" + std::to_string(j), lattice_dir(j) * a);
        b.segment("S" + std::to_string(j), o, p);
        b.halfline("L" + std::to_string(j), p, arm_turn(j));
    }
    return b.build("Fig. 9: critical network with a quadruple junction, arms of length " + num(a));
}

Network parsed_quadruple(double a, double x) {
    NetworkBuilder b;
    int qm = b.vertex("Qm", {-x, 0});
    int qp = b.vertex("Qp", {x, 0});
    b.segment("H", qm, qp);
    for (int j : kArms) {
        int q = (j == 1 || j == 5) ? qp : qm;
        int p = b.vertex("P" + std::to_string(j), b.net().vertices[q].pos + lattice_dir(j) * a);
        b.segment("S" + std::to_string(j), q, p);
        b.halfline("L" + std::to_string(j), p, arm_turn(j));
    }
    return b.build("Fig. 9 (dotted): quadruple junction parsed into two triple junctions at distance 2x, a = " +
                   num(a) + ", x = " + num(x));
}

Network chuvaks(double a0, double b0) {
    std::string kind = b0 > a0 ? "(a)" : (b0 < a0 ? "(b)" : "(c)");
    return lattice_hexagon({a0, b0, a0, a0, b0, a0}, radial_rays({1, 2, 4, 5}),
                           "Fig. 12 " + kind + " (Example high_multiple_chuvaks): hexagon with horizontal sides b0 = " +
                               num(b0) + ", lateral sides a0 = " + num(a0) + ", four half-lines");
}

Network hexagon_abc(double a0, double b0, double c0) {
    return lattice_hexagon({a0, b0, c0, a0, b0, c0}, radial_rays({0, 3}),
                           "Example hexagon09o1: opposite sides equal, a0 = " + num(a0) + ", b0 = " + num(b0) +
                               ", c0 = " + num(c0) + ", half-lines where the c and a sides meet");
}

Network two_quadruple_hexagon(double a, double b) {
    return lattice_hexagon({a, b, a, a, b, a}, {{0, 1}, {0, 5}, {3, 2}, {3, 4}},
                           "Example two_cases (b): hexagon with X junctions at both horizontal ends, "
                           "lateral sides " + num(a) + ", horizontal sides " + num(b));
}

Network alternating_three(double a) {
    return lattice_hexagon(std::vector<double>(6, a), radial_rays({0, 2, 4}),
                           "Fig. 13: Wulff hexagon with three alternating half-lines, side " + num(a));
}

Network six_halflines(double a) {
    return lattice_hexagon(std::vector<double>(6, a), radial_rays({0, 1, 2, 3, 4, 5}),
                           "Fig. 13 (l): Wulff hexagon with six half-lines, critical, side " + num(a));
}

Network vertex_centered(char letter, double a) {
    std::vector<Ray> rays;
    switch (letter) {
    case 'a': rays = {{3, 2}, {3, 4}, {0, 0}}; break;
    case 'b': rays = {{3, 2}, {0, 0}}; break;
    case 'c': rays = {{3, 2}, {3, 3}, {3, 4}, {0, 0}}; break;
    case 'd': rays = {{3, 2}, {3, 4}}; break;
    default: throw Error(ErrorCode::InvalidArgument, std::string("unknown vertex case ") + letter);
    }
    Network net = lattice_hexagon(std::vector<double>(6, a), rays,
                                  std::string("Fig. 15 (") + letter +
                                      "): Wulff hexagon with the homothety centre at a vertex, side " + num(a));
    return translated(net, Vec2{0, 0} - net.vertices[3].pos);
}

std::vector<Fixture> all_fixtures() {
    std::vector<Fixture> out;
    out.push_back({"wulff_hexagon", wulff_hexagon(1.0)});
    out.push_back({"triod120", triod120()});
    out.push_back({"fig3_admissible", admissible_sampler()});
    const char* cone_names[] = {"fig4a_noncritical_triod", "fig4b_conical_triod", "fig4c_t_cone",
                                "fig4d_w_cone",            "fig4e_psi_cone",      "fig4f_x_cone",
                                "fig4g_five_cone",         "fig4h_six_cone"};
    for (int i = 0; i < 8; ++i) out.push_back({cone_names[i], cone(char('a' + i))});
    out.push_back({"fig7_broken_turlik", broken_turlik(0.1)});
    out.push_back({"fig9_critical_quadruple", critical_quadruple(1.0)});
    out.push_back({"fig9_parsed", parsed_quadruple(1.0, 0.25)});
    out.push_back({"fig12a_chuvaks", chuvaks(1.0, 2.0)});
    out.push_back({"fig12b_chuvaks", chuvaks(2.0, 1.0)});
    out.push_back({"fig12c_chuvaks", chuvaks(1.0, 1.0)});
    out.push_back({"fig13_three_alternating", alternating_three(1.0)});
    out.push_back({"fig13l_six_halflines", six_halflines(1.0)});
    out.push_back({"hexagon09o1", hexagon_abc(2.0, 1.0, 1.0)});
    out.push_back({"two_cases_b_quadruple", two_quadruple_hexagon(1.0, 2.0)});
    for (char c : {'a', 'b', 'c', 'd'})
        out.push_back({std::string("fig15") + c + "_vertex_centered", vertex_centered(c, 1.0)});
    return out;
}

} // namespace hexflow
