#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "hexflow/anisotropy.hpp"
#include "hexflow/chfield.hpp"
#include "hexflow/error.hpp"
#include "hexflow/scenarios.hpp"

using namespace hexflow;
using doctest::Approx;

namespace {

double kappa_of(const Network& net, const MinimalCHField& f, const std::string& id) {
    return f.kappa[net.find_edge(id)];
}

} // namespace

TEST_CASE("Wulff hexagon has curvature d/side on every side") {
    for (double R : {0.5, 1.0, 3.0}) {
        Network net = wulff_hexagon(R);
        auto f = minimal_field(net);
        for (size_t e = 0; e < net.edges.size(); ++e) CHECK(f.kappa[e] == Approx(kSide / net.length(e)));
    }
}

TEST_CASE("curvature under rigid motions") {
    Network net = hexagon_abc(2, 1, 1);
    auto base = minimal_field(net).kappa;
    for (int k = 0; k < 6; ++k)
        for (bool m : {false, true}) {
            // a mirror reverses the orientation and with it the sign
            auto kappa = minimal_field(transformed(net, k, m, {0.3, -0.2})).kappa;
            for (size_t e = 0; e < base.size(); ++e) CHECK(kappa[e] == Approx(m ? -base[e] : base[e]).epsilon(1e-12));
        }
}

TEST_CASE("sides joined through a half-line vertex share one curvature") {
    // sides (a, b, c, a, b, c) with half-lines between c and a
    const double a = 2, b = 1, c = 1;
    Network net = hexagon_abc(a, b, c);
    auto f = minimal_field(net);
    CHECK(kappa_of(net, f, "S0") == Approx(kSide / (a + c)));
    CHECK(kappa_of(net, f, "S2") == Approx(kSide / (a + c)));
    CHECK(kappa_of(net, f, "S1") == Approx(kSide / b));
    CHECK(kappa_of(net, f, "H0_0") == 0.0);
}

TEST_CASE("curvature of the four-half-line hexagon") {
    Network net = chuvaks(1, 2);
    auto f = minimal_field(net);
    // both ends of a horizontal side carry half-lines, so it chains with the
    // lateral sides next to it
    for (const char* id : {"S0", "S1", "S2", "S3", "S4", "S5"}) CHECK(kappa_of(net, f, id) == Approx(kSide / 4));
    CHECK(verify_balance(net, f).empty());
}

TEST_CASE("junction polytopes") {
    // 120 degree triod: one free parameter for the three ends
    auto t = analyze_junction({1, 3, 5});
    CHECK(t.feasible);
    CHECK(t.product);
    CHECK(t.groups == 1);
    // two opposite edges and nothing else: balance pins nothing but couples them
    auto x = analyze_junction({0, 3});
    CHECK(x.feasible);
    // a fan of three adjacent facets cannot balance
    auto fan = analyze_junction({0, 1, 2});
    CHECK(!fan.feasible);
}

TEST_CASE("critical networks have zero curvature") {
    for (const Network& net : {critical_quadruple(1.0), six_halflines(1.0), cone('f'), triod120()}) {
        auto f = minimal_field(net);
        for (double k : f.kappa) CHECK(std::abs(k) < 1e-12);
        CHECK(is_critical(net));
    }
    CHECK(!is_critical(wulff_hexagon()));
}

TEST_CASE("fan triod has no CH field") {
    CHECK_THROWS_AS(minimal_field(cone('a')), Error);
}

TEST_CASE("quadratic program: anchors and boundary classes") {
    CHProgram p(1);
    p.d = kSide;
    p.b[0] = 1.0;
    auto s = solve(p);
    CHECK(s.x[0] == Approx(kSide));
    CHECK(s.comp_class[s.component[0]] == JunctionClass::BC);

    CHProgram q(1);
    q.d = kSide;
    q.a[0] = 1.0;
    q.b[0] = 1.0;
    auto r = solve(q);
    CHECK(r.x[0] == Approx(kSide / 2));
    CHECK(r.comp_class[r.component[0]] == JunctionClass::IC);

    // a free variable coupled to nothing takes the midpoint
    CHProgram z(1);
    z.d = kSide;
    CHECK(solve(z).x[0] == Approx(kSide / 2));
}

TEST_CASE("quadratic program: optimality conditions on random instances") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0, 1);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 6;
        CHProgram p(n);
        p.d = kSide;
        for (int k = 0; k < n; ++k) {
            p.a[k] = 0.05 + 2 * U(rng);
            p.b[k] = U(rng) < 0.5 ? 0.0 : 2 * U(rng);
        }
        for (int k = 0; k < n; ++k)
            for (int l = k + 1; l < n; ++l)
                if (U(rng) < 0.6) p.add_c(k, l, 2 * U(rng));
        auto x = solve(p).x;
        double f0 = p.objective(x);
        // no coordinate move inside the box lowers the objective
        for (int k = 0; k < n; ++k)
            for (double step : {-1e-4, 1e-4}) {
                auto y = x;
                y[k] = std::clamp(y[k] + step, 0.0, p.d);
                CHECK(p.objective(y) >= f0 - 1e-14);
            }
    }
}

TEST_CASE("program of the network with a quadruple junction") {
    for (double eps : {0.1, 0.3, 0.5, 0.9}) {
        auto x = solve(broken_turlik_program(eps)).x;
        // the opposite pair at the quadruple junction is centred
        CHECK(x[5] == Approx(1 / std::sqrt(3.0)).epsilon(1e-12));
        auto k = broken_turlik_arms(x);
        CHECK(k.s12 == Approx(k.s10).epsilon(1e-12));
        CHECK(k.s11 == Approx(-k.s9).epsilon(1e-12));
        CHECK(k.s11 != Approx(k.s12));
    }
    CHECK_THROWS_AS(broken_turlik_program(1.0), Error);
}

TEST_CASE("curvature report is JSON with one entry per edge") {
    Network net = wulff_hexagon();
    auto text = curvature_report_json(net, minimal_field(net));
    CHECK(text.find("\"S0\"") != std::string::npos);
}
