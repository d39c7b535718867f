#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "hexflow/anisotropy.hpp"
#include "hexflow/chfield.hpp"
#include "hexflow/error.hpp"
#include "hexflow/shrinker.hpp"

using namespace hexflow;
using doctest::Approx;

TEST_CASE("omega and theta are inverse") {
    CHECK(omega_of_theta(60) == Approx(1.0));
    for (double th : {30.0, 60.0, 90.0, 100.5, 119.0}) CHECK(theta_of_omega(omega_of_theta(th)) == Approx(th));
}

TEST_CASE("configuration names") {
    auto c = ShrinkerConfig::parse("A1,A2,A4,A5");
    CHECK(c.halflines == std::vector<int>{1, 2, 4, 5});
    CHECK(c.name() == "A1,A2,A4,A5");
    CHECK(ShrinkerConfig::parse("vertex:c").vertex_case == 'c');
    CHECK_THROWS_AS(ShrinkerConfig::parse("A7"), Error);
    CHECK_THROWS_AS(ShrinkerConfig::parse("vertex:z"), Error);
}

TEST_CASE("normalization picks one representative per dihedral orbit") {
    std::map<std::string, int> orbits;
    for (int mask = 1; mask < 64; ++mask) {
        ShrinkerConfig c;
        for (int i = 0; i < 6; ++i)
            if (mask >> i & 1) c.halflines.push_back(i + 1);
        auto n = normalize(c);
        CHECK(n.halflines.front() == 1);
        ++orbits[n.name()];
    }
    // twelve orbits of nonempty vertex sets on the hexagon
    CHECK(orbits.size() == 12);
    CHECK(orbits["A1"] == 6);
    CHECK(orbits["A1,A4"] == 3);
    CHECK(orbits["A1,A3,A5"] == 2);
    CHECK(orbits["A1,A2,A3,A4,A5,A6"] == 1);
}

TEST_CASE("the regular hexagon solves the system for every configuration") {
    // with all omegas one every side is a and every gamma agrees only when the
    // chains have equal totals; the residual is at least finite
    OmegaState w;
    auto s = side_lengths(w);
    for (double x : s) CHECK(x == Approx(1.0));
    auto h = relative_heights(w);
    for (double x : h) CHECK(x == Approx(1.0));
    auto g = gammas({1, 2, 3, 4, 5, 6}, w);
    for (double x : g) CHECK(x == Approx(g[0]));
}

TEST_CASE("one half-line: the spoon") {
    auto sol = solve_config(ShrinkerConfig::parse("A1"));
    REQUIRE(sol);
    const double want[6] = {1, 2, 1, 1, 2, 1};
    for (int i = 0; i < 6; ++i) CHECK(sol->sides[i] == Approx(want[i]).epsilon(1e-12));
    CHECK(sol->center_split == Approx(0.5).epsilon(1e-12));
    CHECK(sol->lambda == Approx(4.0 / 3.0).epsilon(1e-10));
    CHECK(sol->residual < 1e-12);
}

TEST_CASE("two adjacent half-lines") {
    auto sol = solve_config(ShrinkerConfig::parse("A1,A2"));
    REQUIRE(sol);
    CHECK(sol->sides[1] == Approx(2.94771).epsilon(1e-5));
    CHECK(sol->sides[2] == Approx(2.33925).epsilon(1e-5));
    CHECK(sol->sides[3] == Approx(1.60847).epsilon(1e-5));
    // mirror symmetric about the bisector of S1
    CHECK(sol->sides[1] == Approx(sol->sides[5]).epsilon(1e-10));
    CHECK(sol->sides[2] == Approx(sol->sides[4]).epsilon(1e-10));
    CHECK(sol->theta[2] == Approx(100.5157).epsilon(1e-6));
    auto sys = build_residuals(sol->config);
    std::vector<double> free;
    const double all[5] = {sol->omega.w2, sol->omega.w3, sol->omega.w4, sol->omega.wb2, sol->omega.wb3};
    for (int i : sys.free_index) free.push_back(all[i]);
    for (double r : sys.residual(free)) CHECK(std::abs(r) < 1e-11);
}

TEST_CASE("configurations without a shrinker") {
    for (const char* cfg : {"A1,A3", "A1,A4", "A1,A2,A3", "A1,A2,A4", "A1,A2,A3,A4", "A1,A2,A3,A5"}) {
        CAPTURE(cfg);
        CHECK(!solve_config(ShrinkerConfig::parse(cfg)));
    }
}

TEST_CASE("realized shrinkers are admissible and centred") {
    for (const char* cfg : {"A1", "A1,A2", "A1,A3,A5", "A1,A2,A4,A5", "A1,A2,A3,A4,A5"}) {
        CAPTURE(cfg);
        auto sol = solve_config(ShrinkerConfig::parse(cfg));
        REQUIRE(sol);
        Network net = shrinker_network(*sol, 2.0);
        CHECK(validate_admissible(net).ok);
        CHECK(net.length(net.find_edge("S1")) == Approx(2.0));
        // every half-line points away from the origin along its own line
        for (const auto& e : net.edges)
            if (e.is_halfline()) CHECK(std::abs(cross(net.vertices[e.from].pos, e.dir)) < 1e-9);
        // kappa_i = lambda / (2 a0^2) * distance of side i from the centre
        auto f = minimal_field(net);
        for (size_t e = 0; e < net.edges.size(); ++e) {
            if (!net.edges[e].is_segment()) continue;
            double dist_to_line = std::abs(cross(net.vertices[net.edges[e].from].pos, net.tangent(e)));
            CHECK(f.kappa[e] == Approx(sol->lambda * dist_to_line / (2 * 4.0)).epsilon(1e-9));
        }
    }
}

TEST_CASE("flow confirms the predicted rate") {
    auto v = verify_by_flow(ShrinkerConfig::parse("A1"), 1.0, 0.5);
    CHECK(v.homothetic);
    CHECK(v.consistent);
    CHECK(v.lambda_measured == Approx(4.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("classification table") {
    auto rows = classify_all(2);
    std::set<std::string> yes;
    int stationary = 0;
    for (const auto& r : rows) {
        if (r.verdict == Verdict::Yes) yes.insert(r.config.name());
        stationary += r.verdict == Verdict::Stationary;
    }
    CHECK(yes.size() == 7);
    CHECK(yes.count("vertex:a"));
    CHECK(yes.count("vertex:c"));
    CHECK(stationary == 1);
    auto text = classification_text(rows);
    CHECK(text.find("A1,A2") != std::string::npos);
    auto json = classification_json(rows);
    CHECK(json.find("\"verdict\"") != std::string::npos);
}
