#include "doctest.h"

#include <cmath>
#include <random>

#include "hexflow/anisotropy.hpp"
#include "hexflow/error.hpp"

using namespace hexflow;
using doctest::Approx;

TEST_CASE("facet normals sit at 30 + 60k degrees") {
    for (int k = 0; k < 6; ++k) {
        Vec2 u = facet_normal(k);
        CHECK(u.x == Approx(std::cos((30 + 60 * k) * kPi / 180)).epsilon(1e-14));
        CHECK(u.y == Approx(std::sin((30 + 60 * k) * kPi / 180)).epsilon(1e-14));
        // the facet runs between two Wulff vertices at unit distance
        CHECK(dot(wulff_vertex(k), u) == Approx(1.0));
        CHECK(dot(wulff_vertex(k + 1), u) == Approx(1.0));
    }
}

TEST_CASE("Wulff shape is the unit ball of phi") {
    for (int j = 0; j < 6; ++j) CHECK(phi(wulff_vertex(j)) == Approx(1.0));
    CHECK(wulff_vertex(0).norm() == Approx(kSide));
    CHECK(phi({0, 1}) == Approx(1.0));
    CHECK(phi({1, 0}) == Approx(std::sqrt(3.0) / 2));
}

TEST_CASE("phi and its dual are dual norms") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> N;
    for (int i = 0; i < 200; ++i) {
        Vec2 v{N(rng), N(rng)}, w{N(rng), N(rng)};
        CHECK(dot(v, w) <= phi(v) * phi_dual(w) + 1e-12);
        CHECK(phi(v * 2.5) == Approx(2.5 * phi(v)));
        CHECK(phi(v + w) <= phi(v) + phi(w) + 1e-12);
    }
    // the dual norm is attained at the Wulff vertices
    for (int k = 0; k < 6; ++k) CHECK(phi_dual(facet_normal(k)) == Approx(1.0));
}

TEST_CASE("Cahn-Hoffman points lie on their facet") {
    for (int k = 0; k < 6; ++k) {
        CHECK(dist(ch_point(k, 0), wulff_vertex(k)) < 1e-14);
        CHECK(dist(ch_point(k, kSide), wulff_vertex(k + 1)) < 1e-14);
        for (double s : {0.1, 0.5, 1.0}) {
            CHECK(dot(ch_point(k, s), facet_normal(k)) == Approx(1.0));
            CHECK(ch_param(k, ch_point(k, s)) == Approx(s));
        }
        // counterclockwise quarter turn of the normal
        CHECK(dist(facet_tangent(k), perp(facet_normal(k))) < 1e-14);
    }
}

TEST_CASE("lattice directions and facets") {
    for (int j = 0; j < 6; ++j) {
        CHECK(lattice_index(lattice_dir(j)) == j);
        // an edge along direction j has its left normal on facet j+1
        CHECK(facet_of_normal(perp(lattice_dir(j))) == mod6(j + 1));
    }
    CHECK(lattice_index(Vec2{1, 1}.normalized()) == -1);
    CHECK_THROWS_AS(facet_of_normal(Vec2{1, 0}), Error);
}

TEST_CASE("phi-length of a Wulff hexagon") {
    std::vector<OrientedEdge> chain;
    for (int j = 0; j < 6; ++j) chain.push_back({wulff_vertex(j), wulff_vertex(j + 1)});
    // six facets of Euclidean length 2/sqrt3 with unit dual norm
    CHECK(phi_length(chain) == Approx(6 * kSide));
    chain.push_back({{0, 0}, {1, 0}, true});
    CHECK_THROWS_AS(phi_length(chain), Error);
}
