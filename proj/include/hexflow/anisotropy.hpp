#pragma once

#include <array>
#include <vector>

#include "hexflow/vec2.hpp"

namespace hexflow {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSqrt3 = 1.7320508075688772935;
// sidelength of the unit Wulff hexagon
inline constexpr double kSide = 2.0 / kSqrt3;

// The regular hexagon circumscribed to the unit circle with two horizontal facets,
// and its dual (the hexagon inscribed in the unit circle).
//
// Facet k has outer normal u_k at 30+60k degrees and runs from wulff vertex k
// (at 60k degrees) to wulff vertex k+1.
struct HexAnisotropy {
    std::array<Vec2, 6> facet_normals;
    std::array<Vec2, 6> wulff_vertices;
    std::array<Vec2, 6> frank_vertices;
    // t_k = (v_{k+1} - v_k)/d, the counterclockwise quarter turn of u_k
    std::array<Vec2, 6> facet_tangents;
    double side = kSide;

    static const HexAnisotropy& get();
};

inline int mod6(int k) { return ((k % 6) + 6) % 6; }

Vec2 facet_normal(int k);
Vec2 wulff_vertex(int j);
Vec2 facet_tangent(int k);
// unit vector at 60j degrees
Vec2 lattice_dir(int j);

double phi(Vec2 v);
double phi_dual(Vec2 v);

// facet whose outer normal is within tol_angle of nu (|nu| = 1)
int facet_of_normal(Vec2 nu, double tol_angle = 1e-9);
// index j with tau at 60j degrees, or -1
int lattice_index(Vec2 tau, double tol_angle = 1e-9);

// N = v_k + s t_k, s in [0, d]
Vec2 ch_point(int k, double s);
double ch_param(int k, Vec2 n);

struct OrientedEdge {
    Vec2 from;
    Vec2 to;
    bool halfline = false;
};

double phi_length(const std::vector<OrientedEdge>& chain);

} // namespace hexflow
