#include "hexflow/anisotropy.hpp"

#include <algorithm>
#include <cmath>

#include "hexflow/error.hpp"

namespace hexflow {

const char* error_name(ErrorCode c) {
    switch (c) {
    case ErrorCode::NonAdmissibleDirection: return "NonAdmissibleDirection";
    case ErrorCode::ParamOutOfRange: return "ParamOutOfRange";
    case ErrorCode::UnboundedEdge: return "UnboundedEdge";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnsupportedJunction: return "UnsupportedJunction";
    case ErrorCode::NotConical: return "NotConical";
    case ErrorCode::NoCHField: return "NoCHField";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::HeightBoundViolation: return "HeightBoundViolation";
    case ErrorCode::CompatibilityViolation: return "CompatibilityViolation";
    case ErrorCode::NotEvolvable: return "NotEvolvable";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoSamples: return "NoSamples";
    case ErrorCode::ClosureFailure: return "ClosureFailure";
    }
    return "Error";
}

const HexAnisotropy& HexAnisotropy::get() {
    static const HexAnisotropy h = [] {
        HexAnisotropy a;
        for (int k = 0; k < 6; ++k) {
            a.facet_normals[k] = polar(1.0, kPi / 6 + k * kPi / 3);
            a.wulff_vertices[k] = polar(kSide, k * kPi / 3);
            a.frank_vertices[k] = a.facet_normals[k];
        }
        for (int k = 0; k < 6; ++k)
            a.facet_tangents[k] = perp(a.facet_normals[k]);
        // exact values for the vertices with y = +-1
        a.wulff_vertices[0] = {kSide, 0.0};
        a.wulff_vertices[3] = {-kSide, 0.0};
        a.wulff_vertices[1] = {1.0 / kSqrt3, 1.0};
        a.wulff_vertices[2] = {-1.0 / kSqrt3, 1.0};
        a.wulff_vertices[4] = {-1.0 / kSqrt3, -1.0};
        a.wulff_vertices[5] = {1.0 / kSqrt3, -1.0};
        a.facet_normals[1] = {0.0, 1.0};
        a.facet_normals[4] = {0.0, -1.0};
        a.facet_tangents[1] = {-1.0, 0.0};
        a.facet_tangents[4] = {1.0, 0.0};
        a.frank_vertices = a.facet_normals;
        return a;
    }();
    return h;
}

Vec2 facet_normal(int k) { return HexAnisotropy::get().facet_normals[mod6(k)]; }
Vec2 wulff_vertex(int j) { return HexAnisotropy::get().wulff_vertices[mod6(j)]; }
Vec2 facet_tangent(int k) { return HexAnisotropy::get().facet_tangents[mod6(k)]; }

Vec2 lattice_dir(int j) {
    switch (mod6(j)) {
    case 0: return {1.0, 0.0};
    case 1: return {0.5, kSqrt3 / 2};
    case 2: return {-0.5, kSqrt3 / 2};
    case 3: return {-1.0, 0.0};
    case 4: return {-0.5, -kSqrt3 / 2};
    default: return {0.5, -kSqrt3 / 2};
    }
}

double phi(Vec2 v) {
    const auto& h = HexAnisotropy::get();
    double m = -INFINITY;
    for (const auto& u : h.facet_normals) m = std::max(m, dot(v, u));
    return m;
}

double phi_dual(Vec2 v) {
    const auto& h = HexAnisotropy::get();
    double m = -INFINITY;
    for (const auto& w : h.wulff_vertices) m = std::max(m, dot(v, w));
    return m;
}

static double angle_between(Vec2 a, Vec2 b) {
    return std::abs(std::atan2(cross(a, b), dot(a, b)));
}

int facet_of_normal(Vec2 nu, double tol_angle) {
    for (int k = 0; k < 6; ++k)
        if (angle_between(nu, facet_normal(k)) <= tol_angle) return k;
    throw Error(ErrorCode::NonAdmissibleDirection, "normal is not parallel to a facet normal");
}

int lattice_index(Vec2 tau, double tol_angle) {
    for (int j = 0; j < 6; ++j)
        if (angle_between(tau, lattice_dir(j)) <= tol_angle) return j;
    return -1;
}

Vec2 ch_point(int k, double s) {
    if (!(s >= 0.0 && s <= kSide)) throw Error(ErrorCode::ParamOutOfRange, "CH parameter outside [0, d]");
    return wulff_vertex(k) + facet_tangent(k) * s;
}

double ch_param(int k, Vec2 n) {
    return dot(n - wulff_vertex(k), facet_tangent(k));
}

double phi_length(const std::vector<OrientedEdge>& chain) {
    double total = 0.0;
    for (const auto& e : chain) {
        if (e.halfline) throw Error(ErrorCode::UnboundedEdge, "half-line has infinite length");
        Vec2 d = e.to - e.from;
        double len = d.norm();
        if (len == 0.0) continue;
        total += phi_dual(perp(d / len)) * len;
    }
    return total;
}

} // namespace hexflow
