#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hexflow/flow.hpp"
#include "hexflow/network.hpp"

namespace hexflow {

// Hexagon A1..A6 (counterclockwise) shrinking homothetically about the origin.
// Interior case: the listed vertices (1-based) carry a half-line through the
// origin. Vertex case: the origin is a vertex, described by a letter 'a'..'d'.
struct ShrinkerConfig {
    bool vertex_centered = false;
    std::vector<int> halflines;  // interior case, subset of 1..6
    char vertex_case = 0;        // vertex case

    std::string name() const;
    static ShrinkerConfig parse(const std::string& text);  // "A1,A2" or "vertex:a"
};

// Rotate/mirror so that A1 carries a half-line and the bitmask is minimal.
ShrinkerConfig normalize(const ShrinkerConfig& cfg);

// omega = sin(60 + theta) / sin(theta)
struct OmegaState {
    double w2 = 1, w3 = 1, w4 = 1;
    double wb2 = 1, wb3 = 1, wb4 = 1;  // wb4 = 1 / w4
};

double theta_of_omega(double w);  // degrees
double omega_of_theta(double theta_deg);

// Unknowns (w2, w3, w4, wb2, wb3); half-lines at A2, A3, A4, A5, A6 force
// w2, w3, w4, wb3, wb2 to one.
struct ResidualSystem {
    ShrinkerConfig config;
    std::array<bool, 5> forced{};
    std::vector<int> free_index;  // positions of the free unknowns

    OmegaState state(const std::vector<double>& free_values) const;
    // gamma_1 - gamma_2, ..., gamma_5 - gamma_6, wb3 wb2 - w4 w3 w2
    std::vector<double> residual(const std::vector<double>& free_values) const;
    std::vector<std::vector<double>> jacobian(const std::vector<double>& free_values, double step = 1e-7) const;
};

ResidualSystem build_residuals(const ShrinkerConfig& cfg);

// Side lengths of S1..S6 in units of a = |S1|; S_i joins A_i and A_{i+1}.
std::array<double, 6> side_lengths(const OmegaState& w);
// Distances from the centre to the side lines relative to that of S1.
std::array<double, 6> relative_heights(const OmegaState& w);
// c_i: per-side curvature numerators from the chains of triple junctions
std::array<double, 6> chain_coefficients(const std::vector<int>& halflines, const std::array<double, 6>& sides);
std::array<double, 6> gammas(const std::vector<int>& halflines, const OmegaState& w);

struct ShrinkerSolution {
    ShrinkerConfig config;
    OmegaState omega;
    std::array<double, 4> theta{};      // theta_1..theta_4, degrees
    std::array<double, 4> theta_bar{};  // theta_bar_1..theta_bar_4
    std::array<double, 6> sides{};      // units of a
    double residual = 0.0;
    double lambda = 0.0;                // r(t) = sqrt(1 - lambda t / a0^2)
    double collapse_time = 0.0;         // for a0 = 1
    double center_split = 0.0;          // |A1 O| / |O A4|
    int roots = 0;
};

std::optional<ShrinkerSolution> solve_config(const ShrinkerConfig& cfg);

// Realizes the shrinker with |S1| = a0 and the homothety centre at the origin.
Network shrinker_network(const ShrinkerSolution& sol, double a0 = 1.0);
// Regular hexagon of side a0 centred at the origin with radial half-lines at
// the configured vertices; the vertex case uses the bundled networks.
Network config_network(const ShrinkerConfig& cfg, double a0 = 1.0);

enum class Verdict { Yes, No, Stationary };
const char* verdict_name(Verdict v);

struct ClassificationRow {
    ShrinkerConfig config;
    Verdict verdict = Verdict::No;
    int orbit_size = 0;
    std::optional<ShrinkerSolution> solution;
    double lambda = 0.0;
    std::string note;
};

// twelve interior orbits, the half-line free hexagon and the vertex cases
std::vector<ClassificationRow> classify_all(int jobs = 1);
std::string classification_json(const std::vector<ClassificationRow>& rows, int indent = 2);
std::string classification_text(const std::vector<ClassificationRow>& rows);

struct FlowVerification {
    ShrinkerConfig config;
    double a0 = 1.0;
    double horizon = 0.0;
    double lambda_predicted = 0.0;  // 0 when no prediction
    double lambda_measured = 0.0;   // from the fitted slope of r^2
    double residual = 0.0;          // homothety residual
    bool homothetic = false;
    bool consistent = false;        // homothetic and measured lambda within 1e-4 relative
    std::string discrepancy;
    long steps = 0;
};

FlowVerification verify_by_flow(const ShrinkerConfig& cfg, double a0 = 1.0, double horizon_fraction = 0.5,
                                const FlowOptions& opt = {});

} // namespace hexflow
