#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "hexflow/chfield.hpp"
#include "hexflow/network.hpp"

namespace hexflow {

struct FlowOptions {
    double eta = 0.1;             // step bound eta * (sqrt3/8) * L^2
    double speed_fraction = 0.25; // |dh| per step <= fraction * min(Delta1, Delta2)
    double rebase_theta = 0.5;    // re-base once max|h| exceeds theta * min(Delta1, Delta2)
    double eps_len_rel = 1e-8;    // vanishing threshold relative to the initial min length
    double merge_factor = 100.0;  // segments below merge_factor * eps_len collapse together
    int max_bisections = 60;
    long max_steps = 2000000;
    int max_restarts = 32;
    double compat_tol = 1e-9;     // relative to the reference diameter
    double sample_interval = 0.0; // minimum time between stored samples, 0 stores every step
    double dt_cap = 0.0;          // absolute step limit, 0 for none
};

// Heights are measured against the reference: edge e of the current network lies
// on the line of the reference edge translated by -h_e along its normal, so that
// h' = -kappa.
struct FlowState {
    double t = 0.0;
    Network reference;
    std::vector<double> h;
    Network network;
    std::vector<int> facets;        // of the reference edges
    std::vector<double> lengths;    // current, signed along the reference tangents
    std::vector<double> h_total;    // accumulated over re-bases within one phase
};

// Delta1 = min length / (3 sqrt3), Delta2 = (1/6) min distance of disjoint edges
std::pair<double, double> delta_bounds(const Network& net);

Network reconstruct(const Network& reference, const std::vector<double>& h, double compat_tol = 1e-9,
                    bool check_bounds = true);
std::vector<double> signed_lengths(const Network& reference, const Network& net);

FlowState make_state(const Network& net, double t = 0.0);
// h' per edge (= -kappa); throws NotEvolvable when an edge at a junction other than
// a 120 degree triod has nonzero curvature
std::vector<double> velocities(const FlowState& state);
double max_dt(const FlowState& state, const FlowOptions& opt = {});
FlowState step(const FlowState& state, double dt, const FlowOptions& opt = {});

struct Sample {
    double t = 0.0;
    int phase = 0;
    Network network;
    std::vector<double> length;
    std::vector<double> kappa;
    std::vector<double> h;
};

struct FlowEvent {
    enum Kind { Collapse, Restart, Terminate } kind = Terminate;
    double t = 0.0;
    std::string reason;
    bool critical = false;
    bool higher_multiplicity = false;
    Network limit;
};

const char* event_kind_name(FlowEvent::Kind k);

struct Trajectory {
    std::vector<Sample> samples;
    std::vector<FlowEvent> events;
    long steps = 0;
};

Trajectory evolve(const Network& net, double horizon, const FlowOptions& opt = {});

// Contracts segments shorter than eps_len, merges coincident edges into one with
// a multiplicity tag, and restores exact facet directions.
Network collapse_limit(const FlowState& state, double eps_len);
Network collapse_limit(const Network& net, double eps_len);

struct HomothetyResult {
    bool is_homothetic = false;
    std::vector<double> t;
    std::vector<double> r;
    double residual = 0.0;
    double slope = 0.0;  // least-squares slope of r^2 against t
};

// Uses the samples before the first event, optionally only those with t <= t_max.
HomothetyResult homothety_check(const Trajectory& traj, Vec2 center, double tol = 1e-6,
                                double t_max = std::numeric_limits<double>::infinity());

void write_csv(const Trajectory& traj, std::ostream& out);
std::string render_svg(const Network& net, double xmin, double ymin, double width, double height);
// one file per sample, viewBox fixed from the first network's bounding box x1.2
int write_svg_frames(const Trajectory& traj, const std::string& dir);

} // namespace hexflow
