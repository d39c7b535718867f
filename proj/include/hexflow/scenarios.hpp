#pragma once

#include <string>
#include <vector>

#include "hexflow/chfield.hpp"
#include "hexflow/network.hpp"

namespace hexflow {

struct Ray {
    int vertex = 0;
    int dir = 0;  // lattice direction
};

// Hexagon with side i pointing along lattice direction i+2 and vertex i between
// sides i-1 and i, counterclockwise, centred at the vertex average. The side
// lengths must close up. Vertices "V0".."V5", sides "S0".."S5".
Network lattice_hexagon(const std::vector<double>& sides, const std::vector<Ray>& rays,
                        const std::string& source = "");
// half-lines leaving the given vertices radially
std::vector<Ray> radial_rays(const std::vector<int>& vertices);

Network wulff_hexagon(double R = 1.0);
Network triod120();
// cones of half-lines from the origin, 'a' (fan triod) to 'h' (six half-lines)
Network cone(char letter);
std::vector<int> cone_directions(char letter);
// admissible network mixing junction degrees 4 to 6
Network admissible_sampler();

Network broken_turlik(double eps);

// The six-variable program of the same network written out from its segment
// lengths: x1..x4 at the triple junctions A1, A12, A8, A5 and x5, x6 for the two
// opposite pairs at the quadruple junction A9.
CHProgram broken_turlik_program(double eps);
struct ArmCurvatures {
    double s12, s11, s10, s9;
};
// arm curvatures from a solution, with the arm orientations of that network
ArmCurvatures broken_turlik_arms(const std::vector<double>& x);
// quadruple junction with four arms of length a, stationary
Network critical_quadruple(double a = 1.0);
// the same after parsing the quadruple junction into two triods at distance 2x
Network parsed_quadruple(double a, double x);

// hexagon with horizontal sides b0, lateral sides a0 and four half-lines at the
// ends of the horizontal sides
Network chuvaks(double a0, double b0);
// sides (a,b,c,a,b,c) with half-lines at the two vertices joining c and a
Network hexagon_abc(double a0, double b0, double c0);
// hexagon with horizontal sides b and two X junctions at its horizontal ends
Network two_quadruple_hexagon(double a, double b);
Network alternating_three(double a = 1.0);
Network six_halflines(double a = 1.0);

// vertex-centred cases: the hexagon has a vertex at the origin
Network vertex_centered(char letter, double a = 1.0);

struct Fixture {
    std::string name;
    Network network;
};

// every bundled fixture, with its canonical file name (without extension)
std::vector<Fixture> all_fixtures();

} // namespace hexflow
