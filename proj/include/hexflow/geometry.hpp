#pragma once

#include "hexflow/network.hpp"
#include "hexflow/vec2.hpp"

namespace hexflow {

// segment (finite len) or ray (len = inf) starting at start with unit direction dir
struct Piece {
    Vec2 start;
    Vec2 dir;
    double len = 0.0;
};

Piece piece_of(const Network& net, int e);
double point_piece_distance(Vec2 q, const Piece& p);
double piece_distance(const Piece& a, const Piece& b);
double edge_distance(const Network& net, int a, int b);
bool edges_share_vertex(const Network& net, int a, int b);

} // namespace hexflow
