#pragma once

#include "polypack/geometry.hpp"

#include <map>
#include <variant>

namespace polypack {

// Primitive edge directions at a vertex, pointing into the body.  A vertex
// is smooth when |det(edge_dirs)| == 1.
struct VertexFrame {
  QVec vertex;
  std::vector<IVec> edge_dirs;
  std::vector<Rat> edge_lengths;  // lattice length to the neighbouring vertex

  Int frame_det() const { return det(edge_dirs); }
};

struct DelzantPolytope {
  ConvexPolytope body;
  std::vector<VertexFrame> frames;  // aligned with body.vertices

  int vertex_index(const QVec& v) const;  // -1 if absent
};

struct DelzantViolation {
  enum Kind { NotBounded, NotFullDim, NotSimple, NotSmooth, NotRational } kind;
  QVec vertex;    // for NotSimple / NotSmooth
  Int det_value;  // for NotSmooth
  std::string describe() const;
};

using DelzantResult = std::variant<DelzantPolytope, DelzantViolation>;

// Checks bounded + full-dimensional + simple + rational + smooth and builds
// the per-vertex frames.
DelzantResult validate_delzant(const ConvexPolytope& body);
DelzantPolytope require_delzant(const ConvexPolytope& body);  // throws on violation

// Adjacency structure used by the validator: for each vertex, the incident
// edges as (neighbour vertex, primitive direction, lattice length).
struct VertexEdges {
  QVec vertex;
  std::vector<QVec> neighbours;
  std::vector<IVec> dirs;
  std::vector<Rat> lengths;
};
std::vector<VertexEdges> polytope_edges(const ConvexPolytope& body);

// Functional phi with <phi, u_i> = 1 for every frame direction; the chop
// halfspace is <phi, x - v> >= eps.
IVec chop_functional(const VertexFrame& frame);

struct ChopResult {
  DelzantPolytope poly;
  // old vertex -> surviving vertices (the chopped vertex maps to the new face)
  std::map<QVec, std::vector<QVec>> vertex_map;
};

// eps-corner chop; requires eps strictly below every adjacent edge length
// (exactly one extra facet).  Throws EpsilonTooLarge / invalid vertex.
ChopResult corner_chop(const DelzantPolytope& p, const QVec& vertex, const Rat& eps);

struct EpsilonTooLarge : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Symmetric-difference volume metric on bounded polytopes.
Rat metric_dP(const ConvexPolytope& a, const ConvexPolytope& b);

// conv{v, v + rho*u_1, ..., v + rho*u_n}; rho is the simplex radius (square
// of the embedded ball radius).
ConvexPolytope admissible_simplex(const DelzantPolytope& p, const QVec& vertex, const Rat& rho);
ConvexPolytope admissible_simplex(const VertexFrame& frame, const Rat& rho, int dim);

// Largest rho with admissible_simplex(v, rho) inside the body; exact.
Rat max_admissible_radius(const DelzantPolytope& p, const QVec& vertex);

}  // namespace polypack
