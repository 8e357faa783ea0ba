#pragma once

#include "polypack/values.hpp"

#include <vector>

namespace polypack {

using IVec = std::vector<Int>;  // lattice vector
using QVec = std::vector<Rat>;  // rational point

// Lattice vector helpers.  A primitive vector has coordinate gcd 1.
Int ivec_content(const IVec& v);
IVec make_primitive(const IVec& v);  // divides by the content; zero vector throws
bool is_primitive(const IVec& v);
IVec neg(const IVec& v);

Rat dot(const IVec& n, const QVec& x);
Rat dot_q(const QVec& a, const QVec& b);

// Exact determinant of n lattice vectors (columns), n in {1,2,3} fast path,
// generic cofactor expansion otherwise.
Int det(const std::vector<IVec>& cols);
Rat det_q(const std::vector<QVec>& cols);

// Rational direction -> primitive lattice direction (scales away denominators).
IVec primitive_direction(const QVec& from, const QVec& to);

// Closed halfspace { x : <normal, x> >= offset } with primitive integer normal.
struct HalfSpace {
  IVec normal;
  Rat offset;

  bool operator==(const HalfSpace& o) const { return normal == o.normal && offset == o.offset; }
};
HalfSpace normalized(HalfSpace h);  // make normal primitive, scale offset accordingly

// Unimodular affine map x -> lin * x + shift (|det lin| = 1).
struct AffineMap {
  std::vector<IVec> lin_cols;  // columns of the linear part
  QVec shift;

  QVec apply(const QVec& x) const;
  IVec apply_dir(const IVec& d) const;
  static AffineMap identity(int dim);
};
AffineMap inverse(const AffineMap& m);

// Exact convex polytope, dual representation.  Bounded full-dimensional
// bodies carry consistent V- and H-reps; lower-dimensional intersections are
// flagged `degenerate` (volume 0).  Unbounded bodies (2D only in this
// toolkit) keep the H-rep plus the vertices of their bounded skeleton.
struct ConvexPolytope {
  int dim = 0;
  std::vector<QVec> vertices;     // extreme points, lexicographically sorted
  std::vector<HalfSpace> facets;  // irredundant for bounded full-dim bodies
  bool bounded = true;
  bool is_empty = false;
  bool degenerate = false;  // affine hull dimension < dim

  bool contains(const QVec& x) const;  // H-rep membership (closed)
};

int affine_rank(const std::vector<QVec>& pts);

ConvexPolytope polytope_from_vertices(int dim, std::vector<QVec> pts);
ConvexPolytope polytope_from_halfspaces(int dim, std::vector<HalfSpace> hs);

Rat volume(const ConvexPolytope& p);  // exact Lebesgue volume; throws if unbounded
ConvexPolytope intersect(const ConvexPolytope& p, const ConvexPolytope& q);
Rat intersection_volume(const ConvexPolytope& p, const ConvexPolytope& q);
Rat symdiff_volume(const ConvexPolytope& p, const ConvexPolytope& q);
bool disjoint_interiors(const ConvexPolytope& p, const ConvexPolytope& q);

ConvexPolytope transformed(const ConvexPolytope& p, const AffineMap& m);
ConvexPolytope translated(const ConvexPolytope& p, const QVec& t);
ConvexPolytope scaled(const ConvexPolytope& p, const Rat& factor);

// 2D helpers.
std::vector<QVec> boundary_ccw(const ConvexPolytope& p);    // bounded 2D ring
bool recession_cone_contains_vertical(const std::vector<HalfSpace>& hs);  // 2D
bool halfspaces_feasible_2d(const std::vector<HalfSpace>& hs);
// Clip a bounded convex 2D polytope to a vertical slab [x0, x1] (either side
// may be unbounded via nullopt).
ConvexPolytope clip_to_slab(const ConvexPolytope& p, const std::optional<Rat>& x0,
                            const std::optional<Rat>& x1);
// y-range of the slice { x = x0 } of a (possibly unbounded-in-x) 2D H-rep
// body; nullopt if the slice is empty.
std::optional<std::pair<Rat, Rat>> slice_y_range(const std::vector<HalfSpace>& hs, const Rat& x0);
// x-extent of a 2D body; nullopt on the unbounded side.
std::optional<Rat> polytope_min_x(const ConvexPolytope& p);
std::optional<Rat> polytope_max_x(const ConvexPolytope& p);

}  // namespace polypack
