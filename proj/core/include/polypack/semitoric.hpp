#pragma once

#include "polypack/packing.hpp"

#include <variant>

namespace polypack {

// Vertical cut line { x = lambda } with a sign and a twisting index.
struct CutLine {
  Rat lambda;
  int epsilon = 1;  // +1 or -1
  long long k = 0;

  bool operator==(const CutLine& o) const {
    return lambda == o.lambda && epsilon == o.epsilon && k == o.k;
  }
};

// Piecewise region subdivided by the cut lines into convex pieces (images of
// convex polygons under the piecewise shears need not be convex).
struct SlabRegion {
  std::vector<Rat> breaks;                // ascending cut abscissae
  std::vector<ConvexPolytope> pieces;     // breaks.size() + 1 entries, possibly empty
};

// Convex representative with all cut signs +1.
struct PrimitiveSemitoricPolygon {
  ConvexPolytope polygon;  // 2D, everywhere finite height, possibly unbounded in x
  std::vector<CutLine> cuts;

  int complexity() const { return (int)cuts.size(); }
};

// Arbitrary orbit member: primitive data plus transform bookkeeping.
struct LabeledWeightedPolygon {
  SlabRegion region;
  std::vector<CutLine> cuts;
};

struct SemitoricPolygonOrbit {
  PrimitiveSemitoricPolygon canonical;

  bool operator==(const SemitoricPolygonOrbit& o) const;
};

struct SemitoricHeights {
  std::vector<Rat> h;
};

// ---------------------------------------------------------------------------
// Transforms
// ---------------------------------------------------------------------------

// t^k based at the line {x = lambda}: identity left of the line, y-shear by
// k*(x - lambda) on the right.
QVec t_power_point(long long k, const Rat& lambda, const QVec& p);

// Accumulated affine map on the open slab strictly right of `upto` cuts.
AffineMap slab_shear(const std::vector<int>& u, const std::vector<Rat>& lambdas, size_t slab);

// t^{u_1}_{l_1} o ... o t^{u_m}_{l_m} applied to a convex region.
SlabRegion multi_cut_transform(const std::vector<int>& u, const std::vector<Rat>& lambdas,
                               const ConvexPolytope& region);
SlabRegion transform_region(const SlabRegion& r, const std::vector<int>& u, long long tk);

// ---------------------------------------------------------------------------
// Corner classification and validation
// ---------------------------------------------------------------------------

enum class CornerKind { Delzant, Hidden, Fake, NonSmooth };
std::string corner_kind_name(CornerKind k);

struct CornerInfo {
  QVec vertex;
  CornerKind kind;
  bool on_cut = false;
  int cut_index = -1;  // for on-cut corners
  bool on_top = false;
  std::vector<IVec> away_dirs;  // ordered with det > 0
};

// Away-pointing primitive edge directions at a vertex of a 2D body (works for
// unbounded bodies; rays give infinite length).
struct EdgeAtVertex {
  IVec dir;
  std::optional<Rat> lattice_length;  // nullopt for rays
};
std::vector<EdgeAtVertex> vertex_edges_2d(const ConvexPolytope& body, const QVec& v);

CornerKind classify_corner(const PrimitiveSemitoricPolygon& p, const QVec& vertex);
std::vector<CornerInfo> classify_all(const PrimitiveSemitoricPolygon& p);

struct StViolation {
  std::string what;
};
using StValidation = std::variant<PrimitiveSemitoricPolygon, StViolation>;

StValidation validate_primitive(const ConvexPolytope& polygon, std::vector<CutLine> cuts);
PrimitiveSemitoricPolygon require_primitive(const ConvexPolytope& polygon,
                                            std::vector<CutLine> cuts);

void validate_heights(const PrimitiveSemitoricPolygon& p, const SemitoricHeights& h);

// ---------------------------------------------------------------------------
// Group action and orbits
// ---------------------------------------------------------------------------

LabeledWeightedPolygon as_member(const PrimitiveSemitoricPolygon& p);
LabeledWeightedPolygon group_action(const std::vector<int>& eps_prime, long long k,
                                    const LabeledWeightedPolygon& m);
SemitoricPolygonOrbit canonical_orbit(const LabeledWeightedPolygon& m);
SemitoricPolygonOrbit orbit_of(const PrimitiveSemitoricPolygon& p);
bool member_equal(const LabeledWeightedPolygon& a, const LabeledWeightedPolygon& b);

// ---------------------------------------------------------------------------
// Chops
// ---------------------------------------------------------------------------

PrimitiveSemitoricPolygon st_corner_chop(const PrimitiveSemitoricPolygon& p, const QVec& vertex,
                                         const Rat& eps);
PrimitiveSemitoricPolygon st_hidden_corner_chop(const PrimitiveSemitoricPolygon& p,
                                                const QVec& vertex, const Rat& eps);

struct WrongCornerKind : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Packing
// ---------------------------------------------------------------------------

struct StSite {
  QVec vertex;
  CornerKind kind;  // Delzant or Hidden
  // usable unfoldings: for each, the frame legs in unfolded coordinates
  std::vector<std::vector<int>> unfoldings;
  std::vector<std::vector<IVec>> frames;
};
std::vector<StSite> packing_sites(const PrimitiveSemitoricPolygon& p);

// Folded admissible simplex pieces at the given radius (subsets of the
// polygon, one convex piece per slab).
std::vector<ConvexPolytope> folded_simplex_pieces(const PrimitiveSemitoricPolygon& p,
                                                  const QVec& vertex,
                                                  const std::vector<int>& u, const Rat& rho);

// Largest admissible radius at a non-fake vertex given the heights; nullopt
// means unbounded.  Throws WrongCornerKind at fake corners.
std::optional<Rat> max_st_radius(const PrimitiveSemitoricPolygon& p, const SemitoricHeights& h,
                                 const QVec& vertex);
// Same restricted to one unfolding.
std::optional<Rat> st_site_cap(const PrimitiveSemitoricPolygon& p, const SemitoricHeights& h,
                               const QVec& vertex, const std::vector<IVec>& frame,
                               const std::vector<int>& u);

PackingCertificate pack_semitoric(const SemitoricPolygonOrbit& orbit, const SemitoricHeights& h,
                                  const Rat& tol);

RadicalInterval capacity_ST(const SemitoricPolygonOrbit& orbit, const SemitoricHeights& h,
                            const Rat& tol);
Radical capacity_ST_rad(const SemitoricPolygonOrbit& orbit, const SemitoricHeights& h);

// ---------------------------------------------------------------------------
// Smooth angles
// ---------------------------------------------------------------------------

struct SmoothAngle {
  IVec u, w;     // primitive pair with det(u, w) == 1 realizing the angle
  int cos_sign;  // sign of <u, w>
  Rat cos2;      // cos^2 of the angle
  Rat sin2;      // sin^2 of the angle (= 1 / (|u|^2 |w|^2))
  std::string label;  // "pi/2", "pi/4", "3pi/4", or "acos(+-sqrt(p/q))"
};

// All angles realizable at a smooth corner by primitive vectors with squared
// norm <= bound, sorted by angle, deduplicated.
std::vector<SmoothAngle> smooth_angles(const Int& bound);

}  // namespace polypack
