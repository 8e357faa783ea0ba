#pragma once

#include "polypack/delzant.hpp"

#include <functional>

namespace polypack {

// One simplex radius per vertex of the body; 0 means no ball at that vertex.
struct PackingConfiguration {
  std::vector<Rat> radii;
};

struct PairVerdict {
  int i = 0, j = 0;
  bool disjoint = true;
  Rat overlap_volume;  // exact, from the geometry kernel
};

struct FeasibilityWitness {
  bool feasible = true;
  std::vector<bool> contained;        // per simplex with positive radius
  std::vector<PairVerdict> pairs;     // every pair with positive radii
};

struct PackingCertificate {
  PackingConfiguration best;
  Rat lower;      // attained by `best`, kernel-verified
  Rat upper;      // certified upper bound for the supremum
  Rat tolerance;  // upper - lower <= tolerance unless unbounded
  FeasibilityWitness witness;
  bool unbounded = false;  // supremum is +infinity (unbounded bodies only)
  long nodes = 0;          // solver statistics, not part of the data contract
};

// Exact feasibility oracle: containment of every simplex plus pairwise
// zero-volume overlap, decided through the geometry kernel.
FeasibilityWitness feasible(const DelzantPolytope& p, const PackingConfiguration& cfg);

// Certified branch-and-bound for the optimal admissible packing volume.
PackingCertificate pack_toric(const DelzantPolytope& p, const Rat& tol);
PackingCertificate pack_toric_excluding(const DelzantPolytope& p, int vertex_index,
                                        const Rat& tol);

// ---------------------------------------------------------------------------
// Capacities
// ---------------------------------------------------------------------------

// Certified enclosure of (n! * pack)^(1/2n).
struct RadicalInterval {
  Radical lower, upper;  // shared root
};
RadicalInterval capacity_T(const DelzantPolytope& p, const Rat& tol);
RadicalInterval capacity_T_from_pack(const PackingCertificate& cert, int dim);

// sqrt of the largest admissible simplex radius over all vertices.
Radical capacity_cB(const DelzantPolytope& p);

// Count of embedding components at squared ball radius rho: n! * #{vertices
// with max radius >= rho}.
Int emb_count(const DelzantPolytope& p, const Rat& rho);

// Scaled embedding-count capacity: count * (n! * vol_P)^(1/n) * pi where the
// count is evaluated at squared radius (vol_M)^(2/n) * r^2.
struct ErValue {
  Int count;          // embedding count after scaling
  Radical vol_factor;  // (n! * vol_P)^(1/n), symbolic
  // total value = count * vol_factor * pi
};
ErValue capacity_Er(const DelzantPolytope& p, const Rat& r);
std::string format_er(const ErValue& v);

// ---------------------------------------------------------------------------
// Continuity via vertex-exclusion packs
// ---------------------------------------------------------------------------

enum class VertexRelation { StrictLess, Equal, Undecided };

struct ContinuityReport {
  enum Verdict { Yes, No, Undecided } is_largest_neighbourhood;
  PackingCertificate full;
  std::vector<PackingCertificate> excluded;    // one per vertex
  std::vector<VertexRelation> relations;       // pack^i vs pack
};

ContinuityReport continuity_certificate(const DelzantPolytope& p, const Rat& tol);

// ---------------------------------------------------------------------------
// Generic certified solver over "sites" (shared with the semitoric module).
// Feasible sets are downward closed in the radius vector.
// ---------------------------------------------------------------------------
struct SiteModel {
  int site_count = 0;
  int dim = 2;                               // objective is sum rho_i^dim / dim!
  std::optional<Rat> volume_cap;             // total volume bound, if finite
  // per-site maximum radius from containment; nullopt means unbounded
  std::function<std::optional<Rat>(int)> max_radius;
  // sup rho_i keeping site i disjoint from sites j != i at radii fixed[j]
  // (fixed[j] == 0 contributes nothing); nullopt means unconstrained
  std::function<std::optional<Rat>(int, const std::vector<Rat>&)> growth_threshold;
  // exact pairwise disjointness at fixed radii
  std::function<bool(int, const Rat&, int, const Rat&)> pair_disjoint;
  // max of (rho_i^dim + rho_j^dim)/dim! over the pair-feasible set inside the
  // box; nullopt when no pairwise constraint binds
  std::function<std::optional<Rat>(int, int, const Rat&, const Rat&, const Rat&, const Rat&)>
      pair_objective_cap;
};

struct SolveResult {
  std::vector<Rat> best;
  Rat lower, upper;
  bool unbounded = false;
  long nodes = 0;
};

SolveResult solve_packing(const SiteModel& model, const Rat& tol,
                          const std::vector<int>& forced_zero = {});

// Exact separation threshold between a growing simplex (vertex v, frame legs)
// and a fixed convex body given by vertices + facet normals; nullopt = never
// constrained.  2D/3D, separating-axis based.
std::optional<Rat> simplex_growth_threshold(const QVec& v, const std::vector<IVec>& legs,
                                            const std::vector<QVec>& fixed_vertices,
                                            const std::vector<IVec>& axes);
// Candidate separating axes for simplex/simplex tests.
std::vector<IVec> separation_axes(const std::vector<IVec>& legs_p, const std::vector<IVec>& legs_q,
                                  int dim);

// Small exact LP: maximize sum(t) subject to 0 <= t_i <= c_i,
// t_i + t_j <= d_ij for listed pairs, sum(t) <= total (optional).
struct PairBound {
  int i, j;
  Rat bound;
};
Rat max_sum_lp(const std::vector<Rat>& upper, const std::vector<PairBound>& pairs,
               const std::optional<Rat>& total);

}  // namespace polypack
