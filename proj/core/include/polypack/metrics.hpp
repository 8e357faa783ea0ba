#pragma once

#include "polypack/semitoric.hpp"

namespace polypack {

// Positive weight sequence with sum(n * b_n) finite; the two built-ins are
// certified linear summable (partial sums bounded by 2 and 3/2).
struct WeightSequence {
  enum Kind { PowHalf, InvQuartic } kind = PowHalf;  // 2^-n  /  (n+1)^-4

  Rat b(int n) const;
  // certified bound on sum over i+j > D of b_{i+j}
  Rat tail_bound(int degree) const;
  static WeightSequence parse(const std::string& name);  // "2^-n" | "(n+1)^-4"
  std::string name() const;
};

// Formal power-series truncation: coefficients sigma_{i,j} for i + j <= D,
// sigma_{0,0} = 0, sigma_{0,1} in [0, 2*pi) stored as a + b*pi.
struct TaylorTruncation {
  int degree = 6;
  std::map<std::pair<int, int>, PiLin> coeffs;  // absent entries are zero

  PiLin at(int i, int j) const;
  void validate() const;
};

// piecewise-constant positive density g(x) with rational breakpoints
struct AdmissibleDensity {
  std::vector<Rat> breaks;   // ascending
  std::vector<Rat> values;   // breaks.size() + 1 entries, all > 0

  static AdmissibleDensity uniform();
  Rat value_at_slab(size_t i) const { return values[i]; }
  void validate() const;
};

struct IngredientList {
  int mf = 0;
  std::vector<TaylorTruncation> taylor;  // mf entries
  SemitoricPolygonOrbit orbit;
  SemitoricHeights heights;

  void validate() const;
};

// Infinite values arise from unbounded symmetric differences.
struct MaybeInfinite {
  bool infinite = false;
  PiLin value;
};

// Clamped weighted coefficient distance; the (0,1) slot uses circular
// distance modulo 2*pi.  Exact in a + b*pi form, plus a certified tail bound.
struct TaylorDistance {
  PiLin value;
  Rat tail_bound;
};
TaylorDistance d_taylor(const TaylorTruncation& s1, const TaylorTruncation& s2,
                        const WeightSequence& w, int degree);

// integral of g over a bounded region given as convex pieces
Rat nu_volume(const std::vector<ConvexPolytope>& pieces, const AdmissibleDensity& g);
// nu-measure of the symmetric difference of two (possibly unbounded) convex
// polygons; infinite when the tails disagree
MaybeInfinite nu_symdiff(const ConvexPolytope& a, const ConvexPolytope& b,
                         const AdmissibleDensity& g);

// sum over unfoldings u of nu(t^u(P1) symdiff t^u(P2)); requires equal
// complexity and twisting vectors (the caller maps mismatches to distance 1)
MaybeInfinite d_st_polygon(const SemitoricPolygonOrbit& o1, const SemitoricPolygonOrbit& o2,
                           const AdmissibleDensity& g);

struct IngredientDistance {
  bool mismatched = false;  // different (m_f, k-vector): distance is exactly 1
  bool infinite = false;
  PiLin value;
  Rat tail_bound;
};
IngredientDistance d_ingredients(const IngredientList& a, const IngredientList& b,
                                 const WeightSequence& w, const AdmissibleDensity& g, int degree);

}  // namespace polypack
