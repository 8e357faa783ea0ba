#include "polypack/metrics.hpp"

#include <algorithm>

namespace polypack {

Rat WeightSequence::b(int n) const {
  if (n < 0) throw std::invalid_argument("weight index must be nonnegative");
  if (kind == PowHalf) {
    Int den = Int(1) << n;
    return Rat(1, den);
  }
  Int d = n + 1;
  return Rat(1, d * d * d * d);
}

Rat WeightSequence::tail_bound(int degree) const {
  // number of pairs (i, j) with i + j == s is s + 1
  if (kind == PowHalf) {
    // sum_{s > D} (s+1) 2^-s = (D+3) 2^-D
    return Rat(degree + 3, Int(1) << degree);
  }
  // sum_{s > D} (s+1)^-3 <= 1 / (2 (D+1)^2)
  Int d = degree + 1;
  return Rat(1, 2 * d * d);
}

WeightSequence WeightSequence::parse(const std::string& name) {
  WeightSequence w;
  if (name == "2^-n") w.kind = PowHalf;
  else if (name == "(n+1)^-4") w.kind = InvQuartic;
  else throw std::invalid_argument("unknown weight sequence '" + name + "'");
  return w;
}

std::string WeightSequence::name() const { return kind == PowHalf ? "2^-n" : "(n+1)^-4"; }

PiLin TaylorTruncation::at(int i, int j) const {
  auto it = coeffs.find({i, j});
  return it == coeffs.end() ? PiLin(Rat(0)) : it->second;
}

void TaylorTruncation::validate() const {
  if (pilin_sign(at(0, 0)) != 0)
    throw std::invalid_argument("taylor series must have zero constant term");
  PiLin s01 = at(0, 1);
  if (pilin_sign(s01) < 0 || pilin_sign(s01 - PiLin(Rat(0), Rat(2))) >= 0)
    throw std::invalid_argument("sigma_{0,1} must lie in [0, 2*pi)");
  for (const auto& [ij, c] : coeffs)
    if (ij.first + ij.second > degree)
      throw std::invalid_argument("coefficient beyond the truncation degree");
}

AdmissibleDensity AdmissibleDensity::uniform() {
  AdmissibleDensity g;
  g.values = {Rat(1)};
  return g;
}

void AdmissibleDensity::validate() const {
  if (values.size() != breaks.size() + 1)
    throw std::invalid_argument("density needs one value per slab");
  for (size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i - 1] < breaks[i]))
      throw std::invalid_argument("density breakpoints must increase");
  for (const auto& v : values)
    if (!(v > 0)) throw std::invalid_argument("density must be positive");
}

void IngredientList::validate() const {
  if ((int)taylor.size() != mf) throw std::invalid_argument("one taylor series per cut required");
  if ((int)heights.h.size() != mf) throw std::invalid_argument("one height per cut required");
  if (orbit.canonical.complexity() != mf)
    throw std::invalid_argument("orbit complexity does not match m_f");
  for (const auto& t : taylor) t.validate();
  if (mf > 0) validate_heights(orbit.canonical, heights);
}

TaylorDistance d_taylor(const TaylorTruncation& s1, const TaylorTruncation& s2,
                        const WeightSequence& w, int degree) {
  if (s1.degree != degree || s2.degree != degree)
    throw std::invalid_argument("d_taylor: truncation degrees must match");
  PiLin total(Rat(0));
  for (int s = 0; s <= degree; ++s) {
    for (int i = 0; i <= s; ++i) {
      int j = s - i;
      PiLin diff = pilin_abs(s1.at(i, j) - s2.at(i, j));
      if (i == 0 && j == 1) {
        PiLin two_pi(Rat(0), Rat(2));
        PiLin wrapped = two_pi - diff;
        total = total + pilin_min(pilin_min(diff, wrapped), PiLin(w.b(1)));
      } else {
        total = total + pilin_min(diff, PiLin(w.b(s)));
      }
    }
  }
  return TaylorDistance{total, w.tail_bound(degree)};
}

Rat nu_volume(const std::vector<ConvexPolytope>& pieces, const AdmissibleDensity& g) {
  g.validate();
  Rat total = 0;
  for (const auto& piece : pieces) {
    if (piece.is_empty || piece.degenerate) continue;
    if (!piece.bounded) throw std::invalid_argument("nu_volume: unbounded piece");
    for (size_t s = 0; s <= g.breaks.size(); ++s) {
      std::optional<Rat> x0 = s == 0 ? std::nullopt : std::optional<Rat>(g.breaks[s - 1]);
      std::optional<Rat> x1 = s == g.breaks.size() ? std::nullopt
                                                   : std::optional<Rat>(g.breaks[s]);
      ConvexPolytope clipped = clip_to_slab(piece, x0, x1);
      if (clipped.is_empty || clipped.degenerate) continue;
      total += g.value_at_slab(s) * volume(clipped);
    }
  }
  return total;
}

namespace {

// Do two (possibly unbounded) polygons agree beyond x >= cutoff (right tail)
// or x <= -cutoff (left tail)?  Compares the H-reps restricted to the tail.
bool tails_agree(const ConvexPolytope& a, const ConvexPolytope& b, bool right, const Rat& cutoff) {
  auto tail = [&](const ConvexPolytope& p) {
    std::vector<HalfSpace> hs = p.facets;
    if (right) hs.push_back(HalfSpace{{Int(1), Int(0)}, cutoff});
    else hs.push_back(HalfSpace{{Int(-1), Int(0)}, cutoff});  // x <= -cutoff
    return polytope_from_halfspaces(2, hs);
  };
  ConvexPolytope ta = tail(a), tb = tail(b);
  if (ta.is_empty != tb.is_empty) return false;
  if (ta.is_empty) return true;
  if (ta.vertices != tb.vertices) return false;
  auto key = [](const ConvexPolytope& p) {
    std::vector<std::pair<IVec, Rat>> k;
    for (const auto& f : p.facets) k.push_back({f.normal, f.offset});
    std::sort(k.begin(), k.end());
    return k;
  };
  return key(ta) == key(tb);
}

Rat far_cutoff(const ConvexPolytope& a, const ConvexPolytope& b) {
  Rat m = 1;
  for (const auto& p : {&a, &b})
    for (const auto& v : p->vertices) m = std::max(m, rat_abs(v[0]) + 1);
  return m;
}

}  // namespace

MaybeInfinite nu_symdiff(const ConvexPolytope& a, const ConvexPolytope& b,
                         const AdmissibleDensity& g) {
  MaybeInfinite out;
  if (!a.bounded || !b.bounded) {
    Rat cut = far_cutoff(a, b);
    if (!tails_agree(a, b, true, cut) || !tails_agree(a, b, false, cut)) {
      out.infinite = true;
      return out;
    }
    // tails coincide: the symmetric difference lives in |x| <= cut
    std::vector<HalfSpace> ha = a.facets, hb = b.facets;
    ha.push_back(HalfSpace{{Int(1), Int(0)}, -cut});
    ha.push_back(HalfSpace{{Int(-1), Int(0)}, -cut});
    hb.push_back(HalfSpace{{Int(1), Int(0)}, -cut});
    hb.push_back(HalfSpace{{Int(-1), Int(0)}, -cut});
    ConvexPolytope ca = polytope_from_halfspaces(2, ha);
    ConvexPolytope cb = polytope_from_halfspaces(2, hb);
    return nu_symdiff(ca, cb, g);
  }
  // refine by density slabs: nu(A symdiff B) = nu(A) + nu(B) - 2 nu(A cap B)
  Rat va = nu_volume({a}, g), vb = nu_volume({b}, g);
  ConvexPolytope meet = intersect(a, b);
  Rat vm = (meet.is_empty || meet.degenerate) ? Rat(0) : nu_volume({meet}, g);
  out.value = PiLin(va + vb - 2 * vm);
  return out;
}

MaybeInfinite d_st_polygon(const SemitoricPolygonOrbit& o1, const SemitoricPolygonOrbit& o2,
                           const AdmissibleDensity& g) {
  const PrimitiveSemitoricPolygon& p1 = o1.canonical;
  const PrimitiveSemitoricPolygon& p2 = o2.canonical;
  if (p1.complexity() != p2.complexity())
    throw std::invalid_argument("d_st_polygon: complexities differ (caller maps this to 1)");
  for (int j = 0; j < p1.complexity(); ++j)
    if (p1.cuts[j].k != p2.cuts[j].k)
      throw std::invalid_argument("d_st_polygon: twisting indices differ (caller maps this to 1)");
  int mf = p1.complexity();
  MaybeInfinite total;
  total.value = PiLin(Rat(0));
  if (mf == 0) {
    return nu_symdiff(p1.polygon, p2.polygon, g);
  }
  std::vector<Rat> l1, l2;
  for (const auto& c : p1.cuts) l1.push_back(c.lambda);
  for (const auto& c : p2.cuts) l2.push_back(c.lambda);
  for (unsigned long long mask = 0; mask < (1ull << mf); ++mask) {
    std::vector<int> u(mf);
    for (int j = 0; j < mf; ++j) u[j] = (mask >> j) & 1 ? 1 : 0;
    SlabRegion r1 = multi_cut_transform(u, l1, p1.polygon);
    SlabRegion r2 = multi_cut_transform(u, l2, p2.polygon);
    // common slab refinement over both cut sets
    std::vector<Rat> cuts = l1;
    cuts.insert(cuts.end(), l2.begin(), l2.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    auto piece_at = [&](const SlabRegion& r, const std::vector<Rat>& ls,
                        const std::optional<Rat>& x0, const std::optional<Rat>& x1,
                        const Rat& probe) {
      size_t s = 0;
      for (const auto& l : ls)
        if (l < probe) ++s;
      ConvexPolytope piece = r.pieces[s];
      if (piece.is_empty) return piece;
      return clip_to_slab(piece, x0, x1);
    };
    for (size_t s = 0; s <= cuts.size(); ++s) {
      std::optional<Rat> x0 = s == 0 ? std::nullopt : std::optional<Rat>(cuts[s - 1]);
      std::optional<Rat> x1 = s == cuts.size() ? std::nullopt : std::optional<Rat>(cuts[s]);
      Rat probe;
      if (x0 && x1) probe = (*x0 + *x1) / 2;
      else if (x0) probe = *x0 + 1;
      else if (x1) probe = *x1 - 1;
      else probe = 0;
      ConvexPolytope a = piece_at(r1, l1, x0, x1, probe);
      ConvexPolytope b = piece_at(r2, l2, x0, x1, probe);
      if (a.is_empty && b.is_empty) continue;
      MaybeInfinite d;
      if (a.is_empty || b.is_empty) {
        const ConvexPolytope& solo = a.is_empty ? b : a;
        if (!solo.bounded) {
          d.infinite = true;
        } else {
          d.value = PiLin(nu_volume({solo}, g));
        }
      } else {
        d = nu_symdiff(a, b, g);
      }
      if (d.infinite) {
        total.infinite = true;
        return total;
      }
      total.value = total.value + d.value;
    }
  }
  return total;
}

IngredientDistance d_ingredients(const IngredientList& a, const IngredientList& b,
                                 const WeightSequence& w, const AdmissibleDensity& g, int degree) {
  IngredientDistance out;
  bool match = a.mf == b.mf;
  if (match)
    for (int j = 0; j < a.mf; ++j)
      match = match && a.orbit.canonical.cuts[j].k == b.orbit.canonical.cuts[j].k;
  if (!match) {
    out.mismatched = true;
    out.value = PiLin(Rat(1));
    out.tail_bound = 0;
    return out;
  }
  MaybeInfinite dp = d_st_polygon(a.orbit, b.orbit, g);
  if (dp.infinite) {
    out.infinite = true;
    return out;
  }
  out.value = dp.value;
  out.tail_bound = 0;
  for (int j = 0; j < a.mf; ++j) {
    TaylorDistance td = d_taylor(a.taylor[j], b.taylor[j], w, degree);
    out.value = out.value + td.value;
    out.tail_bound += td.tail_bound;
    out.value = out.value + PiLin(rat_abs(a.heights.h[j] - b.heights.h[j]));
  }
  return out;
}

}  // namespace polypack
