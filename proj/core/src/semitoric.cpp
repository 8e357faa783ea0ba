#include "polypack/semitoric.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace polypack {

namespace {

IVec apply_T(const IVec& w) { return {w[0], w[0] + w[1]}; }

IVec apply_T_pow(long long k, const IVec& w) { return {w[0], k * w[0] + w[1]}; }

std::string point_str(const QVec& v) {
  return "(" + format_rat(v[0]) + ", " + format_rat(v[1]) + ")";
}

Int det2(const IVec& a, const IVec& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

QVec t_power_point(long long k, const Rat& lambda, const QVec& p) {
  if (p[0] <= lambda) return p;
  return {p[0], p[1] + Rat(k) * (p[0] - lambda)};
}

AffineMap slab_shear(const std::vector<int>& u, const std::vector<Rat>& lambdas, size_t slab) {
  // slab s lies between lambdas[s-1] and lambdas[s]
  long long c = 0;
  Rat d = 0;
  for (size_t j = 0; j < slab && j < u.size(); ++j) {
    c += u[j];
    d -= Rat(u[j]) * lambdas[j];
  }
  AffineMap m = AffineMap::identity(2);
  m.lin_cols[0][1] = c;
  m.shift[1] = d;
  return m;
}

SlabRegion multi_cut_transform(const std::vector<int>& u, const std::vector<Rat>& lambdas,
                               const ConvexPolytope& region) {
  if (u.size() != lambdas.size()) throw std::invalid_argument("multi_cut_transform: size mismatch");
  for (size_t j = 1; j < lambdas.size(); ++j)
    if (!(lambdas[j - 1] < lambdas[j]))
      throw std::invalid_argument("multi_cut_transform: cuts must be strictly increasing");
  SlabRegion out;
  out.breaks = lambdas;
  size_t m = lambdas.size();
  for (size_t s = 0; s <= m; ++s) {
    std::optional<Rat> x0 = s == 0 ? std::nullopt : std::optional<Rat>(lambdas[s - 1]);
    std::optional<Rat> x1 = s == m ? std::nullopt : std::optional<Rat>(lambdas[s]);
    ConvexPolytope piece = clip_to_slab(region, x0, x1);
    if (!piece.is_empty) piece = transformed(piece, slab_shear(u, lambdas, s));
    out.pieces.push_back(std::move(piece));
  }
  return out;
}

SlabRegion transform_region(const SlabRegion& r, const std::vector<int>& u, long long tk) {
  SlabRegion out;
  out.breaks = r.breaks;
  for (size_t s = 0; s < r.pieces.size(); ++s) {
    const ConvexPolytope& piece = r.pieces[s];
    if (piece.is_empty) {
      out.pieces.push_back(piece);
      continue;
    }
    AffineMap shear = slab_shear(u, r.breaks, s);
    // compose with the global T^tk (applied first)
    AffineMap m = shear;
    m.lin_cols[0][1] += tk;
    out.pieces.push_back(transformed(piece, m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Edges at a vertex (2D, unbounded-aware)
// ---------------------------------------------------------------------------

std::vector<EdgeAtVertex> vertex_edges_2d(const ConvexPolytope& body, const QVec& v) {
  if (body.dim != 2) throw std::invalid_argument("vertex_edges_2d: 2D only");
  std::vector<const HalfSpace*> active;
  for (const auto& f : body.facets)
    if (dot(f.normal, v) == f.offset) active.push_back(&f);
  if (active.size() != 2)
    throw std::invalid_argument("vertex_edges_2d: vertex is not simple at " + point_str(v));
  std::vector<EdgeAtVertex> out;
  for (int e = 0; e < 2; ++e) {
    const HalfSpace& own = *active[e];
    const HalfSpace& other = *active[1 - e];
    IVec d = {-own.normal[1], own.normal[0]};
    Rat side = Rat(other.normal[0]) * Rat(d[0]) + Rat(other.normal[1]) * Rat(d[1]);
    if (side == 0) throw std::logic_error("vertex_edges_2d: parallel active facets");
    if (side < 0) d = neg(d);
    // lattice length: nearest vertex along the edge line
    std::optional<Rat> len;
    for (const auto& w : body.vertices) {
      if (w == v || dot(own.normal, w) != own.offset) continue;
      Rat t;
      if (d[0] != 0) t = (w[0] - v[0]) / Rat(d[0]);
      else t = (w[1] - v[1]) / Rat(d[1]);
      if (t <= 0) continue;
      if (!len || t < *len) len = t;
    }
    out.push_back(EdgeAtVertex{make_primitive(d), len});
  }
  // order with det > 0
  if (det2(out[0].dir, out[1].dir) < 0) std::swap(out[0], out[1]);
  return out;
}

// ---------------------------------------------------------------------------
// Classification
// ---------------------------------------------------------------------------

std::string corner_kind_name(CornerKind k) {
  switch (k) {
    case CornerKind::Delzant: return "delzant";
    case CornerKind::Hidden: return "hidden";
    case CornerKind::Fake: return "fake";
    case CornerKind::NonSmooth: return "non-smooth";
  }
  return "?";
}

namespace {

bool on_top_boundary(const ConvexPolytope& poly, const QVec& v) {
  auto range = slice_y_range(poly.facets, v[0]);
  if (!range) throw std::logic_error("vertex off its own polygon");
  return range->second == v[1];
}

CornerInfo classify_vertex(const PrimitiveSemitoricPolygon& p, const QVec& v) {
  CornerInfo info;
  info.vertex = v;
  auto edges = vertex_edges_2d(p.polygon, v);
  info.away_dirs = {edges[0].dir, edges[1].dir};
  info.on_top = on_top_boundary(p.polygon, v);
  for (size_t j = 0; j < p.cuts.size(); ++j)
    if (p.cuts[j].lambda == v[0]) {
      info.on_cut = true;
      info.cut_index = (int)j;
    }
  const IVec& u = info.away_dirs[0];
  const IVec& w = info.away_dirs[1];
  if (info.on_cut && info.on_top) {
    Int h = det2(u, apply_T(w));
    if (h == 1) info.kind = CornerKind::Hidden;
    else if (h == 0) info.kind = CornerKind::Fake;
    else info.kind = CornerKind::NonSmooth;
  } else {
    info.kind = det2(u, w) == 1 ? CornerKind::Delzant : CornerKind::NonSmooth;
  }
  return info;
}

}  // namespace

CornerKind classify_corner(const PrimitiveSemitoricPolygon& p, const QVec& vertex) {
  return classify_vertex(p, vertex).kind;
}

std::vector<CornerInfo> classify_all(const PrimitiveSemitoricPolygon& p) {
  std::vector<CornerInfo> out;
  for (const auto& v : p.polygon.vertices) out.push_back(classify_vertex(p, v));
  return out;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

StValidation validate_primitive(const ConvexPolytope& polygon, std::vector<CutLine> cuts) {
  auto fail = [](std::string why) { return StValidation(StViolation{std::move(why)}); };
  if (polygon.dim != 2) return fail("polygon must be 2-dimensional");
  if (polygon.is_empty) return fail("polygon is empty");
  if (polygon.bounded && (polygon.degenerate || affine_rank(polygon.vertices) < 2))
    return fail("polygon is not full-dimensional");
  if (!polygon.bounded && recession_cone_contains_vertical(polygon.facets))
    return fail("polygon fails everywhere-finite height (vertical recession)");
  for (size_t j = 0; j < cuts.size(); ++j) {
    if (cuts[j].epsilon != 1) return fail("cut " + std::to_string(j) + " has epsilon != +1");
    if (j > 0 && !(cuts[j - 1].lambda < cuts[j].lambda))
      return fail("cut abscissae must be strictly increasing");
  }
  auto mn = polytope_min_x(polygon);
  auto mx = polytope_max_x(polygon);
  for (size_t j = 0; j < cuts.size(); ++j) {
    if (mn && !(cuts[j].lambda > *mn))
      return fail("cut " + std::to_string(j) + " is not strictly inside the x-range");
    if (mx && !(cuts[j].lambda < *mx))
      return fail("cut " + std::to_string(j) + " is not strictly inside the x-range");
  }

  PrimitiveSemitoricPolygon prim;
  prim.polygon = polygon;
  prim.cuts = std::move(cuts);

  for (const auto& v : polygon.vertices) {
    CornerInfo info = classify_vertex(prim, v);
    if (info.on_cut && !info.on_top && info.kind != CornerKind::Delzant)
      return fail("vertex " + point_str(v) + " on a cut off the top boundary must be Delzant");
    if (info.on_cut && info.on_top && info.kind == CornerKind::NonSmooth)
      return fail("top vertex " + point_str(v) + " on a cut is neither hidden nor fake");
    if (!(info.on_cut && info.on_top) && info.kind != CornerKind::Delzant)
      return fail("vertex " + point_str(v) + " violates the Delzant condition");
  }
  // non-vertex top crossings: the top edge must cross with unit x-step
  for (const auto& cut : prim.cuts) {
    auto range = slice_y_range(polygon.facets, cut.lambda);
    if (!range) return fail("cut misses the polygon");
    QVec top = {cut.lambda, range->second};
    bool is_vertex = false;
    for (const auto& v : polygon.vertices) is_vertex = is_vertex || v == top;
    if (is_vertex) continue;
    const HalfSpace* top_facet = nullptr;
    for (const auto& f : polygon.facets)
      if (dot(f.normal, top) == f.offset) {
        if (top_facet) return fail("top crossing is not on a unique edge");
        top_facet = &f;
      }
    if (!top_facet) return fail("cut top is not on the boundary");
    Int ny = top_facet->normal[1] < 0 ? Int(-top_facet->normal[1]) : top_facet->normal[1];
    if (ny != 1)
      return fail("top edge crossing cut at x = " + format_rat(cut.lambda) +
                  " fails the hidden condition");
  }
  return prim;
}

PrimitiveSemitoricPolygon require_primitive(const ConvexPolytope& polygon,
                                            std::vector<CutLine> cuts) {
  StValidation r = validate_primitive(polygon, std::move(cuts));
  if (auto* viol = std::get_if<StViolation>(&r))
    throw std::invalid_argument("not a primitive semitoric polygon: " + viol->what);
  return std::get<PrimitiveSemitoricPolygon>(std::move(r));
}

void validate_heights(const PrimitiveSemitoricPolygon& p, const SemitoricHeights& h) {
  if (h.h.size() != p.cuts.size())
    throw std::invalid_argument("heights: one entry per cut required");
  for (size_t j = 0; j < h.h.size(); ++j) {
    auto range = slice_y_range(p.polygon.facets, p.cuts[j].lambda);
    if (!range) throw std::logic_error("cut misses the polygon");
    Rat len = range->second - range->first;
    if (!(h.h[j] > 0 && h.h[j] < len))
      throw std::invalid_argument("height " + std::to_string(j) + " outside (0, " +
                                  format_rat(len) + ")");
  }
}

// ---------------------------------------------------------------------------
// Orbits
// ---------------------------------------------------------------------------

namespace {

bool poly_equal(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (a.is_empty != b.is_empty) return false;
  if (a.is_empty) return true;
  if (a.bounded != b.bounded) return false;
  if (a.vertices != b.vertices) return false;
  auto key = [](const ConvexPolytope& p) {
    std::vector<std::pair<IVec, Rat>> k;
    for (const auto& f : p.facets) k.push_back({f.normal, f.offset});
    std::sort(k.begin(), k.end());
    return k;
  };
  return a.bounded ? true : key(a) == key(b);
}

}  // namespace

bool member_equal(const LabeledWeightedPolygon& a, const LabeledWeightedPolygon& b) {
  if (a.region.breaks != b.region.breaks) return false;
  if (a.cuts.size() != b.cuts.size()) return false;
  for (size_t j = 0; j < a.cuts.size(); ++j)
    if (!(a.cuts[j] == b.cuts[j])) return false;
  if (a.region.pieces.size() != b.region.pieces.size()) return false;
  for (size_t s = 0; s < a.region.pieces.size(); ++s)
    if (!poly_equal(a.region.pieces[s], b.region.pieces[s])) return false;
  return true;
}

bool SemitoricPolygonOrbit::operator==(const SemitoricPolygonOrbit& o) const {
  if (canonical.cuts.size() != o.canonical.cuts.size()) return false;
  for (size_t j = 0; j < canonical.cuts.size(); ++j)
    if (!(canonical.cuts[j] == o.canonical.cuts[j])) return false;
  return poly_equal(canonical.polygon, o.canonical.polygon);
}

LabeledWeightedPolygon as_member(const PrimitiveSemitoricPolygon& p) {
  LabeledWeightedPolygon m;
  m.cuts = p.cuts;
  std::vector<Rat> lambdas;
  for (const auto& c : p.cuts) lambdas.push_back(c.lambda);
  m.region = multi_cut_transform(std::vector<int>(p.cuts.size(), 0), lambdas, p.polygon);
  return m;
}

LabeledWeightedPolygon group_action(const std::vector<int>& eps_prime, long long k,
                                    const LabeledWeightedPolygon& m) {
  size_t mf = m.cuts.size();
  if (eps_prime.size() != mf) throw std::invalid_argument("group_action: epsilon size mismatch");
  std::vector<int> u(mf);
  LabeledWeightedPolygon out;
  out.cuts = m.cuts;
  for (size_t j = 0; j < mf; ++j) {
    int e = m.cuts[j].epsilon, ep = eps_prime[j];
    if (ep != 1 && ep != -1) throw std::invalid_argument("group_action: epsilon must be +-1");
    u[j] = (e - e * ep) / 2;
    out.cuts[j].epsilon = e * ep;
    out.cuts[j].k = m.cuts[j].k + k;
  }
  out.region = transform_region(m.region, u, k);
  return out;
}

namespace {

// Reassemble a convex polygon from slab pieces; throws if they do not glue.
ConvexPolytope reassemble(const SlabRegion& r) {
  std::vector<HalfSpace> hs;
  std::set<std::pair<IVec, Rat>> seen;
  for (size_t s = 0; s < r.pieces.size(); ++s) {
    const auto& piece = r.pieces[s];
    if (piece.is_empty) continue;
    for (const auto& f : piece.facets) {
      // drop the artificial slab walls
      bool wall = false;
      if (f.normal[1] == 0) {
        Rat x = f.offset / Rat(f.normal[0]);
        for (const Rat& b : r.breaks) wall = wall || x == b;
      }
      if (wall) continue;
      if (seen.insert({f.normal, f.offset}).second) hs.push_back(f);
    }
  }
  ConvexPolytope glued = polytope_from_halfspaces(2, hs);
  // verify: clipping the glued body reproduces the pieces
  for (size_t s = 0; s < r.pieces.size(); ++s) {
    std::optional<Rat> x0 = s == 0 ? std::nullopt : std::optional<Rat>(r.breaks[s - 1]);
    std::optional<Rat> x1 = s == r.breaks.size() ? std::nullopt
                                                 : std::optional<Rat>(r.breaks[s]);
    ConvexPolytope back = clip_to_slab(glued, x0, x1);
    if (!poly_equal(back, r.pieces[s]))
      throw std::invalid_argument("region does not assemble into a convex polygon");
  }
  return glued;
}

// Deterministic shear normalization for complexity-zero orbits.
long long canonical_shear_mf0(const ConvexPolytope& poly) {
  auto cost = [&](long long k) {
    Rat c = 0;
    for (const auto& f : poly.facets) c += rat_abs(Rat(f.normal[0] - k * f.normal[1]));
    for (const auto& v : poly.vertices) c += rat_abs(v[1] + Rat(k) * v[0]);
    return c;
  };
  long long k = 0;
  Rat c0 = cost(0);
  // the cost is convex in k; walk downhill, then take the smallest argmin
  long long dir = 0;
  if (cost(-1) < c0) dir = -1;
  else if (cost(1) < c0) dir = 1;
  if (dir != 0) {
    while (cost(k + dir) < cost(k)) k += dir;
  }
  while (cost(k - 1) == cost(k)) --k;  // smallest k among ties
  return k;
}

}  // namespace

SemitoricPolygonOrbit canonical_orbit(const LabeledWeightedPolygon& m) {
  size_t mf = m.cuts.size();
  std::vector<int> flips(mf);
  for (size_t j = 0; j < mf; ++j) flips[j] = m.cuts[j].epsilon;
  LabeledWeightedPolygon unfolded = group_action(flips, 0, m);
  long long kshift = 0;
  if (mf > 0) {
    long long kmin = unfolded.cuts[0].k;
    for (const auto& c : unfolded.cuts) kmin = std::min(kmin, c.k);
    kshift = -kmin;
  } else {
    ConvexPolytope glued = reassemble(unfolded.region);
    kshift = -canonical_shear_mf0(glued);
  }
  LabeledWeightedPolygon normal = group_action(std::vector<int>(mf, 1), kshift, unfolded);
  ConvexPolytope poly = reassemble(normal.region);
  SemitoricPolygonOrbit orbit;
  orbit.canonical = require_primitive(poly, normal.cuts);
  return orbit;
}

SemitoricPolygonOrbit orbit_of(const PrimitiveSemitoricPolygon& p) {
  return canonical_orbit(as_member(p));
}

// ---------------------------------------------------------------------------
// Chops
// ---------------------------------------------------------------------------

namespace {

IVec dual_sum(const IVec& u1, const IVec& u2) {
  // phi with <phi, u1> = <phi, u2> = 1 (frames with |det| = 1)
  Int d = det2(u1, u2);
  if (d != 1 && d != -1) throw std::logic_error("dual_sum: frame not unimodular");
  // solve [u1 u2]^T phi = (1,1)
  Int a = u1[0], b = u1[1], c = u2[0], e = u2[1];
  // phi = 1/det * (e - b, a - c) with det = a*e - b*c
  Int dd = a * e - b * c;
  return {(e - b) * dd, (a - c) * dd};  // dd in {1,-1}: multiplying equals dividing
}

Rat removed_area(const ConvexPolytope& before, const std::vector<HalfSpace>& cut_away) {
  // area of before intersected with the complement of each halfspace, summed;
  // the pieces are disjoint up to measure zero when the complements are
  // separated by a cut line
  Rat total = 0;
  for (const auto& h : cut_away) {
    std::vector<HalfSpace> hs = before.facets;
    hs.push_back(normalized(HalfSpace{neg(h.normal), -h.offset}));
    ConvexPolytope piece = polytope_from_halfspaces(2, hs);
    if (!piece.is_empty && !piece.degenerate) total += volume(piece);
  }
  return total;
}

}  // namespace

PrimitiveSemitoricPolygon st_corner_chop(const PrimitiveSemitoricPolygon& p, const QVec& vertex,
                                         const Rat& eps) {
  CornerInfo info = classify_vertex(p, vertex);
  if (info.kind != CornerKind::Delzant)
    throw WrongCornerKind("st_corner_chop requires a Delzant corner, got " +
                          corner_kind_name(info.kind));
  if (eps <= 0) throw EpsilonTooLarge("chop size must be positive");
  auto edges = vertex_edges_2d(p.polygon, vertex);
  for (const auto& e : edges)
    if (e.lattice_length && eps >= *e.lattice_length)
      throw EpsilonTooLarge("chop size reaches an adjacent vertex");
  IVec phi = dual_sum(info.away_dirs[0], info.away_dirs[1]);
  Rat base = dot(phi, vertex);
  for (const auto& w : p.polygon.vertices) {
    if (w == vertex) continue;
    if (dot(phi, w) - base <= eps) throw EpsilonTooLarge("chop size reaches another vertex");
  }
  HalfSpace cut = normalized(HalfSpace{phi, base + eps});
  std::vector<HalfSpace> hs = p.polygon.facets;
  hs.push_back(cut);
  ConvexPolytope chopped = polytope_from_halfspaces(2, hs);
  if (chopped.vertices.size() != p.polygon.vertices.size() + 1)
    throw EpsilonTooLarge("chop does not add exactly one face");
  if (removed_area(p.polygon, {cut}) != eps * eps / 2)
    throw std::logic_error("st_corner_chop: removed area mismatch");
  return require_primitive(chopped, p.cuts);
}

PrimitiveSemitoricPolygon st_hidden_corner_chop(const PrimitiveSemitoricPolygon& p,
                                                const QVec& vertex, const Rat& eps) {
  CornerInfo info = classify_vertex(p, vertex);
  if (info.kind != CornerKind::Hidden)
    throw WrongCornerKind("st_hidden_corner_chop requires a hidden corner, got " +
                          corner_kind_name(info.kind));
  if (eps <= 0) throw EpsilonTooLarge("chop size must be positive");
  const Rat& lambda = p.cuts[info.cut_index].lambda;
  // at a top corner the det-positive order is (left edge, right edge); the
  // unfold transforms the right-going edge by T
  IVec d1 = info.away_dirs[0], d2 = apply_T(info.away_dirs[1]);
  if (det2(d1, d2) < 0) std::swap(d1, d2);
  if (det2(d1, d2) != 1) throw std::logic_error("hidden corner did not unfold to Delzant");
  // edge-length guards in the unfolded picture (lengths are preserved by shears
  // up to the unimodular change, so reuse the folded lattice lengths)
  auto edges = vertex_edges_2d(p.polygon, vertex);
  for (const auto& e : edges)
    if (e.lattice_length && eps >= *e.lattice_length)
      throw EpsilonTooLarge("chop size reaches an adjacent vertex");
  IVec phi_hat = dual_sum(d1, d2);
  Rat base = dot(phi_hat, vertex);
  // fold the chop halfplane back: left of the cut it is phi_hat itself, right
  // of the cut it is T^T phi_hat shifted by the cut base point
  IVec phi_right = {phi_hat[0] + phi_hat[1], phi_hat[1]};
  Rat base_right = base + Rat(phi_hat[1]) * lambda;
  HalfSpace cut_l = normalized(HalfSpace{phi_hat, base + eps});
  HalfSpace cut_r = normalized(HalfSpace{phi_right, base_right + eps});
  std::vector<HalfSpace> hs = p.polygon.facets;
  hs.push_back(cut_l);
  hs.push_back(cut_r);
  ConvexPolytope chopped = polytope_from_halfspaces(2, hs);
  if (chopped.vertices.size() != p.polygon.vertices.size() + 2)
    throw EpsilonTooLarge("hidden chop does not produce the bent extra face");
  // removed pieces live on either side of the cut line
  std::vector<HalfSpace> left_part = p.polygon.facets;
  left_part.push_back(HalfSpace{{Int(-1), Int(0)}, -lambda});
  std::vector<HalfSpace> right_part = p.polygon.facets;
  right_part.push_back(HalfSpace{{Int(1), Int(0)}, lambda});
  ConvexPolytope left_poly = polytope_from_halfspaces(2, left_part);
  ConvexPolytope right_poly = polytope_from_halfspaces(2, right_part);
  Rat removed = removed_area(left_poly, {cut_l}) + removed_area(right_poly, {cut_r});
  if (removed != eps * eps / 2)
    throw std::logic_error("st_hidden_corner_chop: removed area mismatch");
  return require_primitive(chopped, p.cuts);
}

// ---------------------------------------------------------------------------
// Packing sites and the cell-scan threshold machinery
// ---------------------------------------------------------------------------

namespace {

struct Ring {
  std::vector<QVec> pts;  // ccw
};

Ring clip_ring(const Ring& r, const IVec& n, const Rat& c) {
  Ring out;
  size_t m = r.pts.size();
  for (size_t i = 0; i < m; ++i) {
    const QVec& a = r.pts[i];
    const QVec& b = r.pts[(i + 1) % m];
    Rat fa = dot(n, a) - c, fb = dot(n, b) - c;
    if (fa >= 0) out.pts.push_back(a);
    if ((fa > 0 && fb < 0) || (fa < 0 && fb > 0)) {
      Rat t = fa / (fa - fb);
      QVec x = {a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
      out.pts.push_back(std::move(x));
    }
  }
  // dedupe consecutive repeats
  Ring ded;
  for (const auto& q : out.pts)
    if (ded.pts.empty() || !(ded.pts.back() == q)) ded.pts.push_back(q);
  while (ded.pts.size() > 1 && ded.pts.front() == ded.pts.back()) ded.pts.pop_back();
  return ded;
}

Rat ring_area2(const Ring& r) {
  Rat s = 0;
  for (size_t i = 0; i < r.pts.size(); ++i) {
    const QVec& a = r.pts[i];
    const QVec& b = r.pts[(i + 1) % r.pts.size()];
    s += a[0] * b[1] - b[0] * a[1];
  }
  return s;
}

// unfolded simplex ring at radius rho (ccw)
Ring simplex_ring(const QVec& v_hat, const std::vector<IVec>& legs, const Rat& rho) {
  Ring r;
  r.pts.push_back(v_hat);
  for (const auto& u : legs)
    r.pts.push_back({v_hat[0] + rho * Rat(u[0]), v_hat[1] + rho * Rat(u[1])});
  if (ring_area2(r) < 0) std::swap(r.pts[1], r.pts[2]);
  return r;
}

struct Interval {
  Rat lo;                  // >= cell start
  std::optional<Rat> hi;   // nullopt = +infinity
  bool empty = false;
};

Interval conj_interval(const std::vector<std::pair<Rat, Rat>>& affine, const Rat& cell_lo) {
  // constraints alpha + beta*rho >= 0
  Interval iv;
  iv.lo = cell_lo;
  for (const auto& [alpha, beta] : affine) {
    if (beta == 0) {
      if (alpha < 0) {
        iv.empty = true;
        return iv;
      }
    } else if (beta > 0) {
      Rat root = -alpha / beta;
      if (root > iv.lo) iv.lo = root;
    } else {
      Rat root = -alpha / beta;
      if (!iv.hi || root < *iv.hi) iv.hi = root;
    }
  }
  if (iv.hi && *iv.hi < iv.lo) iv.empty = true;
  return iv;
}

// A clause is a union of intervals; the feasible set in a cell is the
// intersection of all clauses.  Returns how far coverage reaches from
// `start` (clamped to `cell_hi`), given that rho = start is feasible-or-sup.
Rat cover_reach(const std::vector<std::vector<Interval>>& clauses, const Rat& start,
                const std::optional<Rat>& cell_hi, bool& reached_end) {
  Rat cur = start;
  for (int guard = 0; guard < 1000; ++guard) {
    std::optional<Rat> step;  // min over clauses of per-clause reach
    bool all_inf = true;
    for (const auto& clause : clauses) {
      // per-clause reach from cur
      std::optional<Rat> reach;
      bool inf = false;
      Rat pos = cur;
      for (int g2 = 0; g2 < 1000; ++g2) {
        std::optional<Rat> best;
        bool binf = false;
        for (const auto& iv : clause) {
          if (iv.empty) continue;
          if (iv.lo <= pos && (!iv.hi || *iv.hi >= pos)) {
            if (!iv.hi) {
              binf = true;
              break;
            }
            if (!best || *iv.hi > *best) best = *iv.hi;
          }
        }
        if (binf) {
          inf = true;
          break;
        }
        if (!best || *best <= pos) {
          reach = pos;
          break;
        }
        pos = *best;
        if (cell_hi && pos >= *cell_hi) {
          reach = pos;
          break;
        }
      }
      if (inf) continue;
      all_inf = false;
      if (!reach) reach = pos;
      if (!step || *reach < *step) step = *reach;
    }
    if (all_inf) {
      reached_end = true;
      return cell_hi ? *cell_hi : cur;  // unbounded within cell
    }
    Rat next = *step;
    if (cell_hi && next >= *cell_hi) {
      reached_end = true;
      return *cell_hi;
    }
    if (next <= cur) {
      reached_end = false;
      return cur;
    }
    cur = next;
  }
  reached_end = false;
  return cur;
}

}  // namespace

std::vector<ConvexPolytope> folded_simplex_pieces(const PrimitiveSemitoricPolygon& p,
                                                  const QVec& vertex, const std::vector<int>& u,
                                                  const Rat& rho) {
  size_t mf = p.cuts.size();
  if (u.size() != mf) throw std::invalid_argument("folded_simplex_pieces: unfolding size");
  std::vector<Rat> lambdas;
  for (const auto& c : p.cuts) lambdas.push_back(c.lambda);

  // frame at the unfolded vertex
  auto edges = vertex_edges_2d(p.polygon, vertex);
  auto enter_slab = [&](const IVec& d) {
    size_t s = 0;
    for (const auto& l : lambdas) {
      if (d[0] > 0 ? l <= vertex[0] : l < vertex[0]) ++s;
    }
    return s;
  };
  std::vector<IVec> legs;
  for (const auto& e : edges) {
    size_t s = enter_slab(e.dir);
    long long c = 0;
    for (size_t j = 0; j < s; ++j) c += u[j];
    legs.push_back({e.dir[0], c * e.dir[0] + e.dir[1]});
  }
  if (det2(legs[0], legs[1]) < 0) std::swap(legs[0], legs[1]);
  if (det2(legs[0], legs[1]) != 1)
    throw std::invalid_argument("no admissible frame at this vertex in this unfolding");
  size_t vslab = 0;
  for (const auto& l : lambdas)
    if (l < vertex[0]) ++vslab;
  AffineMap to_hat = slab_shear(u, lambdas, vslab);
  QVec v_hat = to_hat.apply(vertex);

  Ring sr = simplex_ring(v_hat, legs, rho);
  std::vector<ConvexPolytope> out;
  for (size_t s = 0; s <= mf; ++s) {
    Ring piece = sr;
    if (s > 0) piece = clip_ring(piece, {Int(1), Int(0)}, lambdas[s - 1]);
    if (s < mf) piece = clip_ring(piece, {Int(-1), Int(0)}, -lambdas[s]);
    if (piece.pts.size() < 3) continue;
    AffineMap back = inverse(slab_shear(u, lambdas, s));
    std::vector<QVec> pts;
    for (const auto& q : piece.pts) pts.push_back(back.apply(q));
    ConvexPolytope poly = polytope_from_vertices(2, pts);
    if (!poly.is_empty && !poly.degenerate) out.push_back(std::move(poly));
  }
  return out;
}

std::vector<StSite> packing_sites(const PrimitiveSemitoricPolygon& p) {
  size_t mf = p.cuts.size();
  std::vector<Rat> lambdas;
  for (const auto& c : p.cuts) lambdas.push_back(c.lambda);
  std::vector<StSite> sites;
  for (const auto& info : classify_all(p)) {
    if (info.kind == CornerKind::Fake) continue;
    if (info.kind == CornerKind::NonSmooth)
      throw std::invalid_argument("packing_sites: polygon has a non-smooth corner");
    StSite site;
    site.vertex = info.vertex;
    site.kind = info.kind;
    auto edges = vertex_edges_2d(p.polygon, info.vertex);
    for (unsigned long long mask = 0; mask < (1ull << mf); ++mask) {
      std::vector<int> u(mf);
      for (size_t j = 0; j < mf; ++j) u[j] = (mask >> j) & 1 ? 1 : 0;
      auto enter_slab = [&](const IVec& d) {
        size_t s = 0;
        for (const auto& l : lambdas) {
          if (d[0] > 0 ? l <= info.vertex[0] : l < info.vertex[0]) ++s;
        }
        return s;
      };
      std::vector<IVec> legs;
      for (const auto& e : edges) {
        size_t s = enter_slab(e.dir);
        long long c = 0;
        for (size_t j = 0; j < s; ++j) c += u[j];
        legs.push_back({e.dir[0], c * e.dir[0] + e.dir[1]});
      }
      if (det2(legs[0], legs[1]) < 0) std::swap(legs[0], legs[1]);
      if (det2(legs[0], legs[1]) != 1) continue;
      site.unfoldings.push_back(u);
      site.frames.push_back(legs);
    }
    if (site.unfoldings.empty())
      throw std::logic_error("non-fake corner admits no unfolded frame");
    sites.push_back(std::move(site));
  }
  return sites;
}

namespace {

struct StScanContext {
  const PrimitiveSemitoricPolygon* prim;
  const SemitoricHeights* heights;
  std::vector<Rat> lambdas;
  QVec v_hat;
  std::vector<IVec> legs;  // unfolded frame, ccw
  std::vector<int> u;
  // transformed polygon facets per slab
  std::vector<std::vector<HalfSpace>> hat_facets;
  // forbidden ray base heights in unfolded coordinates
  std::vector<Rat> beta_hat;
};

StScanContext make_context(const PrimitiveSemitoricPolygon& p, const SemitoricHeights& h,
                           const QVec& vertex, const std::vector<IVec>& frame,
                           const std::vector<int>& u) {
  StScanContext ctx;
  ctx.prim = &p;
  ctx.heights = &h;
  for (const auto& c : p.cuts) ctx.lambdas.push_back(c.lambda);
  ctx.legs = frame;
  ctx.u = u;
  size_t vslab = 0;
  for (const auto& l : ctx.lambdas)
    if (l < vertex[0]) ++vslab;
  ctx.v_hat = slab_shear(u, ctx.lambdas, vslab).apply(vertex);
  size_t mf = ctx.lambdas.size();
  for (size_t s = 0; s <= mf; ++s) {
    AffineMap m = slab_shear(u, ctx.lambdas, s);
    AffineMap inv = inverse(m);
    std::vector<HalfSpace> fs;
    for (const auto& f : p.polygon.facets) {
      IVec n2(2, 0);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) n2[j] += f.normal[i] * inv.lin_cols[j][i];
      Rat c2 = f.offset + dot(n2, m.shift);
      fs.push_back(normalized(HalfSpace{n2, c2}));
    }
    ctx.hat_facets.push_back(std::move(fs));
  }
  for (size_t j = 0; j < mf; ++j) {
    auto range = slice_y_range(p.polygon.facets, ctx.lambdas[j]);
    if (!range) throw std::logic_error("cut misses polygon");
    Rat beta = range->first + h.h[j];
    // the line x = lambda_j is shifted by the accumulated shear left of it
    AffineMap m = slab_shear(u, ctx.lambdas, j);  // map valid on slab j, whose right wall is j
    QVec img = m.apply({ctx.lambdas[j], beta});
    ctx.beta_hat.push_back(img[1]);
  }
  return ctx;
}

std::vector<Rat> cell_breakpoints(const StScanContext& ctx) {
  std::vector<Rat> b;
  for (const auto& leg : ctx.legs) {
    if (leg[0] == 0) continue;
    for (const auto& l : ctx.lambdas) {
      Rat r = (l - ctx.v_hat[0]) / Rat(leg[0]);
      if (r > 0) b.push_back(r);
    }
  }
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

// clipped rings of the unfolded simplex per slab at a given radius
std::vector<std::optional<Ring>> slab_rings(const StScanContext& ctx, const Rat& rho) {
  Ring sr = simplex_ring(ctx.v_hat, ctx.legs, rho);
  size_t mf = ctx.lambdas.size();
  std::vector<std::optional<Ring>> out(mf + 1);
  for (size_t s = 0; s <= mf; ++s) {
    Ring piece = sr;
    if (s > 0) piece = clip_ring(piece, {Int(1), Int(0)}, ctx.lambdas[s - 1]);
    if (s < mf) piece = clip_ring(piece, {Int(-1), Int(0)}, -ctx.lambdas[s]);
    if (piece.pts.size() >= 3) out[s] = piece;
  }
  return out;
}

// containment + forbidden-ray margins; one flat vector, structure must agree
// between the two sample radii of a cell
std::vector<Rat> cap_margins(const StScanContext& ctx, const Rat& rho) {
  std::vector<Rat> m;
  auto rings = slab_rings(ctx, rho);
  size_t mf = ctx.lambdas.size();
  for (size_t s = 0; s <= mf; ++s) {
    if (!rings[s]) continue;
    for (const auto& q : rings[s]->pts)
      for (const auto& f : ctx.hat_facets[s]) m.push_back(dot(f.normal, q) - f.offset);
  }
  // slice endpoints on each cut line
  for (size_t j = 0; j < mf; ++j) {
    std::optional<Rat> ylo, yhi;
    for (size_t s : {j, j + 1}) {
      if (!rings[s]) continue;
      for (const auto& q : rings[s]->pts) {
        if (q[0] != ctx.lambdas[j]) continue;
        if (!ylo || q[1] < *ylo) ylo = q[1];
        if (!yhi || q[1] > *yhi) yhi = q[1];
      }
    }
    // does the simplex straddle the line?
    bool left = rings[j].has_value(), right = rings[j + 1].has_value();
    if (left && right && ylo) {
      if (ctx.u[j] == 0) m.push_back(ctx.beta_hat[j] - *yhi);  // ray upward: stay below
      else m.push_back(*ylo - ctx.beta_hat[j]);                // ray downward: stay above
    }
  }
  return m;
}

std::optional<Rat> scan_cap(const StScanContext& ctx) {
  std::vector<Rat> breaks = cell_breakpoints(ctx);
  Rat reach = 0;
  size_t nc = breaks.size() + 1;
  for (size_t ci = 0; ci < nc; ++ci) {
    Rat a = ci == 0 ? Rat(0) : breaks[ci - 1];
    std::optional<Rat> b = ci < breaks.size() ? std::optional<Rat>(breaks[ci]) : std::nullopt;
    Rat r1 = b ? Rat(a + (*b - a) / 3) : Rat(a + 1);
    Rat r2 = b ? Rat(a + 2 * (*b - a) / 3) : Rat(a + 2);
    std::vector<Rat> m1 = cap_margins(ctx, r1);
    std::vector<Rat> m2 = cap_margins(ctx, r2);
    if (m1.size() != m2.size())
      throw std::logic_error("cap scan: sample structure changed inside a cell");
    std::vector<std::pair<Rat, Rat>> affine;
    for (size_t k = 0; k < m1.size(); ++k) {
      Rat beta = (m2[k] - m1[k]) / (r2 - r1);
      Rat alpha = m1[k] - beta * r1;
      affine.push_back({alpha, beta});
    }
    Interval iv = conj_interval(affine, a);
    if (iv.empty || iv.lo > a) return reach;
    if (iv.hi && (!b || *iv.hi < *b)) return std::max(a, *iv.hi);
    if (!b) return std::nullopt;  // feasible through the unbounded cell
    reach = *b;
  }
  return reach;
}

}  // namespace

std::optional<Rat> st_site_cap(const PrimitiveSemitoricPolygon& p, const SemitoricHeights& h,
                               const QVec& vertex, const std::vector<IVec>& frame,
                               const std::vector<int>& u) {
  StScanContext ctx = make_context(p, h, vertex, frame, u);
  return scan_cap(ctx);
}

std::optional<Rat> max_st_radius(const PrimitiveSemitoricPolygon& p, const SemitoricHeights& h,
                                 const QVec& vertex) {
  validate_heights(p, h);
  CornerInfo info = classify_vertex(p, vertex);
  if (info.kind == CornerKind::Fake)
    throw WrongCornerKind("no admissible simplex at a fake corner");
  if (info.kind == CornerKind::NonSmooth)
    throw WrongCornerKind("no admissible simplex at a non-smooth corner");
  auto sites = packing_sites(p);
  for (const auto& site : sites) {
    if (!(site.vertex == vertex)) continue;
    std::optional<Rat> best;
    for (size_t vi = 0; vi < site.unfoldings.size(); ++vi) {
      auto cap = st_site_cap(p, h, vertex, site.frames[vi], site.unfoldings[vi]);
      if (!cap) return std::nullopt;  // unbounded
      if (!best || *cap > *best) best = cap;
    }
    return best;
  }
  throw std::logic_error("max_st_radius: vertex not found among sites");
}

// ---------------------------------------------------------------------------
// Semitoric packing
// ---------------------------------------------------------------------------

namespace {

bool pieces_disjoint(const std::vector<ConvexPolytope>& A, const std::vector<ConvexPolytope>& B) {
  for (const auto& a : A)
    for (const auto& b : B) {
      // separating-axis test on convex polygons
      auto axes_of = [](const ConvexPolytope& p) {
        std::vector<IVec> out;
        for (const auto& f : p.facets) out.push_back(f.normal);
        return out;
      };
      bool sep = false;
      std::vector<IVec> axes = axes_of(a);
      std::vector<IVec> axes_b = axes_of(b);
      axes.insert(axes.end(), axes_b.begin(), axes_b.end());
      for (const auto& ax : axes) {
        Rat max_a = dot(ax, a.vertices[0]), min_a = max_a;
        for (const auto& q : a.vertices) {
          Rat s = dot(ax, q);
          max_a = std::max(max_a, s);
          min_a = std::min(min_a, s);
        }
        Rat max_b = dot(ax, b.vertices[0]), min_b = max_b;
        for (const auto& q : b.vertices) {
          Rat s = dot(ax, q);
          max_b = std::max(max_b, s);
          min_b = std::min(min_b, s);
        }
        if (max_a <= min_b || max_b <= min_a) {
          sep = true;
          break;
        }
      }
      if (!sep) return false;
    }
  return true;
}

// pairwise growth threshold: growing site (context) against fixed pieces
std::optional<Rat> scan_pair_threshold(const StScanContext& ctx,
                                       const std::vector<ConvexPolytope>& fixed) {
  if (fixed.empty()) return std::nullopt;
  std::vector<Rat> breaks = cell_breakpoints(ctx);
  size_t mf = ctx.lambdas.size();

  // fixed pieces grouped by slab
  auto slab_of_piece = [&](const ConvexPolytope& piece) {
    // pieces are slab-confined by construction; identify by a vertex average
    Rat cx = 0;
    for (const auto& q : piece.vertices) cx += q[0];
    cx /= Rat((long)piece.vertices.size());
    size_t s = 0;
    for (const auto& l : ctx.lambdas)
      if (l < cx) ++s;
    return s;
  };
  std::vector<std::vector<const ConvexPolytope*>> by_slab(mf + 1);
  for (const auto& piece : fixed) by_slab[slab_of_piece(piece)].push_back(&piece);

  // folded rings of the growing simplex: apply the inverse shear per slab
  std::vector<AffineMap> fold_back;
  for (size_t s = 0; s <= mf; ++s) fold_back.push_back(inverse(slab_shear(ctx.u, ctx.lambdas, s)));

  Rat reach = 0;
  size_t nc = breaks.size() + 1;
  for (size_t ci = 0; ci < nc; ++ci) {
    Rat a = ci == 0 ? Rat(0) : breaks[ci - 1];
    std::optional<Rat> b = ci < breaks.size() ? std::optional<Rat>(breaks[ci]) : std::nullopt;
    Rat r1 = b ? Rat(a + (*b - a) / 3) : Rat(a + 1);
    Rat r2 = b ? Rat(a + 2 * (*b - a) / 3) : Rat(a + 2);
    auto rings1 = slab_rings(ctx, r1);
    auto rings2 = slab_rings(ctx, r2);

    std::vector<std::vector<Interval>> clauses;
    bool cell_infeasible = false;
    for (size_t s = 0; s <= mf && !cell_infeasible; ++s) {
      if (by_slab[s].empty()) continue;
      if (!rings1[s] != !rings2[s])
        throw std::logic_error("pair scan: piece presence changed inside a cell");
      if (!rings1[s]) continue;  // simplex absent from this slab: no constraint
      if (rings1[s]->pts.size() != rings2[s]->pts.size())
        throw std::logic_error("pair scan: ring structure changed inside a cell");
      size_t npts = rings1[s]->pts.size();
      // folded vertices, affine in rho
      std::vector<std::pair<QVec, QVec>> folded(npts);
      for (size_t i = 0; i < npts; ++i)
        folded[i] = {fold_back[s].apply(rings1[s]->pts[i]), fold_back[s].apply(rings2[s]->pts[i])};
      for (const ConvexPolytope* q : by_slab[s]) {
        // axes: facet normals of the fixed piece and of the folded simplex piece
        std::set<IVec> axes;
        for (const auto& f : q->facets) axes.insert(f.normal);
        for (size_t i = 0; i < npts; ++i) {
          // edge (i, i+1) direction at sample 1 (directions are cell-constant)
          const QVec& p0 = folded[i].first;
          const QVec& p1 = folded[(i + 1) % npts].first;
          QVec d = {p1[0] - p0[0], p1[1] - p0[1]};
          if (d[0] == 0 && d[1] == 0) continue;
          Int scale = lcm(denominator(d[0]), denominator(d[1]));
          IVec di = {numerator(Rat(d[0] * scale)), numerator(Rat(d[1] * scale))};
          axes.insert(make_primitive(IVec{-di[1], di[0]}));
        }
        std::vector<Interval> clause;
        for (const auto& ax : axes) {
          for (int sgn = 0; sgn < 2; ++sgn) {
            IVec aa = sgn ? neg(ax) : ax;
            Rat min_q = dot(aa, q->vertices[0]);
            for (const auto& qq : q->vertices) min_q = std::min(min_q, dot(aa, qq));
            // require <aa, p(rho)> <= min_q for all folded vertices
            std::vector<std::pair<Rat, Rat>> affine;
            for (size_t i = 0; i < npts; ++i) {
              Rat f1 = min_q - dot(aa, folded[i].first);
              Rat f2 = min_q - dot(aa, folded[i].second);
              Rat beta = (f2 - f1) / (r2 - r1);
              Rat alpha = f1 - beta * r1;
              affine.push_back({alpha, beta});
            }
            Interval iv = conj_interval(affine, a);
            if (!iv.empty) clause.push_back(iv);
          }
        }
        if (clause.empty()) {
          cell_infeasible = true;
          break;
        }
        clauses.push_back(std::move(clause));
      }
    }
    if (cell_infeasible) return reach;
    if (clauses.empty()) {
      if (!b) return std::nullopt;
      reach = *b;
      continue;
    }
    bool to_end = false;
    Rat got = cover_reach(clauses, a, b, to_end);
    if (!to_end) return got;
    if (!b) return std::nullopt;
    reach = *b;
  }
  return reach;
}

}  // namespace

PackingCertificate pack_semitoric(const SemitoricPolygonOrbit& orbit, const SemitoricHeights& h,
                                  const Rat& tol) {
  const PrimitiveSemitoricPolygon& p = orbit.canonical;
  if (p.complexity() == 0 && p.polygon.bounded) {
    DelzantPolytope d = require_delzant(p.polygon);
    return pack_toric(d, tol);
  }
  validate_heights(p, h);
  auto sites = packing_sites(p);
  int n = (int)sites.size();

  // per-site variants with caps
  struct Variant {
    std::vector<int> u;
    std::vector<IVec> frame;
    Rat cap;
  };
  std::vector<std::vector<Variant>> variants(n);
  PackingCertificate cert;
  cert.tolerance = tol;
  for (int i = 0; i < n; ++i) {
    for (size_t vi = 0; vi < sites[i].unfoldings.size(); ++vi) {
      auto cap = st_site_cap(p, h, sites[i].vertex, sites[i].frames[vi], sites[i].unfoldings[vi]);
      if (!cap) {
        cert.unbounded = true;
        return cert;
      }
      variants[i].push_back(Variant{sites[i].unfoldings[vi], sites[i].frames[vi], *cap});
    }
  }

  long long assignment_count = 1;
  for (int i = 0; i < n; ++i) {
    assignment_count *= (long long)variants[i].size();
    if (assignment_count > 64)
      throw std::runtime_error("pack_semitoric: too many unfolding assignments for desk scale");
  }

  std::optional<Rat> volcap;
  if (p.polygon.bounded) volcap = volume(p.polygon);

  SolveResult best;
  best.lower = -1;
  std::vector<int> best_assign;
  Rat upper = 0;

  std::vector<int> choice(n, 0);
  for (long long ai = 0; ai < assignment_count; ++ai) {
    long long rem = ai;
    for (int i = 0; i < n; ++i) {
      choice[i] = (int)(rem % variants[i].size());
      rem /= variants[i].size();
    }
    // contexts for the chosen unfoldings
    std::vector<StScanContext> ctxs;
    for (int i = 0; i < n; ++i)
      ctxs.push_back(
          make_context(p, h, sites[i].vertex, variants[i][choice[i]].frame, variants[i][choice[i]].u));

    auto pieces_at = [&](int i, const Rat& rho) {
      return folded_simplex_pieces(p, sites[i].vertex, variants[i][choice[i]].u, rho);
    };

    SiteModel model;
    model.site_count = n;
    model.dim = 2;
    model.volume_cap = volcap;
    model.max_radius = [&](int i) -> std::optional<Rat> { return variants[i][choice[i]].cap; };
    model.growth_threshold = [&](int i, const std::vector<Rat>& fixed) -> std::optional<Rat> {
      std::vector<ConvexPolytope> others;
      for (int j = 0; j < n; ++j) {
        if (j == i || fixed[j] == 0) continue;
        auto ps = pieces_at(j, fixed[j]);
        others.insert(others.end(), ps.begin(), ps.end());
      }
      if (others.empty()) return std::nullopt;
      return scan_pair_threshold(ctxs[i], others);
    };
    model.pair_disjoint = [&](int i, const Rat& ri, int j, const Rat& rj) {
      return pieces_disjoint(pieces_at(i, ri), pieces_at(j, rj));
    };
    model.pair_objective_cap = [&](int i, int j, const Rat& lo_i, const Rat& hi_i,
                                   const Rat& lo_j, const Rat& hi_j) -> std::optional<Rat> {
      // single-slab pairs reduce to the plain simplex analysis
      auto single_slab = [&](int s) {
        const auto& var = variants[s][choice[s]];
        Rat lo_x = sites[s].vertex[0], hi_x = lo_x;
        for (const auto& leg : var.frame) {
          Rat tipx = sites[s].vertex[0] + var.cap * Rat(leg[0]);
          lo_x = std::min(lo_x, tipx);
          hi_x = std::max(hi_x, tipx);
        }
        for (const auto& c : p.cuts)
          if (lo_x < c.lambda && c.lambda < hi_x) return false;
        return true;
      };
      if (!single_slab(i) || !single_slab(j)) return std::nullopt;
      // fall back to the toric pairwise cap on the (unsheared) frames
      const auto& fi = variants[i][choice[i]].frame;
      const auto& fj = variants[j][choice[j]].frame;
      auto axes = separation_axes(fi, fj, 2);
      std::optional<Rat> bestv;
      auto consider = [&](const Rat& x, const Rat& y) {
        Rat val = x * x / 2 + y * y / 2;
        if (!bestv || val > *bestv) bestv = val;
      };
      auto slope = [&](const IVec& aa, const std::vector<IVec>& legs, bool maximal) {
        Rat s = 0;
        for (const auto& uu : legs) {
          Rat t = Rat(aa[0]) * Rat(uu[0]) + Rat(aa[1]) * Rat(uu[1]);
          if (maximal ? t > s : t < s) s = t;
        }
        return s;
      };
      for (const auto& base : axes) {
        for (int sgn = 0; sgn < 2; ++sgn) {
          IVec aa = sgn ? neg(base) : base;
          Rat si = slope(aa, fi, true);
          Rat tj = slope(aa, fj, false);
          Rat gamma = dot(aa, sites[j].vertex) - dot(aa, sites[i].vertex);
          auto ok = [&](const Rat& x, const Rat& y) { return x * si - y * tj <= gamma; };
          if (ok(hi_i, hi_j)) {
            consider(hi_i, hi_j);
            continue;
          }
          if (!ok(lo_i, lo_j)) continue;
          for (int corner = 0; corner < 4; ++corner) {
            Rat x = (corner & 1) ? hi_i : lo_i;
            Rat y = (corner & 2) ? hi_j : lo_j;
            if (ok(x, y)) consider(x, y);
          }
          if (si > 0)
            for (const Rat& y : {lo_j, hi_j}) {
              Rat x = (gamma + y * tj) / si;
              if (x >= lo_i && x <= hi_i) consider(x, y);
            }
          if (tj < 0)
            for (const Rat& x : {lo_i, hi_i}) {
              Rat y = (x * si - gamma) / -tj;
              if (y >= lo_j && y <= hi_j) consider(x, y);
            }
        }
      }
      return bestv;
    };

    SolveResult sr = solve_packing(model, tol);
    if (sr.unbounded) {
      cert.unbounded = true;
      return cert;
    }
    upper = std::max(upper, sr.upper);
    if (sr.lower > best.lower) {
      best = sr;
      best_assign = choice;
    }
  }

  cert.best.radii = best.best;
  cert.lower = best.lower;
  cert.upper = upper;
  cert.nodes = best.nodes;
  // kernel verification of the winning configuration
  std::vector<std::vector<ConvexPolytope>> pieces(n);
  for (int i = 0; i < n; ++i) {
    if (best.best[i] == 0) {
      cert.witness.contained.push_back(true);
      continue;
    }
    const std::vector<int>& ui = variants[i][best_assign[i]].u;
    pieces[i] = folded_simplex_pieces(p, sites[i].vertex, ui, best.best[i]);
    bool inside = true;
    for (const auto& piece : pieces[i])
      for (const auto& q : piece.vertices) inside = inside && p.polygon.contains(q);
    // forbidden-ray check: the open simplex must miss each excluded cut ray
    for (size_t j = 0; j < p.cuts.size() && inside; ++j) {
      const Rat& lam = p.cuts[j].lambda;
      bool left = false, right = false;
      std::optional<Rat> ylo, yhi;
      for (const auto& piece : pieces[i]) {
        for (const auto& q : piece.vertices) {
          if (q[0] < lam) left = true;
          if (q[0] > lam) right = true;
          if (q[0] == lam) {
            if (!ylo || q[1] < *ylo) ylo = q[1];
            if (!yhi || q[1] > *yhi) yhi = q[1];
          }
        }
      }
      if (!(left && right) || !ylo) continue;  // no interior crossing
      auto range = slice_y_range(p.polygon.facets, lam);
      Rat beta = range->first + h.h[j];
      if (ui[j] == 0 ? *yhi > beta : *ylo < beta) inside = false;
    }
    cert.witness.contained.push_back(inside);
    if (!inside) cert.witness.feasible = false;
  }
  for (int i = 0; i < n; ++i) {
    if (best.best[i] == 0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (best.best[j] == 0) continue;
      PairVerdict pv;
      pv.i = i;
      pv.j = j;
      pv.overlap_volume = 0;
      for (const auto& a : pieces[i])
        for (const auto& b : pieces[j]) pv.overlap_volume += intersection_volume(a, b);
      pv.disjoint = pv.overlap_volume == 0;
      if (!pv.disjoint) cert.witness.feasible = false;
      cert.witness.pairs.push_back(std::move(pv));
    }
  }
  if (!cert.witness.feasible)
    throw std::logic_error("semitoric packing certificate failed kernel verification");
  return cert;
}

RadicalInterval capacity_ST(const SemitoricPolygonOrbit& orbit, const SemitoricHeights& h,
                            const Rat& tol) {
  PackingCertificate cert = pack_semitoric(orbit, h, tol);
  return capacity_T_from_pack(cert, 2);
}

Radical capacity_ST_rad(const SemitoricPolygonOrbit& orbit, const SemitoricHeights& h) {
  const PrimitiveSemitoricPolygon& p = orbit.canonical;
  if (p.complexity() > 0) validate_heights(p, h);
  Rat best = 0;
  for (const auto& site : packing_sites(p)) {
    auto cap = max_st_radius(p, h, site.vertex);
    if (!cap) return Radical::infinite();
    best = std::max(best, *cap);
  }
  return Radical{best, 2};
}

// ---------------------------------------------------------------------------
// Smooth angles
// ---------------------------------------------------------------------------

std::vector<SmoothAngle> smooth_angles(const Int& bound) {
  if (bound < 1) throw std::invalid_argument("smooth_angles: bound must be >= 1");
  long b = (long)bound;
  long r = 0;
  while ((r + 1) * (r + 1) <= b) ++r;
  std::vector<IVec> prim;
  for (long x = -r; x <= r; ++x)
    for (long y = -r; y <= r; ++y) {
      if (x == 0 && y == 0) continue;
      if (x * x + y * y > b) continue;
      IVec v = {Int(x), Int(y)};
      if (is_primitive(v)) prim.push_back(v);
    }
  std::map<std::pair<int, Rat>, SmoothAngle> found;  // key: (-cos_sign, sorted cos value proxy)
  for (const auto& u : prim)
    for (const auto& w : prim) {
      if (det2(u, w) != 1) continue;
      Rat nu = Rat(u[0] * u[0] + u[1] * u[1]);
      Rat nw = Rat(w[0] * w[0] + w[1] * w[1]);
      Int ip = u[0] * w[0] + u[1] * w[1];
      int s = ip < 0 ? -1 : (ip > 0 ? 1 : 0);
      Rat cos2 = Rat(ip * ip) / (nu * nw);
      // ascending angle == descending signed cos; key orders by angle
      Rat proxy = s == 0 ? Rat(0) : Rat(s) * cos2;
      std::pair<int, Rat> key = {-s, -proxy};
      if (found.count(key)) continue;
      SmoothAngle ang;
      ang.u = u;
      ang.w = w;
      ang.cos_sign = s;
      ang.cos2 = cos2;
      ang.sin2 = Rat(1) / (nu * nw);
      if (cos2 == 0) ang.label = "pi/2";
      else if (cos2 == Rat(1, 2) && s > 0) ang.label = "pi/4";
      else if (cos2 == Rat(1, 2) && s < 0) ang.label = "3pi/4";
      else {
        std::string root = "sqrt(" + format_rat(cos2) + ")";
        ang.label = std::string("acos(") + (s < 0 ? "-" : "") + root + ")";
      }
      found[key] = std::move(ang);
    }
  std::vector<SmoothAngle> out;
  for (auto& [k, v] : found) out.push_back(std::move(v));
  return out;
}

}  // namespace polypack
