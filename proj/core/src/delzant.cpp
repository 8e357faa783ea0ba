#include "polypack/delzant.hpp"

#include <algorithm>
#include <sstream>

namespace polypack {

namespace {

std::string point_str(const QVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_rat(v[i]);
  }
  return s + ")";
}

}  // namespace

int DelzantPolytope::vertex_index(const QVec& v) const {
  for (size_t i = 0; i < body.vertices.size(); ++i)
    if (body.vertices[i] == v) return (int)i;
  return -1;
}

std::string DelzantViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case NotBounded: os << "not-bounded"; break;
    case NotFullDim: os << "not-full-dimensional"; break;
    case NotSimple: os << "not-simple at vertex " << point_str(vertex); break;
    case NotSmooth:
      os << "not-smooth at vertex " << point_str(vertex) << " (frame det " << det_value << ")";
      break;
    case NotRational: os << "not-rational"; break;
  }
  return os.str();
}

std::vector<VertexEdges> polytope_edges(const ConvexPolytope& body) {
  int n = body.dim;
  std::vector<VertexEdges> out;
  for (const auto& v : body.vertices) {
    VertexEdges ve;
    ve.vertex = v;
    for (const auto& w : body.vertices) {
      if (w == v) continue;
      // [v, w] is an edge iff the facets active on both span a rank n-1
      // normal space and no third vertex sits strictly between on the segment.
      std::vector<QVec> active_normals;
      for (const auto& f : body.facets)
        if (dot(f.normal, v) == f.offset && dot(f.normal, w) == f.offset) {
          QVec nq(f.normal.size());
          for (size_t j = 0; j < nq.size(); ++j) nq[j] = Rat(f.normal[j]);
          active_normals.push_back(std::move(nq));
        }
      if ((int)active_normals.size() < n - 1) continue;
      QVec origin(n, Rat(0));
      active_normals.push_back(origin);  // affine_rank takes points; use origin base
      if (affine_rank(active_normals) != n - 1) continue;
      // skip if another vertex lies on the open segment (w is then not the neighbour)
      IVec dir = primitive_direction(v, w);
      bool nearer = false;
      for (const auto& u : body.vertices) {
        if (u == v || u == w) continue;
        // u on segment iff u = v + t*(w - v), 0 < t < 1
        bool on = true;
        std::optional<Rat> t;
        for (int j = 0; j < n && on; ++j) {
          Rat dv = w[j] - v[j];
          Rat du = u[j] - v[j];
          if (dv == 0) {
            if (du != 0) on = false;
          } else {
            Rat tj = du / dv;
            if (!t) t = tj;
            else if (*t != tj) on = false;
          }
        }
        if (on && t && *t > 0 && *t < 1) {
          nearer = true;
          break;
        }
      }
      if (nearer) continue;
      // lattice length: w = v + len * dir
      Rat len = 0;
      for (int j = 0; j < n; ++j)
        if (dir[j] != 0) {
          len = (w[j] - v[j]) / Rat(dir[j]);
          break;
        }
      ve.neighbours.push_back(w);
      ve.dirs.push_back(dir);
      ve.lengths.push_back(len);
    }
    out.push_back(std::move(ve));
  }
  return out;
}

DelzantResult validate_delzant(const ConvexPolytope& body) {
  if (!body.bounded || body.is_empty)
    return DelzantViolation{DelzantViolation::NotBounded, {}, 0};
  if (body.degenerate || affine_rank(body.vertices) < body.dim)
    return DelzantViolation{DelzantViolation::NotFullDim, {}, 0};
  // facet normals are integral by construction; rationality holds by type
  DelzantPolytope out;
  out.body = body;
  for (const auto& ve : polytope_edges(body)) {
    if ((int)ve.dirs.size() != body.dim)
      return DelzantViolation{DelzantViolation::NotSimple, ve.vertex, 0};
    Int d = det(ve.dirs);
    if (d != 1 && d != -1)
      return DelzantViolation{DelzantViolation::NotSmooth, ve.vertex, d};
    VertexFrame fr;
    fr.vertex = ve.vertex;
    fr.edge_dirs = ve.dirs;
    fr.edge_lengths = ve.lengths;
    out.frames.push_back(std::move(fr));
  }
  return out;
}

DelzantPolytope require_delzant(const ConvexPolytope& body) {
  DelzantResult r = validate_delzant(body);
  if (auto* viol = std::get_if<DelzantViolation>(&r))
    throw std::invalid_argument("not a Delzant polytope: " + viol->describe());
  return std::get<DelzantPolytope>(std::move(r));
}

IVec chop_functional(const VertexFrame& frame) {
  // solve U^T phi = (1,...,1); U unimodular so phi is integral
  int n = (int)frame.edge_dirs.size();
  std::vector<QVec> cols(n, QVec(n));
  for (int i = 0; i < n; ++i)  // row i of the system is edge_dirs[i]^T
    for (int j = 0; j < n; ++j) cols[j][i] = Rat(frame.edge_dirs[i][j]);
  Rat d = det_q(cols);
  IVec phi(n);
  for (int j = 0; j < n; ++j) {
    std::vector<QVec> mod = cols;
    for (int i = 0; i < n; ++i) mod[j][i] = 1;
    Rat x = det_q(mod) / d;
    if (denominator(x) != 1) throw std::logic_error("chop functional not integral");
    phi[j] = numerator(x);
  }
  return phi;
}

ChopResult corner_chop(const DelzantPolytope& p, const QVec& vertex, const Rat& eps) {
  int vi = p.vertex_index(vertex);
  if (vi < 0) throw std::invalid_argument("corner_chop: not a vertex: " + point_str(vertex));
  if (eps <= 0) throw EpsilonTooLarge("corner_chop: eps must be positive");
  const VertexFrame& fr = p.frames[vi];
  for (const Rat& len : fr.edge_lengths)
    if (eps >= len)
      throw EpsilonTooLarge("corner_chop: eps " + format_rat(eps) +
                            " not below adjacent edge length " + format_rat(len));
  IVec phi = chop_functional(fr);
  Rat base = dot(phi, vertex);
  // every other vertex must stay strictly beyond the cut
  for (const auto& w : p.body.vertices) {
    if (w == vertex) continue;
    if (dot(phi, w) - base <= eps)
      throw EpsilonTooLarge("corner_chop: eps reaches vertex " + point_str(w));
  }
  std::vector<HalfSpace> hs = p.body.facets;
  hs.push_back(normalized(HalfSpace{phi, base + eps}));
  ConvexPolytope chopped = polytope_from_halfspaces(p.body.dim, std::move(hs));

  int n = p.body.dim;
  size_t expected = p.body.vertices.size() - 1 + (size_t)n;
  if (chopped.vertices.size() != expected)
    throw EpsilonTooLarge("corner_chop: cut does not add exactly one face");
  // removed volume is the radius-eps corner simplex
  Rat removed = symdiff_volume(p.body, chopped);
  Rat expect_vol = 1;
  for (int i = 1; i <= n; ++i) expect_vol = expect_vol * eps / i;
  if (removed != expect_vol) throw std::logic_error("corner_chop: removed volume mismatch");

  ChopResult out;
  out.poly = require_delzant(chopped);
  for (const auto& w : p.body.vertices) {
    if (w == vertex) continue;
    out.vertex_map[w] = {w};
  }
  std::vector<QVec> new_face;
  for (const auto& w : out.poly.body.vertices)
    if (dot(phi, w) == base + eps) new_face.push_back(w);
  out.vertex_map[vertex] = new_face;
  return out;
}

Rat metric_dP(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (a.dim != b.dim) throw std::invalid_argument("d_P: dimension mismatch");
  return symdiff_volume(a, b);
}

ConvexPolytope admissible_simplex(const VertexFrame& frame, const Rat& rho, int dim) {
  if (rho < 0) throw std::invalid_argument("simplex radius must be nonnegative");
  std::vector<QVec> pts = {frame.vertex};
  for (const auto& u : frame.edge_dirs) {
    QVec tip(frame.vertex);
    for (int j = 0; j < dim; ++j) tip[j] += rho * Rat(u[j]);
    pts.push_back(std::move(tip));
  }
  return polytope_from_vertices(dim, std::move(pts));
}

ConvexPolytope admissible_simplex(const DelzantPolytope& p, const QVec& vertex, const Rat& rho) {
  int vi = p.vertex_index(vertex);
  if (vi < 0) throw std::invalid_argument("admissible_simplex: not a vertex");
  return admissible_simplex(p.frames[vi], rho, p.body.dim);
}

Rat max_admissible_radius(const DelzantPolytope& p, const QVec& vertex) {
  int vi = p.vertex_index(vertex);
  if (vi < 0) throw std::invalid_argument("max_admissible_radius: not a vertex");
  const VertexFrame& fr = p.frames[vi];
  std::optional<Rat> best;
  // containment of the simplex is containment of its leg tips, linear in rho
  for (const auto& f : p.body.facets) {
    Rat margin = dot(f.normal, vertex) - f.offset;  // >= 0
    for (const auto& u : fr.edge_dirs) {
      Rat slope = 0;
      for (size_t j = 0; j < u.size(); ++j) slope += Rat(f.normal[j]) * Rat(u[j]);
      if (slope >= 0) continue;
      Rat bound = margin / -slope;
      if (!best || bound < *best) best = bound;
    }
  }
  if (!best) throw std::logic_error("max_admissible_radius: no facet bounds the simplex");
  return *best;
}

}  // namespace polypack
