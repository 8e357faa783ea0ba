#include "polypack/geometry.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace polypack {

Int ivec_content(const IVec& v) {
  Int g = 0;
  for (const Int& c : v) g = gcd(g, c < 0 ? Int(-c) : c);
  return g;
}

IVec make_primitive(const IVec& v) {
  Int g = ivec_content(v);
  if (g == 0) throw std::invalid_argument("zero vector has no primitive form");
  IVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
  return out;
}

bool is_primitive(const IVec& v) { return ivec_content(v) == 1; }

IVec neg(const IVec& v) {
  IVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

Rat dot(const IVec& n, const QVec& x) {
  Rat s = 0;
  for (size_t i = 0; i < n.size(); ++i) s += Rat(n[i]) * x[i];
  return s;
}

Rat dot_q(const QVec& a, const QVec& b) {
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

namespace {

template <typename T>
T det_generic(const std::vector<std::vector<T>>& cols) {
  size_t n = cols.size();
  if (n == 0) return T(1);
  if (n == 1) return cols[0][0];
  if (n == 2) return cols[0][0] * cols[1][1] - cols[1][0] * cols[0][1];
  if (n == 3) {
    return cols[0][0] * (cols[1][1] * cols[2][2] - cols[2][1] * cols[1][2]) -
           cols[1][0] * (cols[0][1] * cols[2][2] - cols[2][1] * cols[0][2]) +
           cols[2][0] * (cols[0][1] * cols[1][2] - cols[1][1] * cols[0][2]);
  }
  T acc(0);
  for (size_t j = 0; j < n; ++j) {
    std::vector<std::vector<T>> minor;
    for (size_t k = 0; k < n; ++k) {
      if (k == j) continue;
      std::vector<T> col(cols[k].begin() + 1, cols[k].end());
      minor.push_back(std::move(col));
    }
    T term = cols[j][0] * det_generic(minor);
    acc += (j % 2 == 0) ? term : -term;
  }
  return acc;
}

}  // namespace

Int det(const std::vector<IVec>& cols) {
  for (const auto& c : cols)
    if (c.size() != cols.size()) throw std::invalid_argument("det: dimension mismatch");
  return det_generic<Int>(cols);
}

Rat det_q(const std::vector<QVec>& cols) {
  for (const auto& c : cols)
    if (c.size() != cols.size()) throw std::invalid_argument("det: dimension mismatch");
  return det_generic<Rat>(cols);
}

IVec primitive_direction(const QVec& from, const QVec& to) {
  size_t n = from.size();
  Int scale = 1;
  for (size_t i = 0; i < n; ++i) scale = lcm(scale, denominator(Rat(to[i] - from[i])));
  IVec v(n);
  for (size_t i = 0; i < n; ++i) {
    Rat d = (to[i] - from[i]) * scale;
    v[i] = numerator(d);
  }
  return make_primitive(v);
}

HalfSpace normalized(HalfSpace h) {
  Int g = ivec_content(h.normal);
  if (g == 0) throw std::invalid_argument("halfspace with zero normal");
  if (g != 1) {
    for (auto& c : h.normal) c /= g;
    h.offset /= Rat(g);
  }
  return h;
}

QVec AffineMap::apply(const QVec& x) const {
  size_t n = shift.size();
  QVec out(shift);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) out[i] += Rat(lin_cols[j][i]) * x[j];
  return out;
}

IVec AffineMap::apply_dir(const IVec& d) const {
  size_t n = d.size();
  IVec out(n, 0);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) out[i] += lin_cols[j][i] * d[j];
  return out;
}

AffineMap AffineMap::identity(int dim) {
  AffineMap m;
  m.shift.assign(dim, Rat(0));
  m.lin_cols.assign(dim, IVec(dim, 0));
  for (int i = 0; i < dim; ++i) m.lin_cols[i][i] = 1;
  return m;
}

AffineMap inverse(const AffineMap& m) {
  size_t n = m.shift.size();
  Int d = det(m.lin_cols);
  if (d != 1 && d != -1) throw std::invalid_argument("AffineMap must be unimodular");
  AffineMap inv;
  inv.lin_cols.assign(n, IVec(n, 0));
  if (n == 1) {
    inv.lin_cols[0][0] = d;
  } else if (n == 2) {
    const auto& c = m.lin_cols;
    // adj([[a,c],[b,d]]) with columns (a,b),(c,d)
    inv.lin_cols[0] = {c[1][1] * d, -c[0][1] * d};
    inv.lin_cols[1] = {-c[1][0] * d, c[0][0] * d};
  } else if (n == 3) {
    const auto& c = m.lin_cols;
    auto cof = [&](int i, int j) {  // cofactor of entry (i,j) of the matrix
      int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
      int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      if (r0 > r1) std::swap(r0, r1);
      if (c0 > c1) std::swap(c0, c1);
      Int minor = c[c0][r0] * c[c1][r1] - c[c1][r0] * c[c0][r1];
      return ((i + j) % 2 == 0) ? minor : Int(-minor);
    };
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) inv.lin_cols[j][i] = cof(j, i) * d;  // adj^T / det
  } else {
    throw std::invalid_argument("AffineMap inverse: unsupported dimension");
  }
  QVec ms(n, Rat(0));
  inv.shift = ms;
  QVec t = inv.apply(m.shift);
  for (size_t i = 0; i < n; ++i) inv.shift[i] = -t[i];
  return inv;
}

bool ConvexPolytope::contains(const QVec& x) const {
  if (is_empty) return false;
  for (const auto& h : facets)
    if (dot(h.normal, x) < h.offset) return false;
  return true;
}

int affine_rank(const std::vector<QVec>& pts) {
  if (pts.empty()) return -1;
  size_t n = pts[0].size();
  std::vector<QVec> rows;
  for (size_t i = 1; i < pts.size(); ++i) {
    QVec r(n);
    for (size_t j = 0; j < n; ++j) r[j] = pts[i][j] - pts[0][j];
    rows.push_back(std::move(r));
  }
  // Gaussian elimination
  int rank = 0;
  for (size_t col = 0; col < n && rank < (int)rows.size(); ++col) {
    size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i) {
      if ((int)i == rank || rows[i][col] == 0) continue;
      Rat f = rows[i][col] / rows[rank][col];
      for (size_t j = col; j < n; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

namespace {

std::vector<QVec> dedupe_sorted(std::vector<QVec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Hyperplane through dim points, if unique: returns (normal, offset) with
// integer primitive normal, unoriented.
std::optional<HalfSpace> hyperplane_through(const std::vector<QVec>& pts) {
  size_t n = pts[0].size();
  // normal is in the kernel of the (n-1) x n difference matrix; compute via
  // cofactors of the matrix whose rows are pts[i] - pts[0].
  std::vector<QVec> diffs;
  for (size_t i = 1; i < n; ++i) {
    QVec d(n);
    for (size_t j = 0; j < n; ++j) d[j] = pts[i][j] - pts[0][j];
    diffs.push_back(std::move(d));
  }
  QVec normal(n, Rat(0));
  if (n == 1) {
    normal[0] = 1;
  } else if (n == 2) {
    normal[0] = -diffs[0][1];
    normal[1] = diffs[0][0];
  } else if (n == 3) {
    normal[0] = diffs[0][1] * diffs[1][2] - diffs[0][2] * diffs[1][1];
    normal[1] = diffs[0][2] * diffs[1][0] - diffs[0][0] * diffs[1][2];
    normal[2] = diffs[0][0] * diffs[1][1] - diffs[0][1] * diffs[1][0];
  } else {
    throw std::invalid_argument("hyperplane_through: unsupported dimension");
  }
  bool zero = true;
  for (const auto& c : normal) zero = zero && c == 0;
  if (zero) return std::nullopt;
  Int scale = 1;
  for (const auto& c : normal) scale = lcm(scale, denominator(c));
  IVec in(n);
  for (size_t j = 0; j < n; ++j) in[j] = numerator(Rat(normal[j] * scale));
  in = make_primitive(in);
  Rat off = dot(in, pts[0]);
  return HalfSpace{in, off};
}

// Solve <n_i, x> = c_i for dim halfspace boundaries via Cramer's rule.
std::optional<QVec> vertex_of(const std::vector<const HalfSpace*>& hs, int dim) {
  std::vector<QVec> cols(dim, QVec(dim));
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) cols[j][i] = Rat(hs[i]->normal[j]);
  Rat d = det_q(cols);
  if (d == 0) return std::nullopt;
  QVec x(dim);
  for (int j = 0; j < dim; ++j) {
    std::vector<QVec> mod = cols;
    for (int i = 0; i < dim; ++i) mod[j][i] = hs[i]->offset;
    x[j] = det_q(mod) / d;
  }
  return x;
}

template <typename F>
void for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<HalfSpace> dedupe_halfspaces(std::vector<HalfSpace> hs) {
  std::sort(hs.begin(), hs.end(), [](const HalfSpace& a, const HalfSpace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset > b.offset;  // tightest first
  });
  std::vector<HalfSpace> out;
  for (auto& h : hs)
    if (out.empty() || out.back().normal != h.normal) out.push_back(std::move(h));
  return out;
}

// Restrict all other halfspaces to the boundary line of `f` (2D): essential
// iff a 1D interval with nonempty interior survives.
bool facet_essential_2d(const std::vector<HalfSpace>& hs, size_t fi) {
  const HalfSpace& f = hs[fi];
  // point on the line and direction along it
  QVec p0(2);
  if (f.normal[0] != 0) {
    p0 = {f.offset / Rat(f.normal[0]), Rat(0)};
  } else {
    p0 = {Rat(0), f.offset / Rat(f.normal[1])};
  }
  QVec d = {Rat(-f.normal[1]), Rat(f.normal[0])};
  std::optional<Rat> lo, hi;
  for (size_t i = 0; i < hs.size(); ++i) {
    if (i == fi) continue;
    Rat slope = dot(hs[i].normal, d);
    Rat base = dot(hs[i].normal, p0) - hs[i].offset;  // base + t*slope >= 0
    if (slope == 0) {
      if (base < 0) return false;
    } else if (slope > 0) {
      Rat bound = -base / slope;
      if (!lo || bound > *lo) lo = bound;
    } else {
      Rat bound = -base / slope;
      if (!hi || bound < *hi) hi = bound;
    }
  }
  if (lo && hi) return *lo < *hi;
  return true;  // a ray or full line of the boundary survives
}

std::vector<IVec> recession_candidates(const std::vector<HalfSpace>& hs, int dim) {
  std::vector<IVec> cand;
  auto add = [&](IVec v) {
    bool zero = true;
    for (const auto& c : v) zero = zero && c == 0;
    if (zero) return;
    v = make_primitive(v);
    cand.push_back(v);
    cand.push_back(neg(v));
  };
  if (dim == 2) {
    add({Int(1), Int(0)});
    add({Int(0), Int(1)});
    for (const auto& h : hs) {
      add(h.normal);
      add({-h.normal[1], h.normal[0]});
    }
  } else if (dim == 3) {
    add({Int(1), Int(0), Int(0)});
    add({Int(0), Int(1), Int(0)});
    add({Int(0), Int(0), Int(1)});
    auto cross = [](const IVec& a, const IVec& b) {
      return IVec{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    };
    for (size_t i = 0; i < hs.size(); ++i) {
      add(hs[i].normal);
      for (size_t j = i + 1; j < hs.size(); ++j) {
        IVec c = cross(hs[i].normal, hs[j].normal);
        bool zero = c[0] == 0 && c[1] == 0 && c[2] == 0;
        if (!zero) add(c);
      }
      for (const IVec& e : {IVec{Int(1), Int(0), Int(0)}, IVec{Int(0), Int(1), Int(0)},
                            IVec{Int(0), Int(0), Int(1)}}) {
        IVec c = cross(hs[i].normal, e);
        bool zero = c[0] == 0 && c[1] == 0 && c[2] == 0;
        if (!zero) add(c);
      }
    }
  } else {
    throw std::invalid_argument("recession analysis: unsupported dimension");
  }
  return cand;
}

bool has_recession_ray(const std::vector<HalfSpace>& hs, int dim) {
  if (hs.empty()) return true;
  for (const IVec& d : recession_candidates(hs, dim)) {
    bool inside = true;
    for (const auto& h : hs) {
      Rat s = 0;
      for (int i = 0; i < dim; ++i) s += Rat(h.normal[i]) * Rat(d[i]);
      if (s < 0) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

}  // namespace

bool recession_cone_contains_vertical(const std::vector<HalfSpace>& hs) {
  for (const IVec d : {IVec{Int(0), Int(1)}, IVec{Int(0), Int(-1)}}) {
    bool inside = true;
    for (const auto& h : hs) {
      Rat s = Rat(h.normal[0]) * Rat(d[0]) + Rat(h.normal[1]) * Rat(d[1]);
      if (s < 0) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

bool halfspaces_feasible_2d(const std::vector<HalfSpace>& hs) {
  // Fourier-Motzkin: eliminate y, then check the x-interval.
  std::vector<std::pair<Rat, Rat>> lower, upper;  // y >= a + b*x  /  y <= a + b*x
  std::vector<std::pair<Rat, Rat>> pure;          // c*x >= d as (c, d)
  for (const auto& h : hs) {
    Rat ny(h.normal[1]), nx(h.normal[0]);
    if (ny == 0) {
      pure.push_back({nx, h.offset});
    } else if (ny > 0) {
      lower.push_back({h.offset / ny, -nx / ny});
    } else {
      upper.push_back({h.offset / ny, -nx / ny});
    }
  }
  std::optional<Rat> xlo, xhi;
  auto add_pure = [&](const Rat& c, const Rat& d) -> bool {
    if (c == 0) return d <= 0;
    Rat bound = d / c;
    if (c > 0) {
      if (!xlo || bound > *xlo) xlo = bound;
    } else {
      if (!xhi || bound < *xhi) xhi = bound;
    }
    return true;
  };
  for (const auto& [c, d] : pure)
    if (!add_pure(c, d)) return false;
  for (const auto& [la, lb] : lower)
    for (const auto& [ua, ub] : upper) {
      // la + lb*x <= ua + ub*x  =>  (ub - lb)*x >= la - ua
      if (!add_pure(ub - lb, la - ua)) return false;
    }
  if (xlo && xhi && *xlo > *xhi) return false;
  return true;
}

ConvexPolytope polytope_from_halfspaces(int dim, std::vector<HalfSpace> hs_in) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("unsupported dimension");
  std::vector<HalfSpace> hs;
  for (auto& h : hs_in) hs.push_back(normalized(std::move(h)));
  hs = dedupe_halfspaces(std::move(hs));

  ConvexPolytope p;
  p.dim = dim;
  // candidate vertices from dim-subsets of facet boundaries
  std::vector<QVec> verts;
  if ((int)hs.size() >= dim) {
    for_each_subset((int)hs.size(), dim, [&](const std::vector<int>& idx) {
      std::vector<const HalfSpace*> sel;
      for (int i : idx) sel.push_back(&hs[i]);
      auto v = vertex_of(sel, dim);
      if (!v) return;
      for (const auto& h : hs)
        if (dot(h.normal, *v) < h.offset) return;
      verts.push_back(*v);
    });
  }
  verts = dedupe_sorted(std::move(verts));
  p.vertices = verts;
  p.bounded = !has_recession_ray(hs, dim);

  if (p.vertices.empty()) {
    if (p.bounded) {
      p.is_empty = true;
      p.facets.clear();
      return p;
    }
    if (dim == 2 && !halfspaces_feasible_2d(hs)) {
      p.is_empty = true;
      p.bounded = true;
      p.facets.clear();
      return p;
    }
    if (dim != 2)
      throw std::invalid_argument("unbounded vertex-free region is only supported in 2D");
  }

  if (p.bounded) {
    int rank = affine_rank(p.vertices);
    p.degenerate = rank < dim;
  }

  // irredundant facet list
  if (dim == 2 && !p.degenerate) {
    std::vector<HalfSpace> keep;
    for (size_t i = 0; i < hs.size(); ++i)
      if (facet_essential_2d(hs, i)) keep.push_back(hs[i]);
    p.facets = std::move(keep);
  } else if (p.bounded && !p.degenerate) {
    std::vector<HalfSpace> keep;
    for (const auto& h : hs) {
      std::vector<QVec> on;
      for (const auto& v : p.vertices)
        if (dot(h.normal, v) == h.offset) on.push_back(v);
      if ((int)on.size() >= dim && affine_rank(on) == dim - 1) keep.push_back(h);
    }
    p.facets = std::move(keep);
  } else {
    p.facets = hs;  // degenerate bodies keep the defining list
  }
  return p;
}

ConvexPolytope polytope_from_vertices(int dim, std::vector<QVec> pts) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("unsupported dimension");
  for (const auto& q : pts)
    if ((int)q.size() != dim) throw std::invalid_argument("vertex dimension mismatch");
  pts = dedupe_sorted(std::move(pts));
  ConvexPolytope p;
  p.dim = dim;
  if (pts.empty()) {
    p.is_empty = true;
    return p;
  }
  int rank = affine_rank(pts);
  if (rank < dim) {
    p.degenerate = true;
    if (rank == 0) {
      p.vertices = {pts[0]};
    } else if (rank == 1) {
      QVec dir;
      for (size_t i = 1; i < pts.size(); ++i) {
        bool same = pts[i] == pts[0];
        if (!same) {
          dir = QVec(dim);
          for (int j = 0; j < dim; ++j) dir[j] = pts[i][j] - pts[0][j];
          break;
        }
      }
      auto key = [&](const QVec& q) {
        Rat s = 0;
        for (int j = 0; j < dim; ++j) s += dir[j] * (q[j] - pts[0][j]);
        return s;
      };
      QVec lo = pts[0], hi = pts[0];
      for (const auto& q : pts) {
        if (key(q) < key(lo)) lo = q;
        if (key(q) > key(hi)) hi = q;
      }
      p.vertices = dedupe_sorted({lo, hi});
    } else {
      p.vertices = pts;  // extreme-point pruning is not needed for rank-2 shadows
    }
    return p;
  }

  // facet candidates from dim-subsets of points
  std::map<std::pair<IVec, Rat>, bool> facet_set;
  for_each_subset((int)pts.size(), dim, [&](const std::vector<int>& idx) {
    std::vector<QVec> sel;
    for (int i : idx) sel.push_back(pts[i]);
    if (dim > 1 && affine_rank(sel) != dim - 1) return;
    auto h = hyperplane_through(sel);
    if (!h) return;
    bool above = false, below = false;
    for (const auto& q : pts) {
      Rat s = dot(h->normal, q) - h->offset;
      if (s > 0) above = true;
      if (s < 0) below = true;
      if (above && below) return;
    }
    HalfSpace oriented = *h;
    if (below) {
      oriented.normal = neg(oriented.normal);
      oriented.offset = -oriented.offset;
    }
    facet_set[{oriented.normal, oriented.offset}] = true;
  });
  std::vector<HalfSpace> hs;
  for (const auto& [key, _] : facet_set) hs.push_back(HalfSpace{key.first, key.second});

  ConvexPolytope built = polytope_from_halfspaces(dim, hs);
  if (!built.bounded || built.is_empty)
    throw std::logic_error("hull construction failed to produce a bounded body");
  for (const auto& q : pts)
    if (!built.contains(q)) throw std::logic_error("hull construction dropped an input point");
  return built;
}

std::vector<QVec> boundary_ccw(const ConvexPolytope& p) {
  if (p.dim != 2) throw std::invalid_argument("boundary_ccw: 2D only");
  if (!p.bounded) throw std::invalid_argument("boundary_ccw: bounded only");
  std::vector<QVec> v = p.vertices;
  if (v.size() <= 2) return v;
  QVec c = {Rat(0), Rat(0)};
  for (const auto& q : v) {
    c[0] += q[0];
    c[1] += q[1];
  }
  c[0] /= Rat((long)v.size());
  c[1] /= Rat((long)v.size());
  auto half = [&](const QVec& q) {  // 0: upper half-plane (dy>0 or dy==0,dx>0)
    Rat dx = q[0] - c[0], dy = q[1] - c[1];
    return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
  };
  std::sort(v.begin(), v.end(), [&](const QVec& a, const QVec& b) {
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb;
    Rat cross = (a[0] - c[0]) * (b[1] - c[1]) - (a[1] - c[1]) * (b[0] - c[0]);
    if (cross != 0) return cross > 0;
    return a < b;
  });
  return v;
}

namespace {

Rat volume2(const ConvexPolytope& p) {
  auto ring = boundary_ccw(p);
  if (ring.size() < 3) return 0;
  Rat s = 0;
  for (size_t i = 0; i < ring.size(); ++i) {
    const auto& a = ring[i];
    const auto& b = ring[(i + 1) % ring.size()];
    s += a[0] * b[1] - b[0] * a[1];
  }
  return rat_abs(s) / 2;
}

Rat volume3(const ConvexPolytope& p) {
  QVec c = {Rat(0), Rat(0), Rat(0)};
  for (const auto& q : p.vertices)
    for (int j = 0; j < 3; ++j) c[j] += q[j];
  for (int j = 0; j < 3; ++j) c[j] /= Rat((long)p.vertices.size());

  Rat total = 0;
  for (const auto& f : p.facets) {
    std::vector<QVec> on;
    for (const auto& v : p.vertices)
      if (dot(f.normal, v) == f.offset) on.push_back(v);
    if (on.size() < 3) continue;
    // order facet vertices around their centroid inside the facet plane
    QVec fc = {Rat(0), Rat(0), Rat(0)};
    for (const auto& q : on)
      for (int j = 0; j < 3; ++j) fc[j] += q[j];
    for (int j = 0; j < 3; ++j) fc[j] /= Rat((long)on.size());
    QVec b1(3), b2(3);
    bool got = false;
    for (const auto& q : on) {
      QVec d = {q[0] - fc[0], q[1] - fc[1], q[2] - fc[2]};
      if (d[0] != 0 || d[1] != 0 || d[2] != 0) {
        b1 = d;
        got = true;
        break;
      }
    }
    if (!got) continue;
    // b2 = normal x b1
    QVec nq = {Rat(f.normal[0]), Rat(f.normal[1]), Rat(f.normal[2])};
    b2 = {nq[1] * b1[2] - nq[2] * b1[1], nq[2] * b1[0] - nq[0] * b1[2],
          nq[0] * b1[1] - nq[1] * b1[0]};
    auto plane_coords = [&](const QVec& q) {
      QVec d = {q[0] - fc[0], q[1] - fc[1], q[2] - fc[2]};
      return std::pair<Rat, Rat>(dot_q(b1, d), dot_q(b2, d));
    };
    auto half = [&](const QVec& q) {
      auto [x, y] = plane_coords(q);
      return (y > 0 || (y == 0 && x > 0)) ? 0 : 1;
    };
    std::sort(on.begin(), on.end(), [&](const QVec& a, const QVec& b) {
      int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      auto [ax, ay] = plane_coords(a);
      auto [bx, by] = plane_coords(b);
      Rat cross = ax * by - ay * bx;
      if (cross != 0) return cross > 0;
      return a < b;
    });
    for (size_t i = 1; i + 1 < on.size(); ++i) {
      std::vector<QVec> cols(3, QVec(3));
      for (int j = 0; j < 3; ++j) {
        cols[0][j] = on[0][j] - c[j];
        cols[1][j] = on[i][j] - c[j];
        cols[2][j] = on[i + 1][j] - c[j];
      }
      total += rat_abs(det_q(cols));
    }
  }
  return total / 6;
}

}  // namespace

Rat volume(const ConvexPolytope& p) {
  if (p.is_empty) return 0;
  if (!p.bounded) throw std::invalid_argument("volume of unbounded body");
  if (p.degenerate || (int)p.vertices.size() <= p.dim) {
    if (affine_rank(p.vertices) < p.dim) return 0;
  }
  if (p.dim == 1) {
    Rat lo = p.vertices.front()[0], hi = p.vertices.back()[0];
    return hi - lo;
  }
  if (p.dim == 2) return volume2(p);
  if (p.dim == 3) return volume3(p);
  throw std::invalid_argument("unsupported dimension");
}

ConvexPolytope intersect(const ConvexPolytope& p, const ConvexPolytope& q) {
  if (p.dim != q.dim) throw std::invalid_argument("intersect: dimension mismatch");
  if (p.is_empty || q.is_empty) {
    ConvexPolytope e;
    e.dim = p.dim;
    e.is_empty = true;
    return e;
  }
  std::vector<HalfSpace> hs = p.facets;
  hs.insert(hs.end(), q.facets.begin(), q.facets.end());
  return polytope_from_halfspaces(p.dim, std::move(hs));
}

Rat intersection_volume(const ConvexPolytope& p, const ConvexPolytope& q) {
  ConvexPolytope r = intersect(p, q);
  if (r.is_empty || r.degenerate) return 0;
  return volume(r);
}

Rat symdiff_volume(const ConvexPolytope& p, const ConvexPolytope& q) {
  return volume(p) + volume(q) - 2 * intersection_volume(p, q);
}

bool disjoint_interiors(const ConvexPolytope& p, const ConvexPolytope& q) {
  if (p.dim != q.dim) throw std::invalid_argument("disjoint_interiors: dimension mismatch");
  ConvexPolytope r = intersect(p, q);
  if (r.is_empty) return true;
  return affine_rank(r.vertices) < r.dim;
}

ConvexPolytope transformed(const ConvexPolytope& p, const AffineMap& m) {
  Int d = det(m.lin_cols);
  if (d != 1 && d != -1) throw std::invalid_argument("transform must be unimodular");
  AffineMap inv = inverse(m);
  ConvexPolytope out;
  out.dim = p.dim;
  out.bounded = p.bounded;
  out.is_empty = p.is_empty;
  out.degenerate = p.degenerate;
  for (const auto& v : p.vertices) out.vertices.push_back(m.apply(v));
  std::sort(out.vertices.begin(), out.vertices.end());
  for (const auto& h : p.facets) {
    // <n, x> >= c  becomes  <M^-T n, x'> >= c + <M^-T n, shift>
    IVec n2(p.dim, 0);
    for (int i = 0; i < p.dim; ++i)
      for (int j = 0; j < p.dim; ++j) n2[j] += h.normal[i] * inv.lin_cols[j][i];
    Rat c2 = h.offset + dot(n2, m.shift);
    out.facets.push_back(normalized(HalfSpace{n2, c2}));
  }
  return out;
}

ConvexPolytope translated(const ConvexPolytope& p, const QVec& t) {
  AffineMap m = AffineMap::identity(p.dim);
  m.shift = t;
  return transformed(p, m);
}

ConvexPolytope scaled(const ConvexPolytope& p, const Rat& factor) {
  if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
  ConvexPolytope out;
  out.dim = p.dim;
  out.bounded = p.bounded;
  out.is_empty = p.is_empty;
  out.degenerate = p.degenerate;
  for (const auto& v : p.vertices) {
    QVec w(v);
    for (auto& c : w) c *= factor;
    out.vertices.push_back(std::move(w));
  }
  std::sort(out.vertices.begin(), out.vertices.end());
  for (const auto& h : p.facets) out.facets.push_back(HalfSpace{h.normal, h.offset * factor});
  return out;
}

ConvexPolytope clip_to_slab(const ConvexPolytope& p, const std::optional<Rat>& x0,
                            const std::optional<Rat>& x1) {
  if (p.dim != 2) throw std::invalid_argument("clip_to_slab: 2D only");
  std::vector<HalfSpace> hs = p.facets;
  if (x0) hs.push_back(HalfSpace{{Int(1), Int(0)}, *x0});
  if (x1) hs.push_back(HalfSpace{{Int(-1), Int(0)}, -*x1});
  return polytope_from_halfspaces(2, std::move(hs));
}

namespace {

std::optional<Rat> extreme_x(const ConvexPolytope& p, int sign) {
  if (p.dim != 2) throw std::invalid_argument("extreme_x: 2D only");
  if (p.is_empty) throw std::invalid_argument("extreme_x: empty body");
  if (!p.bounded) {
    for (const IVec& d : recession_candidates(p.facets, 2)) {
      if (sign > 0 ? d[0] <= 0 : d[0] >= 0) continue;
      bool inside = true;
      for (const auto& h : p.facets) {
        Rat s = Rat(h.normal[0]) * Rat(d[0]) + Rat(h.normal[1]) * Rat(d[1]);
        if (s < 0) {
          inside = false;
          break;
        }
      }
      if (inside) return std::nullopt;  // unbounded on this side
    }
  }
  if (p.vertices.empty()) throw std::logic_error("extreme_x: no vertices on the bounded side");
  Rat best = p.vertices[0][0];
  for (const auto& v : p.vertices) best = sign > 0 ? std::min(best, v[0]) : std::max(best, v[0]);
  return best;
}

}  // namespace

std::optional<Rat> polytope_min_x(const ConvexPolytope& p) { return extreme_x(p, +1); }
std::optional<Rat> polytope_max_x(const ConvexPolytope& p) { return extreme_x(p, -1); }

std::optional<std::pair<Rat, Rat>> slice_y_range(const std::vector<HalfSpace>& hs, const Rat& x0) {
  std::optional<Rat> lo, hi;
  for (const auto& h : hs) {
    Rat ny(h.normal[1]);
    Rat rem = h.offset - Rat(h.normal[0]) * x0;
    if (ny == 0) {
      if (rem > 0) return std::nullopt;  // slice misses the body
      continue;
    }
    Rat bound = rem / ny;
    if (ny > 0) {
      if (!lo || bound > *lo) lo = bound;
    } else {
      if (!hi || bound < *hi) hi = bound;
    }
  }
  if (!lo || !hi) throw std::logic_error("slice has unbounded height");
  if (*lo > *hi) return std::nullopt;
  return std::make_pair(*lo, *hi);
}

}  // namespace polypack
