#include "polypack/packing.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace polypack {

namespace {

Rat pow_int(const Rat& x, int n) {
  Rat p = 1;
  for (int i = 0; i < n; ++i) p *= x;
  return p;
}

Rat factorial(int n) {
  Rat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Rat objective_term(const Rat& rho, int dim) { return pow_int(rho, dim) / factorial(dim); }

void add_axis(std::set<IVec>& out, IVec v, int dim) {
  bool zero = true;
  for (const auto& c : v) zero = zero && c == 0;
  if (zero) return;
  v = make_primitive(v);
  // canonical sign: first nonzero coordinate positive
  for (int i = 0; i < dim; ++i) {
    if (v[i] == 0) continue;
    if (v[i] < 0) v = neg(v);
    break;
  }
  out.insert(v);
}

IVec rot90(const IVec& v) { return {-v[1], v[0]}; }

IVec cross3(const IVec& a, const IVec& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

std::vector<IVec> edge_dirs_of_simplex(const std::vector<IVec>& legs) {
  std::vector<IVec> dirs = legs;
  for (size_t i = 0; i < legs.size(); ++i)
    for (size_t j = i + 1; j < legs.size(); ++j) {
      IVec d(legs[i].size());
      for (size_t k = 0; k < d.size(); ++k) d[k] = legs[i][k] - legs[j][k];
      dirs.push_back(std::move(d));
    }
  return dirs;
}

}  // namespace

std::vector<IVec> separation_axes(const std::vector<IVec>& legs_p, const std::vector<IVec>& legs_q,
                                  int dim) {
  std::set<IVec> axes;
  auto dirs_p = edge_dirs_of_simplex(legs_p);
  auto dirs_q = edge_dirs_of_simplex(legs_q);
  if (dim == 2) {
    for (const auto& d : dirs_p) add_axis(axes, rot90(d), dim);
    for (const auto& d : dirs_q) add_axis(axes, rot90(d), dim);
  } else if (dim == 3) {
    auto face_normals = [&](const std::vector<IVec>& dirs) {
      for (size_t i = 0; i < dirs.size(); ++i)
        for (size_t j = i + 1; j < dirs.size(); ++j) add_axis(axes, cross3(dirs[i], dirs[j]), dim);
    };
    face_normals(dirs_p);
    face_normals(dirs_q);
    for (const auto& a : dirs_p)
      for (const auto& b : dirs_q) add_axis(axes, cross3(a, b), dim);
  } else {
    throw std::invalid_argument("separation_axes: unsupported dimension");
  }
  return {axes.begin(), axes.end()};
}

std::optional<Rat> simplex_growth_threshold(const QVec& v, const std::vector<IVec>& legs,
                                            const std::vector<QVec>& fixed_vertices,
                                            const std::vector<IVec>& axes) {
  std::optional<Rat> best;  // max over axes; nullopt until one axis works
  bool unbounded = false;
  for (const auto& base_axis : axes) {
    for (int sgn = 0; sgn < 2; ++sgn) {
      IVec a = sgn ? neg(base_axis) : base_axis;
      Rat va = dot(a, v);
      Rat min_q;
      bool first = true;
      for (const auto& q : fixed_vertices) {
        Rat s = dot(a, q);
        if (first || s < min_q) min_q = s;
        first = false;
      }
      if (va > min_q) continue;  // axis cannot separate even at rho = 0
      Rat slope = 0;
      for (const auto& u : legs) {
        Rat s = 0;
        for (size_t k = 0; k < u.size(); ++k) s += Rat(a[k]) * Rat(u[k]);
        if (s > slope) slope = s;
      }
      if (slope == 0) {
        unbounded = true;
        break;
      }
      Rat thr = (min_q - va) / slope;
      if (!best || thr > *best) best = thr;
    }
    if (unbounded) break;
  }
  if (unbounded) return std::nullopt;
  if (!best) return Rat(0);  // touching configurations: only rho = 0 stays disjoint
  return best;
}

// ---------------------------------------------------------------------------
// Exact LP (dense tableau simplex with Bland's rule)
// ---------------------------------------------------------------------------

Rat max_sum_lp(const std::vector<Rat>& upper, const std::vector<PairBound>& pairs,
               const std::optional<Rat>& total) {
  int n = (int)upper.size();
  std::vector<std::vector<Rat>> rows;  // constraint rows over n vars, rhs last
  for (int i = 0; i < n; ++i) {
    std::vector<Rat> r(n + 1, Rat(0));
    r[i] = 1;
    r[n] = upper[i] < 0 ? Rat(0) : upper[i];
    rows.push_back(std::move(r));
  }
  for (const auto& pb : pairs) {
    std::vector<Rat> r(n + 1, Rat(0));
    r[pb.i] = 1;
    r[pb.j] = 1;
    r[n] = pb.bound < 0 ? Rat(0) : pb.bound;
    rows.push_back(std::move(r));
  }
  if (total) {
    std::vector<Rat> r(n + 1, Rat(1));
    r[n] = *total < 0 ? Rat(0) : *total;
    rows.push_back(std::move(r));
  }
  int m = (int)rows.size();
  // tableau: m rows x (n + m + 1) columns, slack basis
  std::vector<std::vector<Rat>> T(m, std::vector<Rat>(n + m + 1, Rat(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = rows[i][j];
    T[i][n + i] = 1;
    T[i][n + m] = rows[i][n];
  }
  std::vector<Rat> obj(n + m, Rat(0));
  for (int j = 0; j < n; ++j) obj[j] = 1;
  Rat value = 0;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (int iter = 0; iter < 100000; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (obj[j] > 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    Rat best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      Rat ratio = T[i][n + m] / T[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("max_sum_lp: unbounded");
    Rat piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      Rat f = T[i][enter];
      for (int j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
    }
    Rat fo = obj[enter];
    for (int j = 0; j < n + m; ++j) obj[j] -= fo * T[leave][j];
    value += fo * T[leave][n + m];
    basis[leave] = enter;
  }
  return value;
}

// ---------------------------------------------------------------------------
// Generic certified solver
// ---------------------------------------------------------------------------

namespace {

struct Node {
  std::vector<Rat> lo, hi;
  Rat ub;
  long id = 0;
};

struct NodeOrder {
  bool operator()(const Node& a, const Node& b) const {
    if (a.ub != b.ub) return a.ub < b.ub;  // max-heap on ub
    return a.id > b.id;                    // then FIFO
  }
};

std::vector<std::vector<int>> greedy_orders(int n) {
  std::vector<std::vector<int>> orders;
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  if (n <= 6) {
    std::vector<int> p = base;
    do {
      orders.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return orders;
  }
  orders.push_back(base);
  std::vector<int> rev(base.rbegin(), base.rend());
  orders.push_back(rev);
  for (int r = 1; r < n; ++r) {
    std::vector<int> rot = base;
    std::rotate(rot.begin(), rot.begin() + r, rot.end());
    orders.push_back(rot);
    std::vector<int> rrot(rot.rbegin(), rot.rend());
    orders.push_back(rrot);
  }
  // fixed-seed shuffles for variety; deterministic
  unsigned long long s = 0x243f6a8885a308d3ull;
  std::vector<int> p = base;
  for (int k = 0; k < 120; ++k) {
    for (int i = n - 1; i > 0; --i) {
      s = s * 6364136223846793005ull + 1442695040888963407ull;
      int j = (int)(s >> 33) % (i + 1);
      std::swap(p[i], p[j]);
    }
    orders.push_back(p);
  }
  return orders;
}

}  // namespace

SolveResult solve_packing(const SiteModel& model, const Rat& tol,
                          const std::vector<int>& forced_zero) {
  int n = model.site_count;
  std::vector<bool> zero(n, false);
  for (int i : forced_zero) zero[i] = true;

  SolveResult res;
  res.lower = 0;
  res.upper = 0;

  std::vector<Rat> maxrad(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    if (zero[i]) continue;
    auto mr = model.max_radius(i);
    if (!mr) {
      res.unbounded = true;
      return res;
    }
    maxrad[i] = *mr;
  }

  auto clipped_caps = [&](const std::vector<Rat>& lo, const std::vector<Rat>& hi) {
    std::vector<Rat> cap(n);
    for (int i = 0; i < n; ++i) {
      if (zero[i]) {
        cap[i] = 0;
        continue;
      }
      auto thr = model.growth_threshold(i, lo);  // uses lo of the others; lo[i] ignored
      Rat c = hi[i];
      if (thr && *thr < c) c = *thr;
      if (c < lo[i]) c = lo[i];  // lo is feasible, so the threshold is >= lo[i]
      cap[i] = c;
    }
    return cap;
  };

  auto node_upper = [&](const std::vector<Rat>& lo, const std::vector<Rat>& cap) {
    std::vector<Rat> c(n);
    for (int i = 0; i < n; ++i) c[i] = objective_term(cap[i], model.dim);
    std::vector<PairBound> pairs;
    for (int i = 0; i < n; ++i) {
      if (cap[i] == 0) continue;
      for (int j = i + 1; j < n; ++j) {
        if (cap[j] == 0) continue;
        auto d = model.pair_objective_cap(i, j, lo[i], cap[i], lo[j], cap[j]);
        if (d && *d < c[i] + c[j]) pairs.push_back(PairBound{i, j, *d});
      }
    }
    return max_sum_lp(c, pairs, model.volume_cap);
  };

  auto feasible_at = [&](const std::vector<Rat>& x) {
    for (int i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (int j = i + 1; j < n; ++j) {
        if (x[j] == 0) continue;
        if (!model.pair_disjoint(i, x[i], j, x[j])) return false;
      }
    }
    return true;
  };

  auto objective = [&](const std::vector<Rat>& x) {
    Rat s = 0;
    for (int i = 0; i < n; ++i) s += objective_term(x[i], model.dim);
    return s;
  };

  std::vector<std::vector<int>> orders = greedy_orders(n);
  auto greedy = [&](const std::vector<Rat>& lo, const std::vector<Rat>& hi,
                    std::vector<Rat>& best_cfg, Rat& best_val) {
    for (const auto& ord : orders) {
      std::vector<Rat> cur = lo;
      for (int i : ord) {
        if (zero[i]) continue;
        auto thr = model.growth_threshold(i, cur);
        Rat c = hi[i];
        if (thr && *thr < c) c = *thr;
        if (c < cur[i]) c = cur[i];
        cur[i] = c;
      }
      Rat val = objective(cur);
      if (val > best_val) {
        best_val = val;
        best_cfg = cur;
      }
    }
  };

  std::priority_queue<Node, std::vector<Node>, NodeOrder> heap;
  long next_id = 0;

  Node root;
  root.lo.assign(n, Rat(0));
  root.hi = maxrad;
  std::vector<Rat> root_cap = clipped_caps(root.lo, root.hi);
  root.ub = node_upper(root.lo, root_cap);
  root.id = next_id++;

  std::vector<Rat> best_cfg(n, Rat(0));
  Rat best_val = 0;
  greedy(root.lo, root_cap, best_cfg, best_val);
  heap.push(root);

  long nodes = 1;
  const long node_budget = 400000;
  Rat final_upper = root.ub;

  while (!heap.empty()) {
    Node cur = heap.top();
    if (cur.ub <= best_val + tol) {
      final_upper = cur.ub;
      break;
    }
    heap.pop();
    if (cur.ub <= best_val) continue;  // stale

    std::vector<Rat> cap = clipped_caps(cur.lo, cur.hi);
    // branch on the widest effective interval
    int bi = -1;
    Rat bw = 0;
    for (int i = 0; i < n; ++i) {
      Rat w = cap[i] - cur.lo[i];
      if (w > bw) {
        bw = w;
        bi = i;
      }
    }
    if (bi < 0) {
      // box collapsed; its value is the lo corner, already covered by greedy
      continue;
    }
    Rat mid = cur.lo[bi] + bw / 2;

    for (int side = 0; side < 2; ++side) {
      Node child;
      child.lo = cur.lo;
      child.hi = cur.hi;
      if (side == 0) {
        child.hi[bi] = mid;
      } else {
        child.lo[bi] = mid;
        if (!feasible_at(child.lo)) continue;
      }
      std::vector<Rat> ccap = clipped_caps(child.lo, child.hi);
      Rat ub = node_upper(child.lo, ccap);
      if (ub > cur.ub) ub = cur.ub;
      greedy(child.lo, ccap, best_cfg, best_val);
      if (ub <= best_val) continue;
      child.ub = ub;
      child.id = next_id++;
      heap.push(child);
      if (++nodes > node_budget)
        throw std::runtime_error("packing solver exceeded its node budget");
    }
  }
  if (heap.empty()) final_upper = best_val;

  res.best = best_cfg;
  res.lower = best_val;
  res.upper = std::max(final_upper, best_val);
  res.nodes = nodes;
  return res;
}

// ---------------------------------------------------------------------------
// Toric model
// ---------------------------------------------------------------------------

namespace {

struct ToricSites {
  const DelzantPolytope* poly;
  int dim;
  std::vector<Rat> maxrad;
  // cached simplex vertex sets at given radii are cheap to rebuild
  std::vector<QVec> simplex_vertices(int i, const Rat& rho) const {
    const VertexFrame& fr = poly->frames[i];
    std::vector<QVec> pts = {fr.vertex};
    for (const auto& u : fr.edge_dirs) {
      QVec tip(fr.vertex);
      for (int k = 0; k < dim; ++k) tip[k] += rho * Rat(u[k]);
      pts.push_back(std::move(tip));
    }
    return pts;
  }
};

SiteModel toric_model(const DelzantPolytope& p, ToricSites& sites) {
  sites.poly = &p;
  sites.dim = p.body.dim;
  int n = (int)p.frames.size();
  for (int i = 0; i < n; ++i)
    sites.maxrad.push_back(max_admissible_radius(p, p.body.vertices[i]));

  SiteModel m;
  m.site_count = n;
  m.dim = sites.dim;
  m.volume_cap = volume(p.body);
  m.max_radius = [&sites](int i) -> std::optional<Rat> { return sites.maxrad[i]; };
  m.growth_threshold = [&sites, &p](int i, const std::vector<Rat>& fixed) -> std::optional<Rat> {
    std::optional<Rat> best;
    const auto& legs_i = p.frames[i].edge_dirs;
    for (int j = 0; j < (int)fixed.size(); ++j) {
      if (j == i || fixed[j] == 0) continue;
      auto axes = separation_axes(legs_i, p.frames[j].edge_dirs, sites.dim);
      auto thr = simplex_growth_threshold(p.frames[i].vertex, legs_i,
                                          sites.simplex_vertices(j, fixed[j]), axes);
      if (!thr) continue;
      if (!best || *thr < *best) best = thr;
    }
    return best;
  };
  m.pair_disjoint = [&sites, &p](int i, const Rat& ri, int j, const Rat& rj) {
    auto axes = separation_axes(p.frames[i].edge_dirs, p.frames[j].edge_dirs, sites.dim);
    auto vi = sites.simplex_vertices(i, ri);
    auto vj = sites.simplex_vertices(j, rj);
    for (const auto& base : axes) {
      for (int sgn = 0; sgn < 2; ++sgn) {
        IVec a = sgn ? neg(base) : base;
        Rat max_i = dot(a, vi[0]);
        for (const auto& q : vi) max_i = std::max(max_i, dot(a, q));
        Rat min_j = dot(a, vj[0]);
        for (const auto& q : vj) min_j = std::min(min_j, dot(a, q));
        if (max_i <= min_j) return true;
      }
    }
    return false;
  };
  m.pair_objective_cap = [&sites, &p](int i, int j, const Rat& lo_i, const Rat& hi_i,
                                      const Rat& lo_j, const Rat& hi_j) -> std::optional<Rat> {
    const auto& legs_i = p.frames[i].edge_dirs;
    const auto& legs_j = p.frames[j].edge_dirs;
    const QVec& vi = p.frames[i].vertex;
    const QVec& vj = p.frames[j].vertex;
    auto axes = separation_axes(legs_i, legs_j, sites.dim);
    int dim = sites.dim;
    auto slopes = [&](const IVec& a, const std::vector<IVec>& legs, bool maximal) {
      Rat s = 0;
      for (const auto& u : legs) {
        Rat t = 0;
        for (size_t k = 0; k < u.size(); ++k) t += Rat(a[k]) * Rat(u[k]);
        if (maximal ? t > s : t < s) s = t;
      }
      return s;
    };
    std::optional<Rat> best;
    auto consider = [&](const Rat& x, const Rat& y) {
      Rat val = objective_term(x, dim) + objective_term(y, dim);
      if (!best || val > *best) best = val;
    };
    for (const auto& base : axes) {
      for (int sgn = 0; sgn < 2; ++sgn) {
        IVec a = sgn ? neg(base) : base;
        // separation: <a,vi> + ri*si <= <a,vj> + rj*tj  with si >= 0 >= tj
        Rat si = slopes(a, legs_i, true);
        Rat tj = slopes(a, legs_j, false);
        Rat gamma = dot(a, vj) - dot(a, vi);  // ri*si - rj*tj <= gamma
        auto ok = [&](const Rat& x, const Rat& y) { return x * si - y * tj <= gamma; };
        // extreme candidates of the halfplane within the box
        if (ok(hi_i, hi_j)) {
          consider(hi_i, hi_j);
          continue;
        }
        if (!ok(lo_i, lo_j)) continue;  // axis useless inside this box
        for (int corner = 0; corner < 4; ++corner) {
          Rat x = (corner & 1) ? hi_i : lo_i;
          Rat y = (corner & 2) ? hi_j : lo_j;
          if (ok(x, y)) consider(x, y);
        }
        // boundary line intersections with the box edges
        if (si > 0) {
          for (const Rat& y : {lo_j, hi_j}) {
            Rat x = (gamma + y * tj) / si;
            if (x >= lo_i && x <= hi_i) consider(x, y);
          }
        }
        if (tj < 0) {
          for (const Rat& x : {lo_i, hi_i}) {
            Rat y = (x * si - gamma) / -tj;
            if (y >= lo_j && y <= hi_j) consider(x, y);
          }
        }
      }
    }
    return best;
  };
  return m;
}

PackingCertificate finish_certificate(const DelzantPolytope& p, const SolveResult& sr,
                                      const Rat& tol) {
  PackingCertificate cert;
  cert.tolerance = tol;
  cert.nodes = sr.nodes;
  if (sr.unbounded) {
    cert.unbounded = true;
    return cert;
  }
  cert.best.radii = sr.best;
  cert.lower = sr.lower;
  cert.upper = sr.upper;
  cert.witness = feasible(p, cert.best);
  if (!cert.witness.feasible)
    throw std::logic_error("packing certificate failed kernel verification");
  // lower must be the exact objective of the verified configuration
  Rat check = 0;
  for (const Rat& r : sr.best) check += objective_term(r, p.body.dim);
  if (check != sr.lower) throw std::logic_error("packing certificate objective mismatch");
  return cert;
}

}  // namespace

FeasibilityWitness feasible(const DelzantPolytope& p, const PackingConfiguration& cfg) {
  if (cfg.radii.size() != p.body.vertices.size())
    throw std::invalid_argument("feasible: one radius per vertex required");
  FeasibilityWitness w;
  int n = (int)cfg.radii.size();
  std::vector<std::optional<ConvexPolytope>> simplices(n);
  for (int i = 0; i < n; ++i) {
    if (cfg.radii[i] < 0) throw std::invalid_argument("feasible: negative radius");
    if (cfg.radii[i] == 0) {
      w.contained.push_back(true);
      continue;
    }
    simplices[i] = admissible_simplex(p, p.body.vertices[i], cfg.radii[i]);
    bool inside = true;
    for (const auto& v : simplices[i]->vertices) inside = inside && p.body.contains(v);
    w.contained.push_back(inside);
    if (!inside) w.feasible = false;
  }
  for (int i = 0; i < n; ++i) {
    if (!simplices[i]) continue;
    for (int j = i + 1; j < n; ++j) {
      if (!simplices[j]) continue;
      PairVerdict pv;
      pv.i = i;
      pv.j = j;
      pv.overlap_volume = intersection_volume(*simplices[i], *simplices[j]);
      pv.disjoint = pv.overlap_volume == 0;
      if (!pv.disjoint) w.feasible = false;
      w.pairs.push_back(std::move(pv));
    }
  }
  return w;
}

PackingCertificate pack_toric(const DelzantPolytope& p, const Rat& tol) {
  if (tol <= 0) throw std::invalid_argument("pack_toric: tolerance must be positive");
  ToricSites sites;
  SiteModel m = toric_model(p, sites);
  SolveResult sr = solve_packing(m, tol);
  return finish_certificate(p, sr, tol);
}

PackingCertificate pack_toric_excluding(const DelzantPolytope& p, int vertex_index,
                                        const Rat& tol) {
  if (vertex_index < 0 || vertex_index >= (int)p.body.vertices.size())
    throw std::invalid_argument("pack_toric_excluding: invalid vertex index");
  ToricSites sites;
  SiteModel m = toric_model(p, sites);
  SolveResult sr = solve_packing(m, tol, {vertex_index});
  return finish_certificate(p, sr, tol);
}

RadicalInterval capacity_T_from_pack(const PackingCertificate& cert, int dim) {
  RadicalInterval out;
  if (cert.unbounded) {
    out.lower = Radical::infinite();
    out.upper = Radical::infinite();
    return out;
  }
  Rat f = factorial(dim);
  out.lower = Radical{f * cert.lower, 2 * dim};
  out.upper = Radical{f * cert.upper, 2 * dim};
  return out;
}

RadicalInterval capacity_T(const DelzantPolytope& p, const Rat& tol) {
  return capacity_T_from_pack(pack_toric(p, tol), p.body.dim);
}

Radical capacity_cB(const DelzantPolytope& p) {
  Rat best = 0;
  for (const auto& v : p.body.vertices) best = std::max(best, max_admissible_radius(p, v));
  return Radical{best, 2};
}

Int emb_count(const DelzantPolytope& p, const Rat& rho) {
  Int count = 0;
  for (const auto& v : p.body.vertices)
    if (max_admissible_radius(p, v) >= rho) ++count;
  Int f = 1;
  for (int i = 2; i <= p.body.dim; ++i) f *= i;
  return f * count;
}

ErValue capacity_Er(const DelzantPolytope& p, const Rat& r) {
  if (r < 0) throw std::invalid_argument("capacity_Er: radius must be nonnegative");
  int n = p.body.dim;
  Rat volp = volume(p.body);
  Rat f = factorial(n);
  // threshold: maxrad >= (vol_M)^(2/n) r^2 with vol_M = n! pi^n vol_P;
  // compare maxrad^n against (n! vol_P)^2 pi^(2n) r^(2n) exactly.
  Rat rhs_coeff = pow_int(f * volp, 2) * pow_int(r, 2 * n);
  Int count = 0;
  for (const auto& v : p.body.vertices) {
    Rat mr = max_admissible_radius(p, v);
    if (r == 0 || compare_rat_pi_power(pow_int(mr, n), rhs_coeff, 2 * n) >= 0) ++count;
  }
  ErValue out;
  Int fi = 1;
  for (int i = 2; i <= n; ++i) fi *= i;
  out.count = fi * count;
  out.vol_factor = Radical{f * volp, n};
  return out;
}

std::string format_er(const ErValue& v) {
  if (v.count == 0) return "0";
  std::ostringstream os;
  os << v.count << "*" << format_radical(v.vol_factor) << "*pi";
  return os.str();
}

ContinuityReport continuity_certificate(const DelzantPolytope& p, const Rat& tol) {
  ContinuityReport rep;
  rep.full = pack_toric(p, tol);
  int n = (int)p.body.vertices.size();
  bool any_equal = false, all_strict = true;
  for (int i = 0; i < n; ++i) {
    PackingCertificate ci = pack_toric_excluding(p, i, tol);
    VertexRelation rel;
    if (ci.upper < rep.full.lower) {
      rel = VertexRelation::StrictLess;
    } else if (ci.lower == rep.full.upper) {
      rel = VertexRelation::Equal;  // exact optimum avoiding v_i exhibited
      any_equal = true;
      all_strict = false;
    } else {
      rel = VertexRelation::Undecided;
      all_strict = false;
    }
    rep.relations.push_back(rel);
    rep.excluded.push_back(std::move(ci));
  }
  rep.is_largest_neighbourhood = any_equal      ? ContinuityReport::No
                                 : all_strict   ? ContinuityReport::Yes
                                                : ContinuityReport::Undecided;
  return rep;
}

}  // namespace polypack
