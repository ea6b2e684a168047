#include "tropmod/tropcurve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace tropmod {

std::vector<int> TropicalCurve::star(int v) const {
  std::vector<int> s;
  for (size_t e = 0; e < edges.size(); ++e)
    if (edges[e].a == v || edges[e].b == v) s.push_back((int)e);
  return s;
}

IVec TropicalCurve::outgoing(int e, int v) const {
  const auto& ed = edges[e];
  if (ed.a == v) return ed.dir;
  IVec d = ed.dir;
  for (auto& k : d) k = -k;
  return d;
}

TropicalCurve dualize(const NewtonSubdivision& sub) {
  TropicalCurve c;
  c.subdivision = sub;
  if (sub.degenerate) {
    c.degenerate = true;
    return c;
  }
  for (size_t i = 0; i < sub.cells.size(); ++i) {
    const auto& cell = sub.cells[i];
    CurveVertex v;
    v.pos = {-cell.alpha, -cell.beta};
    v.cell = (int)i;
    v.mult = normalized_volume(cell.vertices);
    c.vertices.push_back(v);
  }
  for (size_t i = 0; i < sub.edges.size(); ++i) {
    const auto& se = sub.edges[i];
    CurveEdge e;
    e.dual = (int)i;
    e.mult = lattice_length_int(se.a, se.b);
    e.a = se.cell;
    if (!se.boundary()) {
      e.b = se.other;
      const auto& p = c.vertices[e.a].pos;
      const auto& q = c.vertices[e.b].pos;
      e.dir = primitive_direction({q[0] - p[0], q[1] - p[1]});
      e.length = lattice_length(p, q);
    } else {
      long dx = se.b[0] - se.a[0], dy = se.b[1] - se.a[1];
      long g = std::gcd(std::labs(dx), std::labs(dy));
      long nx = dy / g, ny = -dx / g;
      // Outward: away from the cell's other vertices.
      for (auto& p : sub.cells[se.cell].vertices) {
        long s = nx * (p[0] - se.a[0]) + ny * (p[1] - se.a[1]);
        if (s > 0) {
          nx = -nx;
          ny = -ny;
          break;
        }
        if (s < 0) break;
      }
      e.dir = {nx, ny};
    }
    c.edges.push_back(e);
  }
  return c;
}

TropicalCurve tropicalize(const PlanePoly& g) { return dualize(subdivision_of(g)); }

BalanceReport check_balancing(const TropicalCurve& c) {
  BalanceReport r;
  for (size_t v = 0; v < c.vertices.size(); ++v) {
    IVec sum(c.dim, 0);
    for (int e : c.star((int)v)) {
      auto d = c.outgoing(e, (int)v);
      for (int k = 0; k < c.dim; ++k) sum[k] += c.edges[e].mult * d[k];
    }
    for (long s : sum)
      if (s != 0) {
        r.ok = false;
        r.vertex = (int)v;
        r.defect = sum;
        return r;
      }
  }
  return r;
}

std::vector<CycleDescriptor> find_cycles(const TropicalCurve& c) {
  size_t nv = c.vertices.size();
  std::vector<int> live;
  for (size_t e = 0; e < c.edges.size(); ++e)
    if (!c.edges[e].is_ray() && c.edges[e].mult > 0 && c.edges[e].a != c.edges[e].b)
      live.push_back((int)e);
  // Prune to the 2-core.
  std::vector<int> deg(nv, 0);
  std::vector<bool> alive(c.edges.size(), false);
  for (int e : live) {
    alive[e] = true;
    deg[c.edges[e].a]++;
    deg[c.edges[e].b]++;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e : live) {
      if (!alive[e]) continue;
      int a = c.edges[e].a, b = c.edges[e].b;
      if (deg[a] == 1 || deg[b] == 1) {
        alive[e] = false;
        deg[a]--;
        deg[b]--;
        changed = true;
      }
    }
  }
  std::vector<int> core;
  for (int e : live)
    if (alive[e]) core.push_back(e);
  if (core.empty()) return {};
  // Spanning forest by BFS; each non-tree edge closes one fundamental cycle.
  std::vector<std::vector<std::pair<int, int>>> adj(nv);
  for (int e : core) {
    adj[c.edges[e].a].push_back({c.edges[e].b, e});
    adj[c.edges[e].b].push_back({c.edges[e].a, e});
  }
  std::vector<int> parent(nv, -1), parent_edge(nv, -1), depth(nv, -1);
  std::set<int> tree_edges;
  for (size_t s = 0; s < nv; ++s) {
    if (depth[s] >= 0 || adj[s].empty()) continue;
    depth[s] = 0;
    std::vector<int> queue{(int)s};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int u = queue[qi];
      for (auto [w, e] : adj[u]) {
        if (depth[w] >= 0) continue;
        depth[w] = depth[u] + 1;
        parent[w] = u;
        parent_edge[w] = e;
        tree_edges.insert(e);
        queue.push_back(w);
      }
    }
  }
  std::vector<CycleDescriptor> cycles;
  for (int e : core) {
    if (tree_edges.count(e)) continue;
    int a = c.edges[e].a, b = c.edges[e].b;
    std::vector<int> pa{a}, pb{b}, ea, eb;
    while (pa.back() != pb.back()) {
      if (depth[pa.back()] >= depth[pb.back()]) {
        ea.push_back(parent_edge[pa.back()]);
        pa.push_back(parent[pa.back()]);
      } else {
        eb.push_back(parent_edge[pb.back()]);
        pb.push_back(parent[pb.back()]);
      }
    }
    // Walk: b -> ... -> lca -> ... -> a -> (edge e) -> b
    CycleDescriptor cd;
    for (size_t i = 0; i < eb.size(); ++i) {
      cd.vertices.push_back(pb[i]);
      cd.edges.push_back(eb[i]);
    }
    for (size_t i = ea.size(); i-- > 0;) {
      cd.vertices.push_back(pa[i + 1]);
      cd.edges.push_back(ea[i]);
    }
    cd.vertices.push_back(a);
    cd.edges.push_back(e);
    // Rotate so the smallest vertex starts the walk.
    auto it = std::min_element(cd.vertices.begin(), cd.vertices.end());
    size_t k = it - cd.vertices.begin();
    std::rotate(cd.vertices.begin(), cd.vertices.begin() + k, cd.vertices.end());
    std::rotate(cd.edges.begin(), cd.edges.begin() + k, cd.edges.end());
    for (int x : cd.edges) cd.length += c.edges[x].length;
    cycles.push_back(std::move(cd));
  }
  return cycles;
}

std::optional<CycleDescriptor> find_cycle(const TropicalCurve& c) {
  auto cs = find_cycles(c);
  if (cs.empty()) return std::nullopt;
  if (cs.size() > 1) throw DomainError("curve has several independent cycles");
  return cs[0];
}

std::optional<std::vector<long>> reducible_star(const std::vector<IVec>& dirs,
                                                const std::vector<long>& mults) {
  size_t n = dirs.size();
  double count = 1;
  for (long m : mults) count *= (double)(m + 1);
  if (count > 1e6) throw DomainError("star too large");
  std::vector<long> cur(n, 0);
  size_t dim = n ? dirs[0].size() : 0;
  std::function<std::optional<std::vector<long>>(size_t)> rec =
      [&](size_t i) -> std::optional<std::vector<long>> {
    if (i == n) {
      bool zero = true, full = true;
      for (size_t k = 0; k < n; ++k) {
        if (cur[k] != 0) zero = false;
        if (cur[k] != mults[k]) full = false;
      }
      if (zero || full) return std::nullopt;
      for (size_t d = 0; d < dim; ++d) {
        long s = 0;
        for (size_t k = 0; k < n; ++k) s += cur[k] * dirs[k][d];
        if (s != 0) return std::nullopt;
      }
      return cur;
    }
    for (long m = 0; m <= mults[i]; ++m) {
      cur[i] = m;
      if (auto r = rec(i + 1)) return r;
    }
    cur[i] = 0;
    return std::nullopt;
  };
  return rec(0);
}

std::optional<ReducibleWitness> local_reducibility(const TropicalCurve& c, int v) {
  std::vector<IVec> dirs;
  std::vector<long> mults;
  auto st = c.star(v);
  for (int e : st) {
    dirs.push_back(c.outgoing(e, v));
    mults.push_back(c.edges[e].mult);
  }
  auto sub = reducible_star(dirs, mults);
  if (!sub) return std::nullopt;
  return ReducibleWitness{v, st, *sub};
}

std::vector<ReducibleWitness> locally_reducible_vertices(const TropicalCurve& c) {
  std::vector<ReducibleWitness> out;
  for (size_t v = 0; v < c.vertices.size(); ++v)
    if (auto w = local_reducibility(c, (int)v)) out.push_back(*w);
  return out;
}

std::string to_string(LineType t) {
  switch (t) {
    case LineType::Vertical: return "vertical";
    case LineType::Horizontal: return "horizontal";
    case LineType::Skew: return "skew";
  }
  return "?";
}

long level_functional(LineType t, const Exponent& p) {
  switch (t) {
    case LineType::Vertical: return p[1];
    case LineType::Horizontal: return p[0];
    case LineType::Skew: return p[0] + p[1];
  }
  return 0;
}

long along_functional(LineType t, const Exponent& p) {
  switch (t) {
    case LineType::Vertical: return p[0];
    case LineType::Horizontal: return p[1];
    case LineType::Skew: return p[0];
  }
  return 0;
}

std::vector<LineClass> classify_cubic_cycle_vertex(const MarkedCell& cell) {
  std::vector<LineClass> out;
  if (cell.vertices.size() < 3) return out;
  for (LineType t : {LineType::Skew, LineType::Vertical, LineType::Horizontal}) {
    long lo = level_functional(t, cell.marked[0]), hi = lo;
    for (auto& p : cell.marked) {
      lo = std::min(lo, level_functional(t, p));
      hi = std::max(hi, level_functional(t, p));
    }
    if (hi - lo != 1) continue;
    long amin[2] = {0, 0}, amax[2] = {0, 0};
    bool seen[2] = {false, false};
    for (auto& p : cell.vertices) {
      int row = level_functional(t, p) == lo ? 0 : 1;
      long a = along_functional(t, p);
      if (!seen[row]) {
        amin[row] = amax[row] = a;
        seen[row] = true;
      }
      amin[row] = std::min(amin[row], a);
      amax[row] = std::max(amax[row], a);
    }
    long len0 = amax[0] - amin[0], len1 = amax[1] - amin[1];
    if (len0 < 1 || len1 < 1) continue;  // pyramid
    out.push_back(LineClass{t, lo, len0, len1});
  }
  return out;
}

}  // namespace tropmod
