#include "dsr/cyclecheck.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace dsr {

const char* to_string(StarStatus s) {
  switch (s) {
    case StarStatus::Satisfied: return "satisfied";
    case StarStatus::ViolatedENotS: return "violated-e-not-s";
    case StarStatus::ViolatedStrIntersection: return "violated-str-intersection";
    case StarStatus::CapExceeded: return "cap-exceeded";
  }
  return "?";
}

namespace {

struct Arc {
  int to;
  int edge;
};

// Orientation-expanded adjacency: an undirected edge contributes two
// anti-parallel arcs tagged with the same underlying edge index.
std::vector<std::vector<Arc>> build_arcs(const DsrGraph& G) {
  std::vector<std::vector<Arc>> arcs(G.nS + G.nR);
  for (int e = 0; e < static_cast<int>(G.edges.size()); ++e) {
    const DsrEdge& ed = G.edges[e];
    int s = G.s_vertex(ed.species);
    int r = G.r_vertex(ed.interaction);
    if (ed.dir == Direction::RtoS || ed.dir == Direction::Both) {
      arcs[r].push_back({s, e});
    }
    if (ed.dir == Direction::StoR || ed.dir == Direction::Both) {
      arcs[s].push_back({r, e});
    }
  }
  for (auto& a : arcs) {
    std::sort(a.begin(), a.end(),
              [](const Arc& x, const Arc& y) {
                return std::tie(x.to, x.edge) < std::tie(y.to, y.edge);
              });
  }
  return arcs;
}

bool all_undirected(const DsrGraph& G, const Cycle& c) {
  return std::all_of(c.edges.begin(), c.edges.end(), [&](int e) {
    return G.edges[e].dir == Direction::Both;
  });
}

}  // namespace

void finalize_cycle(const DsrGraph& G, Cycle& c) {
  const int n = c.length();
  std::vector<std::pair<int, int>> base(n);
  for (int k = 0; k < n; ++k) base[k] = {c.vertices[k], c.edges[k]};

  std::vector<std::pair<int, int>> best;
  int best_rot = 0;
  bool best_reversed = false;
  auto consider = [&](const std::vector<std::pair<int, int>>& seq, int rot,
                      bool reversed) {
    std::vector<std::pair<int, int>> cand(n);
    for (int k = 0; k < n; ++k) cand[k] = seq[(k + rot) % n];
    if (best.empty() || cand < best) {
      best = std::move(cand);
      best_rot = rot;
      best_reversed = reversed;
    }
  };
  for (int rot = 0; rot < n; ++rot) consider(base, rot, false);

  std::vector<std::pair<int, int>> rev;
  if (all_undirected(G, c)) {
    // Reversed traversal visits v0, v_{n-1}, ..., v_1 via e_{n-1}, ..., e_0.
    rev.resize(n);
    for (int t = 0; t < n; ++t) {
      rev[t] = {c.vertices[(n - t) % n], c.edges[(n - t - 1 + n) % n]};
    }
    for (int rot = 0; rot < n; ++rot) consider(rev, rot, true);
  }

  c.canonical_key = best;
  const auto& seq = best_reversed ? rev : base;
  std::vector<int> vs(n), es(n);
  for (int k = 0; k < n; ++k) {
    vs[k] = seq[(k + best_rot) % n].first;
    es[k] = seq[(k + best_rot) % n].second;
  }
  c.vertices = std::move(vs);
  c.edges = std::move(es);
}

std::vector<Cycle> enumerate_cycles(const DsrGraph& G, long long cap) {
  if (cap < 1) throw std::invalid_argument("cycle cap must be >= 1");
  auto arcs = build_arcs(G);
  const int nv = G.nS + G.nR;

  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<Cycle> out;

  std::vector<int> path_v, path_e;
  std::vector<bool> on_path(nv, false), edge_used(G.edges.size(), false);

  // Rooted DFS: from each root in ascending id order, explore only vertices
  // with larger ids, closing back at the root. Each cycle is found at its
  // minimal vertex; all-undirected cycles are found in both traversal
  // directions and deduplicated via the canonical key.
  auto record = [&]() {
    Cycle c;
    c.vertices = path_v;
    c.edges = path_e;
    finalize_cycle(G, c);
    if (seen.insert(c.canonical_key).second) {
      if (static_cast<long long>(out.size()) >= cap) {
        throw CapExceeded("cycle enumeration cap exceeded",
                          static_cast<long long>(out.size()));
      }
      out.push_back(std::move(c));
    }
  };

  std::function<void(int, int)> dfs = [&](int root, int v) {
    for (const Arc& a : arcs[v]) {
      if (edge_used[a.edge]) continue;
      if (a.to == root) {
        if (path_v.size() >= 2) {
          path_e.push_back(a.edge);
          record();
          path_e.pop_back();
        }
      } else if (a.to > root && !on_path[a.to]) {
        on_path[a.to] = true;
        edge_used[a.edge] = true;
        path_v.push_back(a.to);
        path_e.push_back(a.edge);
        dfs(root, a.to);
        path_v.pop_back();
        path_e.pop_back();
        edge_used[a.edge] = false;
        on_path[a.to] = false;
      }
    }
  };

  for (int root = 0; root < nv; ++root) {
    on_path[root] = true;
    path_v = {root};
    path_e.clear();
    dfs(root, root);
    on_path[root] = false;
  }

  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.canonical_key < b.canonical_key;
  });
  return out;
}

CycleClass classify(const DsrGraph& G, const Cycle& C) {
  CycleClass r;
  r.sign = 1;
  for (int e : C.edges) r.sign *= G.edges[e].sign;
  const int half = C.length() / 2;
  int parity = (half % 2 == 0) ? r.sign : -r.sign;  // P(C) = (-1)^{|C|/2} sign(C)
  r.e_cycle = parity > 0;

  r.stoich_inf = std::any_of(C.edges.begin(), C.edges.end(), [&](int e) {
    return G.edges[e].label.inf;
  });
  if (!r.stoich_inf) {
    Rational odd = 1, even = 1;
    for (int k = 0; k < C.length(); ++k) {
      const Rational& v = G.edges[C.edges[k]].label.value;
      (k % 2 == 0 ? even : odd) *= v;
    }
    r.stoich = abs(even - odd);
    r.s_cycle = r.stoich == 0;
  }
  r.es_cycle = r.e_cycle && r.s_cycle;
  return r;
}

namespace {

// Traversal orientation of edge `e` in cycle `C`: true if S-to-R.
bool orientation_in(const DsrGraph& G, const Cycle& C, int e) {
  for (int k = 0; k < C.length(); ++k) {
    if (C.edges[k] == e) return G.is_species_vertex(C.vertices[k]);
  }
  throw std::logic_error("edge not on cycle");
}

}  // namespace

IntersectResult s_to_r_intersection(const DsrGraph& G, const Cycle& C,
                                    const Cycle& D) {
  if (C.canonical_key == D.canonical_key) {
    throw std::invalid_argument("cycles must be distinct");
  }
  std::set<int> ce(C.edges.begin(), C.edges.end());
  std::vector<int> shared;
  for (int e : D.edges) {
    if (ce.count(e)) shared.push_back(e);
  }
  std::sort(shared.begin(), shared.end());
  if (shared.empty()) {
    return IntersectResult{false, NoIntersectReason::Disjoint, {}};
  }

  // A cycle admits two orientations only when all its edges are undirected.
  std::vector<bool> c_flips{false}, d_flips{false};
  if (all_undirected(G, C)) c_flips.push_back(true);
  if (all_undirected(G, D)) d_flips.push_back(true);
  bool compatible = false;
  for (bool fc : c_flips) {
    for (bool fd : d_flips) {
      bool ok = true;
      for (int e : shared) {
        bool oc = orientation_in(G, C, e) != fc;
        bool od = orientation_in(G, D, e) != fd;
        if (oc != od) {
          ok = false;
          break;
        }
      }
      compatible = compatible || ok;
    }
  }
  if (!compatible) {
    return IntersectResult{false, NoIntersectReason::IncompatibleOrientation, {}};
  }

  // Connected components of the shared edge set (edges adjacent when they
  // share a vertex); each must have an odd number of edges.
  std::map<int, std::vector<int>> by_vertex;
  for (int e : shared) {
    by_vertex[G.s_vertex(G.edges[e].species)].push_back(e);
    by_vertex[G.r_vertex(G.edges[e].interaction)].push_back(e);
  }
  std::map<int, int> comp;
  int ncomp = 0;
  std::function<void(int, int)> mark = [&](int e, int id) {
    if (comp.count(e)) return;
    comp[e] = id;
    for (int v : {G.s_vertex(G.edges[e].species), G.r_vertex(G.edges[e].interaction)}) {
      for (int other : by_vertex[v]) mark(other, id);
    }
  };
  for (int e : shared) {
    if (!comp.count(e)) mark(e, ncomp++);
  }
  std::vector<std::vector<int>> components(ncomp);
  for (int e : shared) components[comp[e]].push_back(e);
  for (auto& c : components) std::sort(c.begin(), c.end());
  std::sort(components.begin(), components.end());
  for (const auto& c : components) {
    if (c.size() % 2 == 0) {
      return IntersectResult{false, NoIntersectReason::EvenComponent, {}};
    }
  }
  return IntersectResult{true, NoIntersectReason::Disjoint, components};
}

StarResult check_condition_star(const DsrGraph& G, long long cycle_cap,
                                long long ecycle_cap) {
  StarResult r;
  std::vector<Cycle> cycles;
  try {
    cycles = enumerate_cycles(G, cycle_cap);
  } catch (const CapExceeded& e) {
    r.status = StarStatus::CapExceeded;
    r.cycle_count = e.partial;
    r.note = e.what();
    return r;
  }
  r.cycle_count = static_cast<long long>(cycles.size());

  std::vector<const Cycle*> e_cycles;
  for (const Cycle& c : cycles) {
    CycleClass cls = classify(G, c);
    if (!cls.e_cycle) continue;
    if (!cls.s_cycle) {
      r.status = StarStatus::ViolatedENotS;
      r.witness_cycle = c;
      r.e_cycle_count = static_cast<long long>(e_cycles.size()) + 1;
      return r;
    }
    e_cycles.push_back(&c);
  }
  r.e_cycle_count = static_cast<long long>(e_cycles.size());
  if (r.e_cycle_count > ecycle_cap) {
    r.status = StarStatus::CapExceeded;
    r.note = "e-cycle pairwise cap exceeded";
    return r;
  }
  for (size_t i = 0; i < e_cycles.size(); ++i) {
    for (size_t j = i + 1; j < e_cycles.size(); ++j) {
      IntersectResult ir = s_to_r_intersection(G, *e_cycles[i], *e_cycles[j]);
      if (ir.yes) {
        r.status = StarStatus::ViolatedStrIntersection;
        r.witness_pair = {*e_cycles[i], *e_cycles[j]};
        r.shared_components = ir.components;
        return r;
      }
    }
  }
  r.status = StarStatus::Satisfied;
  return r;
}

std::string cycle_to_string(const DsrGraph& G, const Cycle& C) {
  std::ostringstream out;
  for (size_t k = 0; k < C.vertices.size(); ++k) {
    if (k) out << "-";
    out << G.vertex_name(C.vertices[k]);
  }
  return out.str();
}

}  // namespace dsr
