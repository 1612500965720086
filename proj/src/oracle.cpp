#include "dsr/oracle.hpp"

#include "dsr/verdict.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dsr {

namespace {

Rational random_magnitude(std::mt19937_64& rng, int max_denominator) {
  uint64_t q = rng() % static_cast<uint64_t>(max_denominator) + 1;
  uint64_t p = rng() % q + 1;
  return Rational(BigInt(p), BigInt(q));
}

int permutation_parity(const std::vector<int>& perm) {
  int inversions = 0;
  for (size_t a = 0; a < perm.size(); ++a) {
    for (size_t b = a + 1; b < perm.size(); ++b) {
      if (perm[a] > perm[b]) ++inversions;
    }
  }
  return inversions % 2 == 0 ? +1 : -1;
}

}  // namespace

ConcreteMatrix sample_instance(const QualMatrix& M, const SampleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  ConcreteMatrix A(M.rows, M.cols);
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) {
      const QualEntry& e = M.at(i, j);
      if (e.fixed) {
        A.at(i, j) = *e.fixed;
        continue;
      }
      switch (e.sign) {
        case SignSet::Zero:
          break;
        case SignSet::Pos:
          A.at(i, j) = random_magnitude(rng, spec.max_denominator);
          break;
        case SignSet::Neg:
          A.at(i, j) = -random_magnitude(rng, spec.max_denominator);
          break;
        case SignSet::Unsigned:
          if (rng() % 8 == 0) break;  // lands in the Q0 closure
          A.at(i, j) = (rng() % 2 ? 1 : -1) *
                       random_magnitude(rng, spec.max_denominator);
          break;
      }
    }
  }
  return A;
}

std::vector<TermSubgraph> enumerate_term_subgraphs(const ConcreteMatrix& A,
                                                   int cap) {
  if (A.rows != A.cols) throw std::invalid_argument("matrix must be square");
  if (A.rows > cap) throw std::invalid_argument("term-subgraph cap exceeded");
  const int k = A.rows;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<TermSubgraph> out;
  do {
    Rational term = permutation_parity(perm);
    for (int i = 0; i < k && term != 0; ++i) term *= A.at(i, perm[i]);
    if (term != 0) {
      out.push_back({perm, permutation_parity(perm), term});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

namespace {

// Parities of the genuine cycles in the union of an R-to-S term subgraph of A
// (edges (i, alpha_i)) and an S-to-R one of B (edges (i, beta_i)). Components
// with alpha_i == beta_i and matching entry signs are single merged edges,
// not cycles. Returns one bool per cycle: true if e-cycle.
std::vector<bool> union_cycle_parities(const ConcreteMatrix& A,
                                       const ConcreteMatrix& B,
                                       const std::vector<int>& alpha,
                                       const std::vector<int>& beta) {
  const int k = A.rows;
  std::vector<int> alpha_inv(k);
  for (int i = 0; i < k; ++i) alpha_inv[alpha[i]] = i;
  std::vector<bool> visited(k, false), parities;
  for (int start = 0; start < k; ++start) {
    if (visited[start]) continue;
    // Walk row -> beta -> alpha^{-1} -> ... back to the starting row.
    std::vector<int> orbit;
    int r = start;
    do {
      visited[r] = true;
      orbit.push_back(r);
      r = alpha_inv[beta[r]];
    } while (r != start);
    if (orbit.size() == 1) {
      int i = orbit[0];
      if (alpha[i] == beta[i] &&
          sign_of(A.at(i, alpha[i])) == sign_of(B.at(i, beta[i]))) {
        continue;  // isolated (merged undirected) edge
      }
    }
    int sign = 1;
    for (int row : orbit) {
      sign *= sign_of(B.at(row, beta[row]));
      sign *= sign_of(A.at(alpha_inv[beta[row]], beta[row]));
    }
    int half = static_cast<int>(orbit.size());
    bool e_cycle = ((half % 2 == 0) ? sign : -sign) > 0;
    parities.push_back(e_cycle);
  }
  return parities;
}

Rational term_value(const ConcreteMatrix& M, const std::vector<int>& perm) {
  Rational t = permutation_parity(perm);
  for (int i = 0; i < M.rows; ++i) t *= M.at(i, perm[i]);
  return t;
}

}  // namespace

bool verify_prodformula(const ConcreteMatrix& A, const ConcreteMatrix& B,
                        const std::vector<int>& alpha,
                        const std::vector<int>& beta) {
  if (A.rows != A.cols || B.rows != B.cols || A.rows != B.rows) {
    throw std::invalid_argument("matrices must be square and equally sized");
  }
  Rational ta = term_value(A, alpha);
  Rational tb = term_value(B, beta);
  if (ta == 0 || tb == 0) throw std::invalid_argument("zero term supplied");
  auto parities = union_cycle_parities(A, B, alpha, beta);
  long e_count = std::count(parities.begin(), parities.end(), true);
  int expected = e_count % 2 == 0 ? +1 : -1;
  return sign_of(ta * tb) == expected;
}

bool verify_es_cancellation(const ConcreteMatrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("matrix must be square");
  const int k = A.rows;
  DsrGraph G = build_sr(qual_from_concrete(A));
  std::vector<Cycle> cycles = enumerate_cycles(G);
  std::vector<TermSubgraph> terms = enumerate_term_subgraphs(A);

  for (const Cycle& c : cycles) {
    CycleClass cls = classify(G, c);
    if (!cls.es_cycle) continue;
    // The cycle's edges as (row, column) pairs.
    std::set<std::pair<int, int>> cedges;
    for (int e : c.edges) {
      cedges.insert({G.edges[e].species, G.edges[e].interaction});
    }
    const size_t half = cedges.size() / 2;
    Rational total = 0;
    bool any = false;
    for (const TermSubgraph& t : terms) {
      std::vector<std::pair<int, int>> inside;
      for (int i = 0; i < k; ++i) {
        if (cedges.count({i, t.alpha[i]})) inside.push_back({i, t.alpha[i]});
      }
      if (inside.size() != half) continue;  // does not bisect C
      any = true;
      total += t.term;
      // Partner: swap the in-cycle half for the complementary half.
      std::vector<int> partner(k, -1);
      std::set<std::pair<int, int>> in_e(inside.begin(), inside.end());
      for (int i = 0; i < k; ++i) {
        if (!in_e.count({i, t.alpha[i]})) partner[i] = t.alpha[i];
      }
      for (const auto& [i, j] : cedges) {
        if (!in_e.count({i, j})) {
          if (partner[i] != -1) return false;  // not a matching; malformed
          partner[i] = j;
        }
      }
      for (int i = 0; i < k; ++i) {
        if (partner[i] < 0) return false;
      }
      if (term_value(A, partner) + t.term != 0) return false;
    }
    if (any && total != 0) return false;
  }
  return true;
}

std::vector<Cycle> naive_cycle_enumerator(const DsrGraph& G) {
  if (G.nS + G.nR > 12) throw std::invalid_argument("naive enumerator size cap");
  struct Arc {
    int to, edge;
  };
  std::vector<std::vector<Arc>> arcs(G.nS + G.nR);
  for (int e = 0; e < static_cast<int>(G.edges.size()); ++e) {
    const DsrEdge& ed = G.edges[e];
    if (ed.dir != Direction::StoR) arcs[G.r_vertex(ed.interaction)].push_back({ed.species, e});
    if (ed.dir != Direction::RtoS) arcs[ed.species].push_back({G.r_vertex(ed.interaction), e});
  }

  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<Cycle> out;
  std::vector<int> path_v, path_e;
  std::vector<bool> on_path(G.nS + G.nR, false);
  std::vector<bool> edge_used(G.edges.size(), false);

  // Unlike the production enumerator, walks start at every vertex and are
  // not rooted at the cycle's minimal vertex; duplicates are removed purely
  // via the canonical key.
  std::function<void()> extend = [&]() {
    int v = path_v.back();
    for (const Arc& a : arcs[v]) {
      if (edge_used[a.edge]) continue;
      if (a.to == path_v.front() && path_v.size() >= 2) {
        Cycle c;
        c.vertices = path_v;
        c.edges = path_e;
        c.edges.push_back(a.edge);
        finalize_cycle(G, c);
        if (seen.insert(c.canonical_key).second) out.push_back(std::move(c));
      }
      if (!on_path[a.to]) {
        on_path[a.to] = true;
        edge_used[a.edge] = true;
        path_v.push_back(a.to);
        path_e.push_back(a.edge);
        extend();
        path_v.pop_back();
        path_e.pop_back();
        edge_used[a.edge] = false;
        on_path[a.to] = false;
      }
    }
  };
  for (int start = 0; start < G.nS + G.nR; ++start) {
    path_v = {start};
    path_e.clear();
    on_path.assign(on_path.size(), false);
    on_path[start] = true;
    extend();
  }
  std::sort(out.begin(), out.end(), [](const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.canonical_key < b.canonical_key;
  });
  return out;
}

QualMatrix random_sign_matrix(std::mt19937_64& rng, int rows, int cols,
                              int zero_in_8, int unsigned_in_8) {
  QualMatrix M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      uint64_t roll = rng() % 8;
      if (roll < static_cast<uint64_t>(zero_in_8)) {
        M.at(i, j) = sign_entry(SignSet::Zero);
      } else if (roll < static_cast<uint64_t>(zero_in_8 + unsigned_in_8)) {
        M.at(i, j) = sign_entry(SignSet::Unsigned);
      } else {
        M.at(i, j) = sign_entry(rng() % 2 ? SignSet::Pos : SignSet::Neg);
      }
    }
  }
  return M;
}

ConcreteMatrix random_concrete_matrix(std::mt19937_64& rng, int rows, int cols,
                                      int zero_in_4, int max_abs) {
  ConcreteMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (rng() % 4 < static_cast<uint64_t>(zero_in_4)) continue;
      int64_t p = static_cast<int64_t>(rng() % static_cast<uint64_t>(max_abs)) + 1;
      int64_t q = static_cast<int64_t>(rng() % 3) + 1;
      Rational v(p, q);
      A.at(i, j) = (rng() % 2 ? v : -v);
    }
  }
  return A;
}

QualMatrix random_fixed_matrix(std::mt19937_64& rng, int rows, int cols,
                               int zero_in_4, int max_abs) {
  QualMatrix M(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (rng() % 4 < static_cast<uint64_t>(zero_in_4)) {
        M.at(i, j) = fixed_entry(Rational(0));
      } else {
        int64_t v = static_cast<int64_t>(rng() % static_cast<uint64_t>(max_abs)) + 1;
        M.at(i, j) = fixed_entry(Rational(rng() % 2 ? v : -v));
      }
    }
  }
  return M;
}

namespace {

int suite_mainthm(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    int n = static_cast<int>(rng() % 4) + 1;
    int m = static_cast<int>(rng() % 4) + 1;
    QualMatrix S = random_fixed_matrix(rng, n, m, 2, 2);
    QualMatrix V = random_sign_matrix(rng, m, n, 4, 1);
    DsrGraph G = build_dsr(S, neg_transpose(V));
    StarResult star = check_condition_star(G);
    if (star.status != StarStatus::Satisfied) continue;
    // Condition (*) holds: the minor check must not fail, and every sampled
    // Jacobian must be P0^(-).
    GenlemResult gl = check_genlem(S, V);
    if (gl.status == GenlemResult::Status::Fails) {
      ++failures;
      continue;
    }
    ConcreteMatrix S0 = sample_instance(S, SampleSpec{rng()});
    for (int s = 0; s < 20; ++s) {
      ConcreteMatrix V0 = sample_instance(V, SampleSpec{rng()});
      if (!is_P0_minus(multiply(S0, V0)).holds) {
        ++failures;
        break;
      }
    }
  }
  return failures;
}

int suite_prodformula(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    ConcreteMatrix A = random_concrete_matrix(rng, 4, 4, 1);
    ConcreteMatrix B = random_concrete_matrix(rng, 4, 4, 1);
    auto ta = enumerate_term_subgraphs(A);
    auto tb = enumerate_term_subgraphs(B);
    bool bad = false;
    for (const TermSubgraph& a : ta) {
      for (const TermSubgraph& b : tb) {
        if (!verify_prodformula(A, B, a.alpha, b.alpha)) {
          bad = true;
          break;
        }
      }
      if (bad) break;
    }
    if (bad) ++failures;
  }
  return failures;
}

int suite_allocycles(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    ConcreteMatrix A = random_concrete_matrix(rng, 4, 4, 1);
    ConcreteMatrix B = random_concrete_matrix(rng, 4, 4, 1);
    auto ta = enumerate_term_subgraphs(A);
    auto tb = enumerate_term_subgraphs(B);
    bool bad = false;
    for (const TermSubgraph& a : ta) {
      for (const TermSubgraph& b : tb) {
        auto parities = union_cycle_parities(A, B, a.alpha, b.alpha);
        bool only_o = std::none_of(parities.begin(), parities.end(),
                                   [](bool e) { return e; });
        if (only_o && a.term * b.term < 0) {
          bad = true;
          break;
        }
      }
      if (bad) break;
    }
    if (bad) ++failures;
  }
  return failures;
}

ConcreteMatrix exoneeands_instance() {
  // [[1,0,0,2],[*,*,*,0],[0,*,*,0],[1,0,0,2]] with every * set to 1.
  ConcreteMatrix A(4, 4);
  A.at(0, 0) = 1;
  A.at(0, 3) = 2;
  A.at(1, 0) = 1;
  A.at(1, 1) = 1;
  A.at(1, 2) = 1;
  A.at(2, 1) = 1;
  A.at(2, 2) = 1;
  A.at(3, 0) = 1;
  A.at(3, 3) = 2;
  return A;
}

int suite_escancel(std::mt19937_64& rng, int cases) {
  int failures = 0;
  ConcreteMatrix fixture = exoneeands_instance();
  if (!verify_es_cancellation(fixture) || det(fixture) != 0) ++failures;
  for (int t = 0; t < cases; ++t) {
    // Random matrix with one planted es-cycle: a 2x2 block of positive
    // entries with zero "determinant of labels".
    ConcreteMatrix A = random_concrete_matrix(rng, 4, 4, 2);
    int i1 = static_cast<int>(rng() % 3);
    int i2 = i1 + 1 + static_cast<int>(rng() % (3 - i1));
    int j1 = static_cast<int>(rng() % 3);
    int j2 = j1 + 1 + static_cast<int>(rng() % (3 - j1));
    Rational a = Rational(static_cast<int64_t>(rng() % 3) + 1);
    Rational b = Rational(static_cast<int64_t>(rng() % 3) + 1);
    Rational c = Rational(static_cast<int64_t>(rng() % 3) + 1);
    A.at(i1, j1) = a;
    A.at(i1, j2) = b;
    A.at(i2, j1) = c;
    A.at(i2, j2) = b * c / a;
    if (!verify_es_cancellation(A)) ++failures;
  }
  return failures;
}

int suite_cycles(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    int nS = static_cast<int>(rng() % 5) + 1;
    int nR = static_cast<int>(rng() % 5) + 1;
    QualMatrix A = random_sign_matrix(rng, nS, nR, 4, 2);
    QualMatrix B = random_sign_matrix(rng, nS, nR, 4, 2);
    DsrGraph G = build_dsr(A, B);
    auto fast = enumerate_cycles(G);
    auto naive = naive_cycle_enumerator(G);
    bool equal = fast.size() == naive.size();
    for (size_t k = 0; equal && k < fast.size(); ++k) {
      equal = fast[k].canonical_key == naive[k].canonical_key;
    }
    if (!equal) ++failures;
  }
  return failures;
}

int suite_p0sys(std::mt19937_64& rng, int cases) {
  int failures = 0;
  const Rational tol(BigInt(1), BigInt("1000000000000"));
  for (int t = 0; t < cases; ++t) {
    ConcreteMatrix A;
    for (;;) {
      int n = static_cast<int>(rng() % 4) + 1;
      A = random_concrete_matrix(rng, n, n, 1);
      if (!is_P0_minus(A).holds) break;
    }
    const int n = A.rows;
    P0Witnesses w = p0_witnesses(A);
    auto det_at = [&](const std::vector<Rational>& d) {
      ConcreteMatrix M = A;
      for (int i = 0; i < n; ++i) M.at(i, i) -= d[i];
      return det(M);
    };
    int s1 = sign_of(det_at(w.d1));
    int s2 = sign_of(det_at(w.d2));
    bool ok = s1 != 0 && s1 == -s2 && w.hi - w.lo <= tol;
    if (ok) {
      auto diag_at = [&](const Rational& l) {
        std::vector<Rational> d(n);
        for (int i = 0; i < n; ++i) d[i] = l * w.d1[i] + (1 - l) * w.d2[i];
        return d;
      };
      if (w.lo == w.hi) {
        ok = det_at(diag_at(w.lambda)) == 0;
      } else {
        int slo = sign_of(det_at(diag_at(w.lo)));
        int shi = sign_of(det_at(diag_at(w.hi)));
        ok = slo == 0 || shi == 0 || slo == -shi;
      }
    }
    if (!ok) ++failures;
  }
  return failures;
}

int suite_cauchybinet(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    int n = static_cast<int>(rng() % 5) + 1;
    int m = static_cast<int>(rng() % 5) + 1;
    ConcreteMatrix A = random_concrete_matrix(rng, n, m, 1);
    ConcreteMatrix B = random_concrete_matrix(rng, m, n, 1);
    try {
      std::vector<int> delta;
      std::function<void(int, int)> walk = [&](int pos, int next) {
        if (!delta.empty()) cauchy_binet(A, B, delta);
        if (pos >= std::min(n, m)) return;
        for (int i = next; i < n; ++i) {
          delta.push_back(i);
          walk(pos + 1, i + 1);
          delta.pop_back();
        }
      };
      walk(0, 0);
    } catch (const std::logic_error&) {
      ++failures;
    }
  }
  return failures;
}

int suite_permsigns(std::mt19937_64& rng, int cases) {
  int failures = 0;
  for (int t = 0; t < cases; ++t) {
    int k = static_cast<int>(rng() % 8) + 1;
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    // Parity from the disjoint-cycle decomposition: (-1)^{k - #cycles}.
    std::vector<bool> visited(k, false);
    int ncycles = 0;
    for (int i = 0; i < k; ++i) {
      if (visited[i]) continue;
      ++ncycles;
      int j = i;
      while (!visited[j]) {
        visited[j] = true;
        j = perm[j];
      }
    }
    int by_cycles = (k - ncycles) % 2 == 0 ? +1 : -1;
    if (permutation_parity(perm) != by_cycles) ++failures;
  }
  return failures;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"mainthm",    "prodformula", "escancel",  "cycles",
          "p0sys",      "cauchybinet", "permsigns", "allocycles"};
}

SuiteResult run_suite(const std::string& name, uint64_t seed, int cases) {
  std::mt19937_64 rng(seed);
  SuiteResult r{name, seed, cases, 0};
  if (name == "mainthm") {
    r.failures = suite_mainthm(rng, cases);
  } else if (name == "prodformula") {
    r.failures = suite_prodformula(rng, cases);
  } else if (name == "escancel") {
    r.failures = suite_escancel(rng, cases);
  } else if (name == "cycles") {
    r.failures = suite_cycles(rng, cases);
  } else if (name == "p0sys") {
    r.failures = suite_p0sys(rng, cases);
  } else if (name == "cauchybinet") {
    r.failures = suite_cauchybinet(rng, cases);
  } else if (name == "permsigns") {
    r.failures = suite_permsigns(rng, cases);
  } else if (name == "allocycles") {
    r.failures = suite_allocycles(rng, cases);
  } else {
    throw std::invalid_argument("unknown oracle suite '" + name + "'");
  }
  return r;
}

}  // namespace dsr
