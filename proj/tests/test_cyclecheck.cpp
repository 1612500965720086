#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "dsr/cyclecheck.hpp"
#include "dsr/netmodel.hpp"
#include "dsr/oracle.hpp"

using namespace dsr;

namespace {

DsrGraph graph_of(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  NetworkModel m = parse_network(ss.str());
  auto [S, V] = compile_to_matrices(m);
  DsrGraph g = build_dsr(S, neg_transpose(V));
  g.s_names = m.species;
  g.r_names = m.interactions;
  return g;
}

std::string fx(const char* name) {
  return std::string(FIXTURE_DIR "/") + name;
}

}  // namespace

TEST_CASE("ring oscillator has a single negative long cycle") {
  DsrGraph g = graph_of(fx("repressilator.net"));
  auto cycles = enumerate_cycles(g);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].length() == 12);
  CycleClass c = classify(g, cycles[0]);
  CHECK(c.sign == -1);
  CHECK(!c.e_cycle);
  CHECK(!c.es_cycle);
}

TEST_CASE("parity dichotomy and the length-2 case") {
  // A single Unsigned-vs-Unsigned entry yields a parallel pair of undirected
  // edges and exactly one length-2 cycle; such cycles are always e-cycles and
  // never s-cycles (both labels infinite).
  QualMatrix A(1, 1), B(1, 1);
  A.at(0, 0) = sign_entry(SignSet::Unsigned);
  B.at(0, 0) = sign_entry(SignSet::Unsigned);
  DsrGraph g = build_dsr(A, B);
  REQUIRE(g.edges.size() == 2);
  auto cycles = enumerate_cycles(g);
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].length() == 2);
  CycleClass c = classify(g, cycles[0]);
  CHECK(c.e_cycle);
  CHECK(c.stoich_inf);
  CHECK(!c.s_cycle);
}

TEST_CASE("stoichiometry difference of a fixed alternating cycle") {
  // S = [[1,2],[1,1]] against V = -S^T gives all-undirected edges and one
  // 4-cycle with label products 1*1 and 2*1.
  QualMatrix S(2, 2);
  S.at(0, 0) = fixed_entry(Rational(1));
  S.at(0, 1) = fixed_entry(Rational(2));
  S.at(1, 0) = fixed_entry(Rational(1));
  S.at(1, 1) = fixed_entry(Rational(1));
  QualMatrix V = neg_transpose(S);
  DsrGraph g = build_dsr(S, neg_transpose(V));
  auto cycles = enumerate_cycles(g);
  REQUIRE(cycles.size() == 1);
  CycleClass c = classify(g, cycles[0]);
  CHECK(!c.stoich_inf);
  CHECK(c.stoich == Rational(1));
  CHECK(!c.s_cycle);

  // Equal products instead: an s-cycle.
  S.at(0, 1) = fixed_entry(Rational(1));
  g = build_dsr(S, neg_transpose(neg_transpose(S)));
  cycles = enumerate_cycles(g);
  REQUIRE(cycles.size() == 1);
  CHECK(classify(g, cycles[0]).s_cycle);
}

TEST_CASE("canonicalization is rotation invariant") {
  DsrGraph g = graph_of(fx("storeq.net"));
  auto cycles = enumerate_cycles(g);
  REQUIRE(!cycles.empty());
  for (const Cycle& c : cycles) {
    for (size_t r = 1; r < c.vertices.size(); ++r) {
      Cycle rot;
      for (size_t k = 0; k < c.vertices.size(); ++k) {
        rot.vertices.push_back(c.vertices[(k + r) % c.vertices.size()]);
        rot.edges.push_back(c.edges[(k + r) % c.edges.size()]);
      }
      finalize_cycle(g, rot);
      CHECK(rot.canonical_key == c.canonical_key);
    }
  }
}

TEST_CASE("two es-cycles meeting in a single edge") {
  DsrGraph g = graph_of(fx("storeq.net"));
  auto cycles = enumerate_cycles(g);
  REQUIRE(cycles.size() == 2);
  CHECK(classify(g, cycles[0]).es_cycle);
  CHECK(classify(g, cycles[1]).es_cycle);
  IntersectResult r = s_to_r_intersection(g, cycles[0], cycles[1]);
  CHECK(r.yes);
  REQUIRE(r.components.size() == 1);
  REQUIRE(r.components[0].size() == 1);
  const DsrEdge& e = g.edges[r.components[0][0]];
  CHECK(e.species == 2);
  CHECK(e.interaction == 2);
  StarResult star = check_condition_star(g);
  CHECK(star.status == StarStatus::ViolatedStrIntersection);
}

TEST_CASE("incompatibly oriented es-cycles do not intersect") {
  DsrGraph g = graph_of(fx("orientation.net"));
  auto cycles = enumerate_cycles(g);
  std::vector<Cycle> es;
  for (const Cycle& c : cycles) {
    if (classify(g, c).es_cycle) es.push_back(c);
  }
  REQUIRE(es.size() == 2);
  IntersectResult r = s_to_r_intersection(g, es[0], es[1]);
  CHECK(!r.yes);
  CHECK(r.reason == NoIntersectReason::IncompatibleOrientation);
  CHECK(check_condition_star(g).status == StarStatus::Satisfied);
}

TEST_CASE("disjoint cycles have no intersection") {
  // Two independent reversible conversions: block-diagonal structure.
  NetworkModel m = parse_network(
      "species A B C D\n"
      "reaction R1: A <-> B\n"
      "reaction R2: C <-> D\n"
      "modulate R1: B : ?\n"
      "modulate R2: D : ?\n");
  auto [S, V] = compile_to_matrices(m);
  DsrGraph g = build_dsr(S, neg_transpose(V));
  auto cycles = enumerate_cycles(g);
  REQUIRE(cycles.size() == 2);
  IntersectResult r = s_to_r_intersection(g, cycles[0], cycles[1]);
  CHECK(!r.yes);
  CHECK(r.reason == NoIntersectReason::Disjoint);
}

TEST_CASE("cap enumeration throws with a partial count") {
  DsrGraph g = graph_of(fx("tca_d.net"));
  CHECK_THROWS_AS(enumerate_cycles(g, 3), CapExceeded);
  auto all = enumerate_cycles(g);
  CHECK(all.size() == 15);
}

TEST_CASE("exhaustive enumerator matches the independent walker") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 60; ++t) {
    QualMatrix A = random_sign_matrix(rng, 4, 4, 4, 2);
    QualMatrix B = random_sign_matrix(rng, 4, 4, 4, 2);
    DsrGraph g = build_dsr(A, B);
    auto fast = enumerate_cycles(g);
    auto naive = naive_cycle_enumerator(g);
    REQUIRE(fast.size() == naive.size());
    for (size_t k = 0; k < fast.size(); ++k) {
      CHECK(fast[k].canonical_key == naive[k].canonical_key);
    }
  }
}
