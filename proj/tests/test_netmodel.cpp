#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dsr/netmodel.hpp"

using namespace dsr;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool same_entry(const QualEntry& a, const QualEntry& b) {
  if (a.sign != b.sign) return false;
  if (a.fixed.has_value() != b.fixed.has_value()) return false;
  return !a.fixed || *a.fixed == *b.fixed;
}

bool same_matrix(const QualMatrix& a, const QualMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (size_t k = 0; k < a.data.size(); ++k) {
    if (!same_entry(a.data[k], b.data[k])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("reaction DSL compiles to the expected matrix pair") {
  NetworkModel m = parse_network(
      "species A B C D\n"
      "reaction R1: A + C <-> B + C\n"
      "reaction R2: C <-> D\n");
  CHECK(m.mode == SourceMode::Dsl);
  CHECK(m.species == std::vector<std::string>{"A", "B", "C", "D"});
  auto [S, V] = compile_to_matrices(m);
  REQUIRE(S.rows == 4);
  REQUIRE(S.cols == 2);
  CHECK(*S.at(0, 0).fixed == Rational(-1));  // A consumed by R1
  CHECK(*S.at(1, 0).fixed == Rational(1));   // B produced
  CHECK(*S.at(2, 0).fixed == Rational(0));   // C catalytic
  CHECK(*S.at(2, 1).fixed == Rational(-1));
  CHECK(*S.at(3, 1).fixed == Rational(1));
  CHECK(V.at(0, 0).sign == SignSet::Pos);       // reactant of R1
  CHECK(V.at(0, 1).sign == SignSet::Neg);       // reversible product
  CHECK(V.at(0, 2).sign == SignSet::Unsigned);  // catalyst
  CHECK(V.at(1, 2).sign == SignSet::Pos);
  CHECK(V.at(1, 3).sign == SignSet::Neg);
  CHECK(V.at(1, 0).sign == SignSet::Zero);
}

TEST_CASE("modulate overrides the inferred influence") {
  NetworkModel m = parse_network(
      "species A B\n"
      "reaction R1: A -> B\n"
      "modulate R1: B : -\n");
  auto [S, V] = compile_to_matrices(m);
  CHECK(V.at(0, 1).sign == SignSet::Neg);
  // Irreversible product has no influence without the modulation.
  NetworkModel plain = parse_network("species A B\nreaction R1: A -> B\n");
  CHECK(compile_to_matrices(plain).second.at(0, 1).sign == SignSet::Zero);
}

TEST_CASE("stoichiometric coefficients accumulate") {
  NetworkModel m = parse_network("species A B\nreaction R1: 2 A -> 3/2 B\n");
  auto [S, V] = compile_to_matrices(m);
  CHECK(*S.at(0, 0).fixed == Rational(-2));
  CHECK(*S.at(1, 0).fixed == Rational(3, 2));
}

TEST_CASE("explicit matrix mode") {
  NetworkModel m = parse_network(
      "matrix S:\n1 0\n-1 2\nmatrix V:\n+ -\n0 ?\n");
  CHECK(m.mode == SourceMode::ExplicitMatrices);
  CHECK(m.species == std::vector<std::string>{"S1", "S2"});
  CHECK(m.interactions == std::vector<std::string>{"R1", "R2"});
  auto [S, V] = compile_to_matrices(m);
  CHECK(*S.at(1, 1).fixed == Rational(2));
  CHECK(V.at(1, 1).sign == SignSet::Unsigned);
}

TEST_CASE("Jacobian mode uses the trivial decomposition") {
  NetworkModel m = parse_network("matrix J:\n- +\n0 -\n");
  CHECK(m.mode == SourceMode::Jacobian);
  auto [S, V] = compile_to_matrices(m);
  CHECK(S.at(0, 1).sign == SignSet::Pos);
  CHECK(*V.at(0, 0).fixed == Rational(1));
  CHECK(V.at(0, 1).sign == SignSet::Zero);
}

TEST_CASE("parse errors carry locations") {
  CHECK_THROWS_AS(parse_network("bogus directive\n"), ParseError);
  try {
    parse_network("species A\nreaction R1: A -> Q\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find("unknown species") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_network("species A A\n"), ParseError);
  CHECK_THROWS_AS(parse_network("matrix S:\n1 2\n"), ParseError);  // missing V
  CHECK_THROWS_AS(parse_network("matrix J:\n1 2\n"), ParseError);  // not square
  CHECK_THROWS_AS(
      parse_network("species A\nreaction R1: A -> A\nmodulate R1: A : +\n"
                    "modulate R1: A : -\n"),
      ParseError);
}

TEST_CASE("outflow declarations") {
  NetworkModel m = parse_network("species A B\nreaction R1: A -> B\noutflows all\n");
  CHECK(m.outflows_all);
  NetworkModel m2 =
      parse_network("species A B\nreaction R1: A -> B\noutflows B\n");
  CHECK(m2.outflows == std::vector<int>{1});
}

TEST_CASE("render round-trips through the compiler") {
  for (const char* name :
       {"tca_d.net", "srone.net", "storeq.net", "jacobian_61.net",
        "repressilator.net", "figreversible_a.net"}) {
    NetworkModel m = parse_network(slurp(std::string(FIXTURE_DIR "/") + name));
    NetworkModel again = parse_network(render(m));
    auto [s1, v1] = compile_to_matrices(m);
    auto [s2, v2] = compile_to_matrices(again);
    CHECK(same_matrix(s1, s2));
    CHECK(same_matrix(v1, v2));
  }
}
