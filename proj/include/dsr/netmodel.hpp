#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dsr/qualmat.hpp"

namespace dsr {

struct ParseError : std::runtime_error {
  int line;
  int col;
  ParseError(const std::string& what, int l, int c)
      : std::runtime_error("line " + std::to_string(l) + ", col " +
                           std::to_string(c) + ": " + what),
        line(l),
        col(c) {}
};

struct Term {
  Rational coeff;  // > 0
  int species;
};

struct Reaction {
  std::string name;
  std::vector<Term> reactants;
  std::vector<Term> products;
  bool reversible = false;
};

struct Modulation {
  std::string interaction;
  std::string species;
  SignSet sign;  // Pos, Neg or Unsigned
};

enum class SourceMode { Dsl, ExplicitMatrices, Jacobian };

struct NetworkModel {
  SourceMode mode = SourceMode::Dsl;
  std::vector<std::string> species;       // order of first appearance
  std::vector<std::string> interactions;  // reaction names / R1..Rm
  std::vector<Reaction> reactions;        // DSL mode only
  std::vector<Modulation> modulations;    // DSL mode only
  bool outflows_all = false;
  std::vector<int> outflows;  // species indices, sorted; empty unless declared

  // Explicit-matrix / Jacobian modes.
  QualMatrix explicit_S;  // n x m, fixed rationals
  QualMatrix explicit_V;  // m x n, sign entries
  QualMatrix jacobian;    // n x n

  int species_index(const std::string& name) const;
};

// Parses the line-oriented network DSL (see README). Throws ParseError with
// line/column information.
NetworkModel parse_network(const std::string& text);

// Compiles a model to the qualitative pair (S: n x m, V: m x n). For a
// Jacobian-mode model this is the trivial decomposition.
std::pair<QualMatrix, QualMatrix> compile_to_matrices(const NetworkModel& model);

// F = F o id: S = J (qualitative pattern; declared constants kept), V = I.
std::pair<QualMatrix, QualMatrix> trivial_decomposition(const QualMatrix& J);

// Canonical DSL emitter; compile(parse(render(m))) reproduces compile(m).
std::string render(const NetworkModel& model);

}  // namespace dsr
