#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dsr/qualmat.hpp"

namespace dsr {

// Edge label: |entry| when the first matrix-set entry is a fixed nonzero
// constant, otherwise infinity.
struct EdgeLabel {
  bool inf = true;
  Rational value;  // meaningful only when !inf; always > 0

  bool operator==(const EdgeLabel& o) const {
    return inf == o.inf && (inf || value == o.value);
  }
};

enum class Direction { RtoS, StoR, Both };

const char* to_string(Direction d);

struct DsrEdge {
  int species = 0;      // S-vertex index
  int interaction = 0;  // R-vertex index
  int sign = +1;        // +1 or -1
  EdgeLabel label;
  Direction dir = Direction::Both;
};

// Signed, labelled, bipartite multigraph on S-vertices (species) and
// R-vertices (interactions). Edges are canonically ordered by
// (species, interaction, sign, direction).
struct DsrGraph {
  int nS = 0;
  int nR = 0;
  std::vector<std::string> s_names;  // defaults S1..Sn
  std::vector<std::string> r_names;  // defaults R1..Rm
  std::vector<DsrEdge> edges;
  std::string provenance;

  // Global vertex ids: species i -> i, interaction j -> nS + j.
  int s_vertex(int i) const { return i; }
  int r_vertex(int j) const { return nS + j; }
  bool is_species_vertex(int v) const { return v < nS; }
  std::string vertex_name(int v) const {
    return v < nS ? s_names[v] : r_names[v - nS];
  }
};

// SR graph of a single matrix-set: all edges undirected (direction Both).
DsrGraph build_sr(const QualMatrix& M);

// DSR graph of a pair of equally sized matrix-sets; callers analyzing a
// network pass A = S and B = -V^T. A-edges run R-to-S, B-edges S-to-R, and
// same-signed overlaps merge into undirected edges labelled from A.
DsrGraph build_dsr(const QualMatrix& A, const QualMatrix& B);

// Deterministic DOT rendering: dashed = negative, solid = positive, directed
// edges get arrowheads, label suppressed when 1, "inf" for infinity.
std::string export_dot(const DsrGraph& G);

nlohmann::json graph_to_json(const DsrGraph& G);

std::string label_to_string(const EdgeLabel& l);

}  // namespace dsr
