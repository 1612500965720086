#include "dsr/dsrgraph.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace dsr {

const char* to_string(Direction d) {
  switch (d) {
    case Direction::RtoS: return "RtoS";
    case Direction::StoR: return "StoR";
    case Direction::Both: return "both";
  }
  return "?";
}

std::string label_to_string(const EdgeLabel& l) {
  return l.inf ? "inf" : to_string(l.value);
}

namespace {

struct StrictSigns {
  bool pos = false;
  bool neg = false;
};

// Strict signs realizable by a qualitative entry.
StrictSigns realizable(const QualEntry& e) {
  switch (e.sign) {
    case SignSet::Zero: return {false, false};
    case SignSet::Pos: return {true, false};
    case SignSet::Neg: return {false, true};
    case SignSet::Unsigned: return {true, true};
  }
  return {false, false};
}

EdgeLabel label_from(const QualEntry& e) {
  if (e.fixed && *e.fixed != 0) {
    return EdgeLabel{false, abs(*e.fixed)};
  }
  return EdgeLabel{true, Rational()};
}

void default_names(DsrGraph& g) {
  g.s_names.resize(g.nS);
  g.r_names.resize(g.nR);
  for (int i = 0; i < g.nS; ++i) g.s_names[i] = "S" + std::to_string(i + 1);
  for (int j = 0; j < g.nR; ++j) g.r_names[j] = "R" + std::to_string(j + 1);
}

void canonical_sort(std::vector<DsrEdge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const DsrEdge& a, const DsrEdge& b) {
    return std::tuple(a.species, a.interaction, a.sign, static_cast<int>(a.dir)) <
           std::tuple(b.species, b.interaction, b.sign, static_cast<int>(b.dir));
  });
}

}  // namespace

DsrGraph build_sr(const QualMatrix& M) {
  DsrGraph g;
  g.nS = M.rows;
  g.nR = M.cols;
  g.provenance = "SR graph of a single matrix-set";
  default_names(g);
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) {
      const QualEntry& e = M.at(i, j);
      StrictSigns s = realizable(e);
      if (s.pos) g.edges.push_back({i, j, +1, label_from(e), Direction::Both});
      if (s.neg) g.edges.push_back({i, j, -1, label_from(e), Direction::Both});
    }
  }
  canonical_sort(g.edges);
  return g;
}

DsrGraph build_dsr(const QualMatrix& A, const QualMatrix& B) {
  if (A.rows != B.rows || A.cols != B.cols) {
    throw std::invalid_argument("DSR pair must have equal dimensions");
  }
  DsrGraph g;
  g.nS = A.rows;
  g.nR = A.cols;
  g.provenance = "DSR graph of a matrix-set pair";
  default_names(g);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) {
      StrictSigns sa = realizable(A.at(i, j));
      StrictSigns sb = realizable(B.at(i, j));
      EdgeLabel la = label_from(A.at(i, j));
      for (int sgn : {+1, -1}) {
        bool in_a = sgn > 0 ? sa.pos : sa.neg;
        bool in_b = sgn > 0 ? sb.pos : sb.neg;
        if (in_a && in_b) {
          g.edges.push_back({i, j, sgn, la, Direction::Both});
        } else if (in_a) {
          g.edges.push_back({i, j, sgn, la, Direction::RtoS});
        } else if (in_b) {
          g.edges.push_back({i, j, sgn, EdgeLabel{true, Rational()},
                             Direction::StoR});
        }
      }
    }
  }
  canonical_sort(g.edges);
  return g;
}

std::string export_dot(const DsrGraph& G) {
  std::ostringstream out;
  out << "digraph dsr {\n";
  out << "  rankdir=LR;\n";
  out << "  node [fontsize=11];\n";
  for (int i = 0; i < G.nS; ++i) {
    out << "  s" << i << " [label=\"" << G.s_names[i] << "\" shape=ellipse];\n";
  }
  for (int j = 0; j < G.nR; ++j) {
    out << "  r" << j << " [label=\"" << G.r_names[j] << "\" shape=box];\n";
  }
  for (const DsrEdge& e : G.edges) {
    std::string s = "s" + std::to_string(e.species);
    std::string r = "r" + std::to_string(e.interaction);
    std::string from = s, to = r;
    std::string dirattr;
    switch (e.dir) {
      case Direction::RtoS:
        from = r;
        to = s;
        break;
      case Direction::StoR:
        break;
      case Direction::Both:
        dirattr = " dir=none";
        break;
    }
    std::string style = e.sign < 0 ? " style=dashed" : "";
    std::string lab;
    if (e.label.inf) {
      lab = " label=\"inf\"";
    } else if (e.label.value != 1) {
      lab = " label=\"" + to_string(e.label.value) + "\"";
    }
    out << "  " << from << " -> " << to << " [" << "arrowhead="
        << (e.dir == Direction::Both ? "none" : "normal") << dirattr << style
        << lab << "];\n";
  }
  out << "}\n";
  return out.str();
}

nlohmann::json graph_to_json(const DsrGraph& G) {
  nlohmann::json j;
  j["species"] = G.s_names;
  j["interactions"] = G.r_names;
  j["provenance"] = G.provenance;
  nlohmann::json edges = nlohmann::json::array();
  for (const DsrEdge& e : G.edges) {
    edges.push_back({{"species", G.s_names[e.species]},
                     {"interaction", G.r_names[e.interaction]},
                     {"sign", e.sign},
                     {"label", label_to_string(e.label)},
                     {"direction", to_string(e.dir)}});
  }
  j["edges"] = edges;
  return j;
}

}  // namespace dsr
