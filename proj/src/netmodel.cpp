#include "dsr/netmodel.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace dsr {

int NetworkModel::species_index(const std::string& name) const {
  for (size_t i = 0; i < species.size(); ++i) {
    if (species[i] == name) return static_cast<int>(i);
  }
  return -1;
}

namespace {

bool is_name_char(unsigned char c) {
  // Letters, digits, underscore; bytes >= 0x80 admit UTF-8 names.
  return std::isalnum(c) || c == '_' || c >= 0x80;
}

// Single-line scanner with 1-based column tracking.
struct Scanner {
  const std::string& line;
  int lineno;
  size_t pos = 0;

  void skip_ws() {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= line.size();
  }
  int col() const { return static_cast<int>(pos) + 1; }
  char peek() {
    skip_ws();
    return pos < line.size() ? line[pos] : '\0';
  }
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lineno, col());
  }
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < line.size() && is_name_char(static_cast<unsigned char>(line[pos]))) {
      ++pos;
    }
    if (pos == start) fail("expected a name");
    return line.substr(start, pos - start);
  }
  void expect(char c) {
    skip_ws();
    if (pos >= line.size() || line[pos] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos;
  }
  bool consume(const std::string& s) {
    skip_ws();
    if (line.compare(pos, s.size(), s) == 0) {
      pos += s.size();
      return true;
    }
    return false;
  }
  // A number token: digits with optional /q or .frac, no sign.
  std::string number_token() {
    skip_ws();
    size_t start = pos;
    while (pos < line.size() &&
           (std::isdigit(static_cast<unsigned char>(line[pos])) ||
            line[pos] == '/' || line[pos] == '.')) {
      ++pos;
    }
    return line.substr(start, pos - start);
  }
};

struct ParserState {
  NetworkModel model;
  std::set<std::string> species_seen;
  std::set<std::string> reaction_seen;
  std::set<std::pair<std::string, std::string>> modulate_seen;
  std::vector<std::string> outflow_names;
  bool outflows_declared = false;
  bool saw_reaction = false;

  // Pending matrix blocks, collected as raw token rows.
  std::string block;  // "", "S", "V" or "J"
  std::vector<std::vector<std::string>> rows_S, rows_V, rows_J;
  int block_line_S = 0, block_line_V = 0, block_line_J = 0;
};

int require_species(ParserState& st, Scanner& sc, const std::string& name) {
  int idx = st.model.species_index(name);
  if (idx < 0) sc.fail("unknown species '" + name + "'");
  return idx;
}

std::vector<Term> parse_side(ParserState& st, Scanner& sc) {
  std::vector<Term> terms;
  for (;;) {
    sc.skip_ws();
    Rational coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      int at = sc.col();
      std::string tok = sc.number_token();
      auto v = parse_rational(tok);
      if (!v || *v <= 0) {
        throw ParseError("stoichiometry coefficient must be a positive rational",
                         sc.lineno, at);
      }
      coeff = *v;
    }
    std::string name = sc.word();
    terms.push_back({coeff, require_species(st, sc, name)});
    if (!sc.consume("+")) break;
  }
  return terms;
}

void parse_directive_line(ParserState& st, Scanner& sc, const std::string& head) {
  NetworkModel& m = st.model;
  if (head == "species") {
    do {
      int at = sc.col();
      std::string name = sc.word();
      if (!st.species_seen.insert(name).second) {
        throw ParseError("duplicate species name '" + name + "'", sc.lineno, at);
      }
      m.species.push_back(name);
    } while (!sc.eof());
  } else if (head == "reaction") {
    int at = sc.col();
    Reaction r;
    r.name = sc.word();
    if (!st.reaction_seen.insert(r.name).second) {
      throw ParseError("duplicate reaction name '" + r.name + "'", sc.lineno, at);
    }
    sc.expect(':');
    r.reactants = parse_side(st, sc);
    if (sc.consume("<->")) {
      r.reversible = true;
    } else if (sc.consume("->")) {
      r.reversible = false;
    } else {
      sc.fail("expected '->' or '<->'");
    }
    r.products = parse_side(st, sc);
    if (!sc.eof()) sc.fail("trailing input after reaction");
    m.interactions.push_back(r.name);
    m.reactions.push_back(std::move(r));
    st.saw_reaction = true;
  } else if (head == "modulate") {
    Modulation mod;
    int at = sc.col();
    mod.interaction = sc.word();
    sc.expect(':');
    mod.species = sc.word();
    sc.expect(':');
    char c = sc.peek();
    if (c == '+') {
      mod.sign = SignSet::Pos;
    } else if (c == '-') {
      mod.sign = SignSet::Neg;
    } else if (c == '?') {
      mod.sign = SignSet::Unsigned;
    } else {
      sc.fail("expected one of '+', '-', '?'");
    }
    ++sc.pos;
    if (!sc.eof()) sc.fail("trailing input after modulate");
    if (!st.modulate_seen.insert({mod.interaction, mod.species}).second) {
      throw ParseError("conflicting influence declarations for (" +
                           mod.interaction + ", " + mod.species + ")",
                       sc.lineno, at);
    }
    m.modulations.push_back(std::move(mod));
  } else if (head == "outflows") {
    if (st.outflows_declared) sc.fail("duplicate outflows directive");
    st.outflows_declared = true;
    std::string first = sc.word();
    if (first == "all") {
      m.outflows_all = true;
    } else if (first == "none") {
      // default
    } else {
      st.outflow_names.push_back(first);
      while (!sc.eof()) st.outflow_names.push_back(sc.word());
    }
  } else if (head == "matrix") {
    std::string which = sc.word();
    sc.expect(':');
    if (which != "S" && which != "V" && which != "J") {
      sc.fail("matrix block must be one of S, V, J");
    }
    st.block = which;
    if (which == "S") st.block_line_S = sc.lineno;
    if (which == "V") st.block_line_V = sc.lineno;
    if (which == "J") st.block_line_J = sc.lineno;
  } else {
    sc.fail("unknown directive '" + head + "'");
  }
}

QualEntry parse_sign_or_rational(const std::string& tok, bool keep_fixed,
                                 int lineno, int col) {
  if (tok == "+") return sign_entry(SignSet::Pos);
  if (tok == "-") return sign_entry(SignSet::Neg);
  if (tok == "?") return sign_entry(SignSet::Unsigned);
  auto v = parse_rational(tok);
  if (!v) throw ParseError("bad matrix entry '" + tok + "'", lineno, col);
  if (keep_fixed) return fixed_entry(*v);
  int s = sign_of(*v);
  return sign_entry(s == 0 ? SignSet::Zero : (s > 0 ? SignSet::Pos : SignSet::Neg));
}

QualMatrix rows_to_matrix(const std::vector<std::vector<std::string>>& rows,
                          char kind, int lineno) {
  if (rows.empty()) throw ParseError("empty matrix block", lineno, 1);
  size_t cols = rows[0].size();
  QualMatrix M(static_cast<int>(rows.size()), static_cast<int>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw ParseError("ragged matrix rows", lineno, 1);
    }
    for (size_t j = 0; j < cols; ++j) {
      const std::string& tok = rows[i][j];
      if (kind == 'S') {
        auto v = parse_rational(tok);
        if (!v) {
          throw ParseError("matrix S entries must be rationals, got '" + tok + "'",
                           lineno, 1);
        }
        M.at(static_cast<int>(i), static_cast<int>(j)) = fixed_entry(*v);
      } else {
        M.at(static_cast<int>(i), static_cast<int>(j)) =
            parse_sign_or_rational(tok, kind == 'J', lineno, 1);
      }
    }
  }
  return M;
}

}  // namespace

NetworkModel parse_network(const std::string& text) {
  ParserState st;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) {
      raw.resize(hash);
    }
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Scanner sc{raw, lineno};
    if (sc.eof()) continue;

    // Inside a matrix block, any line starting with a directive keyword ends
    // the block; other lines are rows of entries.
    size_t mark = sc.pos;
    bool directive = false;
    std::string head;
    if (is_name_char(static_cast<unsigned char>(sc.peek())) &&
        !std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      head = sc.word();
      directive = head == "species" || head == "reaction" || head == "modulate" ||
                  head == "outflows" || head == "matrix";
    }
    if (directive) {
      st.block.clear();
      parse_directive_line(st, sc, head);
      continue;
    }
    sc.pos = mark;
    if (st.block.empty()) sc.fail("expected a directive");
    std::vector<std::string> row;
    while (!sc.eof()) {
      size_t start = sc.pos;
      while (sc.pos < raw.size() && raw[sc.pos] != ' ' && raw[sc.pos] != '\t') {
        ++sc.pos;
      }
      row.push_back(raw.substr(start, sc.pos - start));
    }
    if (st.block == "S") st.rows_S.push_back(std::move(row));
    if (st.block == "V") st.rows_V.push_back(std::move(row));
    if (st.block == "J") st.rows_J.push_back(std::move(row));
  }

  NetworkModel& m = st.model;
  bool has_S = !st.rows_S.empty(), has_V = !st.rows_V.empty(),
       has_J = !st.rows_J.empty();
  if ((has_S || has_V || has_J) && st.saw_reaction) {
    throw ParseError("reaction lines and matrix blocks are mutually exclusive",
                     lineno, 1);
  }
  if (has_J && (has_S || has_V)) {
    throw ParseError("matrix J cannot be combined with matrix S/V", lineno, 1);
  }
  if (has_S != has_V) {
    throw ParseError("matrix S and matrix V must both be present", lineno, 1);
  }

  if (has_J) {
    m.mode = SourceMode::Jacobian;
    m.jacobian = rows_to_matrix(st.rows_J, 'J', st.block_line_J);
    if (m.jacobian.rows != m.jacobian.cols) {
      throw ParseError("matrix J must be square", st.block_line_J, 1);
    }
    if (m.species.empty()) {
      for (int i = 0; i < m.jacobian.rows; ++i) {
        m.species.push_back("X" + std::to_string(i + 1));
      }
    } else if (static_cast<int>(m.species.size()) != m.jacobian.rows) {
      throw ParseError("species count does not match matrix J", st.block_line_J, 1);
    }
    for (int j = 0; j < m.jacobian.cols; ++j) {
      m.interactions.push_back("R" + std::to_string(j + 1));
    }
  } else if (has_S) {
    m.mode = SourceMode::ExplicitMatrices;
    m.explicit_S = rows_to_matrix(st.rows_S, 'S', st.block_line_S);
    m.explicit_V = rows_to_matrix(st.rows_V, 'V', st.block_line_V);
    if (m.explicit_V.rows != m.explicit_S.cols ||
        m.explicit_V.cols != m.explicit_S.rows) {
      throw ParseError("matrix V must be m x n for an n x m matrix S",
                       st.block_line_V, 1);
    }
    if (m.species.empty()) {
      for (int i = 0; i < m.explicit_S.rows; ++i) {
        m.species.push_back("S" + std::to_string(i + 1));
      }
    } else if (static_cast<int>(m.species.size()) != m.explicit_S.rows) {
      throw ParseError("species count does not match matrix S", st.block_line_S, 1);
    }
    for (int j = 0; j < m.explicit_S.cols; ++j) {
      m.interactions.push_back("R" + std::to_string(j + 1));
    }
  } else {
    m.mode = SourceMode::Dsl;
  }

  for (const std::string& name : st.outflow_names) {
    int idx = m.species_index(name);
    if (idx < 0) throw ParseError("unknown species '" + name + "' in outflows", lineno, 1);
    m.outflows.push_back(idx);
  }
  std::sort(m.outflows.begin(), m.outflows.end());
  m.outflows.erase(std::unique(m.outflows.begin(), m.outflows.end()),
                   m.outflows.end());

  // Modulations are validated here so they may precede or follow reactions.
  if (m.mode == SourceMode::Dsl) {
    for (const Modulation& mod : m.modulations) {
      if (std::find(m.interactions.begin(), m.interactions.end(),
                    mod.interaction) == m.interactions.end()) {
        throw ParseError("unknown reaction '" + mod.interaction + "' in modulate",
                         lineno, 1);
      }
      if (m.species_index(mod.species) < 0) {
        throw ParseError("unknown species '" + mod.species + "' in modulate",
                         lineno, 1);
      }
    }
  } else if (!m.modulations.empty()) {
    throw ParseError("modulate lines require reaction mode", lineno, 1);
  }
  return m;
}

std::pair<QualMatrix, QualMatrix> trivial_decomposition(const QualMatrix& J) {
  if (J.rows != J.cols) throw std::invalid_argument("Jacobian must be square");
  QualMatrix V(J.rows, J.rows);
  for (int i = 0; i < J.rows; ++i) V.at(i, i) = fixed_entry(Rational(1));
  return {J, V};
}

std::pair<QualMatrix, QualMatrix> compile_to_matrices(const NetworkModel& model) {
  if (model.mode == SourceMode::ExplicitMatrices) {
    return {model.explicit_S, model.explicit_V};
  }
  if (model.mode == SourceMode::Jacobian) {
    return trivial_decomposition(model.jacobian);
  }

  const int n = static_cast<int>(model.species.size());
  const int mm = static_cast<int>(model.reactions.size());
  QualMatrix S(n, mm), V(mm, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < mm; ++j) S.at(i, j) = fixed_entry(Rational(0));
  }
  for (int j = 0; j < mm; ++j) {
    const Reaction& r = model.reactions[j];
    std::map<int, Rational> left, right;
    for (const Term& t : r.reactants) left[t.species] += t.coeff;
    for (const Term& t : r.products) right[t.species] += t.coeff;
    std::set<int> involved;
    for (auto& [i, _] : left) involved.insert(i);
    for (auto& [i, _] : right) involved.insert(i);
    for (int i : involved) {
      Rational l = left.count(i) ? left[i] : Rational(0);
      Rational rr = right.count(i) ? right[i] : Rational(0);
      S.at(i, j) = fixed_entry(rr - l);
      SignSet infl;
      if (l > 0 && rr > 0 && l == rr) {
        // Catalyst: net stoichiometry zero, influence of unknown sign.
        infl = SignSet::Unsigned;
      } else {
        SignSet from_left = l > 0 ? SignSet::Pos : SignSet::Zero;
        SignSet from_right =
            (rr > 0 && r.reversible) ? SignSet::Neg : SignSet::Zero;
        if (from_left != SignSet::Zero && from_right != SignSet::Zero) {
          infl = SignSet::Unsigned;
        } else if (from_left != SignSet::Zero) {
          infl = from_left;
        } else {
          infl = from_right;
        }
      }
      V.at(j, i) = sign_entry(infl);
    }
  }
  for (const Modulation& mod : model.modulations) {
    int j = static_cast<int>(std::find(model.interactions.begin(),
                                       model.interactions.end(), mod.interaction) -
                             model.interactions.begin());
    int i = model.species_index(mod.species);
    V.at(j, i) = sign_entry(mod.sign);
  }
  return {S, V};
}

namespace {

std::string render_side(const NetworkModel& m, const std::vector<Term>& side) {
  std::string out;
  for (size_t k = 0; k < side.size(); ++k) {
    if (k) out += " + ";
    if (side[k].coeff != 1) out += to_string(side[k].coeff) + " ";
    out += m.species[side[k].species];
  }
  return out;
}

char sign_char(SignSet s) {
  switch (s) {
    case SignSet::Zero: return '0';
    case SignSet::Pos: return '+';
    case SignSet::Neg: return '-';
    case SignSet::Unsigned: return '?';
  }
  return '?';
}

}  // namespace

std::string render(const NetworkModel& m) {
  std::ostringstream out;
  if (!m.species.empty()) {
    out << "species";
    for (const std::string& s : m.species) out << " " << s;
    out << "\n";
  }
  if (m.mode == SourceMode::Dsl) {
    for (const Reaction& r : m.reactions) {
      out << "reaction " << r.name << ": " << render_side(m, r.reactants)
          << (r.reversible ? " <-> " : " -> ") << render_side(m, r.products)
          << "\n";
    }
    for (const Modulation& mod : m.modulations) {
      out << "modulate " << mod.interaction << ": " << mod.species << " : "
          << sign_char(mod.sign) << "\n";
    }
  } else if (m.mode == SourceMode::ExplicitMatrices) {
    out << "matrix S:\n";
    for (int i = 0; i < m.explicit_S.rows; ++i) {
      for (int j = 0; j < m.explicit_S.cols; ++j) {
        out << (j ? " " : "") << to_string(*m.explicit_S.at(i, j).fixed);
      }
      out << "\n";
    }
    out << "matrix V:\n";
    for (int i = 0; i < m.explicit_V.rows; ++i) {
      for (int j = 0; j < m.explicit_V.cols; ++j) {
        out << (j ? " " : "") << sign_char(m.explicit_V.at(i, j).sign);
      }
      out << "\n";
    }
  } else {
    out << "matrix J:\n";
    for (int i = 0; i < m.jacobian.rows; ++i) {
      for (int j = 0; j < m.jacobian.cols; ++j) {
        const QualEntry& e = m.jacobian.at(i, j);
        out << (j ? " " : "");
        if (e.fixed) {
          out << to_string(*e.fixed);
        } else {
          out << sign_char(e.sign);
        }
      }
      out << "\n";
    }
  }
  if (m.outflows_all) {
    out << "outflows all\n";
  } else if (!m.outflows.empty()) {
    out << "outflows";
    for (int i : m.outflows) out << " " << m.species[i];
    out << "\n";
  }
  return out.str();
}

}  // namespace dsr
