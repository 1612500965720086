#include "dsr/verdict.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dsr {

const char* to_string(GenlemResult::Status s) {
  switch (s) {
    case GenlemResult::Status::Holds: return "holds";
    case GenlemResult::Status::Fails: return "fails";
    case GenlemResult::Status::Unknown: return "unknown";
  }
  return "?";
}

namespace {

// Enumerates size-k subsets of {0..limit-1} in lexicographic order.
bool for_each_subset(int limit, int k,
                     const std::function<bool(const std::vector<int>&)>& fn) {
  std::vector<int> subset(k);
  std::function<bool(int, int)> walk = [&](int pos, int next) -> bool {
    if (pos == k) return fn(subset);
    for (int i = next; i <= limit - (k - pos); ++i) {
      subset[pos] = i;
      if (!walk(pos + 1, i + 1)) return false;
    }
    return true;
  };
  return walk(0, 0);
}

}  // namespace

GenlemResult check_genlem(const QualMatrix& S, const QualMatrix& V, int cap) {
  if (S.rows != V.cols || S.cols != V.rows) {
    throw std::invalid_argument("V must be m x n for an n x m matrix S");
  }
  GenlemResult result;
  const int kmax_full = std::min(S.rows, S.cols);
  const int kmax = std::min(kmax_full, cap);
  bool saw_unknown = kmax < kmax_full;

  for (int k = 1; k <= kmax; ++k) {
    bool even = k % 2 == 0;
    bool stop = false;
    for_each_subset(S.rows, k, [&](const std::vector<int>& delta) -> bool {
      return for_each_subset(S.cols, k, [&](const std::vector<int>& gamma) -> bool {
        MinorSign ms = qual_minor_sign(S, delta, gamma, cap);
        if (ms.kind == MinorSignKind::Zero) return true;
        if (ms.kind == MinorSignKind::Unknown) {
          saw_unknown = true;
          return true;
        }
        MinorSign mv = qual_minor_sign(V, gamma, delta, cap);
        if (mv.kind == MinorSignKind::Zero) return true;
        if (mv.kind == MinorSignKind::Unknown) {
          saw_unknown = true;
          return true;
        }
        // Product sign over the classes (independent entries).
        MinorSignKind prod;
        if (ms.kind == MinorSignKind::Unsigned || mv.kind == MinorSignKind::Unsigned) {
          prod = MinorSignKind::Unsigned;
        } else {
          prod = (ms.kind == mv.kind) ? MinorSignKind::Pos : MinorSignKind::Neg;
        }
        bool violates = prod == MinorSignKind::Unsigned ||
                        (even ? prod == MinorSignKind::Neg
                              : prod == MinorSignKind::Pos);
        if (violates) {
          result.status = GenlemResult::Status::Fails;
          result.witness = GenlemWitness{delta, gamma, ms.kind, mv.kind};
          stop = true;
          return false;
        }
        return true;
      });
    });
    if (stop) return result;
  }
  result.status =
      saw_unknown ? GenlemResult::Status::Unknown : GenlemResult::Status::Holds;
  return result;
}

std::vector<MotifFinding> lint_motifs(const QualMatrix& S, const QualMatrix& V) {
  if (S.rows != V.cols || S.cols != V.rows) {
    throw std::invalid_argument("V must be m x n for an n x m matrix S");
  }
  const int n = S.rows, m = S.cols;
  std::vector<MotifFinding> findings;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      bool hit = (V.at(j, i).sign == SignSet::Unsigned &&
                  S.at(i, j).sign != SignSet::Zero) ||
                 (S.at(i, j).sign == SignSet::Unsigned &&
                  V.at(j, i).sign != SignSet::Zero);
      if (hit) {
        MotifFinding f;
        f.kind = MotifFinding::Kind::OneReac;
        f.indices = {i, j};
        f.text = "species " + std::to_string(i + 1) + " has unsigned coupling with interaction " +
                 std::to_string(j + 1) + " while the paired entry is nonzero";
        findings.push_back(std::move(f));
      }
    }
  }
  // Pattern: S_ji != 0, V_kj unsigned, S_lk != 0, V_il != 0 (species j, l;
  // interactions i, k).
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      if (S.at(j, i).sign == SignSet::Zero) continue;
      for (int k = 0; k < m; ++k) {
        if (k == i || V.at(k, j).sign != SignSet::Unsigned) continue;
        for (int l = 0; l < n; ++l) {
          if (S.at(l, k).sign == SignSet::Zero) continue;
          if (V.at(i, l).sign == SignSet::Zero) continue;
          MotifFinding f;
          f.kind = MotifFinding::Kind::TwoReac;
          f.indices = {i, j, k, l};
          f.text = "interactions " + std::to_string(i + 1) + "," +
                   std::to_string(k + 1) + " and species " + std::to_string(j + 1) +
                   "," + std::to_string(l + 1) +
                   " form a feedback pattern around an unsigned influence";
          findings.push_back(std::move(f));
        }
      }
    }
  }
  return findings;
}

Report analyze(const NetworkModel& model, const AnalyzeOptions& options) {
  Report r;
  auto [S, V] = compile_to_matrices(model);
  r.S = S;
  r.V = V;
  r.graph = build_dsr(S, neg_transpose(V));
  r.graph.s_names = model.species;
  r.graph.r_names = model.interactions;
  r.star = check_condition_star(r.graph, options.cycle_cap, options.ecycle_cap);
  if (options.run_genlem && std::min(S.rows, S.cols) <= options.minor_cap) {
    r.genlem = check_genlem(S, V, options.minor_cap);
  }
  r.lints = lint_motifs(S, V);

  bool safe = r.star.status == StarStatus::Satisfied ||
              (r.genlem && r.genlem->status == GenlemResult::Status::Holds);
  bool star_violated = r.star.status == StarStatus::ViolatedENotS ||
                       r.star.status == StarStatus::ViolatedStrIntersection;
  bool genlem_fails =
      r.genlem && r.genlem->status == GenlemResult::Status::Fails;

  if (safe) {
    r.exit_code = 0;
    r.conclusions.summary =
        "The qualitative structure forbids multiple equilibria.";
    r.conclusions.n0 = "All Jacobians of the network without outflows are P0^(-).";
    r.conclusions.nplus =
        "With outflows on every species the system is injective on any "
        "rectangular domain; multiple equilibria are impossible.";
    r.conclusions.ntheta =
        "With outflows on a subset of species there are no multiple "
        "nondegenerate equilibria in the relative interior of any invariant "
        "affine subset of the state space.";
  } else if (genlem_fails || star_violated) {
    r.exit_code = 2;
    if (genlem_fails) {
      r.conclusions.summary =
          "Not a P0^(-) system; multiple equilibria cannot be excluded by "
          "these methods.";
    } else {
      r.conclusions.summary =
          "The cycle condition is violated; multiple equilibria cannot be "
          "excluded by these methods (the condition is sufficient, not "
          "necessary).";
    }
    r.conclusions.n0 = r.conclusions.nplus = r.conclusions.ntheta =
        "No guarantee: the analysis does not establish the P0^(-) property "
        "for this network form.";
  } else {
    r.exit_code = 3;
    r.conclusions.summary =
        "Inconclusive: caps or unknown minor signs prevented a decision.";
    r.conclusions.n0 = r.conclusions.nplus = r.conclusions.ntheta =
        "Undecided for this network form.";
  }
  return r;
}

namespace {

nlohmann::json cycle_json(const DsrGraph& g, const Cycle& c) {
  nlohmann::json j;
  std::vector<std::string> vs;
  for (int v : c.vertices) vs.push_back(g.vertex_name(v));
  j["vertices"] = vs;
  j["edges"] = c.edges;
  j["trace"] = cycle_to_string(g, c);
  return j;
}

std::string edge_desc(const DsrGraph& g, int e) {
  const DsrEdge& ed = g.edges[e];
  return g.s_names[ed.species] + "-" + g.r_names[ed.interaction];
}

}  // namespace

nlohmann::json report_to_json(const NetworkModel& model, const Report& report) {
  nlohmann::json j;
  j["model-summary"] = {{"species", model.species},
                        {"interactions", model.interactions},
                        {"outflows-all", model.outflows_all}};
  j["dsr-graph"] = graph_to_json(report.graph);
  nlohmann::json star;
  star["status"] = to_string(report.star.status);
  star["cycle-count"] = report.star.cycle_count;
  nlohmann::json witnesses = nlohmann::json::array();
  if (report.star.witness_cycle) {
    witnesses.push_back(cycle_json(report.graph, *report.star.witness_cycle));
  }
  if (report.star.witness_pair) {
    witnesses.push_back(cycle_json(report.graph, report.star.witness_pair->first));
    witnesses.push_back(cycle_json(report.graph, report.star.witness_pair->second));
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& comp : report.star.shared_components) {
      nlohmann::json edges = nlohmann::json::array();
      for (int e : comp) edges.push_back(edge_desc(report.graph, e));
      comps.push_back(edges);
    }
    star["shared-components"] = comps;
  }
  star["witnesses"] = witnesses;
  j["star"] = star;
  if (report.genlem) {
    nlohmann::json g;
    g["status"] = to_string(report.genlem->status);
    if (report.genlem->witness) {
      g["witness"] = {{"delta", report.genlem->witness->delta},
                      {"gamma", report.genlem->witness->gamma},
                      {"s-minor", to_string(report.genlem->witness->s_sign)},
                      {"v-minor", to_string(report.genlem->witness->v_sign)}};
    }
    g["assumptions"] = {{"independent-entries", report.genlem->assume_independent},
                        {"sign-class-V", report.genlem->assume_sign_class_V}};
    j["genlem"] = g;
  }
  nlohmann::json lints = nlohmann::json::array();
  for (const MotifFinding& f : report.lints) {
    lints.push_back({{"kind", f.kind == MotifFinding::Kind::OneReac ? "onereac"
                                                                    : "tworeac"},
                     {"indices", f.indices},
                     {"severity", "informational"},
                     {"text", f.text}});
  }
  j["lints"] = lints;
  j["conclusions"] = {{"summary", report.conclusions.summary},
                      {"N0", report.conclusions.n0},
                      {"Nplus", report.conclusions.nplus},
                      {"Ntheta", report.conclusions.ntheta}};
  j["exit-code"] = report.exit_code;
  return j;
}

std::string report_to_text(const NetworkModel& model, const Report& report) {
  std::ostringstream out;
  out << "species: " << model.species.size()
      << "  interactions: " << model.interactions.size() << "\n";
  out << "cycles: " << report.star.cycle_count
      << "  condition (*): " << to_string(report.star.status) << "\n";
  if (report.star.witness_cycle) {
    const Cycle& c = *report.star.witness_cycle;
    CycleClass cls = classify(report.graph, c);
    out << "  witness e-cycle (not an s-cycle): "
        << cycle_to_string(report.graph, c) << " (length " << c.length()
        << ", stoich "
        << (cls.stoich_inf ? std::string("inf") : to_string(cls.stoich)) << ")\n";
  }
  if (report.star.witness_pair) {
    out << "  witness e-cycle pair with S-to-R intersection:\n"
        << "    " << cycle_to_string(report.graph, report.star.witness_pair->first)
        << "\n    "
        << cycle_to_string(report.graph, report.star.witness_pair->second) << "\n";
    out << "    shared components:";
    for (const auto& comp : report.star.shared_components) {
      out << " [";
      for (size_t k = 0; k < comp.size(); ++k) {
        out << (k ? " " : "") << edge_desc(report.graph, comp[k]);
      }
      out << "]";
    }
    out << "\n";
  }
  if (report.genlem) {
    out << "minor check: " << to_string(report.genlem->status);
    if (report.genlem->witness) {
      out << "  (delta = {";
      for (size_t k = 0; k < report.genlem->witness->delta.size(); ++k) {
        out << (k ? "," : "") << report.genlem->witness->delta[k] + 1;
      }
      out << "}, gamma = {";
      for (size_t k = 0; k < report.genlem->witness->gamma.size(); ++k) {
        out << (k ? "," : "") << report.genlem->witness->gamma[k] + 1;
      }
      out << "}: S-minor " << to_string(report.genlem->witness->s_sign)
          << ", V-minor " << to_string(report.genlem->witness->v_sign) << ")";
    }
    out << "\n";
  }
  for (const MotifFinding& f : report.lints) {
    out << "lint ["
        << (f.kind == MotifFinding::Kind::OneReac ? "onereac" : "tworeac")
        << "]: " << f.text << "\n";
  }
  out << "verdict: " << report.conclusions.summary << "\n";
  out << "  N0: " << report.conclusions.n0 << "\n";
  out << "  N+: " << report.conclusions.nplus << "\n";
  out << "  Ntheta: " << report.conclusions.ntheta << "\n";
  return out.str();
}

}  // namespace dsr
