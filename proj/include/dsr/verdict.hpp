#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dsr/cyclecheck.hpp"
#include "dsr/netmodel.hpp"

namespace dsr {

struct GenlemWitness {
  std::vector<int> delta;  // rows of S
  std::vector<int> gamma;  // columns of S
  MinorSignKind s_sign = MinorSignKind::Zero;
  MinorSignKind v_sign = MinorSignKind::Zero;
};

// Result of the direct minor-sign check: S[delta|gamma] V[gamma|delta]
// contained in (-1)^{|delta|} R>=0 for all equally sized index sets.
struct GenlemResult {
  enum class Status { Holds, Fails, Unknown };
  Status status = Status::Unknown;
  std::optional<GenlemWitness> witness;  // present iff Fails
  bool assume_independent = true;
  bool assume_sign_class_V = true;
};

const char* to_string(GenlemResult::Status s);

GenlemResult check_genlem(const QualMatrix& S, const QualMatrix& V,
                          int cap = kDefaultMinorCap);

struct MotifFinding {
  enum class Kind { OneReac, TwoReac };
  Kind kind;
  std::vector<int> indices;  // onereac: {i, j}; tworeac: {i, j, k, l}
  std::string text;
};

// Forbidden-motif lints: an unsigned influence paired with a nonzero
// stoichiometric entry (onereac), and the two-interaction feedback pattern
// around an unsigned influence (tworeac). Informational only.
std::vector<MotifFinding> lint_motifs(const QualMatrix& S, const QualMatrix& V);

struct AnalyzeOptions {
  long long cycle_cap = kDefaultCycleCap;
  long long ecycle_cap = kDefaultECycleCap;
  int minor_cap = kDefaultMinorCap;
  bool run_genlem = true;
};

struct Conclusions {
  std::string summary;
  std::string n0;      // network without outflows
  std::string nplus;   // network with outflows on every species
  std::string ntheta;  // network with outflows on a subset theta
};

struct Report {
  QualMatrix S, V;
  DsrGraph graph;
  StarResult star;
  std::optional<GenlemResult> genlem;
  std::vector<MotifFinding> lints;
  Conclusions conclusions;
  int exit_code = 0;  // 0 safe, 2 violated/fails, 3 inconclusive
};

Report analyze(const NetworkModel& model, const AnalyzeOptions& options = {});

nlohmann::json report_to_json(const NetworkModel& model, const Report& report);
std::string report_to_text(const NetworkModel& model, const Report& report);

}  // namespace dsr
