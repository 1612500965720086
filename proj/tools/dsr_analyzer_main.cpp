#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dsr/netmodel.hpp"
#include "dsr/oracle.hpp"
#include "dsr/verdict.hpp"

namespace {

using dsr::AnalyzeOptions;
using nlohmann::json;

struct Config {
  std::string input = "-";
  long long cycle_cap = dsr::kDefaultCycleCap;
  int minor_cap = dsr::kDefaultMinorCap;
  uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  std::string suite;
  int cases = 100;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + cfg.out + "'");
  f << text;
  if (!text.empty() && text.back() != '\n') f << '\n';
}

json matrix_json(const dsr::QualMatrix& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows; ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols; ++j) {
      const dsr::QualEntry& e = M.at(i, j);
      json cell;
      cell["sign"] = dsr::to_string(e.sign);
      if (e.fixed) cell["value"] = dsr::to_string(*e.fixed);
      row.push_back(cell);
    }
    rows.push_back(row);
  }
  return rows;
}

std::string matrix_text(const dsr::QualMatrix& M) {
  std::ostringstream os;
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) {
      const dsr::QualEntry& e = M.at(i, j);
      if (j) os << ' ';
      if (e.fixed) {
        os << dsr::to_string(*e.fixed);
      } else {
        switch (e.sign) {
          case dsr::SignSet::Zero: os << '0'; break;
          case dsr::SignSet::Pos: os << '+'; break;
          case dsr::SignSet::Neg: os << '-'; break;
          case dsr::SignSet::Unsigned: os << '?'; break;
        }
      }
    }
    os << '\n';
  }
  return os.str();
}

int cmd_check(const Config& cfg) {
  dsr::NetworkModel model = dsr::parse_network(read_input(cfg.input));
  AnalyzeOptions opts;
  opts.cycle_cap = cfg.cycle_cap;
  opts.ecycle_cap = std::min<long long>(cfg.cycle_cap, dsr::kDefaultECycleCap);
  if (cfg.cycle_cap != dsr::kDefaultCycleCap) opts.ecycle_cap = cfg.cycle_cap;
  opts.minor_cap = cfg.minor_cap;
  dsr::Report rep = dsr::analyze(model, opts);
  if (cfg.format == "json") {
    emit(cfg, dsr::report_to_json(model, rep).dump(2));
  } else {
    emit(cfg, dsr::report_to_text(model, rep));
  }
  return rep.exit_code;
}

int cmd_dot(const Config& cfg) {
  dsr::NetworkModel model = dsr::parse_network(read_input(cfg.input));
  auto [S, V] = dsr::compile_to_matrices(model);
  dsr::DsrGraph G = dsr::build_dsr(S, dsr::neg_transpose(V));
  G.s_names = model.species;
  G.r_names = model.interactions;
  emit(cfg, dsr::export_dot(G));
  return 0;
}

int cmd_lint(const Config& cfg) {
  dsr::NetworkModel model = dsr::parse_network(read_input(cfg.input));
  auto [S, V] = dsr::compile_to_matrices(model);
  std::vector<dsr::MotifFinding> findings = dsr::lint_motifs(S, V);
  if (cfg.format == "json") {
    json out = json::array();
    for (const auto& f : findings) {
      out.push_back({{"kind", f.kind == dsr::MotifFinding::Kind::OneReac
                                  ? "onereac"
                                  : "tworeac"},
                     {"indices", f.indices},
                     {"text", f.text}});
    }
    emit(cfg, out.dump(2));
  } else {
    std::ostringstream os;
    if (findings.empty()) {
      os << "no findings\n";
    } else {
      for (const auto& f : findings) os << f.text << '\n';
    }
    emit(cfg, os.str());
  }
  return 0;
}

int cmd_matrices(const Config& cfg) {
  dsr::NetworkModel model = dsr::parse_network(read_input(cfg.input));
  auto [S, V] = dsr::compile_to_matrices(model);
  if (cfg.format == "json") {
    json out;
    out["S"] = matrix_json(S);
    out["V"] = matrix_json(V);
    emit(cfg, out.dump(2));
  } else {
    std::ostringstream os;
    os << "S (" << S.rows << "x" << S.cols << "):\n" << matrix_text(S);
    os << "V (" << V.rows << "x" << V.cols << "):\n" << matrix_text(V);
    emit(cfg, os.str());
  }
  return 0;
}

int cmd_oracle(const Config& cfg) {
  std::vector<std::string> names;
  if (cfg.suite.empty() || cfg.suite == "all") {
    names = dsr::suite_names();
  } else {
    names = {cfg.suite};
  }
  int total_failures = 0;
  json jsuites = json::array();
  std::ostringstream os;
  for (const std::string& name : names) {
    dsr::SuiteResult r = dsr::run_suite(name, cfg.seed, cfg.cases);
    total_failures += r.failures;
    os << r.name << ": " << (r.cases - r.failures) << "/" << r.cases
       << " pass (seed " << r.seed << ")\n";
    jsuites.push_back({{"suite", r.name},
                       {"seed", r.seed},
                       {"cases", r.cases},
                       {"failures", r.failures}});
  }
  if (cfg.format == "json") {
    emit(cfg, json{{"suites", jsuites}, {"failures", total_failures}}.dump(2));
  } else {
    emit(cfg, os.str());
  }
  return total_failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  if (const char* env = std::getenv("DSR_ANALYZER_CAP")) {
    try {
      long long v = std::stoll(env);
      if (v > 0) cfg.cycle_cap = v;
    } catch (...) {
      std::cerr << "error: invalid DSR_ANALYZER_CAP '" << env << "'\n";
      return 1;
    }
  }

  CLI::App app{"Qualitative interaction-network analyzer: decides from sign "
               "structure whether a network forbids multiple equilibria"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool with_input) {
    sub->add_option("--cycle-cap", cfg.cycle_cap, "max cycles to enumerate")
        ->check(CLI::PositiveNumber);
    sub->add_option("--minor-cap", cfg.minor_cap, "max minor order")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", cfg.out, "write output to PATH");
    if (with_input) {
      sub->add_option("input", cfg.input, "network file or - for stdin");
    }
  };

  CLI::App* check = app.add_subcommand("check", "analyze a network");
  add_common(check, true);
  CLI::App* dot = app.add_subcommand("dot", "export the DSR graph as DOT");
  add_common(dot, true);
  CLI::App* lint = app.add_subcommand("lint", "report forbidden motifs");
  add_common(lint, true);
  CLI::App* matrices =
      app.add_subcommand("matrices", "print the compiled matrix pair");
  add_common(matrices, true);
  CLI::App* oracle = app.add_subcommand("oracle", "run brute-force suites");
  add_common(oracle, false);
  oracle->add_option("suite", cfg.suite, "suite name or 'all'");
  oracle->add_option("--cases", cfg.cases, "cases per suite")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (check->parsed()) return cmd_check(cfg);
    if (dot->parsed()) return cmd_dot(cfg);
    if (lint->parsed()) return cmd_lint(cfg);
    if (matrices->parsed()) return cmd_matrices(cfg);
    if (oracle->parsed()) return cmd_oracle(cfg);
  } catch (const dsr::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
