#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dsr/cyclecheck.hpp"
#include "dsr/qualmat.hpp"

namespace dsr {

// Reproducible sampling of concrete members of a qualitative class.
struct SampleSpec {
  uint64_t seed = 0;
  int max_denominator = 1000;  // nonfixed magnitudes drawn from (0,1]
};

// Fixed entries copied exactly; Pos/Neg entries drawn with the required
// strict sign; Unsigned entries zero with probability 1/8, otherwise either
// sign. Output lies in the weak closure Q0 of the class.
ConcreteMatrix sample_instance(const QualMatrix& M, const SampleSpec& spec);

// A nonzero determinant-expansion term of a concrete square matrix: the
// permutation, its parity, the term value P(alpha) * prod A(i, alpha_i).
struct TermSubgraph {
  std::vector<int> alpha;
  int perm_sign = +1;
  Rational term;
};

std::vector<TermSubgraph> enumerate_term_subgraphs(const ConcreteMatrix& A,
                                                   int cap = 8);

// Checks the product-sign relation for a pair of oppositely directed term
// subgraphs: sign(T_alpha * T_beta) = (-1)^{#e-cycles in the union}.
// Both terms must be nonzero.
bool verify_prodformula(const ConcreteMatrix& A, const ConcreteMatrix& B,
                        const std::vector<int>& alpha,
                        const std::vector<int>& beta);

// For every es-cycle C of the SR graph of A, the determinant terms whose
// subgraphs bisect C cancel pairwise (E paired with (E\C) u (C\E)) and sum
// to exactly zero.
bool verify_es_cancellation(const ConcreteMatrix& A);

// Independent exhaustive walk-based cycle enumerator (tests only).
std::vector<Cycle> naive_cycle_enumerator(const DsrGraph& G);

// Random generators shared by the oracle suites and the test-suite property
// checks. All derive from std::mt19937_64 on the given seed.
QualMatrix random_sign_matrix(std::mt19937_64& rng, int rows, int cols,
                              int zero_in_8, int unsigned_in_8);
ConcreteMatrix random_concrete_matrix(std::mt19937_64& rng, int rows, int cols,
                                      int zero_in_4, int max_abs = 3);
QualMatrix random_fixed_matrix(std::mt19937_64& rng, int rows, int cols,
                               int zero_in_4, int max_abs = 3);

struct SuiteResult {
  std::string name;
  uint64_t seed = 0;
  int cases = 0;
  int failures = 0;
};

// Named suites: mainthm, prodformula, escancel, cycles, p0sys, cauchybinet,
// permsigns, allocycles. Throws std::invalid_argument on an unknown name.
SuiteResult run_suite(const std::string& name, uint64_t seed, int cases);

std::vector<std::string> suite_names();

}  // namespace dsr
