#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dsr/rational.hpp"

namespace dsr {

// Sign information about a set of reals: {0}, a weakly positive set that can
// be nonzero, a weakly negative one, or a set admitting both strict signs.
enum class SignSet { Zero, Pos, Neg, Unsigned };

const char* to_string(SignSet s);

// Sign of the product of two sets.
SignSet mul(SignSet a, SignSet b);

// One entry of a qualitative matrix: a sign class, optionally pinned to an
// exact value (a declared constant, e.g. a stoichiometric coefficient).
struct QualEntry {
  SignSet sign = SignSet::Zero;
  std::optional<Rational> fixed;  // when present, sign matches sign_of(*fixed)
};

QualEntry fixed_entry(const Rational& v);
QualEntry sign_entry(SignSet s);

struct QualMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<QualEntry> data;  // row-major, rows*cols entries

  QualMatrix() = default;
  QualMatrix(int r, int c) : rows(r), cols(c), data(r * c) {}

  QualEntry& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const QualEntry& at(int i, int j) const {
    return data[static_cast<size_t>(i) * cols + j];
  }
  bool fully_fixed() const;
};

struct ConcreteMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Rational> data;  // row-major

  ConcreteMatrix() = default;
  ConcreteMatrix(int r, int c) : rows(r), cols(c), data(r * c) {}

  Rational& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
  const Rational& at(int i, int j) const {
    return data[static_cast<size_t>(i) * cols + j];
  }
};

inline constexpr int kDefaultMinorCap = 8;
inline constexpr int kDefaultP0Cap = 12;

enum class MinorSignKind { Zero, Pos, Neg, Unsigned, Unknown };

const char* to_string(MinorSignKind k);

// Result of a qualitative minor computation. `value` is present exactly when
// every entry of the submatrix is fixed.
struct MinorSign {
  MinorSignKind kind = MinorSignKind::Zero;
  std::optional<Rational> value;
};

// Sign of det(M(delta|gamma)) over the qualitative class, assuming entries
// vary independently. Unknown when |delta| exceeds the cap.
MinorSign qual_minor_sign(const QualMatrix& M, const std::vector<int>& delta,
                          const std::vector<int>& gamma,
                          int cap = kDefaultMinorCap);

// Exact determinant of a square concrete matrix (Gaussian elimination).
Rational det(const ConcreteMatrix& A);

// det(A(delta|gamma)) for a concrete matrix.
Rational minor_of(const ConcreteMatrix& A, const std::vector<int>& delta,
                  const std::vector<int>& gamma);

ConcreteMatrix multiply(const ConcreteMatrix& A, const ConcreteMatrix& B);

// The (S, V) -> (S, -V^T) step used when building DSR graphs.
QualMatrix neg_transpose(const QualMatrix& M);

// Qualitative class with every entry pinned to the concrete value.
QualMatrix qual_from_concrete(const ConcreteMatrix& A);

struct P0Result {
  bool holds = false;
  std::vector<int> witness_delta;  // lexicographically smallest violator
};

// Whether every nonempty principal minor satisfies (-1)^{|delta|} A[delta] >= 0.
P0Result is_P0_minus(const ConcreteMatrix& A, int cap = kDefaultP0Cap);

// Witnesses for "A - D takes determinants of all signs" when A is not P0^(-):
// positive diagonals d1, d2 with (-1)^n det(A - D1) > 0 and
// (-1)^n det(A - D2) < 0, and lambda in (0,1) where det(A - (l*D1+(1-l)*D2))
// changes sign, bracketed to width <= 1e-12 ([lo, hi], lambda the midpoint).
struct P0Witnesses {
  std::vector<Rational> d1, d2;  // diagonals
  Rational lambda, lo, hi;
};

P0Witnesses p0_witnesses(const ConcreteMatrix& A, int cap = kDefaultP0Cap);

// Sum over all gamma of A[delta|gamma] * B[gamma|delta]; asserts equality
// with (AB)[delta] and returns the value.
Rational cauchy_binet(const ConcreteMatrix& A, const ConcreteMatrix& B,
                      const std::vector<int>& delta);

}  // namespace dsr
