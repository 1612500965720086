#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dsr/oracle.hpp"
#include "dsr/qualmat.hpp"

using namespace dsr;

namespace {

QualMatrix signs(int rows, int cols, const std::vector<SignSet>& s) {
  QualMatrix M(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) M.at(i, j) = sign_entry(s[i * cols + j]);
  return M;
}

ConcreteMatrix conc(int rows, int cols, const std::vector<int>& v) {
  ConcreteMatrix A(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) A.at(i, j) = v[i * cols + j];
  return A;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(*parse_rational("3/4") == Rational(3, 4));
  CHECK(*parse_rational("-2") == Rational(-2));
  CHECK(*parse_rational("0.25") == Rational(1, 4));
  CHECK(!parse_rational("abc"));
  CHECK(to_string(Rational(-3, 7)) == "-3/7");
  CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("sign-set product table") {
  CHECK(mul(SignSet::Pos, SignSet::Neg) == SignSet::Neg);
  CHECK(mul(SignSet::Neg, SignSet::Neg) == SignSet::Pos);
  CHECK(mul(SignSet::Unsigned, SignSet::Pos) == SignSet::Unsigned);
  CHECK(mul(SignSet::Zero, SignSet::Unsigned) == SignSet::Zero);
}

TEST_CASE("exact determinant") {
  CHECK(det(conc(2, 2, {1, 2, 3, 4})) == Rational(-2));
  CHECK(det(conc(3, 3, {1, 0, 1, 0, 1, 1, 1, 1, 1})) == Rational(-1));
  CHECK(det(conc(3, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == 0);
}

TEST_CASE("qualitative minor: fully fixed path gives exact value") {
  QualMatrix M(2, 2);
  M.at(0, 0) = fixed_entry(Rational(1, 2));
  M.at(0, 1) = fixed_entry(Rational(3));
  M.at(1, 0) = fixed_entry(Rational(-1));
  M.at(1, 1) = fixed_entry(Rational(2));
  MinorSign s = qual_minor_sign(M, {0, 1}, {0, 1});
  CHECK(s.kind == MinorSignKind::Pos);
  REQUIRE(s.value.has_value());
  CHECK(*s.value == Rational(4));
}

TEST_CASE("qualitative minor: sign patterns") {
  auto diag = signs(2, 2, {SignSet::Pos, SignSet::Zero, SignSet::Zero, SignSet::Pos});
  CHECK(qual_minor_sign(diag, {0, 1}, {0, 1}).kind == MinorSignKind::Pos);
  auto all_pos = signs(2, 2, {SignSet::Pos, SignSet::Pos, SignSet::Pos, SignSet::Pos});
  CHECK(qual_minor_sign(all_pos, {0, 1}, {0, 1}).kind == MinorSignKind::Unsigned);
  auto snn = signs(2, 2, {SignSet::Pos, SignSet::Neg, SignSet::Pos, SignSet::Pos});
  CHECK(qual_minor_sign(snn, {0, 1}, {0, 1}).kind == MinorSignKind::Pos);
  auto uns = signs(1, 1, {SignSet::Unsigned});
  CHECK(qual_minor_sign(uns, {0}, {0}).kind == MinorSignKind::Unsigned);
  CHECK(qual_minor_sign(diag, {0, 1}, {0, 1}, 1).kind == MinorSignKind::Unknown);
}

TEST_CASE("qualitative minor agrees with sampled members") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    int k = static_cast<int>(rng() % 3) + 1;
    QualMatrix M = random_sign_matrix(rng, k, k, 3, 2);
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    MinorSign s = qual_minor_sign(M, idx, idx);
    for (int r = 0; r < 10; ++r) {
      ConcreteMatrix A = sample_instance(M, SampleSpec{rng()});
      int ds = sign_of(det(A));
      switch (s.kind) {
        case MinorSignKind::Zero: CHECK(ds == 0); break;
        case MinorSignKind::Pos: CHECK(ds >= 0); break;
        case MinorSignKind::Neg: CHECK(ds <= 0); break;
        default: break;
      }
    }
  }
}

TEST_CASE("P0^(-) recognition") {
  ConcreteMatrix minus_i = conc(3, 3, {-1, 0, 0, 0, -1, 0, 0, 0, -1});
  CHECK(is_P0_minus(minus_i).holds);
  // Rotation matrix pattern: principal minors 0, 0, det = 1.
  CHECK(is_P0_minus(conc(2, 2, {0, 1, -1, 0})).holds);
  P0Result bad = is_P0_minus(conc(1, 1, {1}));
  CHECK(!bad.holds);
  CHECK(bad.witness_delta == std::vector<int>{0});
  // Lexicographically smallest violating subset: {0} passes, {0,1} fails.
  P0Result w = is_P0_minus(conc(2, 2, {-1, 0, 0, 1}));
  CHECK(!w.holds);
  CHECK(w.witness_delta == std::vector<int>{0, 1});
}

TEST_CASE("witness diagonals for a non-P0^(-) matrix") {
  ConcreteMatrix A = conc(1, 1, {1});
  P0Witnesses w = p0_witnesses(A);
  auto det_shift = [&](const std::vector<Rational>& d) {
    return A.at(0, 0) - d[0];
  };
  int n = 1;
  int s1 = sign_of(det_shift(w.d1));
  int s2 = sign_of(det_shift(w.d2));
  // (-1)^n det(A - D1) > 0 and (-1)^n det(A - D2) < 0.
  CHECK((n % 2 == 0 ? s1 : -s1) > 0);
  CHECK((n % 2 == 0 ? s2 : -s2) < 0);
  CHECK(w.lo <= w.lambda);
  CHECK(w.lambda <= w.hi);
  CHECK(w.hi - w.lo <= Rational(BigInt(1), BigInt("1000000000000")));
  CHECK(w.lambda > 0);
  CHECK(w.lambda < 1);
}

TEST_CASE("compound-matrix identity") {
  ConcreteMatrix A = conc(2, 3, {1, 2, 3, 4, 5, 6});
  ConcreteMatrix B = conc(3, 2, {7, 8, 9, 10, 11, 12});
  Rational v = cauchy_binet(A, B, {0, 1});
  CHECK(v == minor_of(multiply(A, B), {0, 1}, {0, 1}));
  CHECK(cauchy_binet(A, B, {0}) == multiply(A, B).at(0, 0));
}

TEST_CASE("negated transpose") {
  QualMatrix M(1, 2);
  M.at(0, 0) = fixed_entry(Rational(2));
  M.at(0, 1) = sign_entry(SignSet::Neg);
  QualMatrix T = neg_transpose(M);
  CHECK(T.rows == 2);
  CHECK(T.cols == 1);
  CHECK(*T.at(0, 0).fixed == Rational(-2));
  CHECK(T.at(1, 0).sign == SignSet::Pos);
}
