#include "dsr/qualmat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace dsr {

const char* to_string(SignSet s) {
  switch (s) {
    case SignSet::Zero: return "0";
    case SignSet::Pos: return "+";
    case SignSet::Neg: return "-";
    case SignSet::Unsigned: return "?";
  }
  return "?";
}

SignSet mul(SignSet a, SignSet b) {
  if (a == SignSet::Zero || b == SignSet::Zero) return SignSet::Zero;
  if (a == SignSet::Unsigned || b == SignSet::Unsigned) return SignSet::Unsigned;
  return (a == b) ? SignSet::Pos : SignSet::Neg;
}

QualEntry fixed_entry(const Rational& v) {
  QualEntry e;
  int s = sign_of(v);
  e.sign = s == 0 ? SignSet::Zero : (s > 0 ? SignSet::Pos : SignSet::Neg);
  e.fixed = v;
  return e;
}

QualEntry sign_entry(SignSet s) {
  QualEntry e;
  e.sign = s;
  return e;
}

bool QualMatrix::fully_fixed() const {
  return std::all_of(data.begin(), data.end(),
                     [](const QualEntry& e) { return e.fixed.has_value(); });
}

const char* to_string(MinorSignKind k) {
  switch (k) {
    case MinorSignKind::Zero: return "zero";
    case MinorSignKind::Pos: return "positive";
    case MinorSignKind::Neg: return "negative";
    case MinorSignKind::Unsigned: return "unsigned";
    case MinorSignKind::Unknown: return "unknown";
  }
  return "unknown";
}

namespace {

void check_index_sets(int rows, int cols, const std::vector<int>& delta,
                      const std::vector<int>& gamma) {
  if (delta.size() != gamma.size()) {
    throw std::invalid_argument("index sets must have equal size");
  }
  for (int i : delta) {
    if (i < 0 || i >= rows) throw std::out_of_range("row index out of range");
  }
  for (int j : gamma) {
    if (j < 0 || j >= cols) throw std::out_of_range("column index out of range");
  }
}

Rational det_in_place(std::vector<Rational>& a, int n) {
  Rational result = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (a[static_cast<size_t>(r) * n + col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return Rational(0);
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a[static_cast<size_t>(pivot) * n + c],
                  a[static_cast<size_t>(col) * n + c]);
      }
      result = -result;
    }
    const Rational& p = a[static_cast<size_t>(col) * n + col];
    result *= p;
    for (int r = col + 1; r < n; ++r) {
      Rational& lead = a[static_cast<size_t>(r) * n + col];
      if (lead == 0) continue;
      Rational factor = lead / p;
      lead = 0;
      for (int c = col + 1; c < n; ++c) {
        a[static_cast<size_t>(r) * n + c] -=
            factor * a[static_cast<size_t>(col) * n + c];
      }
    }
  }
  return result;
}

}  // namespace

MinorSign qual_minor_sign(const QualMatrix& M, const std::vector<int>& delta,
                          const std::vector<int>& gamma, int cap) {
  check_index_sets(M.rows, M.cols, delta, gamma);
  const int k = static_cast<int>(delta.size());
  if (k == 0) return MinorSign{MinorSignKind::Pos, Rational(1)};
  if (k > cap) return MinorSign{MinorSignKind::Unknown, std::nullopt};

  bool fixed = true;
  for (int i : delta) {
    for (int j : gamma) {
      if (!M.at(i, j).fixed) {
        fixed = false;
        break;
      }
    }
    if (!fixed) break;
  }
  if (fixed) {
    std::vector<Rational> sub;
    sub.reserve(static_cast<size_t>(k) * k);
    for (int i : delta) {
      for (int j : gamma) sub.push_back(*M.at(i, j).fixed);
    }
    Rational d = det_in_place(sub, k);
    int s = sign_of(d);
    MinorSignKind kind = s == 0 ? MinorSignKind::Zero
                                : (s > 0 ? MinorSignKind::Pos : MinorSignKind::Neg);
    return MinorSign{kind, d};
  }

  // Permutation expansion over sign sets; entries assumed independent.
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  bool saw_pos = false, saw_neg = false;
  do {
    // Parity by inversion count (k <= cap <= 8, so this is cheap).
    int inversions = 0;
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) {
        if (perm[a] > perm[b]) ++inversions;
      }
    }
    SignSet term = (inversions % 2 == 0) ? SignSet::Pos : SignSet::Neg;
    for (int a = 0; a < k && term != SignSet::Zero; ++a) {
      term = mul(term, M.at(delta[a], gamma[perm[a]]).sign);
    }
    if (term == SignSet::Unsigned) {
      return MinorSign{MinorSignKind::Unsigned, std::nullopt};
    }
    saw_pos = saw_pos || term == SignSet::Pos;
    saw_neg = saw_neg || term == SignSet::Neg;
    if (saw_pos && saw_neg) {
      return MinorSign{MinorSignKind::Unsigned, std::nullopt};
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (saw_pos) return MinorSign{MinorSignKind::Pos, std::nullopt};
  if (saw_neg) return MinorSign{MinorSignKind::Neg, std::nullopt};
  return MinorSign{MinorSignKind::Zero, std::nullopt};
}

Rational det(const ConcreteMatrix& A) {
  if (A.rows != A.cols) throw std::invalid_argument("det of non-square matrix");
  std::vector<Rational> a = A.data;
  return det_in_place(a, A.rows);
}

Rational minor_of(const ConcreteMatrix& A, const std::vector<int>& delta,
                  const std::vector<int>& gamma) {
  check_index_sets(A.rows, A.cols, delta, gamma);
  const int k = static_cast<int>(delta.size());
  std::vector<Rational> sub;
  sub.reserve(static_cast<size_t>(k) * k);
  for (int i : delta) {
    for (int j : gamma) sub.push_back(A.at(i, j));
  }
  return det_in_place(sub, k);
}

ConcreteMatrix multiply(const ConcreteMatrix& A, const ConcreteMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("dimension mismatch");
  ConcreteMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int l = 0; l < A.cols; ++l) {
      const Rational& a = A.at(i, l);
      if (a == 0) continue;
      for (int j = 0; j < B.cols; ++j) {
        C.at(i, j) += a * B.at(l, j);
      }
    }
  }
  return C;
}

QualMatrix neg_transpose(const QualMatrix& M) {
  QualMatrix T(M.cols, M.rows);
  for (int i = 0; i < M.rows; ++i) {
    for (int j = 0; j < M.cols; ++j) {
      const QualEntry& e = M.at(i, j);
      QualEntry& t = T.at(j, i);
      switch (e.sign) {
        case SignSet::Zero: t.sign = SignSet::Zero; break;
        case SignSet::Pos: t.sign = SignSet::Neg; break;
        case SignSet::Neg: t.sign = SignSet::Pos; break;
        case SignSet::Unsigned: t.sign = SignSet::Unsigned; break;
      }
      if (e.fixed) t.fixed = -*e.fixed;
    }
  }
  return T;
}

QualMatrix qual_from_concrete(const ConcreteMatrix& A) {
  QualMatrix M(A.rows, A.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) M.at(i, j) = fixed_entry(A.at(i, j));
  }
  return M;
}

P0Result is_P0_minus(const ConcreteMatrix& A, int cap) {
  if (A.rows != A.cols) throw std::invalid_argument("matrix must be square");
  const int n = A.rows;
  if (n > cap) throw std::invalid_argument("principal-minor cap exceeded");

  // Depth-first extension enumerates nonempty subsets in lexicographic order
  // of their sorted element lists, so the first violation found is the
  // lexicographically smallest one.
  std::vector<int> delta;
  std::function<P0Result(int)> walk = [&](int next) -> P0Result {
    for (int i = next; i < n; ++i) {
      delta.push_back(i);
      Rational m = minor_of(A, delta, delta);
      bool even = delta.size() % 2 == 0;
      if ((even && m < 0) || (!even && m > 0)) {
        return P0Result{false, delta};
      }
      P0Result deeper = walk(i + 1);
      if (!deeper.holds) return deeper;
      delta.pop_back();
    }
    return P0Result{true, {}};
  };
  return walk(0);
}

namespace {

Rational det_minus_diag(const ConcreteMatrix& A, const std::vector<Rational>& d) {
  ConcreteMatrix M = A;
  for (int i = 0; i < A.rows; ++i) M.at(i, i) -= d[i];
  return det(M);
}

}  // namespace

P0Witnesses p0_witnesses(const ConcreteMatrix& A, int cap) {
  P0Result r = is_P0_minus(A, cap);
  if (r.holds) {
    throw std::domain_error(
        "matrix is P0^(-): det(A - D) has constant sign, no witnesses exist");
  }
  const int n = A.rows;
  const int want = (n % 2 == 0) ? 1 : -1;  // sign of det(A - D1)

  P0Witnesses w;
  Rational eps = 1;
  for (;;) {
    w.d1.assign(n, 1 / eps);
    if (sign_of(det_minus_diag(A, w.d1)) == want) break;
    eps /= 2;
  }
  std::vector<bool> in_delta0(n, false);
  for (int i : r.witness_delta) in_delta0[i] = true;
  eps = 1;
  for (;;) {
    w.d2.resize(n);
    for (int i = 0; i < n; ++i) w.d2[i] = in_delta0[i] ? eps : 1 / eps;
    if (sign_of(det_minus_diag(A, w.d2)) == -want) break;
    eps /= 2;
  }

  // Bisection on lambda; the determinant at each probe is exact, the
  // tolerance applies to lambda only.
  const Rational tol(BigInt(1), BigInt("1000000000000"));
  Rational lo = 0, hi = 1;  // f(hi) has sign `want`, f(lo) the opposite
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    std::vector<Rational> d(n);
    for (int i = 0; i < n; ++i) d[i] = mid * w.d1[i] + (1 - mid) * w.d2[i];
    int s = sign_of(det_minus_diag(A, d));
    if (s == 0) {
      // Exact root: collapse the bracket around it.
      lo = hi = mid;
      break;
    }
    if (s == want) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  w.lo = lo;
  w.hi = hi;
  w.lambda = (lo + hi) / 2;
  return w;
}

Rational cauchy_binet(const ConcreteMatrix& A, const ConcreteMatrix& B,
                      const std::vector<int>& delta) {
  if (A.cols != B.rows || A.rows != B.cols) {
    throw std::invalid_argument("dimension mismatch");
  }
  const int k = static_cast<int>(delta.size());
  if (k > std::min(A.rows, A.cols)) {
    throw std::invalid_argument("|delta| exceeds min(n, m)");
  }
  for (int i : delta) {
    if (i < 0 || i >= A.rows) throw std::out_of_range("row index out of range");
  }
  Rational sum = 0;
  std::vector<int> gamma(k);
  std::function<void(int, int)> walk = [&](int pos, int next) {
    if (pos == k) {
      sum += minor_of(A, delta, gamma) * minor_of(B, gamma, delta);
      return;
    }
    for (int j = next; j <= A.cols - (k - pos); ++j) {
      gamma[pos] = j;
      walk(pos + 1, j + 1);
    }
  };
  walk(0, 0);

  Rational direct = minor_of(multiply(A, B), delta, delta);
  if (sum != direct) {
    throw std::logic_error("Cauchy-Binet identity violated");
  }
  return sum;
}

}  // namespace dsr
