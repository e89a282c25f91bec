#include "crystver/normal_form.hpp"

#include <utility>

#include "crystver/errors.hpp"

namespace crystver::exact {

namespace {

void swap_rows(IntMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(i, c), m(j, c));
}

void swap_cols(IntMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m(r, i), m(r, j));
}

// row[dst] += f * row[src]
void add_row(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(dst, c) += f * m(src, c);
}

void add_col(IntMatrix& m, std::size_t dst, std::size_t src, const Int& f) {
  for (std::size_t r = 0; r < m.rows(); ++r) m(r, dst) += f * m(r, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = -m(r, c);
}

}  // namespace

HnfResult hnf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix h = a;
  IntMatrix u = IntMatrix::identity(m);
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    // clear the column below `row`, keeping the minimal pivot on top
    for (;;) {
      std::size_t piv = m;
      for (std::size_t r = row; r < m; ++r) {
        if (h(r, col) != 0 && (piv == m || abs(h(r, col)) < abs(h(piv, col)))) piv = r;
      }
      if (piv == m) break;  // column already clear
      swap_rows(h, row, piv);
      swap_rows(u, row, piv);
      bool clean = true;
      for (std::size_t r = row + 1; r < m; ++r) {
        if (h(r, col) == 0) continue;
        Int f = -floor_div(h(r, col), h(row, col));
        add_row(h, r, row, f);
        add_row(u, r, row, f);
        if (h(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    if (h(row, col) == 0) continue;  // zero column, same pivot row
    if (h(row, col) < 0) {
      negate_row(h, row);
      negate_row(u, row);
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t r = 0; r < row; ++r) {
      Int f = -floor_div(h(r, col), h(row, col));
      if (f != 0) {
        add_row(h, r, row, f);
        add_row(u, r, row, f);
      }
    }
    ++row;
  }
  return {std::move(h), std::move(u)};
}

SnfResult snf(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix d = a;
  IntMatrix u = IntMatrix::identity(m);
  IntMatrix v = IntMatrix::identity(n);
  std::size_t t = 0;
  while (t < m && t < n) {
    // minimal-absolute-value pivot in the trailing block
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (d(i, j) != 0 && (pi == m || abs(d(i, j)) < abs(d(pi, pj)))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == m) break;  // trailing block is zero
    swap_rows(d, t, pi);
    swap_rows(u, t, pi);
    swap_cols(d, t, pj);
    swap_cols(v, t, pj);
    bool again = true;
    while (again) {
      again = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        Int f = -floor_div(d(i, t), d(t, t));
        add_row(d, i, t, f);
        add_row(u, i, t, f);
        if (d(i, t) != 0) {  // remainder became the smaller pivot
          swap_rows(d, t, i);
          swap_rows(u, t, i);
          again = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        Int f = -floor_div(d(t, j), d(t, t));
        add_col(d, j, t, f);
        add_col(v, j, t, f);
        if (d(t, j) != 0) {
          swap_cols(d, t, j);
          swap_cols(v, t, j);
          again = true;
        }
      }
    }
    // divisibility: fold in any entry the pivot does not divide
    bool folded = false;
    for (std::size_t i = t + 1; i < m && !folded; ++i) {
      for (std::size_t j = t + 1; j < n && !folded; ++j) {
        if (d(i, j) % d(t, t) != 0) {
          add_row(d, t, i, 1);
          add_row(u, t, i, 1);
          folded = true;
        }
      }
    }
    if (folded) continue;
    if (d(t, t) < 0) {
      negate_row(d, t);
      negate_row(u, t);
    }
    ++t;
  }
  SnfResult out{std::move(d), std::move(u), std::move(v), t};
  return out;
}

std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m) throw InputError("solve_integer: rhs length does not match rows");
  SnfResult s = snf(a);
  IntVector c = s.u * b;
  IntVector y(n);
  for (std::size_t i = 0; i < m; ++i) {
    if (i < n && i < s.rank) {
      const Int& di = s.d(i, i);
      if (c[i] % di != 0) return std::nullopt;
      y[i] = c[i] / di;
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return s.v * y;
}

RatMatrix rat_inverse(const RatMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("rat_inverse: non-square matrix");
  const std::size_t n = a.rows();
  RatMatrix m = a;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw SingularMatrix("rat_inverse: singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(p, j));
        std::swap(inv(c, j), inv(p, j));
      }
    }
    Rational piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      Rational f = m(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace crystver::exact
