#include "uniflab/snf.hpp"

#include <cassert>
#include <stdexcept>

namespace uniflab {

PolyMatrix PolyMatrix::identity(std::size_t n) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = GF2Poly::one();
  return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& other) const {
  assert(cols_ == other.rows_);
  PolyMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        out.at(i, j) = out.at(i, j) + at(i, k) * other.at(k, j);
    }
  return out;
}

std::vector<GF2Poly> PolyMatrix::apply(const std::vector<GF2Poly>& x) const {
  assert(x.size() == cols_);
  std::vector<GF2Poly> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out[i] = out[i] + at(i, j) * x[j];
  return out;
}

GF2Poly PolyMatrix::determinant() const {
  assert(rows_ == cols_);
  if (rows_ == 0) return GF2Poly::one();
  if (rows_ == 1) return at(0, 0);
  GF2Poly det;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (at(0, j).is_zero()) continue;
    PolyMatrix minor(rows_ - 1, cols_ - 1);
    for (std::size_t i = 1; i < rows_; ++i) {
      std::size_t cj = 0;
      for (std::size_t k = 0; k < cols_; ++k) {
        if (k == j) continue;
        minor.at(i - 1, cj++) = at(i, k);
      }
    }
    det = det + at(0, j) * minor.determinant();  // signs vanish mod 2
  }
  return det;
}

void PolyMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
}

void PolyMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
}

void PolyMatrix::add_row(std::size_t dst, std::size_t src, const GF2Poly& factor) {
  for (std::size_t k = 0; k < cols_; ++k)
    at(dst, k) = at(dst, k) + factor * at(src, k);
}

void PolyMatrix::add_col(std::size_t dst, std::size_t src, const GF2Poly& factor) {
  for (std::size_t k = 0; k < rows_; ++k)
    at(k, dst) = at(k, dst) + factor * at(k, src);
}

namespace {

// Minimal-degree nonzero entry of D[t.., t..], if any.
bool find_pivot(const PolyMatrix& D, std::size_t t, std::size_t& pi,
                std::size_t& pj) {
  bool found = false;
  int best = 0;
  for (std::size_t i = t; i < D.rows(); ++i)
    for (std::size_t j = t; j < D.cols(); ++j) {
      const GF2Poly& e = D.at(i, j);
      if (e.is_zero()) continue;
      if (!found || e.degree() < best) {
        found = true;
        best = e.degree();
        pi = i;
        pj = j;
      }
    }
  return found;
}

}  // namespace

SNFResult smith_normal_form(const PolyMatrix& A) {
  SNFResult res;
  res.D = A;
  res.P = PolyMatrix::identity(A.rows());
  res.Q = PolyMatrix::identity(A.cols());
  PolyMatrix& D = res.D;
  PolyMatrix& P = res.P;
  PolyMatrix& Q = res.Q;

  std::size_t n = std::min(A.rows(), A.cols());
  std::size_t t = 0;
  while (t < n) {
    std::size_t pi = t, pj = t;
    if (!find_pivot(D, t, pi, pj)) break;
    D.swap_rows(t, pi);
    P.swap_rows(t, pi);
    D.swap_cols(t, pj);
    Q.swap_cols(t, pj);

    // Clear row and column t. Remainders drop the degree of the pivot, so
    // re-picking the minimal entry terminates.
    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < D.rows(); ++i) {
        if (D.at(i, t).is_zero()) continue;
        GF2Poly q = D.at(i, t) / D.at(t, t);
        D.add_row(i, t, q);
        P.add_row(i, t, q);
        if (!D.at(i, t).is_zero()) {
          // Remainder left behind: it has smaller degree, promote it.
          D.swap_rows(t, i);
          P.swap_rows(t, i);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < D.cols(); ++j) {
        if (D.at(t, j).is_zero()) continue;
        GF2Poly q = D.at(t, j) / D.at(t, t);
        D.add_col(j, t, q);
        Q.add_col(j, t, q);
        if (!D.at(t, j).is_zero()) {
          D.swap_cols(t, j);
          Q.swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      bool clean = true;
      for (std::size_t i = t + 1; i < D.rows() && clean; ++i)
        clean = D.at(i, t).is_zero();
      for (std::size_t j = t + 1; j < D.cols() && clean; ++j)
        clean = D.at(t, j).is_zero();
      if (clean) break;
    }
    ++t;
  }
  res.rank = t;

  // Repair the divisibility chain: fold any offending later diagonal into
  // column t and re-eliminate.
  for (bool stable = false; !stable;) {
    stable = true;
    for (std::size_t i = 0; i + 1 < res.rank; ++i) {
      for (std::size_t j = i + 1; j < res.rank; ++j) {
        if (D.at(i, i).divides(D.at(j, j))) continue;
        stable = false;
        D.add_col(i, j, GF2Poly::one());
        Q.add_col(i, j, GF2Poly::one());
        // Now column i holds d_ii (row i) and d_jj (row j); redo a local
        // gcd elimination between rows/cols i and j.
        for (;;) {
          if (D.at(j, i).is_zero()) break;
          if (D.at(i, i).is_zero() ||
              (!D.at(j, i).is_zero() &&
               D.at(j, i).degree() < D.at(i, i).degree())) {
            D.swap_rows(i, j);
            P.swap_rows(i, j);
          }
          GF2Poly q = D.at(j, i) / D.at(i, i);
          D.add_row(j, i, q);
          P.add_row(j, i, q);
        }
        // Clear the fill-in at (i, j).
        if (!D.at(i, j).is_zero()) {
          GF2Poly q = D.at(i, j) / D.at(i, i);
          D.add_col(j, i, q);
          Q.add_col(j, i, q);
        }
      }
    }
  }
  return res;
}

SolveOutcome solve_system_snf(const PolyMatrix& A, const std::vector<GF2Poly>& B) {
  if (B.size() != A.rows()) throw std::invalid_argument("B size mismatch");
  SNFResult snf = smith_normal_form(A);
  std::size_t n = A.cols();
  std::size_t r = snf.rank;

  std::vector<GF2Poly> C = snf.P.apply(B);
  SolveOutcome out;
  for (std::size_t i = r; i < C.size(); ++i) {
    if (!C[i].is_zero()) {
      out.failure = NoSolution{NoSolution::Why::Inconsistent, i};
      return out;
    }
  }
  std::vector<GF2Poly> y(n);
  for (std::size_t i = 0; i < r; ++i) {
    const GF2Poly& d = snf.D.at(i, i);
    if (!d.divides(C[i])) {
      out.failure = NoSolution{NoSolution::Why::Divisibility, i};
      return out;
    }
    y[i] = C[i] / d;
  }
  GeneralSolution sol;
  sol.rank = r;
  sol.particular = snf.Q.apply(y);
  for (std::size_t j = r; j < n; ++j) {
    std::vector<GF2Poly> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = snf.Q.at(i, j);
    sol.free_basis.push_back(std::move(col));
  }
  out.solution = std::move(sol);
  return out;
}

}  // namespace uniflab
