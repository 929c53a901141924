#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "uniflab/gf2poly.hpp"

namespace uniflab {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static PolyMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  GF2Poly& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const GF2Poly& at(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  PolyMatrix operator*(const PolyMatrix& other) const;
  std::vector<GF2Poly> apply(const std::vector<GF2Poly>& x) const;
  GF2Poly determinant() const;  // Laplace expansion; intended for small n

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  void add_row(std::size_t dst, std::size_t src, const GF2Poly& factor);
  void add_col(std::size_t dst, std::size_t src, const GF2Poly& factor);

  bool operator==(const PolyMatrix& other) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<GF2Poly> a_;
};

// D = P*A*Q with P, Q invertible over Z2[h] and D diagonal with a
// divisibility chain d11 | d22 | ... | drr.
struct SNFResult {
  PolyMatrix D, P, Q;
  std::size_t rank = 0;
};

SNFResult smith_normal_form(const PolyMatrix& A);

// General solution of A X = B: X = particular + span(free basis).
struct GeneralSolution {
  std::vector<GF2Poly> particular;          // length n
  std::vector<std::vector<GF2Poly>> free_basis;  // columns of Q2, each length n
  std::size_t rank = 0;
};

struct NoSolution {
  enum class Why { Divisibility, Inconsistent };
  Why why = Why::Inconsistent;
  std::size_t row = 0;
};

// Either a general solution or the reason none exists: some d_ii fails to
// divide c_i, or a zero row of D meets a nonzero entry of C = P*B.
struct SolveOutcome {
  std::optional<GeneralSolution> solution;
  std::optional<NoSolution> failure;
  bool ok() const { return solution.has_value(); }
};

SolveOutcome solve_system_snf(const PolyMatrix& A, const std::vector<GF2Poly>& B);

}  // namespace uniflab
