#pragma once

// Exact linear algebra over the prime field GF(p).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace gradcat {

class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, int p);
  Matrix(std::size_t rows, std::size_t cols, int p, std::vector<int> data);

  static Matrix identity(std::size_t n, int p);
  // Columns given as vectors of length rows.
  static Matrix from_columns(std::size_t rows, const std::vector<std::vector<int>>& cols, int p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  int prime() const { return p_; }

  int operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, int v);

  std::vector<int> column(std::size_t c) const;
  std::vector<int> apply(const std::vector<int>& v) const;

  const std::vector<int>& data() const { return data_; }
  std::string to_string() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int p_ = 2;
  std::vector<int> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);

bool is_prime(int p);
int mod_inverse(int a, int p);

struct RowEchelon {
  Matrix reduced;                   // reduced row echelon form
  std::vector<std::size_t> pivots;  // pivot column per nonzero row
};

RowEchelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);
// Rank of a family of vectors (each of the same length).
std::size_t rank_of(const std::vector<std::vector<int>>& vectors, int p);
// Basis of the null space, as columns.
std::vector<std::vector<int>> null_space(const Matrix& m);
// Extend an independent family to a basis of GF(p)^n by adjoining standard
// basis vectors in coordinate order; returns only the added vectors.
std::vector<std::vector<int>> extend_to_basis(const std::vector<std::vector<int>>& independent,
                                              std::size_t n, int p);
// Solve a x = b; nullopt if inconsistent. Free variables are set to zero.
std::optional<std::vector<int>> solve(const Matrix& a, const std::vector<int>& b);
std::optional<Matrix> inverse(const Matrix& m);
// Basis of the intersection of the column spaces of a and b (both n x *).
std::vector<std::vector<int>> intersect_column_spaces(const Matrix& a, const Matrix& b);
// All k x n matrices in reduced row echelon form of rank k, for every k.
// Each represents one subspace of GF(p)^n (its row space).
std::vector<Matrix> all_rref_subspaces(std::size_t n, int p);

}  // namespace gradcat
