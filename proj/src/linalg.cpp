#include "gradcat/linalg.hpp"

#include <algorithm>
#include <functional>

#include "gradcat/error.hpp"

namespace gradcat {

namespace {

int norm(long long v, int p) {
  long long r = v % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

}  // namespace

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int mod_inverse(int a, int p) {
  a = norm(a, p);
  if (a == 0) throw ContractViolation("mod_inverse of zero");
  // Fermat: a^(p-2)
  long long result = 1, base = a;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, int p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, int p, std::vector<int> data)
    : rows_(rows), cols_(cols), p_(p), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw ContractViolation("Matrix: data size mismatch");
  for (auto& v : data_) v = norm(v, p_);
}

Matrix Matrix::identity(std::size_t n, int p) {
  Matrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Matrix Matrix::from_columns(std::size_t rows, const std::vector<std::vector<int>>& cols, int p) {
  Matrix m(rows, cols.size(), p);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw ContractViolation("Matrix::from_columns: length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, int v) { data_[r * cols_ + c] = norm(v, p_); }

std::vector<int> Matrix::column(std::size_t c) const {
  std::vector<int> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

std::vector<int> Matrix::apply(const std::vector<int>& v) const {
  if (v.size() != cols_) throw ContractViolation("Matrix::apply: dimension mismatch");
  std::vector<int> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    long long acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += static_cast<long long>((*this)(r, c)) * v[c];
    out[r] = norm(acc, p_);
  }
  return out;
}

std::string Matrix::to_string() const {
  std::string out = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) out += ";";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) out += " ";
      out += std::to_string((*this)(r, c));
    }
  }
  return out + "]";
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.prime() != b.prime())
    throw ContractViolation("matrix product: shape or field mismatch");
  Matrix out(a.rows(), b.cols(), a.prime());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) {
      long long acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += static_cast<long long>(a(r, k)) * b(k, c);
      out.set(r, c, norm(acc, a.prime()));
    }
  return out;
}

RowEchelon rref(const Matrix& m) {
  Matrix a = m;
  const int p = m.prime();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a(sel, col) == 0) ++sel;
    if (sel == a.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < a.cols(); ++c) {
        int t = a(row, c);
        a.set(row, c, a(sel, c));
        a.set(sel, c, t);
      }
    int inv = mod_inverse(a(row, col), p);
    for (std::size_t c = 0; c < a.cols(); ++c)
      a.set(row, c, static_cast<int>(static_cast<long long>(a(row, c)) * inv % p));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col) == 0) continue;
      int factor = a(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c)
        a.set(r, c, a(r, c) - factor * a(row, c));
    }
    pivots.push_back(col);
    ++row;
  }
  return {a, pivots};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::size_t rank_of(const std::vector<std::vector<int>>& vectors, int p) {
  if (vectors.empty()) return 0;
  return rank(Matrix::from_columns(vectors.front().size(), vectors, p));
}

std::vector<std::vector<int>> null_space(const Matrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<char> is_pivot(m.cols(), 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<int>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<int> v(m.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = norm(-r(i, free), m.prime());
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<std::vector<int>> extend_to_basis(const std::vector<std::vector<int>>& independent,
                                              std::size_t n, int p) {
  std::vector<std::vector<int>> current = independent;
  std::size_t r = rank_of(current, p);
  if (r != current.size()) throw ContractViolation("extend_to_basis: family is dependent");
  std::vector<std::vector<int>> added;
  for (std::size_t i = 0; i < n && r < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    current.push_back(e);
    if (rank_of(current, p) > r) {
      ++r;
      added.push_back(e);
    } else {
      current.pop_back();
    }
  }
  return added;
}

std::optional<std::vector<int>> solve(const Matrix& a, const std::vector<int>& b) {
  if (b.size() != a.rows()) throw ContractViolation("solve: dimension mismatch");
  Matrix aug(a.rows(), a.cols() + 1, a.prime());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) aug.set(r, c, a(r, c));
    aug.set(r, a.cols(), b[r]);
  }
  auto [red, pivots] = rref(aug);
  std::vector<int> x(a.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == a.cols()) return std::nullopt;
    x[pivots[i]] = red(i, a.cols());
  }
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  Matrix aug(n, 2 * n, m.prime());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, m(r, c));
    aug.set(r, n + r, 1);
  }
  auto [red, pivots] = rref(aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(n, n, m.prime());
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, red(r, n + c));
  return inv;
}

std::vector<std::vector<int>> intersect_column_spaces(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ContractViolation("intersect_column_spaces: ambient mismatch");
  const int p = a.prime();
  // Solutions of [a | -b] (x, y) = 0 give a x = b y in the intersection.
  Matrix joint(a.rows(), a.cols() + b.cols(), p);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) joint.set(r, c, a(r, c));
    for (std::size_t c = 0; c < b.cols(); ++c) joint.set(r, a.cols() + c, -b(r, c));
  }
  std::vector<std::vector<int>> vectors;
  for (const auto& sol : null_space(joint)) {
    std::vector<int> x(sol.begin(), sol.begin() + static_cast<long>(a.cols()));
    vectors.push_back(a.apply(x));
  }
  if (vectors.empty()) return {};
  // Reduce to a canonical basis: nonzero rows of the rref of the row stack.
  Matrix stack(vectors.size(), a.rows(), p);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t c = 0; c < a.rows(); ++c) stack.set(i, c, vectors[i][c]);
  auto [red, pivots] = rref(stack);
  std::vector<std::vector<int>> basis;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    std::vector<int> row(a.rows());
    for (std::size_t c = 0; c < a.rows(); ++c) row[c] = red(i, c);
    basis.push_back(std::move(row));
  }
  return basis;
}

std::vector<Matrix> all_rref_subspaces(std::size_t n, int p) {
  std::vector<Matrix> out;
  for (std::size_t k = 0; k <= n; ++k) {
    // Choose pivot columns, then fill the free entries right of each pivot.
    std::vector<std::size_t> piv(k);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t i, std::size_t start) {
      if (i == k) {
        std::vector<std::pair<std::size_t, std::size_t>> free;
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = piv[r] + 1; c < n; ++c)
            if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.emplace_back(r, c);
        std::vector<int> vals(free.size(), 0);
        while (true) {
          Matrix m(k, n, p);
          for (std::size_t r = 0; r < k; ++r) m.set(r, piv[r], 1);
          for (std::size_t f = 0; f < free.size(); ++f) m.set(free[f].first, free[f].second, vals[f]);
          out.push_back(m);
          std::size_t f = 0;
          while (f < vals.size() && ++vals[f] == p) vals[f++] = 0;
          if (f == vals.size()) break;
        }
        return;
      }
      for (std::size_t c = start; c < n; ++c) {
        piv[i] = c;
        choose(i + 1, c + 1);
      }
    };
    choose(0, 0);
  }
  return out;
}

}  // namespace gradcat
