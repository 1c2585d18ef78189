#include "orbitrig/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "orbitrig/errors.hpp"

namespace orbitrig {

RealMatrix::RealMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0.0) {}

RealMatrix::RealMatrix(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != static_cast<size_t>(rows) * cols) {
    throw ValidationError("matrix data size does not match dimensions");
  }
}

RealMatrix RealMatrix::identity(int n) {
  RealMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::operator*(const RealMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ValidationError("matrix dimension mismatch in product");
  RealMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      double a = at(i, k);
      if (a == 0.0) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  }
  return out;
}

RVec RealMatrix::apply(const RVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw ValidationError("vector length mismatch");
  RVec out(rows_, 0.0);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

RealMatrix RealMatrix::transposed() const {
  RealMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
  return out;
}

double RealMatrix::max_abs_diff(const RealMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ValidationError("matrix shape mismatch");
  double best = 0.0;
  for (size_t i = 0; i < data_.size(); ++i) best = std::max(best, std::abs(data_[i] - rhs.data_[i]));
  return best;
}

bool RealMatrix::operator==(const RealMatrix& rhs) const {
  return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Cplx(0.0, 0.0)) {}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_real(const RealMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.at(i, j) = m.at(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw ValidationError("matrix dimension mismatch in product");
  ComplexMatrix out(rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      Cplx a = at(i, k);
      if (a == Cplx(0.0, 0.0)) continue;
      for (int j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ValidationError("matrix shape mismatch");
  ComplexMatrix out(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - rhs.data_[i];
  return out;
}

CVec ComplexMatrix::apply(const CVec& v) const {
  if (static_cast<int>(v.size()) != cols_) throw ValidationError("vector length mismatch");
  CVec out(rows_, Cplx(0.0, 0.0));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out[i] += at(i, j) * v[j];
  return out;
}

ComplexMatrix ComplexMatrix::row_subset(const std::vector<int>& row_idx) const {
  ComplexMatrix out(static_cast<int>(row_idx.size()), cols_);
  for (size_t r = 0; r < row_idx.size(); ++r) {
    if (row_idx[r] < 0 || row_idx[r] >= rows_) throw ValidationError("row index out of range");
    for (int j = 0; j < cols_; ++j) out.at(static_cast<int>(r), j) = at(row_idx[r], j);
  }
  return out;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const Cplx& z : data_) best = std::max(best, std::abs(z));
  return best;
}

namespace {

struct Echelon {
  ComplexMatrix m;              // reduced row echelon form
  std::vector<int> pivot_cols;  // one per pivot row, ascending
};

// Reduced row echelon form with partial pivoting. Pivot threshold is relative
// to the largest absolute entry of the input, so well-scaled inputs get a
// stable integer rank.
Echelon reduce(ComplexMatrix w, double rel_tol) {
  const int rows = w.rows();
  const int cols = w.cols();
  const double tol = rel_tol * w.max_abs();
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int best = -1;
    double best_abs = tol;
    for (int i = r; i < rows; ++i) {
      double a = std::abs(w.at(i, c));
      if (a > best_abs) {
        best_abs = a;
        best = i;
      }
    }
    if (best < 0) continue;  // free column
    if (best != r) {
      for (int j = 0; j < cols; ++j) std::swap(w.at(best, j), w.at(r, j));
    }
    Cplx inv = 1.0 / w.at(r, c);
    for (int j = c; j < cols; ++j) w.at(r, j) *= inv;
    w.at(r, c) = 1.0;
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      Cplx f = w.at(i, c);
      if (f == Cplx(0.0, 0.0)) continue;
      for (int j = c; j < cols; ++j) w.at(i, j) -= f * w.at(r, j);
      w.at(i, c) = 0.0;
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(w), std::move(pivots)};
}

}  // namespace

int numeric_rank(const ComplexMatrix& m, double rel_tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  return static_cast<int>(reduce(m, rel_tol).pivot_cols.size());
}

std::vector<CVec> kernel_basis(const ComplexMatrix& m, double rel_tol) {
  const int cols = m.cols();
  if (cols == 0) return {};
  if (m.rows() == 0 || m.max_abs() == 0.0) {
    std::vector<CVec> basis;
    for (int c = 0; c < cols; ++c) {
      CVec v(cols, Cplx(0.0, 0.0));
      v[c] = 1.0;
      basis.push_back(std::move(v));
    }
    return basis;
  }
  Echelon e = reduce(m, rel_tol);
  std::vector<int> pivot_of_col(cols, -1);
  for (size_t r = 0; r < e.pivot_cols.size(); ++r) pivot_of_col[e.pivot_cols[r]] = static_cast<int>(r);
  std::vector<CVec> basis;
  for (int c = 0; c < cols; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    CVec v(cols, Cplx(0.0, 0.0));
    v[c] = 1.0;
    for (size_t r = 0; r < e.pivot_cols.size(); ++r) {
      v[e.pivot_cols[r]] = -e.m.at(static_cast<int>(r), c);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

Cplx dot_bilinear(const CVec& a, const CVec& b) {
  Cplx s(0.0, 0.0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Cplx dot_hermitian(const CVec& a, const CVec& b) {
  Cplx s(0.0, 0.0);
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double vec_norm(const CVec& a) { return std::sqrt(std::abs(dot_hermitian(a, a))); }

std::vector<CVec> orthonormalize(const std::vector<CVec>& vectors, double tol) {
  std::vector<CVec> basis;
  for (CVec v : vectors) {
    for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize once for stability
      for (const CVec& b : basis) {
        Cplx c = dot_hermitian(b, v);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
      }
    }
    double n = vec_norm(v);
    if (n <= tol) continue;
    for (Cplx& z : v) z /= n;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace orbitrig
