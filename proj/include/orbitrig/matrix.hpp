#pragma once

#include <complex>
#include <vector>

namespace orbitrig {

using Cplx = std::complex<double>;
using CVec = std::vector<Cplx>;
using RVec = std::vector<double>;

// Small dense real matrix, row-major. Carries orthogonal representation
// matrices and placement transforms.
class RealMatrix {
 public:
  RealMatrix() = default;
  RealMatrix(int rows, int cols);
  RealMatrix(int rows, int cols, std::vector<double> data);
  static RealMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  double at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  RealMatrix operator*(const RealMatrix& rhs) const;
  RVec apply(const RVec& v) const;
  RealMatrix transposed() const;
  double max_abs_diff(const RealMatrix& rhs) const;
  bool operator==(const RealMatrix& rhs) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// Dense complex matrix with tolerance-based rank and kernel extraction.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols);
  static ComplexMatrix identity(int n);
  static ComplexMatrix from_real(const RealMatrix& m);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Cplx& at(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  Cplx at(int r, int c) const { return data_[static_cast<size_t>(r) * cols_ + c]; }

  ComplexMatrix operator*(const ComplexMatrix& rhs) const;
  ComplexMatrix operator-(const ComplexMatrix& rhs) const;
  CVec apply(const CVec& v) const;
  ComplexMatrix row_subset(const std::vector<int>& row_idx) const;
  double max_abs() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Cplx> data_;
};

inline constexpr double kDefaultRankTol = 1e-8;

// Rank via row echelon reduction with partial pivoting over C. A pivot is
// accepted iff |pivot| > rel_tol * (largest |entry| of the input matrix).
int numeric_rank(const ComplexMatrix& m, double rel_tol = kDefaultRankTol);

// Right-kernel basis read off the free columns of the reduced echelon form.
// numeric_rank(m) + result.size() == m.cols().
std::vector<CVec> kernel_basis(const ComplexMatrix& m, double rel_tol = kDefaultRankTol);

Cplx dot_bilinear(const CVec& a, const CVec& b);
Cplx dot_hermitian(const CVec& a, const CVec& b);  // conjugates the first argument
double vec_norm(const CVec& a);

// Hermitian Gram-Schmidt; vectors with residual norm below tol are dropped.
std::vector<CVec> orthonormalize(const std::vector<CVec>& vectors, double tol = 1e-10);

}  // namespace orbitrig
