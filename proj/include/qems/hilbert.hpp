// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "qems/errors.hpp"

namespace qems {

using Complex = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Triplet = Eigen::Triplet<Complex>;

/// Truncated tensor space qubit (x) circuit (x) mechanics, qubit slowest index.
/// The ordering is fixed at construction and immutable.
struct SpaceLayout {
  int n_c = 8;
  int n_m = 8;
  static constexpr int qubit_dim = 2;

  SpaceLayout() = default;
  SpaceLayout(int nc, int nm) : n_c(nc), n_m(nm) {
    if (n_c < 2 || n_m < 2)
      throw TruncationError("Fock truncations must be >= 2 (got n_c=" +
                            std::to_string(n_c) + ", n_m=" + std::to_string(n_m) + ")");
  }
  int dim() const { return qubit_dim * n_c * n_m; }
  // basis index = q * (n_c*n_m) + i_c * n_m + i_m
  int index(int q, int ic, int im) const { return (q * n_c + ic) * n_m + im; }
  bool operator==(const SpaceLayout&) const = default;
};

enum class Slot { qubit, circuit, mech };

/// Complex square matrix on a truncated Hilbert space. Immutable after
/// construction and safe to share across threads.
class Operator {
 public:
  Operator() : dim_(0) {}
  explicit Operator(SparseMatrix m) : dim_(static_cast<int>(m.rows())), mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols())
      throw ParameterError("Operator matrix must be square");
    mat_.makeCompressed();
  }
  explicit Operator(const DenseMatrix& m) : Operator(SparseMatrix(m.sparseView())) {
    dim_ = static_cast<int>(m.rows());
  }

  static Operator Identity(int dim);
  static Operator Zero(int dim);

  int dim() const { return dim_; }
  const SparseMatrix& matrix() const { return mat_; }
  DenseMatrix dense() const { return DenseMatrix(mat_); }

  Operator adjoint() const { return Operator(SparseMatrix(mat_.adjoint())); }
  Operator transpose() const { return Operator(SparseMatrix(mat_.transpose())); }
  Operator conjugate() const { return Operator(SparseMatrix(mat_.conjugate())); }
  Complex trace() const;
  double max_abs() const;

  /// Max-abs hermiticity defect, relative to the operator scale.
  bool is_hermitian(double tol = 1e-12) const;

  Operator operator+(const Operator& o) const;
  Operator operator-(const Operator& o) const;
  Operator operator*(const Operator& o) const;
  friend Operator operator*(Complex s, const Operator& a) {
    return Operator(SparseMatrix(s * a.mat_));
  }
  friend Operator operator*(double s, const Operator& a) {
    return Complex(s, 0.0) * a;
  }

 private:
  int dim_;
  SparseMatrix mat_;
};

/// Matrix acting on column-stacked density matrices: vec(X)[c*d + r] = X(r,c).
/// Entries carry rad/s. Immutable after construction.
class Superoperator {
 public:
  Superoperator() : op_dim_(0) {}
  Superoperator(int op_dim, SparseMatrix m) : op_dim_(op_dim), mat_(std::move(m)) {
    if (mat_.rows() != mat_.cols() || mat_.rows() != static_cast<long>(op_dim_) * op_dim_)
      throw ParameterError("Superoperator dimension must be op_dim^2");
    mat_.makeCompressed();
  }

  int op_dim() const { return op_dim_; }
  long dim() const { return static_cast<long>(op_dim_) * op_dim_; }
  const SparseMatrix& matrix() const { return mat_; }

  Vector apply(const Vector& vec_rho) const { return mat_ * vec_rho; }
  DenseMatrix apply(const DenseMatrix& rho) const;

  double max_abs() const;
  /// Max-abs of the row vector vec(I)^dag L; zero for a trace-preserving generator.
  double trace_defect() const;

  Superoperator operator+(const Superoperator& o) const;
  friend Superoperator operator*(Complex s, const Superoperator& a) {
    return Superoperator(a.op_dim_, SparseMatrix(s * a.mat_));
  }

 private:
  int op_dim_;
  SparseMatrix mat_;
};

// --- elementary operators ---

/// Bosonic annihilation operator on an n-level truncated Fock space:
/// <i|a|j> = sqrt(j) delta_{i,j-1}.
Operator destroy(int n);
Operator create(int n);
Operator number_op(int n);

// Qubit basis: index 0 = ground, 1 = excited.
Operator sigma_x();
Operator sigma_y();
Operator sigma_z();
Operator sigma_plus();   // |e><g|
Operator sigma_minus();  // |g><e|

Operator kron(const Operator& a, const Operator& b);

/// Places `op` in the given slot, identity elsewhere, fixed ordering
/// qubit (x) circuit (x) mechanics.
Operator embed(const Operator& op, Slot slot, const SpaceLayout& layout);

// --- vectorization (column stacking) ---

Vector vec(const DenseMatrix& m);
DenseMatrix unvec(const Vector& v, int dim);

/// Left/right multiplication superoperators: spre(A) vec(X) = vec(A X),
/// spost(B) vec(X) = vec(X B).
Superoperator spre(const Operator& a);
Superoperator spost(const Operator& b);

/// D[c] rho = c rho c^dag - 1/2 c^dag c rho - 1/2 rho c^dag c, unit rate.
Superoperator dissipator(const Operator& c);

/// L = -i (I(x)H - H^T(x)I) + sum_k rate_k D[c_k]. H must be hermitian,
/// rates nonnegative.
Superoperator liouvillian(const Operator& H,
                          const std::vector<std::pair<double, Operator>>& channels);

/// tr(A rho) without densifying A.
Complex expectation(const Operator& a, const DenseMatrix& rho);

}  // namespace qems
