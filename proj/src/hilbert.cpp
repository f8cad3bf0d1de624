// Copyright (c) 2026 The qems authors
// SPDX-License-Identifier: Apache-2.0

#include "qems/hilbert.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qems {

Operator Operator::Identity(int dim) {
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return Operator(std::move(m));
}

Operator Operator::Zero(int dim) { return Operator(SparseMatrix(dim, dim)); }

Complex Operator::trace() const {
  Complex t = 0.0;
  for (int k = 0; k < mat_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(mat_, k); it; ++it)
      if (it.row() == it.col()) t += it.value();
  return t;
}

double Operator::max_abs() const {
  double m = 0.0;
  for (int k = 0; k < mat_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(mat_, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

bool Operator::is_hermitian(double tol) const {
  const double scale = std::max(max_abs(), 1.0);
  SparseMatrix diff = mat_ - SparseMatrix(mat_.adjoint());
  double d = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it)
      d = std::max(d, std::abs(it.value()));
  return d <= tol * scale;
}

Operator Operator::operator+(const Operator& o) const {
  if (dim_ != o.dim_) throw ParameterError("Operator dimension mismatch in +");
  return Operator(SparseMatrix(mat_ + o.mat_));
}

Operator Operator::operator-(const Operator& o) const {
  if (dim_ != o.dim_) throw ParameterError("Operator dimension mismatch in -");
  return Operator(SparseMatrix(mat_ - o.mat_));
}

Operator Operator::operator*(const Operator& o) const {
  if (dim_ != o.dim_) throw ParameterError("Operator dimension mismatch in *");
  return Operator(SparseMatrix(mat_ * o.mat_));
}

DenseMatrix Superoperator::apply(const DenseMatrix& rho) const {
  if (rho.rows() != op_dim_ || rho.cols() != op_dim_)
    throw ParameterError("Superoperator/operator dimension mismatch");
  return unvec(mat_ * vec(rho), op_dim_);
}

double Superoperator::max_abs() const {
  double m = 0.0;
  for (int k = 0; k < mat_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(mat_, k); it; ++it)
      m = std::max(m, std::abs(it.value()));
  return m;
}

double Superoperator::trace_defect() const {
  // vec(I)^dag L: sum rows at diagonal vec-indices k*(d+1), per column.
  const long d = op_dim_;
  std::vector<Complex> colsum(dim(), Complex(0, 0));
  for (int k = 0; k < mat_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(mat_, k); it; ++it)
      if (it.row() % (d + 1) == 0) colsum[it.col()] += it.value();
  double m = 0.0;
  for (const auto& v : colsum) m = std::max(m, std::abs(v));
  return m;
}

Superoperator Superoperator::operator+(const Superoperator& o) const {
  if (op_dim_ != o.op_dim_) throw ParameterError("Superoperator dimension mismatch in +");
  return Superoperator(op_dim_, SparseMatrix(mat_ + o.mat_));
}

Operator destroy(int n) {
  if (n < 2) throw TruncationError("destroy(n): Fock truncation must be >= 2, got " +
                                   std::to_string(n));
  std::vector<Triplet> t;
  t.reserve(n - 1);
  for (int j = 1; j < n; ++j) t.emplace_back(j - 1, j, std::sqrt(double(j)));
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return Operator(std::move(m));
}

Operator create(int n) { return destroy(n).adjoint(); }

Operator number_op(int n) {
  std::vector<Triplet> t;
  for (int j = 1; j < n; ++j) t.emplace_back(j, j, double(j));
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return Operator(std::move(m));
}

namespace {
Operator two_by_two(Complex a00, Complex a01, Complex a10, Complex a11) {
  DenseMatrix m(2, 2);
  m << a00, a01, a10, a11;
  return Operator(m);
}
}  // namespace

Operator sigma_x() { return two_by_two(0, 1, 1, 0); }
Operator sigma_y() { return two_by_two(0, Complex(0, -1), Complex(0, 1), 0); }
Operator sigma_z() { return two_by_two(-1, 0, 0, 1); }
Operator sigma_plus() { return two_by_two(0, 0, 1, 0); }
Operator sigma_minus() { return two_by_two(0, 1, 0, 0); }

Operator kron(const Operator& a, const Operator& b) {
  SparseMatrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  return Operator(std::move(m));
}

Operator embed(const Operator& op, Slot slot, const SpaceLayout& layout) {
  int want = 0;
  switch (slot) {
    case Slot::qubit: want = SpaceLayout::qubit_dim; break;
    case Slot::circuit: want = layout.n_c; break;
    case Slot::mech: want = layout.n_m; break;
  }
  if (op.dim() != want)
    throw ParameterError("embed: operator dimension " + std::to_string(op.dim()) +
                         " does not match slot dimension " + std::to_string(want));
  const Operator iq = Operator::Identity(SpaceLayout::qubit_dim);
  const Operator ic = Operator::Identity(layout.n_c);
  const Operator im = Operator::Identity(layout.n_m);
  switch (slot) {
    case Slot::qubit: return kron(op, kron(ic, im));
    case Slot::circuit: return kron(iq, kron(op, im));
    case Slot::mech: return kron(iq, kron(ic, op));
  }
  throw ParameterError("embed: bad slot");
}

Vector vec(const DenseMatrix& m) {
  // Eigen is column-major: the raw buffer already is the column stacking.
  return Eigen::Map<const Vector>(m.data(), m.size());
}

DenseMatrix unvec(const Vector& v, int dim) {
  if (v.size() != static_cast<long>(dim) * dim)
    throw ParameterError("unvec: size mismatch");
  return Eigen::Map<const DenseMatrix>(v.data(), dim, dim);
}

Superoperator spre(const Operator& a) {
  const int d = a.dim();
  SparseMatrix id(d, d);
  id.setIdentity();
  SparseMatrix m = Eigen::kroneckerProduct(id, a.matrix());
  return Superoperator(d, std::move(m));
}

Superoperator spost(const Operator& b) {
  const int d = b.dim();
  SparseMatrix id(d, d);
  id.setIdentity();
  SparseMatrix bt = b.matrix().transpose();
  SparseMatrix m = Eigen::kroneckerProduct(bt, id);
  return Superoperator(d, std::move(m));
}

Superoperator dissipator(const Operator& c) {
  const int d = c.dim();
  SparseMatrix id(d, d);
  id.setIdentity();
  SparseMatrix cdc = c.matrix().adjoint() * c.matrix();
  SparseMatrix cconj = c.matrix().conjugate();
  SparseMatrix m = Eigen::kroneckerProduct(cconj, c.matrix());
  m -= Complex(0.5) * SparseMatrix(Eigen::kroneckerProduct(id, cdc));
  SparseMatrix cdct = cdc.transpose();
  m -= Complex(0.5) * SparseMatrix(Eigen::kroneckerProduct(cdct, id));
  return Superoperator(d, std::move(m));
}

Superoperator liouvillian(const Operator& H,
                          const std::vector<std::pair<double, Operator>>& channels) {
  const int d = H.dim();
  if (!H.is_hermitian())
    throw ModelError("liouvillian: Hamiltonian is not hermitian");
  SparseMatrix id(d, d);
  id.setIdentity();
  SparseMatrix ht = H.matrix().transpose();
  SparseMatrix m = Complex(0, -1) * SparseMatrix(Eigen::kroneckerProduct(id, H.matrix()));
  m += Complex(0, 1) * SparseMatrix(Eigen::kroneckerProduct(ht, id));
  for (const auto& [rate, c] : channels) {
    if (rate < 0.0)
      throw ParameterError("liouvillian: negative channel rate " + std::to_string(rate));
    if (c.dim() != d) throw ParameterError("liouvillian: channel dimension mismatch");
    if (rate == 0.0) continue;
    m += Complex(rate) * dissipator(c).matrix();
  }
  return Superoperator(d, std::move(m));
}

Complex expectation(const Operator& a, const DenseMatrix& rho) {
  if (a.dim() != rho.rows()) throw ParameterError("expectation: dimension mismatch");
  Complex t = 0.0;
  const SparseMatrix& m = a.matrix();
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
      t += it.value() * rho(it.col(), it.row());
  return t;
}

}  // namespace qems
