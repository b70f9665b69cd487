#include "lm05/qudit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lm05 {

namespace {

long long mod(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}

void check_index(int d, int i, const char* what) {
  if (i < 0 || i >= d)
    throw std::invalid_argument(std::string(what) + " out of range");
}

}  // namespace

int check_dim(int d) {
  if (d < 2) throw std::invalid_argument("dimension must be at least 2");
  return d;
}

complexd root_of_unity(int d, long long power) {
  check_dim(d);
  const long long r = mod(power, d);
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / d);
}

Vector basis_vector(int d, int i) {
  check_dim(d);
  check_index(d, i, "basis index");
  Vector v = Vector::Zero(d);
  v(i) = 1.0;
  return v;
}

Vector prepare_state(int d, Basis basis, int index) {
  check_dim(d);
  check_index(d, index, "state index");
  if (basis == Basis::Computational) return basis_vector(d, index);
  Vector v(d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int k = 0; k < d; ++k)
    v(k) = norm * root_of_unity(d, static_cast<long long>(index) * k);
  return v;
}

Matrix fourier_matrix(int d) {
  check_dim(d);
  Matrix f(d, d);
  for (int i = 0; i < d; ++i) f.col(i) = prepare_state(d, Basis::Fourier, i);
  return f;
}

Matrix weyl_u(int d, int x, int y) {
  check_dim(d);
  check_index(d, x, "shift index");
  check_index(d, y, "phase index");
  Matrix u = Matrix::Zero(d, d);
  for (int l = 0; l < d; ++l)
    u((l + x) % d, l) = root_of_unity(d, static_cast<long long>(l) * y);
  return u;
}

Matrix weyl_w(int d, int i, int j) {
  check_dim(d);
  check_index(d, i, "phase index");
  check_index(d, j, "shift index");
  // W_ij = sum_k w^{ki} |k><k+j|, i.e. W_ij |m> = w^{(m-j)i} |m-j>.
  Matrix w = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    w(k, (k + j) % d) = root_of_unity(d, static_cast<long long>(k) * i);
  return w;
}

Vector bell_state(int d, int x, int y) {
  check_dim(d);
  check_index(d, x, "bell index x");
  check_index(d, y, "bell index y");
  Vector v = Vector::Zero(d * d);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int l = 0; l < d; ++l)
    v(l * d + (l + x) % d) =
        norm * root_of_unity(d, -static_cast<long long>(l) * y);
  return v;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  Matrix delta = m.adjoint() * m - Matrix::Identity(m.rows(), m.cols());
  return delta.cwiseAbs().maxCoeff() <= tol;
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_projector(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  return (m * m - m).cwiseAbs().maxCoeff() <= tol;
}

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

int total_dim(std::span<const int> dims) {
  if (dims.empty()) throw std::invalid_argument("empty register layout");
  long long total = 1;
  for (int d : dims) {
    check_dim(d);
    total *= d;
    if (total > (1 << 24)) throw std::invalid_argument("layout too large");
  }
  return static_cast<int>(total);
}

namespace {

void check_register(std::span<const int> dims, int reg) {
  if (reg < 0 || reg >= static_cast<int>(dims.size()))
    throw std::invalid_argument("register index out of range");
}

long long stride_of(std::span<const int> dims, int reg) {
  long long s = 1;
  for (int i = reg + 1; i < static_cast<int>(dims.size()); ++i) s *= dims[i];
  return s;
}

}  // namespace

Matrix embed(const Matrix& op, std::span<const int> dims, int reg) {
  const int total = total_dim(dims);
  check_register(dims, reg);
  if (op.rows() != dims[reg] || op.cols() != dims[reg])
    throw std::invalid_argument("operator does not fit the register");
  const long long post = stride_of(dims, reg);
  const long long pre = total / (post * dims[reg]);
  Matrix out = Matrix::Identity(pre, pre);
  out = tensor(out, op);
  return tensor(out, Matrix::Identity(post, post));
}

Matrix partial_trace(const Matrix& rho, std::span<const int> dims,
                     std::span<const int> traced) {
  const int total = total_dim(dims);
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("state does not match the register layout");
  const int n = static_cast<int>(dims.size());
  std::vector<bool> is_traced(n, false);
  for (int t : traced) {
    check_register(dims, t);
    if (is_traced[t]) throw std::invalid_argument("register traced twice");
    is_traced[t] = true;
  }

  std::vector<long long> stride(n);
  for (int i = 0; i < n; ++i) stride[i] = stride_of(dims, i);
  std::vector<int> kept;
  long long kept_dim = 1, traced_dim = 1;
  for (int i = 0; i < n; ++i) {
    if (is_traced[i])
      traced_dim *= dims[i];
    else {
      kept.push_back(i);
      kept_dim *= dims[i];
    }
  }

  // offsets of each kept (resp. traced) multi-index inside the full index
  std::vector<long long> kept_offset(kept_dim, 0);
  for (long long k = 0; k < kept_dim; ++k) {
    long long rem = k;
    for (int pos = static_cast<int>(kept.size()) - 1; pos >= 0; --pos) {
      const int regi = kept[pos];
      kept_offset[k] += (rem % dims[regi]) * stride[regi];
      rem /= dims[regi];
    }
  }
  std::vector<long long> traced_offset(traced_dim, 0);
  for (long long t = 0; t < traced_dim; ++t) {
    long long rem = t;
    for (int pos = n - 1; pos >= 0; --pos) {
      if (!is_traced[pos]) continue;
      traced_offset[t] += (rem % dims[pos]) * stride[pos];
      rem /= dims[pos];
    }
  }

  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (long long r = 0; r < kept_dim; ++r)
    for (long long c = 0; c < kept_dim; ++c) {
      complexd sum = 0.0;
      for (long long t = 0; t < traced_dim; ++t)
        sum += rho(kept_offset[r] + traced_offset[t],
                   kept_offset[c] + traced_offset[t]);
      out(r, c) = sum;
    }
  return out;
}

Matrix apply_local_left(const Matrix& rho, std::span<const int> dims, int reg,
                        const Matrix& k) {
  const int total = total_dim(dims);
  check_register(dims, reg);
  const int d = dims[reg];
  if (k.rows() != d || k.cols() != d)
    throw std::invalid_argument("operator does not fit the register");
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("state does not match the register layout");
  const long long stride = stride_of(dims, reg);
  const long long outer = total / (stride * d);
  Matrix out = Matrix::Zero(total, total);
  for (long long hi = 0; hi < outer; ++hi)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const complexd kab = k(a, b);
        if (kab == complexd(0.0, 0.0)) continue;
        const long long ra = (hi * d + a) * stride;
        const long long rb = (hi * d + b) * stride;
        for (long long lo = 0; lo < stride; ++lo)
          out.row(ra + lo) += kab * rho.row(rb + lo);
      }
  return out;
}

Matrix apply_local_right(const Matrix& rho, std::span<const int> dims, int reg,
                         const Matrix& k) {
  // rho * K^dag on one register == (K * rho^dag)^dag restricted there.
  return apply_local_left(rho.adjoint(), dims, reg, k).adjoint();
}

Matrix conjugate_local(const Matrix& rho, std::span<const int> dims, int reg,
                       const Matrix& k) {
  return apply_local_right(apply_local_left(rho, dims, reg, k), dims, reg, k);
}

Matrix psd_sqrt(const Matrix& m, double tol) {
  if (!is_hermitian(m, tol))
    throw std::domain_error("matrix square root of a non-hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  Eigen::VectorXd eig = solver.eigenvalues();
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (eig(i) < -tol)
      throw std::domain_error("matrix square root of a non-PSD matrix");
    // Zero out eigenvalue noise before the sqrt amplifies it (sqrt turns an
    // O(eps) perturbation of a rank-deficient matrix into O(sqrt(eps))).
    eig(i) = eig(i) <= tol ? 0.0 : std::sqrt(eig(i));
  }
  return solver.eigenvectors() * eig.asDiagonal() *
         solver.eigenvectors().adjoint();
}

DensityMatrix::DensityMatrix(Matrix m, std::vector<int> dims, double tol)
    : m_(std::move(m)), dims_(std::move(dims)) {
  const int total = total_dim(dims_);
  if (m_.rows() != total || m_.cols() != total)
    throw std::invalid_argument("state does not match the register layout");
  if (!m_.allFinite())
    throw std::invalid_argument("density matrix has non-finite entries");
  if (!is_hermitian(m_, tol))
    throw std::invalid_argument("density matrix is not hermitian");
  if (std::abs(m_.trace() - complexd(1.0, 0.0)) > tol)
    throw std::invalid_argument("density matrix trace differs from 1");
}

DensityMatrix DensityMatrix::pure(const Vector& amp, std::vector<int> dims,
                                  double tol) {
  PureState psi(amp, dims, tol);
  return psi.to_density();
}

bool DensityMatrix::is_positive_semidefinite(double tol) const {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m_,
                                               Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol;
}

DensityMatrix DensityMatrix::trace_out(std::span<const int> traced) const {
  Matrix reduced = partial_trace(m_, dims_, traced);
  std::vector<bool> drop(dims_.size(), false);
  for (int t : traced) drop[t] = true;
  std::vector<int> kept;
  for (std::size_t i = 0; i < dims_.size(); ++i)
    if (!drop[i]) kept.push_back(dims_[i]);
  if (kept.empty())
    throw std::invalid_argument("cannot trace out every register");
  return DensityMatrix(std::move(reduced), std::move(kept));
}

PureState::PureState(Vector amp, std::vector<int> dims, double tol)
    : amp_(std::move(amp)), dims_(std::move(dims)) {
  const int total = total_dim(dims_);
  if (amp_.size() != total)
    throw std::invalid_argument("state does not match the register layout");
  if (!amp_.allFinite())
    throw std::invalid_argument("state has non-finite amplitudes");
  if (std::abs(amp_.norm() - 1.0) > tol)
    throw std::invalid_argument("state is not normalized");
}

DensityMatrix PureState::to_density() const {
  return DensityMatrix(projector(amp_), dims_);
}

DensityMatrix apply_operator(const DensityMatrix& rho, const Matrix& op) {
  if (op.rows() != rho.dim() || op.cols() != rho.dim())
    throw std::invalid_argument("operator dimension mismatch");
  return DensityMatrix(op * rho.matrix() * op.adjoint(), rho.dims());
}

}  // namespace lm05
