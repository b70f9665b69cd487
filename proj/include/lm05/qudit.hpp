#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

// Exact finite-dimensional (qudit) state and operator algebra used by the
// attack analyses: generalized Pauli operators, Fourier/Bell bases and the
// multi-register plumbing (tensor products, partial traces, local actions).
namespace lm05 {

using complexd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Absolute tolerance for all invariant checks.
inline constexpr double default_tol = 1e-10;

enum class Basis { Computational = 0, Fourier = 1 };

// Throws std::invalid_argument unless d >= 2.
int check_dim(int d);

// exp(2*pi*i * power / d), with the exponent reduced mod d first so large
// powers do not lose precision.
complexd root_of_unity(int d, long long power);

// |i> in C^d.
Vector basis_vector(int d, int i);

// Computational |i> or Fourier |i~> = (1/sqrt(d)) sum_k w^{ik} |k>.
Vector prepare_state(int d, Basis basis, int index);

// Columns are the Fourier states |0~>,...,|d-1~>.
Matrix fourier_matrix(int d);

// U_xy = sum_l w^{ly} |l+x><l|  (shift x, phase y; indices mod d).
Matrix weyl_u(int d, int x, int y);

// W_ij = sum_k w^{ki} |k><k+j|  (the conjugate shift/phase convention used
// by the correlated channel model).
Matrix weyl_w(int d, int i, int j);

// |B(xy)> = (1/sqrt(d)) sum_l w^{-ly} |l, l+x>, a Bell basis of C^d x C^d.
Vector bell_state(int d, int x, int y);

// Explicit predicates; nothing in the library assumes these hold.
bool is_unitary(const Matrix& m, double tol = default_tol);
bool is_hermitian(const Matrix& m, double tol = default_tol);
bool is_projector(const Matrix& m, double tol = default_tol);

// Kronecker products; the left factor is the most significant register.
Matrix tensor(const Matrix& a, const Matrix& b);
Vector tensor(const Vector& a, const Vector& b);

// |psi><psi|
Matrix projector(const Vector& psi);

// Multi-register helpers. `dims` lists the register dimensions, register 0
// being the most significant index block (matching `tensor` order).

// Total dimension prod(dims); validates each entry >= 2 and the product.
int total_dim(std::span<const int> dims);

// op acting on register `reg`, identity elsewhere.
Matrix embed(const Matrix& op, std::span<const int> dims, int reg);

// Trace out the registers listed in `traced` (indices into dims).
Matrix partial_trace(const Matrix& rho, std::span<const int> dims,
                     std::span<const int> traced);

// K_reg * rho        (left action on one register, O(D^2 d) instead of a
// full D^3 product).
Matrix apply_local_left(const Matrix& rho, std::span<const int> dims, int reg,
                        const Matrix& k);
// rho * K_reg^dagger
Matrix apply_local_right(const Matrix& rho, std::span<const int> dims, int reg,
                         const Matrix& k);
// K_reg * rho * K_reg^dagger
Matrix conjugate_local(const Matrix& rho, std::span<const int> dims, int reg,
                       const Matrix& k);

// Hermitian PSD square root via eigendecomposition; eigenvalues in
// [-tol, 0] are clamped to zero, more negative ones throw std::domain_error.
Matrix psd_sqrt(const Matrix& m, double tol = default_tol);

// Density matrix with an explicit ordered register layout.  The constructor
// validates hermiticity and unit trace; positivity is an explicit predicate
// (an eigendecomposition per construction would dominate the oracle paths).
class DensityMatrix {
 public:
  DensityMatrix(Matrix m, std::vector<int> dims, double tol = default_tol);
  static DensityMatrix pure(const Vector& amp, std::vector<int> dims,
                            double tol = default_tol);

  const Matrix& matrix() const { return m_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  bool is_positive_semidefinite(double tol = default_tol) const;
  DensityMatrix trace_out(std::span<const int> traced) const;

 private:
  Matrix m_;
  std::vector<int> dims_;
};

// Normalized pure state with register layout.
class PureState {
 public:
  PureState(Vector amp, std::vector<int> dims, double tol = default_tol);

  const Vector& amplitudes() const { return amp_; }
  const std::vector<int>& dims() const { return dims_; }
  DensityMatrix to_density() const;

 private:
  Vector amp_;
  std::vector<int> dims_;
};

// rho -> op * rho * op^dagger on the full space; dimensions must match.
DensityMatrix apply_operator(const DensityMatrix& rho, const Matrix& op);

}  // namespace lm05
