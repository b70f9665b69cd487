#pragma once

#include <span>
#include <vector>

#include "lm05/qudit.hpp"

namespace lm05 {

// x*log2(x) with the 0*log0 = 0 convention.
double xlog2(double x);

// Discrete distribution: entries in [-tol, 1+tol], sum within tol of 1.
class ProbabilityDistribution {
 public:
  explicit ProbabilityDistribution(std::vector<double> p,
                                   double tol = default_tol);
  const std::vector<double>& values() const { return p_; }

 private:
  std::vector<double> p_;
};

// Shannon entropy in bits.
double shannon_entropy(std::span<const double> p);
double shannon_entropy(const ProbabilityDistribution& p);

// H_d(p) = -p log2 p - (1-p) log2((1-p)/(d-1)): entropy of the distribution
// that puts p on one outcome and spreads the rest uniformly over the other
// d-1.  H_1 is defined as 0 (the distribution is a point mass).
double skewed_entropy(int d, double p);

// H_2 shorthand.
double binary_entropy(double p);

// Von Neumann entropy in bits.  Eigenvalues below the clamp contribute
// nothing; eigenvalues below -default_tol raise std::domain_error.
inline constexpr double entropy_eig_clamp = 1e-12;
double von_neumann_entropy(const DensityMatrix& rho);

// H(col | row) of a joint distribution q(row, col), in bits.
double conditional_entropy(const Eigen::MatrixXd& joint);

}  // namespace lm05
