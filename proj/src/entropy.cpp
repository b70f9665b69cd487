#include "lm05/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace lm05 {

double xlog2(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> p,
                                                 double tol)
    : p_(std::move(p)) {
  if (p_.empty()) throw std::invalid_argument("empty distribution");
  double sum = 0.0;
  for (double v : p_) {
    if (!std::isfinite(v) || v < -tol || v > 1.0 + tol)
      throw std::invalid_argument("probability out of range");
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol)
    throw std::invalid_argument("probabilities do not sum to 1");
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) {
    if (v < -entropy_eig_clamp)
      throw std::domain_error("negative probability");
    h -= xlog2(std::max(v, 0.0));
  }
  return h;
}

double shannon_entropy(const ProbabilityDistribution& p) {
  return shannon_entropy(std::span<const double>(p.values()));
}

double skewed_entropy(int d, double p) {
  if (d < 1) throw std::invalid_argument("dimension must be at least 1");
  if (p < 0.0 || p > 1.0)
    throw std::domain_error("probability outside [0, 1]");
  if (d == 1) {
    // Single-outcome alphabet: the distribution is a point mass.
    if (std::abs(p - 1.0) > default_tol)
      throw std::domain_error("d = 1 requires p = 1");
    return 0.0;
  }
  const double rest = 1.0 - p;
  return -xlog2(p) - (rest > 0.0 ? rest * std::log2(rest / (d - 1)) : 0.0);
}

double binary_entropy(double p) { return skewed_entropy(2, p); }

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix(),
                                               Eigen::EigenvaluesOnly);
  double h = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double lambda = solver.eigenvalues()(i);
    if (lambda < -default_tol)
      throw std::domain_error("state has a negative eigenvalue");
    if (lambda > entropy_eig_clamp) h -= lambda * std::log2(lambda);
  }
  return h;
}

double conditional_entropy(const Eigen::MatrixXd& joint) {
  double total = 0.0, h = 0.0;
  for (Eigen::Index r = 0; r < joint.rows(); ++r) {
    double row = 0.0;
    for (Eigen::Index c = 0; c < joint.cols(); ++c) {
      const double q = joint(r, c);
      if (!std::isfinite(q) || q < -1e-9)
        throw std::domain_error("invalid joint distribution");
      row += std::max(q, 0.0);
      h -= xlog2(std::max(q, 0.0));
    }
    h += xlog2(row);
    total += row;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::domain_error("joint distribution does not sum to 1");
  return h;
}

}  // namespace lm05
