#include "lm05/individual_attack.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lm05/entropy.hpp"

namespace lm05 {

namespace {

constexpr double half_pi = std::numbers::pi / 2.0;

void check_angle(double theta) {
  if (!(theta >= 0.0 && theta <= half_pi + 1e-15))
    throw std::invalid_argument("attack angle outside [0, pi/2]");
}

void check_angle_matrix(const Eigen::MatrixXd& m, int d, double tol,
                        const char* what) {
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument(std::string(what) + " has wrong shape");
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > tol)
        throw std::invalid_argument(std::string(what) + " is not symmetric");
      if (!(m(i, j) >= -tol && m(i, j) <= half_pi + tol))
        throw std::invalid_argument(std::string(what) +
                                    " entry outside [0, pi/2]");
    }
}

}  // namespace

CloningParams::CloningParams(int d_, double fidelity_, double fidelity_back_,
                             Eigen::MatrixXd theta_, Eigen::MatrixXd phi_,
                             Eigen::MatrixXd theta_back_,
                             Eigen::MatrixXd phi_back_, double tol)
    : d(check_dim(d_)),
      fidelity(fidelity_),
      fidelity_back(fidelity_back_),
      theta(std::move(theta_)),
      phi(std::move(phi_)),
      theta_back(std::move(theta_back_)),
      phi_back(std::move(phi_back_)) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0) ||
      !(fidelity_back >= 0.0 && fidelity_back <= 1.0))
    throw std::invalid_argument("pass fidelity outside [0, 1]");
  check_angle_matrix(theta, d, tol, "theta");
  check_angle_matrix(phi, d, tol, "phi");
  check_angle_matrix(theta_back, d, tol, "theta'");
  check_angle_matrix(phi_back, d, tol, "phi'");
}

CloningParams CloningParams::perfect_equiangular(int d, double angle) {
  check_dim(d);
  check_angle(angle);
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(d, d, angle);
  m.diagonal().setZero();
  return CloningParams(d, 1.0, 1.0, m, m, m, m);
}

double fourier_clone_norm(const CloningParams& params, ChannelLeg leg,
                          int i) {
  const int d = params.d;
  if (i < 0 || i >= d) throw std::invalid_argument("state index out of range");
  const bool fwd = leg == ChannelLeg::Forward;
  const double f = fwd ? params.fidelity : params.fidelity_back;
  const Eigen::MatrixXd& th = fwd ? params.theta : params.theta_back;
  const Eigen::MatrixXd& ph = fwd ? params.phi : params.phi_back;

  double aligned = 0.0;  // sum over unordered pairs of cos(theta_jk)
  complexd disturbed = 0.0;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      if (j == k) continue;
      if (j < k) aligned += std::cos(th(j, k));
      disturbed +=
          root_of_unity(d, 2LL * i * (k - j)) * std::cos(ph(j, k));
    }
  const double value =
      (d + 2.0 * f * aligned + (1.0 - f) / (d - 1) * disturbed.real()) /
      (d * d);
  return value;
}

double detection_probability(const CloningParams& params) {
  const int d = params.d;
  // Computational states pass with probability F (forward), F' (backward).
  double sum = d * params.fidelity * params.fidelity_back;
  for (int i = 0; i < d; ++i)
    sum += fourier_clone_norm(params, ChannelLeg::Forward, i) *
           fourier_clone_norm(params, ChannelLeg::Backward, i);
  return 1.0 - sum / (2.0 * d);
}

double min_detection_probability(int d, double theta) {
  check_dim(d);
  check_angle(theta);
  const double s = std::sin(theta / 2.0);
  return (d - 1.0) / (d * d) * ((d + 1.0) + (d - 1.0) * std::cos(theta)) * s *
         s;
}

MutualInfoTriple mutual_informations(int d, double theta) {
  check_dim(d);
  check_angle(theta);
  MutualInfoTriple out;
  out.chi = std::acos((1.0 - 2.0 * theta / std::numbers::pi) / std::sqrt(d));
  const double p_eps = (1.0 + std::cos(2.0 * out.chi)) / 2.0;
  out.P_AE = p_eps * p_eps + (1.0 - p_eps) * (1.0 - p_eps) / (d - 1);
  const double c = std::cos(theta);
  out.P_AB_fourier = (1.0 + (d - 1) * c * c) / d;
  const double log2d = std::log2(static_cast<double>(d));
  out.I_AB = log2d - skewed_entropy(d, out.P_AB_fourier) / 2.0;
  out.I_AE = log2d - skewed_entropy(d, out.P_AE);
  // B/E agreement per preparation basis; computational rounds reach Bob
  // unharmed, so there it coincides with P_AE.
  const double p_be_comp = out.P_AE;
  const double p_be_fourier =
      out.P_AB_fourier * out.P_AE +
      (1.0 - out.P_AB_fourier) * (1.0 - out.P_AE) / (d - 1);
  out.I_BE = log2d - (skewed_entropy(d, p_be_comp) +
                      skewed_entropy(d, p_be_fourier)) /
                         2.0;
  return out;
}

IndividualKeyPoint individual_key_rate(int d, double theta) {
  IndividualKeyPoint point;
  point.d = d;
  point.theta = theta;
  point.pdet_min = min_detection_probability(d, theta);
  point.info = mutual_informations(d, theta);
  point.r = point.info.I_AB - std::min(point.info.I_AE, point.info.I_BE);
  point.r_reg = point.r / std::log2(static_cast<double>(d));
  return point;
}

DetectionThreshold detection_threshold(int d) {
  check_dim(d);
  auto gap = [d](double theta) {
    MutualInfoTriple m = mutual_informations(d, theta);
    return m.I_AB - m.I_AE;
  };
  DetectionThreshold out;
  // gap(0) = log2 d > 0; a crossing exists iff the endpoint goes negative.
  if (gap(half_pi) >= 0.0) {
    out.crossing_found = false;
    out.theta = half_pi;
    out.pdet = min_detection_probability(d, half_pi);
    return out;
  }
  double lo = 0.0, hi = half_pi;
  for (int it = 0; it < 200 && (hi - lo) > 1e-10; ++it) {
    const double mid = (lo + hi) / 2.0;
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  out.crossing_found = true;
  out.theta = (lo + hi) / 2.0;
  out.pdet = min_detection_probability(d, out.theta);
  return out;
}

std::vector<std::vector<EnsembleEntry>> eve_ensembles(int d) {
  check_dim(d);
  std::vector<std::vector<EnsembleEntry>> table(d);
  for (int x = 0; x < d; ++x) {
    table[x].reserve(d);
    for (int n = 0; n < d; ++n)
      table[x].push_back(EnsembleEntry{n, (n + x) % d});
  }
  return table;
}

Matrix cloning_isometry(int d, double theta) {
  check_dim(d);
  check_angle(theta);
  const double c = std::cos(theta);
  Matrix gram = Matrix::Constant(d, d, complexd(c, 0.0));
  gram.diagonal().setConstant(1.0);
  const Matrix root = psd_sqrt(gram);  // hermitian, so columns realize G
  Matrix v = Matrix::Zero(d * d, d);
  for (int i = 0; i < d; ++i) v.col(i).segment(i * d, d) = root.col(i);
  return v;
}

}  // namespace lm05
