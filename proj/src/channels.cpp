#include "lm05/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace lm05 {

bool is_pauli_kind(NoiseKind kind) {
  return kind != NoiseKind::AmplitudeDamping;
}

std::string kind_name(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::Depolarizing:
      return "depolarizing";
    case NoiseKind::DitPhaseFlip:
      return "dit-phase-flip";
    case NoiseKind::AmplitudeDamping:
      return "amplitude-damping";
  }
  throw std::invalid_argument("unknown noise kind");
}

std::string mode_name(CorrelationMode mode) {
  return mode == CorrelationMode::Independent ? "independent" : "correlated";
}

KrausChannel make_channel(NoiseKind kind, int d, double p) {
  check_dim(d);
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("noise strength outside [0, 1]");
  KrausChannel ch;
  ch.kind = kind;
  ch.d = d;
  ch.p = p;
  switch (kind) {
    case NoiseKind::Depolarizing: {
      // Weyl twirl: w_00 = 1 - p (d^2-1)/d^2, every other w_ij = p/d^2.
      const double w0 = 1.0 - p * (d * d - 1.0) / (d * d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const double w = (i == 0 && j == 0) ? w0 : p / (d * d);
          ch.weights.push_back(w);
          ch.unitaries.push_back(weyl_w(d, i, j));
        }
      break;
    }
    case NoiseKind::DitPhaseFlip: {
      // Identity with weight 1-p plus the strictly shifting-and-phasing
      // Weyl operators (i, j >= 1), uniformly weighted.
      ch.weights.push_back(1.0 - p);
      ch.unitaries.push_back(Matrix::Identity(d, d));
      const double w = p / ((d - 1.0) * (d - 1.0));
      for (int i = 1; i < d; ++i)
        for (int j = 1; j < d; ++j) {
          ch.weights.push_back(w);
          ch.unitaries.push_back(weyl_w(d, i, j));
        }
      break;
    }
    case NoiseKind::AmplitudeDamping: {
      Matrix k0 = Matrix::Zero(d, d);
      k0(0, 0) = 1.0;
      for (int i = 1; i < d; ++i) k0(i, i) = std::sqrt(1.0 - p);
      ch.kraus.push_back(k0);
      for (int i = 1; i < d; ++i) {
        Matrix ki = Matrix::Zero(d, d);
        ki(0, i) = std::sqrt(p);
        ch.kraus.push_back(ki);
      }
      return ch;
    }
  }
  for (std::size_t m = 0; m < ch.weights.size(); ++m)
    ch.kraus.push_back(std::sqrt(ch.weights[m]) * ch.unitaries[m]);
  return ch;
}

Matrix apply_channel(const KrausChannel& ch, const Matrix& rho) {
  if (rho.rows() != ch.d || rho.cols() != ch.d)
    throw std::invalid_argument("state dimension mismatch");
  Matrix out = Matrix::Zero(ch.d, ch.d);
  for (const Matrix& k : ch.kraus) out += k * rho * k.adjoint();
  return out;
}

DensityMatrix two_way_action(NoiseKind kind, CorrelationMode mode, int d,
                             double p, int x, int y,
                             const DensityMatrix& rho) {
  if (rho.dim() != d) throw std::invalid_argument("state dimension mismatch");
  if (mode == CorrelationMode::Correlated && !is_pauli_kind(kind))
    throw std::invalid_argument(
        "correlated amplitude damping is not modeled");
  const Matrix u = weyl_u(d, x, y);
  const KrausChannel ch = make_channel(kind, d, p);
  if (mode == CorrelationMode::Independent) {
    Matrix mid = apply_channel(ch, rho.matrix());
    Matrix enc = u * mid * u.adjoint();
    return DensityMatrix(apply_channel(ch, enc), rho.dims());
  }
  // One Weyl draw applied on both passes.
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t m = 0; m < ch.weights.size(); ++m) {
    const Matrix op = ch.unitaries[m] * u * ch.unitaries[m];
    out += ch.weights[m] * (op * rho.matrix() * op.adjoint());
  }
  return DensityMatrix(std::move(out), rho.dims());
}

}  // namespace lm05
