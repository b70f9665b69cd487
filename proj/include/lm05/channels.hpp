#pragma once

#include <string>
#include <vector>

#include "lm05/qudit.hpp"

// Qudit noise channels and their action on one protocol round (forward pass,
// encoding, backward pass).
namespace lm05 {

enum class NoiseKind { Depolarizing, DitPhaseFlip, AmplitudeDamping };
enum class CorrelationMode { Independent, Correlated };

bool is_pauli_kind(NoiseKind kind);
std::string kind_name(NoiseKind kind);
std::string mode_name(CorrelationMode mode);

struct KrausChannel {
  NoiseKind kind;
  int d = 0;
  double p = 0.0;
  std::vector<Matrix> kraus;
  // For the Pauli kinds the channel is also carried as a mixture of Weyl
  // unitaries; the correlated two-pass action reuses one (i,j) draw on both
  // passes.  Empty for amplitude damping.
  std::vector<double> weights;
  std::vector<Matrix> unitaries;
};

// Depolarizing: (1-p) rho + (p/d) I, realized as the Weyl twirl with
//   w_00 = 1 - p(d^2-1)/d^2, w_ij = p/d^2 otherwise.
// Dit-phase flip: (1-p) rho + p/(d-1)^2 sum_{i,j>=1} W_ij rho W_ij^dag.
// Amplitude damping: K_0 = |0><0| + sqrt(1-p) sum_{i>=1} |i><i|,
//   K_i = sqrt(p) |0><i|.
// Throws std::invalid_argument for d < 2 or p outside [0, 1].
KrausChannel make_channel(NoiseKind kind, int d, double p);

// sum_m K_m rho K_m^dagger on a bare d x d matrix.
Matrix apply_channel(const KrausChannel& ch, const Matrix& rho);

// One round of the two-way protocol on the traveling qudit:
//   independent: E(U_xy E(rho) U_xy^dag)
//   correlated : sum_ij w_ij (W_ij U_xy W_ij) rho (W_ij U_xy W_ij)^dag
// Correlated amplitude damping is unsupported (std::invalid_argument).
DensityMatrix two_way_action(NoiseKind kind, CorrelationMode mode, int d,
                             double p, int x, int y, const DensityMatrix& rho);

}  // namespace lm05
