#pragma once

#include <vector>

#include "lm05/qudit.hpp"

// Individual (round-by-round) cloning attack: detection statistics, the
// mutual-information triple and the resulting secret-key rate.
namespace lm05 {

enum class ChannelLeg { Forward, Backward };

// Attack parameters for both passes.  F / F_back are the probabilities that
// a computational-basis state passes undisturbed; theta/phi (and the _back
// pair) are symmetric angle matrices, diagonal ignored:
//   <e_ii | e_jj> = F cos(theta_ij)   (ancilla overlaps, i != j)
//   phi_ij are the overlap angles of the disturbed components.
struct CloningParams {
  int d = 2;
  double fidelity = 1.0;       // F, forward pass
  double fidelity_back = 1.0;  // F', backward pass
  Eigen::MatrixXd theta, phi, theta_back, phi_back;

  // Validates ranges (F in [0,1], angles in [0, pi/2]) and symmetry.
  CloningParams(int d, double fidelity, double fidelity_back,
                Eigen::MatrixXd theta, Eigen::MatrixXd phi,
                Eigen::MatrixXd theta_back, Eigen::MatrixXd phi_back,
                double tol = default_tol);

  // F = F' = 1 and every off-diagonal angle equal to `angle` on both passes.
  static CloningParams perfect_equiangular(int d, double angle);
};

// Probability that the Fourier state |i~> passes the given leg undisturbed:
//   (1/d^2) ( d + 2 F sum_{j<k} cos(theta_jk)
//             + (1-F)/(d-1) sum_{j != k} w^{2i(k-j)} cos(phi_jk) ).
double fourier_clone_norm(const CloningParams& params, ChannelLeg leg, int i);

// Round-averaged detection probability over the 2d preparations:
//   1 - (1/2d) sum_states P_nd(forward) P_nd(backward).
double detection_probability(const CloningParams& params);

// Same quantity for the perfect equiangular attack; algebraically
//   ((d-1)/d^2) ((d+1) + (d-1) cos(theta)) sin^2(theta/2),
// maximal at theta = pi/2 with value (d^2-1)/(2d^2).
double min_detection_probability(int d, double theta);

struct MutualInfoTriple {
  double I_AB = 0.0, I_AE = 0.0, I_BE = 0.0;
  // Underlying success probabilities (useful for simulation checks).
  double P_AB_fourier = 0.0;  // Bob decodes a Fourier-basis round correctly
  double P_AE = 0.0;          // Eve's dit equals Alice's
  double chi = 0.0;           // Eve's measurement design angle
};

// Equiangular perfect-fidelity attack at angle theta:
//   chi = arccos((1/sqrt d)(1 - 2 theta/pi)), p_eps = (1+cos 2chi)/2,
//   P_AE = p_eps^2 + (1-p_eps)^2/(d-1),
//   P_AB(fourier) = (1 + (d-1) cos^2 theta)/d,
//   I_AB = log2 d - H_d(P_AB(fourier))/2, I_AE = log2 d - H_d(P_AE),
//   I_BE from the per-basis B/E agreement probabilities.
MutualInfoTriple mutual_informations(int d, double theta);

struct IndividualKeyPoint {
  int d = 2;
  double theta = 0.0;
  double pdet_min = 0.0;
  MutualInfoTriple info;
  double r = 0.0;      // I_AB - min(I_AE, I_BE), bits per sifted round
  double r_reg = 0.0;  // r / log2 d
};

IndividualKeyPoint individual_key_rate(int d, double theta);

struct DetectionThreshold {
  double pdet = 0.0;   // detection probability at the threshold angle
  double theta = 0.0;  // root of I_AB(theta) = I_AE(theta), or pi/2
  bool crossing_found = false;
};

// Bisection for I_AB = I_AE on theta in [0, pi/2] (tolerance 1e-10, at most
// 200 iterations).  If the difference never changes sign the protocol stays
// information-theoretically secure on the whole range and the endpoint value
// is returned with crossing_found = false.
DetectionThreshold detection_threshold(int d);

// Eve's ancilla labels for encoding value x: pairs (n, n+x mod d) naming the
// (eps_nn, eta_{(n+x)(n+x)}) states she must distinguish.
struct EnsembleEntry {
  int eps_index = 0;
  int eta_index = 0;
};
std::vector<std::vector<EnsembleEntry>> eve_ensembles(int d);

// Isometry V|i> = |i>|e_ii> of the perfect equiangular cloner, as a
// d^2 x d ('honest' register first) matrix.  The ancilla Gram matrix is
// G = (1-cos theta) I + cos theta J; the ancillas are the columns of its
// PSD square root.
Matrix cloning_isometry(int d, double theta);

}  // namespace lm05
