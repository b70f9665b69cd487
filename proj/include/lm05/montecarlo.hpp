#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lm05/channels.hpp"
#include "lm05/qudit.hpp"

// Round-by-round Monte-Carlo simulation of the two-way protocol, used as the
// independent statistical oracle for the closed-form error and detection
// rates.
namespace lm05 {

// Per-round generator: a fixed 64-bit mix of (seed, round index) seeds an
// mt19937_64, so every round's draws depend only on (seed, round) and the
// in-round draw order.  Results are bit-identical across runs and would stay
// so under any round-parallel execution.
class RoundRng {
 public:
  RoundRng(std::uint64_t seed, std::uint64_t round);

  double uniform();              // [0, 1)
  int dit(int d);                // uniform on {0, ..., d-1}
  int pick(std::span<const double> probs);  // sample from a distribution

 private:
  std::mt19937_64 gen_;
};

struct NoiseSpec {
  NoiseKind kind = NoiseKind::Depolarizing;
  CorrelationMode mode = CorrelationMode::Independent;
  double p = 0.0;
};

struct SimConfig {
  int d = 2;
  long long rounds = 0;
  double check_prob = 0.5;  // probability a round is a check round (1 - c)
  std::uint64_t seed = 0;
  // Exactly one of the two must be set.
  std::optional<NoiseSpec> noise;
  std::optional<double> cloning_theta;
};

struct BasisTally {
  long long message_rounds = 0;
  long long message_errors = 0;   // Bob's key dit != Alice's x
  long long check_rounds = 0;     // matching-basis check rounds only
  long long check_errors = 0;     // Bob's outcome != Alice's outcome
};

struct SimStats {
  SimConfig config;
  BasisTally tally[2];            // indexed by preparation basis
  long long checked = 0;          // matching-basis check rounds
  long long flagged = 0;          // double-correlation violations
  // Contingency tables (cloning runs): joint counts of Alice's key dit
  // against Bob's key dit per basis, and against Eve's guess.
  std::vector<long long> joint_ab[2];
  std::vector<long long> joint_ae;

  double Qk_hat(int basis) const;
  double Qt_hat(int basis) const;
  double PAB_hat(int basis) const;
  double Pdet_hat() const;
  // Binomial standard error sqrt(q(1-q)/n) of the corresponding estimate.
  double Qk_se(int basis) const;
  double Qt_se(int basis) const;
  double Pdet_se() const;
  // Plug-in mutual information of the contingency tables, in bits
  // (I_AB averaged over the two bases).
  double IAB_hat() const;
  double IAE_hat() const;
};

// Noise runs: prepare, sample a Kraus branch (exact per-round branch
// probabilities), encode U_xx or check mid-flight, sample the return branch
// (correlated mode reuses the round's Weyl draw), measure.  Bob's key dit is
// o - i mod d.
SimStats run_lm05_noise(const SimConfig& config);

// Cloning runs: the equiangular attack isometry on both passes, exact state
// tracking; Eve's dit is sampled classically with success probability P_AE.
SimStats run_lm05_cloning(const SimConfig& config);

}  // namespace lm05
