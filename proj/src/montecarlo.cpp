#include "lm05/montecarlo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "lm05/individual_attack.hpp"

namespace lm05 {

namespace {

// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double ratio(long long num, long long den) {
  return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
}

double binom_se(double q, long long n) {
  return n > 0 ? std::sqrt(std::max(q * (1.0 - q), 0.0) / n) : 0.0;
}

// Plug-in mutual information (bits) of a d x d count table, rows = Alice.
double table_mi(const std::vector<long long>& counts, int d) {
  if (counts.empty()) return 0.0;
  long long total = std::accumulate(counts.begin(), counts.end(), 0LL);
  if (total == 0) return 0.0;
  std::vector<double> row(d, 0.0), col(d, 0.0);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      row[a] += counts[a * d + b];
      col[b] += counts[a * d + b];
    }
  double n = static_cast<double>(total), mi = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      double c = counts[a * d + b];
      if (c > 0.0) mi += (c / n) * std::log2(c * n / (row[a] * col[b]));
    }
  return mi;
}

void validate_config(const SimConfig& c, bool cloning) {
  check_dim(c.d);
  const int cap = cloning ? 7 : 8;  // exact-state tracking cost cap
  if (c.d > cap)
    throw std::invalid_argument("simulation dimension too large");
  if (c.rounds <= 0) throw std::invalid_argument("rounds must be positive");
  if (!(c.check_prob >= 0.0 && c.check_prob <= 1.0))
    throw std::invalid_argument("check_prob must lie in [0, 1]");
  if (cloning) {
    if (!c.cloning_theta || c.noise)
      throw std::invalid_argument(
          "cloning run needs cloning_theta and no noise spec");
    constexpr double half_pi = 1.57079632679489662;
    if (!(*c.cloning_theta >= 0.0 && *c.cloning_theta <= half_pi + 1e-12))
      throw std::invalid_argument("cloning_theta must lie in [0, pi/2]");
  } else {
    if (!c.noise || c.cloning_theta)
      throw std::invalid_argument(
          "noise run needs a noise spec and no cloning_theta");
    if (c.noise->kind == NoiseKind::AmplitudeDamping &&
        c.noise->mode == CorrelationMode::Correlated)
      throw std::invalid_argument(
          "correlated amplitude damping is unsupported");
  }
}

// Samples a Kraus branch with its exact probability on |psi>, applies it and
// renormalizes.  Pauli kinds use the Weyl mixture (branch probabilities are
// state-independent there), so the returned index can be replayed on the
// backward pass in correlated mode.
int apply_random_branch(const KrausChannel& ch, Vector& psi, RoundRng& rng) {
  if (!ch.weights.empty()) {
    int m = rng.pick(ch.weights);
    psi = ch.unitaries[m] * psi;
    return m;
  }
  std::vector<double> probs(ch.kraus.size());
  for (std::size_t m = 0; m < ch.kraus.size(); ++m)
    probs[m] = (ch.kraus[m] * psi).squaredNorm();
  int m = rng.pick(probs);
  psi = ch.kraus[m] * psi;
  psi /= psi.norm();
  return m;
}

// Outcome of measuring register 0 (the most significant block) of |psi| in
// the given basis; the rest of the state is discarded by the caller.
int measure_register0(const Vector& psi, int d, Basis basis, const Matrix& F,
                      RoundRng& rng) {
  const int rest = static_cast<int>(psi.size()) / d;
  std::vector<double> probs(d, 0.0);
  if (basis == Basis::Computational) {
    for (int a = 0; a < d; ++a)
      probs[a] = psi.segment(static_cast<Eigen::Index>(a) * rest, rest)
                     .squaredNorm();
  } else {
    for (int a = 0; a < d; ++a) {
      Vector blk = Vector::Zero(rest);
      for (int k = 0; k < d; ++k)
        blk += std::conj(F(k, a)) *
               psi.segment(static_cast<Eigen::Index>(k) * rest, rest);
      probs[a] = blk.squaredNorm();
    }
  }
  return rng.pick(probs);
}

}  // namespace

RoundRng::RoundRng(std::uint64_t seed, std::uint64_t round)
    : gen_(mix64(mix64(seed) + 0x9e3779b97f4a7c15ULL * round)) {}

double RoundRng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

int RoundRng::dit(int d) {
  if (d < 1) throw std::invalid_argument("dit: empty range");
  return static_cast<int>(gen_() % static_cast<std::uint64_t>(d));
}

int RoundRng::pick(std::span<const double> probs) {
  if (probs.empty()) throw std::invalid_argument("pick: empty distribution");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("pick: negative probability");
    total += p;
  }
  if (total <= 0.0) throw std::invalid_argument("pick: zero distribution");
  const double u = uniform() * total;
  double acc = 0.0;
  int last = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] <= 0.0) continue;
    acc += probs[i];
    last = static_cast<int>(i);
    if (u < acc) return last;
  }
  return last;  // guards the u ~ total rounding sliver
}

double SimStats::Qk_hat(int basis) const {
  return ratio(tally[basis].message_errors, tally[basis].message_rounds);
}
double SimStats::Qt_hat(int basis) const {
  return ratio(tally[basis].check_errors, tally[basis].check_rounds);
}
double SimStats::PAB_hat(int basis) const {
  return ratio(tally[basis].message_rounds - tally[basis].message_errors,
               tally[basis].message_rounds);
}
double SimStats::Pdet_hat() const { return ratio(flagged, checked); }
double SimStats::Qk_se(int basis) const {
  return binom_se(Qk_hat(basis), tally[basis].message_rounds);
}
double SimStats::Qt_se(int basis) const {
  return binom_se(Qt_hat(basis), tally[basis].check_rounds);
}
double SimStats::Pdet_se() const { return binom_se(Pdet_hat(), checked); }
double SimStats::IAB_hat() const {
  return 0.5 * (table_mi(joint_ab[0], config.d) +
                table_mi(joint_ab[1], config.d));
}
double SimStats::IAE_hat() const { return table_mi(joint_ae, config.d); }

// In-round draw order (fixed; every round draws only from its own RoundRng):
//   1. preparation basis   2. preparation dit        3. forward branch
//   4. message/check coin  5. message: encoding dit  |  check: Alice's basis,
//                                                       Alice's outcome
//   6. backward branch (independent mode only; correlated replays draw 3)
//   7. Bob's outcome
SimStats run_lm05_noise(const SimConfig& config) {
  validate_config(config, /*cloning=*/false);
  const int d = config.d;
  const KrausChannel ch = make_channel(config.noise->kind, d, config.noise->p);
  const bool correlated = config.noise->mode == CorrelationMode::Correlated;
  const Matrix F = fourier_matrix(d);
  std::vector<Matrix> encoders(d);
  for (int x = 0; x < d; ++x) encoders[x] = weyl_u(d, x, x);

  SimStats st;
  st.config = config;
  for (long long round = 0; round < config.rounds; ++round) {
    RoundRng rng(config.seed, static_cast<std::uint64_t>(round));
    const int theta = rng.dit(2);
    const int i = rng.dit(d);
    Vector psi = prepare_state(d, static_cast<Basis>(theta), i);
    const int fwd = apply_random_branch(ch, psi, rng);
    const bool check = rng.uniform() < config.check_prob;

    if (!check) {
      const int x = rng.dit(d);
      psi = encoders[x] * psi;
      if (correlated)
        psi = ch.unitaries[fwd] * psi;
      else
        apply_random_branch(ch, psi, rng);
      const int o =
          measure_register0(psi, d, static_cast<Basis>(theta), F, rng);
      const int key = ((o - i) % d + d) % d;
      ++st.tally[theta].message_rounds;
      if (key != x) ++st.tally[theta].message_errors;
    } else {
      const int beta = rng.dit(2);
      const int a = measure_register0(psi, d, static_cast<Basis>(beta), F, rng);
      psi = prepare_state(d, static_cast<Basis>(beta), a);
      if (correlated)
        psi = ch.unitaries[fwd] * psi;
      else
        apply_random_branch(ch, psi, rng);
      const int b =
          measure_register0(psi, d, static_cast<Basis>(theta), F, rng);
      if (beta == theta) {
        ++st.checked;
        ++st.tally[theta].check_rounds;
        if (b != a) ++st.tally[theta].check_errors;
        if (a != i || b != a) ++st.flagged;
      }
    }
  }
  return st;
}

// Draw order: 1. basis  2. dit  3. message/check coin
//   4. message: encoding dit, Bob's outcome, Eve's guess (one or two draws)
//      check:   Alice's basis, Alice's outcome, Bob's outcome
SimStats run_lm05_cloning(const SimConfig& config) {
  validate_config(config, /*cloning=*/true);
  const int d = config.d;
  const double theta_angle = *config.cloning_theta;
  const Matrix V = cloning_isometry(d, theta_angle);  // d^2 x d
  const Matrix F = fourier_matrix(d);
  const Matrix eye = Matrix::Identity(d, d);
  const MutualInfoTriple info = mutual_informations(d, theta_angle);

  // Full message-round map per encoding x, registers ordered
  // (Bob, backward ancilla, forward ancilla):
  //   M_x = (V (x) 1) (U_xx (x) 1) V : C^d -> C^{d^3}.
  const Matrix VI = tensor(V, eye);
  std::vector<Matrix> message_map(d);
  for (int x = 0; x < d; ++x)
    message_map[x] = VI * tensor(weyl_u(d, x, x), eye) * V;

  SimStats st;
  st.config = config;
  st.joint_ab[0].assign(static_cast<std::size_t>(d) * d, 0);
  st.joint_ab[1].assign(static_cast<std::size_t>(d) * d, 0);
  st.joint_ae.assign(static_cast<std::size_t>(d) * d, 0);

  for (long long round = 0; round < config.rounds; ++round) {
    RoundRng rng(config.seed, static_cast<std::uint64_t>(round));
    const int theta = rng.dit(2);
    const int i = rng.dit(d);
    const Vector prep = prepare_state(d, static_cast<Basis>(theta), i);
    const bool check = rng.uniform() < config.check_prob;

    if (!check) {
      const int x = rng.dit(d);
      const Vector psi = message_map[x] * prep;
      const int o =
          measure_register0(psi, d, static_cast<Basis>(theta), F, rng);
      const int key = ((o - i) % d + d) % d;
      ++st.tally[theta].message_rounds;
      if (key != x) ++st.tally[theta].message_errors;
      ++st.joint_ab[theta][static_cast<std::size_t>(x) * d + key];
      int eve;
      if (rng.uniform() < info.P_AE) {
        eve = x;
      } else {  // uniform over the d-1 wrong dits
        const int w = rng.dit(d - 1);
        eve = w >= x ? w + 1 : w;
      }
      ++st.joint_ae[static_cast<std::size_t>(x) * d + eve];
    } else {
      const int beta = rng.dit(2);
      // Alice measures the travel register; the forward ancilla no longer
      // influences Bob once she re-prepares, so it is dropped here.
      const Vector fwd = V * prep;
      const int a = measure_register0(fwd, d, static_cast<Basis>(beta), F, rng);
      const Vector bwd = V * prepare_state(d, static_cast<Basis>(beta), a);
      const int b =
          measure_register0(bwd, d, static_cast<Basis>(theta), F, rng);
      if (beta == theta) {
        ++st.checked;
        ++st.tally[theta].check_rounds;
        if (b != a) ++st.tally[theta].check_errors;
        if (a != i || b != a) ++st.flagged;
      }
    }
  }
  return st;
}

}  // namespace lm05
