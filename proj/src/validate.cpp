#include "lm05/validate.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "lm05/channels.hpp"
#include "lm05/collective_attack.hpp"
#include "lm05/csv.hpp"
#include "lm05/entropy.hpp"
#include "lm05/individual_attack.hpp"
#include "lm05/montecarlo.hpp"
#include "lm05/qudit.hpp"

namespace lm05 {

namespace {

constexpr double half_pi = 1.57079632679489662;

struct Sweep {
  ValidationReport report;

  template <typename F>
  void run(const std::string& name, F f) {
    ValidationLine line;
    line.name = name;
    try {
      auto [pass, detail] = f();
      line.pass = pass;
      line.detail = detail;
    } catch (const std::exception& e) {
      line.pass = false;
      line.detail = std::string("exception: ") + e.what();
    }
    report.lines.push_back(std::move(line));
  }
};

using Result = std::pair<bool, std::string>;

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

Matrix random_density(int d, std::mt19937& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = complexd(n(gen), n(gen));
  Matrix rho = g * g.adjoint();
  return rho / rho.trace();
}

const std::vector<std::pair<NoiseKind, CorrelationMode>> kCombos = {
    {NoiseKind::Depolarizing, CorrelationMode::Independent},
    {NoiseKind::Depolarizing, CorrelationMode::Correlated},
    {NoiseKind::DitPhaseFlip, CorrelationMode::Independent},
    {NoiseKind::DitPhaseFlip, CorrelationMode::Correlated},
    {NoiseKind::AmplitudeDamping, CorrelationMode::Independent},
};

// r_reg at a fixed key-error abscissa, linearly interpolated along the
// low-p (monotone) branch of the curve.
double rate_reg_at_qder(NoiseKind kind, int d, double target) {
  const double p_hi = (d - 1.0) / d;
  CollectiveKeyPoint prev =
      collective_key_rate(kind, CorrelationMode::Independent, d, 0.0);
  for (int k = 1; k <= 400; ++k) {
    const double p = p_hi * k / 400;
    CollectiveKeyPoint cur =
        collective_key_rate(kind, CorrelationMode::Independent, d, p);
    if (cur.qder >= target) {
      const double t = (target - prev.qder) / (cur.qder - prev.qder);
      return prev.r_reg + t * (cur.r_reg - prev.r_reg);
    }
    prev = cur;
  }
  throw std::runtime_error("abscissa outside the curve range");
}

}  // namespace

ValidationReport run_validation() {
  Sweep s;

  s.run("weyl-unitarity", []() -> Result {
    for (int d = 2; d <= 6; ++d)
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
          if (!is_unitary(weyl_u(d, x, y)) || !is_unitary(weyl_w(d, x, y)))
            return {false, "non-unitary operator at d=" + std::to_string(d)};
    return {true, "shift/phase families unitary for d=2..6"};
  });

  s.run("weyl-composition", []() -> Result {
    for (int d = 2; d <= 5; ++d)
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
          Matrix prod = weyl_u(d, x, y) * weyl_u(d, 1, 1);
          Matrix ref = weyl_u(d, (x + 1) % d, (y + 1) % d);
          Matrix ratio = ref.adjoint() * prod;  // should be a global phase
          if (std::abs(std::abs(ratio(0, 0)) - 1.0) > 1e-10 ||
              (ratio / ratio(0, 0) - Matrix::Identity(d, d)).norm() > 1e-10)
            return {false, "composition fails at d=" + std::to_string(d)};
        }
    return {true, "U_xy U_11 = phase * U_(x+1)(y+1) for d=2..5"};
  });

  s.run("bell-orthonormality", []() -> Result {
    for (int d = 2; d <= 5; ++d)
      for (int a = 0; a < d * d; ++a)
        for (int b = 0; b < d * d; ++b) {
          complexd ip = bell_state(d, a / d, a % d)
                            .dot(bell_state(d, b / d, b % d));
          if (std::abs(ip - (a == b ? 1.0 : 0.0)) > 1e-10)
            return {false, "inner product off at d=" + std::to_string(d)};
        }
    return {true, "d^2 Bell vectors orthonormal for d=2..5"};
  });

  s.run("fourier-unbiasedness", []() -> Result {
    for (int d = 2; d <= 8; ++d) {
      Matrix F = fourier_matrix(d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          if (std::abs(std::norm(F(i, j)) - 1.0 / d) > 1e-10)
            return {false, "overlap not 1/d at d=" + std::to_string(d)};
    }
    return {true, "|<i|j~>|^2 = 1/d for d=2..8"};
  });

  s.run("entropy-identities", []() -> Result {
    for (int d = 2; d <= 10; ++d) {
      if (std::abs(skewed_entropy(d, 1.0)) > 1e-12)
        return {false, "H_d(1) != 0"};
      if (std::abs(skewed_entropy(d, 1.0 / d) - std::log2(double(d))) > 1e-12)
        return {false, "H_d(1/d) != log2 d"};
    }
    if (std::abs(binary_entropy(0.5) - 1.0) > 1e-12)
      return {false, "h(1/2) != 1"};
    if (xlog2(0.0) != 0.0) return {false, "xlog2(0) != 0"};
    Eigen::MatrixXd joint = Eigen::MatrixXd::Constant(3, 3, 1.0 / 9.0);
    if (std::abs(conditional_entropy(joint) - std::log2(3.0)) > 1e-12)
      return {false, "H(X'|X) of uniform joint != log2 d"};
    return {true, "endpoint and uniform-distribution identities hold"};
  });

  s.run("kraus-completeness", []() -> Result {
    for (auto kind : {NoiseKind::Depolarizing, NoiseKind::DitPhaseFlip,
                      NoiseKind::AmplitudeDamping})
      for (int d = 2; d <= 6; ++d)
        for (double p : {0.0, 0.3, 1.0}) {
          KrausChannel ch = make_channel(kind, d, p);
          Matrix sum = Matrix::Zero(d, d);
          for (const auto& k : ch.kraus) sum += k.adjoint() * k;
          if ((sum - Matrix::Identity(d, d)).norm() > 1e-10)
            return {false, kind_name(kind) + " incomplete at d=" +
                               std::to_string(d)};
        }
    return {true, "sum K^dag K = 1 for all kinds, d=2..6, p in {0,0.3,1}"};
  });

  s.run("depolarizing-twirl", []() -> Result {
    std::mt19937 gen(7);
    double worst = 0.0;
    for (int d = 2; d <= 5; ++d)
      for (double p : {0.2, 0.8}) {
        KrausChannel ch = make_channel(NoiseKind::Depolarizing, d, p);
        Matrix rho = random_density(d, gen);
        Matrix expect =
            (1.0 - p) * rho + p / d * Matrix::Identity(d, d);
        worst = std::max(worst, (apply_channel(ch, rho) - expect).norm());
      }
    return {worst <= 1e-10,
            "max deviation from (1-p) rho + p 1/d: " + num(worst)};
  });

  s.run("pauli-unitality", []() -> Result {
    for (auto kind : {NoiseKind::Depolarizing, NoiseKind::DitPhaseFlip})
      for (int d = 2; d <= 6; ++d) {
        KrausChannel ch = make_channel(kind, d, 0.4);
        Matrix id = Matrix::Identity(d, d) / double(d);
        if ((apply_channel(ch, id) - id).norm() > 1e-10)
          return {false, kind_name(kind) + " not unital"};
      }
    // Full damping sends everything to |0><0|.
    KrausChannel adc = make_channel(NoiseKind::AmplitudeDamping, 3, 1.0);
    Matrix id3 = Matrix::Identity(3, 3) / 3.0;
    Matrix out = apply_channel(adc, id3);
    Matrix ground = Matrix::Zero(3, 3);
    ground(0, 0) = 1.0;
    if ((out - ground).norm() > 1e-10)
      return {false, "full amplitude damping misses the ground state"};
    return {true, "Pauli kinds unital; p=1 damping pins |0><0|"};
  });

  s.run("detection-identity", []() -> Result {
    double worst = 0.0;
    for (int d = 2; d <= 7; ++d)
      for (int k = 0; k < 50; ++k) {
        const double theta = half_pi * k / 49;
        const double a = detection_probability(
            CloningParams::perfect_equiangular(d, theta));
        const double b = min_detection_probability(d, theta);
        worst = std::max(worst, std::abs(a - b));
      }
    return {worst <= 1e-12,
            "state-sum vs closed form, 50-point grid d=2..7: max |diff| = " +
                num(worst)};
  });

  s.run("max-detection-value", []() -> Result {
    double worst = 0.0;
    for (int d = 2; d <= 10; ++d) {
      const double expect = (d * d - 1.0) / (2.0 * d * d);
      worst =
          std::max(worst, std::abs(min_detection_probability(d, half_pi) -
                                   expect));
    }
    return {worst <= 1e-12,
            "peak detection = (d^2-1)/(2d^2) for d=2..10, max |diff| = " +
                num(worst)};
  });

  s.run("threshold-monotone", []() -> Result {
    double prev = -1.0;
    for (int d = 2; d <= 10; ++d) {
      const double t = detection_threshold(d).pdet;
      if (t <= prev)
        return {false, "threshold not increasing at d=" + std::to_string(d)};
      prev = t;
    }
    return {true, "security threshold strictly increasing for d=2..10"};
  });

  s.run("individual-endpoints", []() -> Result {
    IndividualKeyPoint a = individual_key_rate(2, 0.0);
    IndividualKeyPoint b = individual_key_rate(2, half_pi);
    IndividualKeyPoint c = individual_key_rate(3, half_pi);
    const bool pass = std::abs(a.r - 1.0) <= 1e-10 &&
                      std::abs(b.r) <= 1e-10 &&
                      std::abs(b.info.I_AB - 0.5) <= 1e-10 &&
                      std::abs(b.info.I_BE - 0.5) <= 1e-10 &&
                      std::abs(b.info.I_AE - 1.0) <= 1e-10 &&
                      std::abs(c.r - 0.75) <= 1e-10;
    return {pass, "r(2,0)=" + num(a.r) + ", r(2,pi/2)=" + num(b.r) +
                      ", r(3,pi/2)=" + num(c.r)};
  });

  s.run("cloning-isometry", []() -> Result {
    for (int d = 2; d <= 6; ++d)
      for (double angle : {0.3, 1.2}) {
        Matrix v = cloning_isometry(d, angle);
        if ((v.adjoint() * v - Matrix::Identity(d, d)).norm() > 1e-9)
          return {false, "V^dag V != 1 at d=" + std::to_string(d)};
        const double c = std::cos(angle);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) {
            complexd ip = v.col(i).segment(i * d, d)
                              .dot(v.col(j).segment(j * d, d));
            const double expect = i == j ? 1.0 : c;
            if (std::abs(ip - expect) > 1e-9)
              return {false, "ancilla Gram off at d=" + std::to_string(d)};
          }
      }
    return {true, "isometry and equiangular ancilla overlaps, d=2..6"};
  });

  s.run("purified-encode-identity", []() -> Result {
    std::mt19937 gen(11);
    double worst = 0.0;
    for (int d = 2; d <= 4; ++d) {
      Matrix avg = Matrix::Zero(d, d);
      Matrix rho = random_density(d, gen);
      DensityMatrix dm(rho, {d});
      for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
          Matrix u = weyl_u(d, x, y);
          Matrix direct = u * rho * u.adjoint();
          Matrix tele = purified_encode(dm, x, y).matrix();
          worst = std::max(worst, (tele - direct).norm());
          avg += tele / double(d * d);
        }
      worst = std::max(
          worst, (avg - Matrix::Identity(d, d) / double(d)).norm());
    }
    return {worst <= 1e-12,
            "teleported encoding vs direct conjugation, d=2..4: max |diff| = " +
                num(worst)};
  });

  s.run("gamma-overlap", []() -> Result {
    double worst = 0.0;
    for (int d = 2; d <= 6; ++d)
      for (int basis : {0, 1})
        worst = std::max(worst,
                         std::abs(gamma_overlap(d, basis) - 1.0 / d));
    return {worst <= 1e-9,
            "measurement overlap gamma = 1/d, d=2..6, both bases; max |diff| "
            "= " + num(worst)};
  });

  s.run("coarse-completeness", []() -> Result {
    for (int d = 2; d <= 6; ++d)
      for (int basis : {0, 1}) {
        CoarseMeasurementSet set = coarse_measurements(d, basis);
        Matrix se = Matrix::Zero(d * d, d * d), sd = se, sc = se;
        for (int x = 0; x < d; ++x) {
          se += set.encoders[x];
          sd += set.decoders[x];
          sc += set.check_alice[x];
        }
        Matrix id = Matrix::Identity(d * d, d * d);
        if ((se - id).norm() > 1e-10 || (sd - id).norm() > 1e-10 ||
            (sc - id).norm() > 1e-10)
          return {false, "family incomplete at d=" + std::to_string(d)};
        for (int x = 0; x < d; ++x)
          if (!is_projector(set.encoders[x]) ||
              std::abs(set.encoders[x].trace().real() - d) > 1e-9)
            return {false, "encoder not rank-d at d=" + std::to_string(d)};
      }
    return {true, "coarse families complete, projective, rank d (d=2..6)"};
  });

  s.run("oracle-equivalence-grid", []() -> Result {
    double worst = 0.0;
    int points = 0;
    for (const auto& [kind, mode] : kCombos)
      for (int d = 2; d <= 5; ++d)
        for (double p : {0.0, 0.1, 0.3, 0.7, 1.0})
          for (int basis : {0, 1}) {
            PurifiedStatistics ps = purified_statistics(kind, mode, d, p,
                                                        basis);
            ErrorRates rates = error_rates(kind, mode, d, p);
            worst = std::max(worst, std::abs(ps.Qk - rates.Qk[basis]));
            worst = std::max(worst, std::abs(ps.Qt - rates.Qt[basis]));
            ++points;
          }
    return {worst <= 1e-9, "max |dQ| = " + num(worst) + " over " +
                               std::to_string(points) +
                               " grid points (tol 1e-9)"};
  });

  s.run("adc-check-entropy-report", []() -> Result {
    // Report-only comparison of the tabulated Fourier-run check entropy
    // against the exact conditional entropy; the rates always use the exact
    // value, which is asserted here.
    std::string detail;
    bool matches = true, oracle_used = true;
    for (int d : {2, 3, 4})
      for (double p : {0.1, 0.5}) {
        const double closed = adc_check_entropy_closed_form(d, p);
        const double oracle = adc_check_entropy(d, p, 1);
        if (std::abs(closed - oracle) > 1e-9) matches = false;
        ErrorRates rates = error_rates(NoiseKind::AmplitudeDamping,
                                       CorrelationMode::Independent, d, p);
        const double used = conditional_entropies(rates, 1)[1];
        if (std::abs(used - oracle) > 1e-12) oracle_used = false;
        if (!detail.empty()) detail += "; ";
        detail += "d=" + std::to_string(d) + ",p=" + num(p) + ": form=" +
                  num(closed) + " exact=" + num(oracle);
      }
    detail = std::string("tabulated form ") +
             (matches ? "matches" : "does NOT match") +
             " the exact entropy (tol 1e-9); rates use the exact value: " +
             (oracle_used ? "yes" : "NO") + " | " + detail;
    return {oracle_used, detail};
  });

  s.run("pauli-basis-symmetry", []() -> Result {
    for (auto kind : {NoiseKind::Depolarizing, NoiseKind::DitPhaseFlip})
      for (auto mode :
           {CorrelationMode::Independent, CorrelationMode::Correlated})
        for (int d : {2, 3, 5, 8})
          for (double p : {0.1, 0.4, 0.9}) {
            ErrorRates r = error_rates(kind, mode, d, p);
            if (std::abs(r.Qk[0] - r.Qk[1]) > 1e-12 ||
                std::abs(r.Qt[0] - r.Qt[1]) > 1e-12)
              return {false, "basis asymmetry at d=" + std::to_string(d)};
          }
    return {true, "Pauli error rates identical across bases"};
  });

  s.run("rate-zero-noise", []() -> Result {
    for (const auto& [kind, mode] : kCombos)
      for (int d : {2, 3, 5, 10}) {
        CollectiveKeyPoint pt = collective_key_rate(kind, mode, d, 0.0);
        if (std::abs(pt.r - std::log2(double(d))) > 1e-10 ||
            std::abs(pt.qder) > 1e-12)
          return {false, "p=0 rate off at d=" + std::to_string(d)};
      }
    return {true, "r(0) = log2 d, qder(0) = 0 for all channel combinations"};
  });

  s.run("rate-monotone", []() -> Result {
    for (const auto& [kind, mode] : kCombos)
      for (int d : {2, 3, 5}) {
        double prev = std::log2(double(d)) + 1e-12;
        for (int k = 1; k <= 10; ++k) {
          const double p = 0.45 * k / 10;
          const double r = collective_key_rate(kind, mode, d, p).r;
          if (r > prev + 1e-10)
            return {false, kind_name(kind) + "/" + mode_name(mode) +
                               " rate increases at d=" + std::to_string(d) +
                               ", p=" + num(p)};
          prev = r;
        }
      }
    return {true, "r(p) non-increasing on [0, 0.45] for all combinations"};
  });

  s.run("dimensional-advantage", []() -> Result {
    for (auto kind : {NoiseKind::Depolarizing, NoiseKind::DitPhaseFlip,
                      NoiseKind::AmplitudeDamping})
      for (double qk : {0.05, 0.1}) {
        double prev = -1.0;
        for (int d : {3, 5, 8, 10}) {
          const double rr = rate_reg_at_qder(kind, d, qk);
          if (rr < prev - 1e-9)
            return {false, kind_name(kind) + ": r_reg drops from d=" +
                               std::to_string(d)};
          prev = rr;
        }
      }
    return {true,
            "r_reg non-decreasing over d in {3,5,8,10} at fixed key error"};
  });

  s.run("corr-d2-anomaly", []() -> Result {
    for (auto kind : {NoiseKind::Depolarizing, NoiseKind::DitPhaseFlip}) {
      double prev_r = 2.0;
      for (int k = 0; k <= 10; ++k) {
        const double p = 0.05 + 0.4 * k / 10;
        CollectiveKeyPoint pt =
            collective_key_rate(kind, CorrelationMode::Correlated, 2, p);
        if (std::abs(pt.Qk[0]) > 1e-12 || std::abs(pt.Qk[1]) > 1e-12)
          return {false, kind_name(kind) + ": key error not zero at p=" +
                             num(p)};
        if (pt.r >= prev_r)
          return {false, kind_name(kind) + ": rate not decreasing at p=" +
                             num(p)};
        prev_r = pt.r;
      }
    }
    return {true,
            "correlated d=2: zero key error yet strictly decreasing rate"};
  });

  s.run("hierarchy-2xd-vs-d2", []() -> Result {
    for (auto kind : {NoiseKind::Depolarizing, NoiseKind::DitPhaseFlip,
                      NoiseKind::AmplitudeDamping}) {
      std::vector<double> grid(81);
      for (int k = 0; k < 81; ++k) grid[k] = 0.4 * k / 80;
      ComparisonResult cmp = protocol_comparison(
          kind, CorrelationMode::Independent, 3, grid);
      InterpolatedComparison ic = interpolate_comparison(cmp, 200);
      for (std::size_t k = 0; k < ic.Qk.size(); ++k)
        if (ic.rate_two_x_d[k] > 1e-9 && ic.rate_d_squared[k] > 1e-9 &&
            ic.rate_d_squared[k] < ic.rate_two_x_d[k] - 1e-9)
          return {false, kind_name(kind) + ": d^2 variant loses at Qk=" +
                             num(ic.Qk[k])};
    }
    return {true,
            "one d^2-dim round beats two d-dim rounds (independent noise, "
            "d=3)"};
  });

  s.run("mc-determinism", []() -> Result {
    SimConfig cfg;
    cfg.d = 2;
    cfg.rounds = 2000;
    cfg.seed = 99;
    cfg.noise = NoiseSpec{NoiseKind::Depolarizing,
                          CorrelationMode::Independent, 0.2};
    SimStats a = run_lm05_noise(cfg), b = run_lm05_noise(cfg);
    for (int t : {0, 1})
      if (a.tally[t].message_errors != b.tally[t].message_errors ||
          a.tally[t].check_errors != b.tally[t].check_errors)
        return {false, "same seed produced different tallies"};
    if (a.checked != b.checked || a.flagged != b.flagged)
      return {false, "same seed produced different check statistics"};
    return {true, "identical (config, seed) reruns are bit-identical"};
  });

  s.run("mc-agreement", []() -> Result {
    auto within = [](double est, double target, long long n, double z) {
      return std::abs(est - target) <=
             z * std::sqrt(std::max(target * (1 - target), 1e-12) / n);
    };
    SimConfig cfg;
    cfg.d = 3;
    cfg.rounds = 20000;
    cfg.seed = 41;
    cfg.noise = NoiseSpec{NoiseKind::Depolarizing,
                          CorrelationMode::Independent, 0.3};
    SimStats st = run_lm05_noise(cfg);
    for (int t : {0, 1}) {
      if (!within(st.Qk_hat(t), 0.34, st.tally[t].message_rounds, 5.0))
        return {false, "depolarizing key-error estimate off: " +
                           num(st.Qk_hat(t)) + " vs 0.34"};
      if (!within(st.Qt_hat(t), 0.2, st.tally[t].check_rounds, 5.0))
        return {false, "depolarizing check-error estimate off"};
    }
    cfg.d = 2;
    cfg.seed = 43;
    cfg.noise = NoiseSpec{NoiseKind::DitPhaseFlip,
                          CorrelationMode::Correlated, 0.5};
    st = run_lm05_noise(cfg);
    if (st.tally[0].message_errors + st.tally[1].message_errors != 0)
      return {false, "correlated d=2 key error not exactly zero"};
    for (int t : {0, 1})
      if (!within(st.Qt_hat(t), 0.5, st.tally[t].check_rounds, 5.0))
        return {false, "correlated check-error estimate off"};
    cfg.noise.reset();
    cfg.seed = 47;
    cfg.cloning_theta = half_pi;
    st = run_lm05_cloning(cfg);
    if (st.PAB_hat(0) != 1.0)
      return {false, "computational cloning correlation not exact"};
    if (!within(st.Pdet_hat(), 0.375, st.checked, 5.0))
      return {false, "cloning detection estimate off: " +
                         num(st.Pdet_hat()) + " vs 0.375"};
    cfg.cloning_theta = 0.0;
    st = run_lm05_cloning(cfg);
    if (st.Pdet_hat() != 0.0 || st.PAB_hat(0) != 1.0 || st.PAB_hat(1) != 1.0)
      return {false, "trivial cloner not exactly undetectable"};
    return {true,
            "simulated frequencies within 5 binomial SE of closed forms "
            "(N=2e4 spot grid)"};
  });

  s.run("csv-determinism", []() -> Result {
    if (format_value(0.375) != "0.375" ||
        format_value(1.0 / 3.0) != "0.333333333333" ||
        format_value(-0.0) != "0")
      return {false, "numeric formatting drifted"};
    CsvTable a({"x", "y"}), b({"x", "y"});
    a.add_row({1LL, 0.1});
    b.add_row({1LL, 0.1});
    if (a.str() != b.str()) return {false, "identical tables render apart"};
    return {true, "12-significant-digit formatting, stable bytes"};
  });

  s.report.all_pass = true;
  for (const auto& line : s.report.lines)
    s.report.all_pass = s.report.all_pass && line.pass;
  return s.report;
}

}  // namespace lm05
