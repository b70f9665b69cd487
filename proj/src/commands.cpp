#include "lm05/commands.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lm05/individual_attack.hpp"

namespace lm05 {

namespace {

constexpr double half_pi = 1.57079632679489662;

std::vector<int> checked_dims(std::vector<int> dims) {
  if (dims.empty()) throw std::invalid_argument("empty dimension list");
  for (int d : dims)
    if (d < 2 || d > 16)
      throw std::invalid_argument("dimensions must lie in [2, 16]");
  std::sort(dims.begin(), dims.end());
  dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
  return dims;
}

std::vector<double> grid(int n, double lo, double hi) {
  if (n < 2) throw std::invalid_argument("grid needs at least 2 points");
  if (!(lo < hi)) throw std::invalid_argument("empty parameter range");
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = lo + (hi - lo) * k / (n - 1);
  return g;
}

}  // namespace

CsvTable individual_curve_table(const std::vector<int>& dims, int grid_n,
                                double theta_min, double theta_max) {
  if (!(theta_min >= 0.0 && theta_max <= half_pi + 1e-12))
    throw std::invalid_argument("theta grid must lie in [0, pi/2]");
  const auto ds = checked_dims(dims);
  const auto thetas = grid(grid_n, theta_min, theta_max);
  CsvTable table({"d", "theta", "pdet_min", "I_AB", "I_AE", "I_BE", "r",
                  "r_reg"});
  for (int d : ds)
    for (double theta : thetas) {
      IndividualKeyPoint pt = individual_key_rate(d, theta);
      table.add_row({static_cast<long long>(d), theta, pt.pdet_min,
                     pt.info.I_AB, pt.info.I_AE, pt.info.I_BE, pt.r,
                     pt.r_reg});
    }
  return table;
}

CsvTable threshold_table(const std::vector<int>& dims) {
  CsvTable table({"d", "pdet_min_threshold"});
  for (int d : checked_dims(dims)) {
    DetectionThreshold t = detection_threshold(d);
    table.add_row({static_cast<long long>(d), t.pdet});
  }
  return table;
}

CsvTable collective_curve_table(NoiseKind kind, CorrelationMode mode,
                                const std::vector<int>& dims, int grid_n,
                                double p_min, double p_max) {
  if (!(p_min >= 0.0 && p_max <= 1.0))
    throw std::invalid_argument("p grid must lie in [0, 1]");
  const auto ds = checked_dims(dims);
  const auto ps = grid(grid_n, p_min, p_max);
  CsvTable table({"kind", "mode", "d", "p", "Qk_theta0", "Qt_theta0",
                  "Qk_theta1", "Qt_theta1", "qder_abscissa", "r", "r_reg"});
  for (int d : ds)
    for (double p : ps) {
      CollectiveKeyPoint pt = collective_key_rate(kind, mode, d, p);
      table.add_row({kind_name(kind), mode_name(mode),
                     static_cast<long long>(d), p, pt.Qk[0], pt.Qt[0],
                     pt.Qk[1], pt.Qt[1], pt.qder, pt.r, pt.r_reg});
    }
  return table;
}

CsvTable comparison_table(NoiseKind kind, CorrelationMode mode, int d_base,
                          int grid_n, double p_min, double p_max) {
  if (d_base < 2 || d_base > 6)
    throw std::invalid_argument("comparison base dimension must lie in [2, 6]");
  if (!(p_min >= 0.0 && p_max <= 1.0))
    throw std::invalid_argument("p grid must lie in [0, 1]");
  const ComparisonResult cmp =
      protocol_comparison(kind, mode, d_base, grid(grid_n, p_min, p_max));
  CsvTable table({"protocol", "d_base", "p", "Qk", "rate_bits"});
  for (const auto& pt : cmp.two_x_d)
    table.add_row({std::string("2xLM05"), static_cast<long long>(d_base),
                   pt.p, pt.Qk, pt.rate_bits});
  for (const auto& pt : cmp.d_squared)
    table.add_row({std::string("d2LM05"), static_cast<long long>(d_base),
                   pt.p, pt.Qk, pt.rate_bits});
  return table;
}

CsvTable montecarlo_table(const SimStats& stats, const std::string& config) {
  CsvTable table({"config", "basis", "rounds", "message_rounds",
                  "message_errors", "Qk_hat", "Qk_se", "check_rounds",
                  "check_errors", "Qt_hat", "Qt_se", "PAB_hat", "Pdet_hat",
                  "Pdet_se", "IAB_hat", "IAE_hat"});
  const double pdet = stats.Pdet_hat(), pdet_se = stats.Pdet_se();
  const double iab = stats.IAB_hat(), iae = stats.IAE_hat();
  for (int b : {0, 1}) {
    const BasisTally& t = stats.tally[b];
    table.add_row({config, std::to_string(b), stats.config.rounds,
                   t.message_rounds, t.message_errors, stats.Qk_hat(b),
                   stats.Qk_se(b), t.check_rounds, t.check_errors,
                   stats.Qt_hat(b), stats.Qt_se(b), stats.PAB_hat(b), pdet,
                   pdet_se, iab, iae});
  }
  BasisTally all;
  for (int b : {0, 1}) {
    all.message_rounds += stats.tally[b].message_rounds;
    all.message_errors += stats.tally[b].message_errors;
    all.check_rounds += stats.tally[b].check_rounds;
    all.check_errors += stats.tally[b].check_errors;
  }
  auto ratio = [](long long num, long long den) {
    return den > 0 ? static_cast<double>(num) / static_cast<double>(den) : 0.0;
  };
  const double qk = ratio(all.message_errors, all.message_rounds);
  const double qt = ratio(all.check_errors, all.check_rounds);
  auto se = [](double q, long long n) {
    return n > 0 ? std::sqrt(std::max(q * (1.0 - q), 0.0) / n) : 0.0;
  };
  table.add_row({config, std::string("all"), stats.config.rounds,
                 all.message_rounds, all.message_errors, qk,
                 se(qk, all.message_rounds), all.check_rounds,
                 all.check_errors, qt, se(qt, all.check_rounds),
                 ratio(all.message_rounds - all.message_errors,
                       all.message_rounds),
                 pdet, pdet_se, iab, iae});
  return table;
}

NoiseKind parse_kind(const std::string& s) {
  if (s == "dep" || s == "depolarizing") return NoiseKind::Depolarizing;
  if (s == "dpf" || s == "dit-phase-flip") return NoiseKind::DitPhaseFlip;
  if (s == "adc" || s == "amplitude-damping")
    return NoiseKind::AmplitudeDamping;
  throw std::invalid_argument("unknown noise kind: " + s);
}

CorrelationMode parse_mode(const std::string& s) {
  if (s == "ind" || s == "independent") return CorrelationMode::Independent;
  if (s == "corr" || s == "correlated") return CorrelationMode::Correlated;
  throw std::invalid_argument("unknown correlation mode: " + s);
}

std::vector<int> parse_dims(const std::string& s) {
  std::vector<int> dims;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad dimension list: " + s);
    }
    if (used != tok.size())
      throw std::invalid_argument("bad dimension list: " + s);
    dims.push_back(v);
    pos = comma + 1;
  }
  return checked_dims(dims);
}

}  // namespace lm05
