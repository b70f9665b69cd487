#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "lm05/commands.hpp"
#include "lm05/validate.hpp"

namespace {

constexpr double half_pi = 1.57079632679489662;

void emit(const lm05::CsvTable& table, const std::string& out) {
  if (out.empty())
    std::cout << table.str();
  else
    table.write_file(out);
}

std::string short_kind(lm05::NoiseKind k) {
  switch (k) {
    case lm05::NoiseKind::Depolarizing:
      return "dep";
    case lm05::NoiseKind::DitPhaseFlip:
      return "dpf";
    case lm05::NoiseKind::AmplitudeDamping:
      return "adc";
  }
  return "?";
}

// "kind:mode:p" with the same aliases the long flags accept.
lm05::NoiseSpec parse_noise(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = s.find(':', c1 == std::string::npos ? s.size() : c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos)
    throw std::invalid_argument("noise spec must be kind:mode:p, got " + s);
  lm05::NoiseSpec spec;
  spec.kind = lm05::parse_kind(s.substr(0, c1));
  spec.mode = lm05::parse_mode(s.substr(c1 + 1, c2 - c1 - 1));
  std::size_t used = 0;
  spec.p = std::stod(s.substr(c2 + 1), &used);
  if (used != s.size() - c2 - 1)
    throw std::invalid_argument("bad probability in noise spec: " + s);
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Key-rate curves and simulations for high-dimensional two-way "
               "deterministic QKD"};
  app.require_subcommand(1);

  std::string ind_dims = "2,3,4,7", ind_out, ind_thresholds;
  int ind_grid = 100;
  double theta_min = 0.0, theta_max = half_pi;
  auto* ind = app.add_subcommand(
      "individual", "Cloning-attack rate curves over the attack angle");
  ind->add_option("--dims", ind_dims, "Comma-separated dimensions (2..16)");
  ind->add_option("--grid", ind_grid, "Grid point count (>= 2)");
  ind->add_option("--theta-min", theta_min, "Lower attack angle");
  ind->add_option("--theta-max", theta_max, "Upper attack angle");
  ind->add_option("--out", ind_out, "Output CSV (stdout if omitted)");
  ind->add_option("--thresholds-out", ind_thresholds,
                  "Also write the per-dimension security thresholds");

  std::string col_kind = "dep", col_mode = "ind", col_dims = "3,5,8,10",
              col_out;
  int col_grid = 200;
  double col_pmin = 0.0, col_pmax = 1.0;
  auto* col = app.add_subcommand(
      "collective", "Collective-attack rate curves over the noise strength");
  col->add_option("--kind", col_kind, "dep | dpf | adc");
  col->add_option("--mode", col_mode, "ind | corr");
  col->add_option("--dims", col_dims, "Comma-separated dimensions (2..16)");
  col->add_option("--grid", col_grid, "Grid point count (>= 2)");
  col->add_option("--p-min", col_pmin, "Lower noise strength");
  col->add_option("--p-max", col_pmax, "Upper noise strength");
  col->add_option("--out", col_out, "Output CSV (stdout if omitted)");

  std::string cmp_kind = "dep", cmp_mode = "ind", cmp_out;
  int cmp_d = 3, cmp_grid = 200;
  double cmp_pmin = 0.0, cmp_pmax = 1.0;
  auto* cmp = app.add_subcommand(
      "compare", "Two d-dim rounds versus one d^2-dim round");
  cmp->add_option("--kind", cmp_kind, "dep | dpf | adc");
  cmp->add_option("--mode", cmp_mode, "ind | corr");
  cmp->add_option("--d", cmp_d, "Base dimension (2..6)");
  cmp->add_option("--grid", cmp_grid, "Grid point count (>= 2)");
  cmp->add_option("--p-min", cmp_pmin, "Lower noise strength");
  cmp->add_option("--p-max", cmp_pmax, "Upper noise strength");
  cmp->add_option("--out", cmp_out, "Output CSV (stdout if omitted)");

  int mc_d = 2;
  long long mc_rounds = 100000;
  std::uint64_t mc_seed = 0;
  double mc_check = 0.5;
  std::string mc_noise, mc_out;
  double mc_cloning = -1.0;
  auto* mc = app.add_subcommand("montecarlo",
                                "Round-by-round protocol simulation");
  mc->add_option("--d", mc_d, "Dimension");
  mc->add_option("--rounds", mc_rounds, "Number of rounds");
  mc->add_option("--seed", mc_seed, "RNG seed");
  mc->add_option("--check-prob", mc_check, "Check-round probability");
  auto* mc_noise_opt =
      mc->add_option("--noise", mc_noise, "kind:mode:p, e.g. dep:ind:0.3");
  auto* mc_clone_opt = mc->add_option(
      "--cloning", mc_cloning, "Cloning-attack angle in [0, pi/2]");
  mc_noise_opt->excludes(mc_clone_opt);
  mc->add_option("--out", mc_out, "Output CSV (stdout if omitted)");

  auto* val = app.add_subcommand("validate", "Run the full invariant sweep");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*ind) {
      emit(lm05::individual_curve_table(lm05::parse_dims(ind_dims), ind_grid,
                                        theta_min, theta_max),
           ind_out);
      if (!ind_thresholds.empty())
        lm05::threshold_table(lm05::parse_dims(ind_dims))
            .write_file(ind_thresholds);
    } else if (*col) {
      emit(lm05::collective_curve_table(
               lm05::parse_kind(col_kind), lm05::parse_mode(col_mode),
               lm05::parse_dims(col_dims), col_grid, col_pmin, col_pmax),
           col_out);
    } else if (*cmp) {
      emit(lm05::comparison_table(lm05::parse_kind(cmp_kind),
                                  lm05::parse_mode(cmp_mode), cmp_d, cmp_grid,
                                  cmp_pmin, cmp_pmax),
           cmp_out);
    } else if (*mc) {
      lm05::SimConfig cfg;
      cfg.d = mc_d;
      cfg.rounds = mc_rounds;
      cfg.seed = mc_seed;
      cfg.check_prob = mc_check;
      std::string conf = "d=" + std::to_string(mc_d) +
                         ";rounds=" + std::to_string(mc_rounds) +
                         ";seed=" + std::to_string(mc_seed) +
                         ";check_prob=" + lm05::format_value(mc_check);
      lm05::SimStats stats;
      if (mc_noise_opt->count()) {
        cfg.noise = parse_noise(mc_noise);
        conf += ";noise=" + short_kind(cfg.noise->kind) + ":" +
                (cfg.noise->mode == lm05::CorrelationMode::Independent
                     ? "ind"
                     : "corr") +
                ":" + lm05::format_value(cfg.noise->p);
        stats = lm05::run_lm05_noise(cfg);
      } else if (mc_clone_opt->count()) {
        cfg.cloning_theta = mc_cloning;
        conf += ";cloning=" + lm05::format_value(mc_cloning);
        stats = lm05::run_lm05_cloning(cfg);
      } else {
        throw std::invalid_argument(
            "montecarlo needs exactly one of --noise or --cloning");
      }
      emit(lm05::montecarlo_table(stats, conf), mc_out);
      std::cerr << "montecarlo: Qk=[" << lm05::format_value(stats.Qk_hat(0))
                << "," << lm05::format_value(stats.Qk_hat(1)) << "] Qt=["
                << lm05::format_value(stats.Qt_hat(0)) << ","
                << lm05::format_value(stats.Qt_hat(1))
                << "] Pdet=" << lm05::format_value(stats.Pdet_hat())
                << " (checked=" << stats.checked
                << " flagged=" << stats.flagged << ")\n";
    } else if (*val) {
      lm05::ValidationReport report = lm05::run_validation();
      int passed = 0;
      for (const auto& line : report.lines) {
        std::cout << (line.pass ? "PASS  " : "FAIL  ") << line.name << ": "
                  << line.detail << "\n";
        passed += line.pass ? 1 : 0;
      }
      std::cout << "validation: " << passed << "/" << report.lines.size()
                << " checks passed\n";
      return report.all_pass ? 0 : 2;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
