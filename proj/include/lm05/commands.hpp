#pragma once

#include <string>
#include <vector>

#include "lm05/collective_attack.hpp"
#include "lm05/csv.hpp"
#include "lm05/montecarlo.hpp"

// Table builders behind the CLI subcommands, exposed so tests can exercise
// them without spawning processes.
namespace lm05 {

// Columns: d,theta,pdet_min,I_AB,I_AE,I_BE,r,r_reg
// Rows sorted by d, then theta.  grid_n >= 2, bounds inside [0, pi/2].
CsvTable individual_curve_table(const std::vector<int>& dims, int grid_n,
                                double theta_min, double theta_max);

// Columns: d,pdet_min_threshold
CsvTable threshold_table(const std::vector<int>& dims);

// Columns: kind,mode,d,p,Qk_theta0,Qt_theta0,Qk_theta1,Qt_theta1,
//          qder_abscissa,r,r_reg
CsvTable collective_curve_table(NoiseKind kind, CorrelationMode mode,
                                const std::vector<int>& dims, int grid_n,
                                double p_min, double p_max);

// Columns: protocol,d_base,p,Qk,rate_bits  (protocol in {2xLM05, d2LM05})
CsvTable comparison_table(NoiseKind kind, CorrelationMode mode, int d_base,
                          int grid_n, double p_min, double p_max);

// One row of simulation statistics (plus per-basis breakdown columns).
CsvTable montecarlo_table(const SimStats& stats, const std::string& config);

// "dep|dpf|adc[:...]" (also accepts the long names).
NoiseKind parse_kind(const std::string& s);
CorrelationMode parse_mode(const std::string& s);
std::vector<int> parse_dims(const std::string& s);

}  // namespace lm05
