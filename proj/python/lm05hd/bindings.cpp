#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lm05/collective_attack.hpp"
#include "lm05/commands.hpp"
#include "lm05/individual_attack.hpp"
#include "lm05/montecarlo.hpp"
#include "lm05/qudit.hpp"

namespace py = pybind11;
using namespace lm05;

namespace {

py::dict stats_dict(const SimStats& st) {
  py::dict d;
  d["Qk_hat"] = py::make_tuple(st.Qk_hat(0), st.Qk_hat(1));
  d["Qt_hat"] = py::make_tuple(st.Qt_hat(0), st.Qt_hat(1));
  d["PAB_hat"] = py::make_tuple(st.PAB_hat(0), st.PAB_hat(1));
  d["Pdet_hat"] = st.Pdet_hat();
  d["Qk_se"] = py::make_tuple(st.Qk_se(0), st.Qk_se(1));
  d["Qt_se"] = py::make_tuple(st.Qt_se(0), st.Qt_se(1));
  d["Pdet_se"] = st.Pdet_se();
  d["IAB_hat"] = st.IAB_hat();
  d["IAE_hat"] = st.IAE_hat();
  d["checked"] = st.checked;
  d["flagged"] = st.flagged;
  d["message_rounds"] = py::make_tuple(st.tally[0].message_rounds,
                                       st.tally[1].message_rounds);
  d["check_rounds"] = py::make_tuple(st.tally[0].check_rounds,
                                     st.tally[1].check_rounds);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Security analysis of high-dimensional two-way deterministic QKD";

  // qudit algebra
  m.def("weyl_u", &weyl_u, py::arg("d"), py::arg("x"), py::arg("y"),
        "Shift-and-phase unitary U_xy");
  m.def("weyl_w", &weyl_w, py::arg("d"), py::arg("i"), py::arg("j"),
        "Conjugate-convention shift-and-phase unitary W_ij");
  m.def("fourier_matrix", &fourier_matrix, py::arg("d"));
  m.def("bell_state", &bell_state, py::arg("d"), py::arg("x"), py::arg("y"));

  // individual (cloning) attack
  m.def("min_detection_probability", &min_detection_probability,
        py::arg("d"), py::arg("theta"),
        "Detection probability of the perfect equiangular cloning attack");
  m.def(
      "individual_key_rate",
      [](int d, double theta) {
        IndividualKeyPoint pt = individual_key_rate(d, theta);
        py::dict out;
        out["d"] = pt.d;
        out["theta"] = pt.theta;
        out["pdet_min"] = pt.pdet_min;
        out["I_AB"] = pt.info.I_AB;
        out["I_AE"] = pt.info.I_AE;
        out["I_BE"] = pt.info.I_BE;
        out["r"] = pt.r;
        out["r_reg"] = pt.r_reg;
        return out;
      },
      py::arg("d"), py::arg("theta"));
  m.def(
      "detection_threshold",
      [](int d) {
        DetectionThreshold t = detection_threshold(d);
        py::dict out;
        out["pdet"] = t.pdet;
        out["theta"] = t.theta;
        out["crossing_found"] = t.crossing_found;
        return out;
      },
      py::arg("d"), "Detection probability at which I_AB = I_AE");

  // collective attack
  m.def("gamma_overlap", &gamma_overlap, py::arg("d"), py::arg("basis"),
        "Measurement-overlap constant of the uncertainty bound (= 1/d)");
  m.def(
      "error_rates",
      [](const std::string& kind, const std::string& mode, int d, double p) {
        ErrorRates r = error_rates(parse_kind(kind), parse_mode(mode), d, p);
        py::dict out;
        out["Qk"] = py::make_tuple(r.Qk[0], r.Qk[1]);
        out["Qt"] = py::make_tuple(r.Qt[0], r.Qt[1]);
        out["d_eff"] = r.d_eff;
        return out;
      },
      py::arg("kind"), py::arg("mode"), py::arg("d"), py::arg("p"),
      "Closed-form key/check error rates per preparation basis");
  m.def(
      "collective_key_rate",
      [](const std::string& kind, const std::string& mode, int d, double p) {
        CollectiveKeyPoint pt =
            collective_key_rate(parse_kind(kind), parse_mode(mode), d, p);
        py::dict out;
        out["Qk"] = py::make_tuple(pt.Qk[0], pt.Qk[1]);
        out["Qt"] = py::make_tuple(pt.Qt[0], pt.Qt[1]);
        out["S_kappa"] = py::make_tuple(pt.S_kappa[0], pt.S_kappa[1]);
        out["S_sigma"] = py::make_tuple(pt.S_sigma[0], pt.S_sigma[1]);
        out["r_theta"] = py::make_tuple(pt.r_theta[0], pt.r_theta[1]);
        out["r"] = pt.r;
        out["r_reg"] = pt.r_reg;
        out["qder"] = pt.qder;
        return out;
      },
      py::arg("kind"), py::arg("mode"), py::arg("d"), py::arg("p"));
  m.def(
      "purified_statistics",
      [](const std::string& kind, const std::string& mode, int d, double p,
         int basis) {
        PurifiedStatistics ps =
            purified_statistics(parse_kind(kind), parse_mode(mode), d, p,
                                basis);
        py::dict out;
        out["q"] = ps.q;
        out["q_check"] = ps.q_check;
        out["Qk"] = ps.Qk;
        out["Qt"] = ps.Qt;
        out["S_kappa"] = ps.S_kappa;
        out["S_sigma"] = ps.S_sigma;
        return out;
      },
      py::arg("kind"), py::arg("mode"), py::arg("d"), py::arg("p"),
      py::arg("basis"),
      "Exact purified-protocol statistics (independent oracle)");

  // simulation
  m.def(
      "run_noise",
      [](int d, long long rounds, const std::string& kind,
         const std::string& mode, double p, std::uint64_t seed,
         double check_prob) {
        SimConfig cfg;
        cfg.d = d;
        cfg.rounds = rounds;
        cfg.seed = seed;
        cfg.check_prob = check_prob;
        cfg.noise = NoiseSpec{parse_kind(kind), parse_mode(mode), p};
        return stats_dict(run_lm05_noise(cfg));
      },
      py::arg("d"), py::arg("rounds"), py::arg("kind"), py::arg("mode"),
      py::arg("p"), py::arg("seed") = 0, py::arg("check_prob") = 0.5);
  m.def(
      "run_cloning",
      [](int d, long long rounds, double theta, std::uint64_t seed,
         double check_prob) {
        SimConfig cfg;
        cfg.d = d;
        cfg.rounds = rounds;
        cfg.seed = seed;
        cfg.check_prob = check_prob;
        cfg.cloning_theta = theta;
        return stats_dict(run_lm05_cloning(cfg));
      },
      py::arg("d"), py::arg("rounds"), py::arg("theta"), py::arg("seed") = 0,
      py::arg("check_prob") = 0.5);
}
