#pragma once

// JSON form of the parabolic discrepancy report (nlohmann/json).

#include "json.hpp"

#include "gronwall/experiments.hpp"

namespace gronwall {

inline nlohmann::ordered_json to_json(const AreaEstimate& est) {
  nlohmann::ordered_json j;
  j["value"] = est.value;
  j["lower"] = est.lower;
  j["upper"] = est.upper;
  j["resolution"] = est.resolution;
  j["undecided_area"] = est.undecided_area;
  return j;
}

inline nlohmann::ordered_json to_json(const DiscrepancyReport& rep) {
  nlohmann::ordered_json j;
  j["alpha"] = rep.alpha;
  j["m"] = rep.m;
  j["tau"] = rep.tau;
  j["gamma"] = rep.gamma;
  j["R"] = rep.R;
  j["lambda"] = {rep.lambda.real(), rep.lambda.imag()};
  j["N"] = rep.N;
  j["N_capped"] = rep.N_capped;
  j["A_1N"] = rep.A_1N;
  j["area_K_lambda"] = to_json(rep.area_K_lambda);
  j["area_K_1"] = to_json(rep.area_K_1);
  j["iter_area"] = to_json(rep.iter_area);
  j["measured_gap"] = rep.measured_gap;
  return j;
}

}  // namespace gronwall
