#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

namespace latcomm {

inline constexpr const char* kToolName = "latcomm";
inline constexpr const char* kToolVersion = "0.1.0";

// One experiment invocation.  `params` holds the experiment-specific keys;
// unknown keys are rejected both here and inside each experiment.
struct ExperimentConfig {
  std::string experiment;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  uint64_t seed = 0;     // used by stochastic experiments; default 0
  std::string output;    // optional file path; empty keeps output in-process
  std::string format = "json";  // "json" or "csv"
};

// Accepts {"experiment": .., "params": {..}, "seed": .., "output": ..,
// "format": ..}; everything but "experiment" is optional.
ExperimentConfig config_from_json(const nlohmann::ordered_json& j);
ExperimentConfig config_from_text(const std::string& text);
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

struct Report {
  ExperimentConfig config;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  bool passed = true;  // conjunction of all verdicts
  double seconds = 0;
};

// Field order is fixed; timing sits in its own trailing object so byte
// comparisons of deterministic runs can strip it.  Big integers appear as
// decimal strings, rationals as "num/den".
nlohmann::ordered_json report_to_json(const Report& r);

// For the eden series: header step,mean,stderr,trials.  Other experiments
// flatten results and verdicts into key,value rows.
std::string report_to_csv(const Report& r);

// Runs one experiment: histories, sequences, locality-1d, table1, kupin,
// tree-family, blowup, eden or crosscheck.  Throws config_error on bad
// configs and budget_error when a resource cap is hit.
Report run_experiment(const ExperimentConfig& cfg);

}  // namespace latcomm
