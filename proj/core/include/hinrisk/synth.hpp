#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hinrisk/hin.hpp"

namespace hinrisk {

// Synthetic SME network with a planted contagion channel along
// E-[control]->P-[shareholder]->E. Default labels follow a known logistic
// model over the enterprise's own latent risk, a relevance-weighted risky
// exposure along the planted path, and planted-path connectivity. Attributes
// of every object are drawn conditioned on its latent risk flag.
struct GenConfig {
  std::uint64_t seed = 1;

  std::size_t enterprises = 240;
  std::size_t persons = 720;
  std::size_t commodities = 240;
  std::size_t news = 360;

  // expected edge counts (Poisson draws unless stated otherwise)
  double parent_prob = 0.25;       // chance an enterprise has a parent
  double supply_mean = 1.0;        // supply partners per enterprise
  double control_mean = 2.0;       // controllers per enterprise
  double shareholder_mean = 2.0;   // shareholder links per enterprise
  double manager_mean = 1.0;
  double employee_mean = 1.5;
  double boardmember_mean = 1.0;
  double produce_mean = 1.0;
  double report_mean = 1.0;
  double relate_prob = 0.15;       // chance a person relates to another person

  double base_risk_rate = 0.3;     // latent risky-flag rate for all objects
  double contagion_strength = 0.9; // in [0,1]; scales the planted-path coefficients
  double attribute_signal = 0.3;   // in [0,1]; attribute dependence on the risk flag
  double label_coverage = 0.7;     // labeled share of persons and commodities

  // Stale-noise channel: extra planted-path edges timestamped before the
  // cutoff that do NOT enter label generation. Valid edges live in
  // [stale_cutoff, horizon]; stale ones in [0, stale_cutoff).
  double stale_edge_fraction = 0.0;
  Timestamp stale_cutoff = 500;
  Timestamp horizon = 1000;

  int attribute_count = 4;
  int attribute_levels = 5;
};

struct GroundTruth {
  std::string planted_path;  // DSL text of the planted meta path
  double beta0 = 0.0;
  double beta_self = 0.0;      // own latent-risk coefficient
  double beta_exposure = 0.0;  // relevance-weighted risky-exposure coefficient
  double beta_count = 0.0;     // planted-path connectivity coefficient
  std::vector<std::string> risky_objects;  // latent risky ids (all types)

  std::string to_json() const;
};

// Deterministic under the seed: identical configs produce identical graphs,
// labels and ground truth. Throws InfeasibleConfig when edge demands cannot
// be met (e.g. no persons but positive control_mean).
std::pair<Hin, GroundTruth> generate(const GenConfig& config);

// 13-node / 13-edge network reconstruction used in the worked traversal
// examples (enterprises v1,v2,v7; persons v3,v4,v8; commodities v6,v9;
// news v5,v10..v13).
Hin figure3_fixture();

// Two target SMEs J and K sharing controllers L1..L3, with seven associated
// enterprises Q1..Q7 of which Q2,Q3,Q4,Q6,Q7 are risky. J reaches five
// distinct targets (three risky), K four (three risky) along
// E-[control]->P-[shareholder]->E.
Hin figure5_fixture();

}  // namespace hinrisk
