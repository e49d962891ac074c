#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psmt/game.hpp"
#include "psmt/protocols.hpp"

namespace psmt {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SweepConfig {
  std::string axis;  // ell | n | t | trials
  std::vector<double> values;
  std::string attack = "share-substitution";
};

struct ExperimentConfig {
  ProtocolSpec protocol;
  std::optional<CorruptionProfile> profile;
  std::optional<UtilityTable> utility;
  TableClass table_class = TableClass::timid;
  std::vector<std::string> attacks;
  std::string malicious_attack = "passive-random-guess";
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::optional<double> alpha;
  std::optional<std::size_t> t;
  std::optional<SweepConfig> sweep;
  nlohmann::json verify = nlohmann::json::object();

  // Fully resolved form, embedded in every report.
  nlohmann::json to_json() const;
};

// Throws ConfigError with the offending field or violated inequality.
ExperimentConfig load_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::string& path);

// The witness table base(.,s,d) = 3,2,1,0 for (s,d) = (0,0),(1,0),(0,1),(1,1).
UtilityTable witness_table(std::uint64_t message_space_size, double bonus = 0);

struct BoundCheck {
  bool applicable = false;
  std::string rule;
  std::string quantity;  // "ell" or "delta"
  double required = 0;
  double actual = 0;
  bool ok = true;
  std::string note;
};

// Compares the configured ell (or delta) against the matching calculator.
BoundCheck protocol_bound_check(const ExperimentConfig& c);

}  // namespace psmt
