#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "psmt/transport.hpp"

namespace psmt {

struct Outcome {
  bool suc = false;
  std::vector<bool> guess;   // index j-1
  std::vector<bool> detect;  // index j-1
};

Outcome assemble_outcome(const Transcript& t);

enum class TableClass { timid, strictly_timid };

// U(j) = base(guess_j, suc, detect_j) + bonus * #{k != j : detect_k}.
class UtilityTable {
 public:
  // base[g*4 + s*2 + d]
  UtilityTable(std::array<double, 8> base, double others_detected_bonus, std::uint64_t message_space_size);
  // Guess-indifferent table from the four (suc, detect) payoffs.
  static UtilityTable from_sd(double s0d0, double s1d0, double s0d1, double s1d1, double bonus,
                              std::uint64_t message_space_size);

  double base(bool guess, bool suc, bool detect) const { return base_[guess * 4 + suc * 2 + detect]; }
  double bonus() const { return bonus_; }
  std::uint64_t message_space_size() const { return msize_; }
  UtilityTable with_message_space(std::uint64_t size) const;

  double utility(const Outcome& o, std::size_t j) const;

 private:
  std::array<double, 8> base_;
  double bonus_;
  std::uint64_t msize_;
};

void to_json(nlohmann::json& j, const UtilityTable& t);
// {"base": {"gsd": value, ...}, "bonus": b}; missing guess=1 keys copy guess=0.
UtilityTable utility_from_json(const nlohmann::json& j, std::uint64_t message_space_size);

struct UValues {
  double u1, u2, u3, u4;  // (suc,detect) = (0,0), (1,0), (0,1), (1,1)
};

// Expected payoff at guess rate 1/|M|, plus bonus * others_detected.
UValues derive_u_values(const UtilityTable& t, std::size_t others_detected = 0);

// Empty when the table satisfies the class; otherwise the violated inequalities.
// adversaries >= 2 adds the multi-adversary conditions.
std::vector<std::string> table_violations(const UtilityTable& t, TableClass cls, std::size_t adversaries);

struct GameResult {
  Outcome outcome;
  std::vector<double> utilities;
  Transcript transcript;
};

GameResult play_game(const Protocol& protocol, const CorruptionProfile& profile,
                     std::span<AdversaryStrategy* const> strategies, const UtilityTable& table,
                     std::uint64_t master_seed);

// Mergeable sample statistics.
class RunningStats {
 public:
  void add(double x);
  void merge(const RunningStats& o);
  std::size_t count() const { return n_; }
  double mean() const { return n_ ? sum_ / static_cast<double>(n_) : 0.0; }
  double variance() const;  // sample variance
  double std_error() const;
  double ci95() const { return 1.96 * std_error(); }

 private:
  std::size_t n_ = 0;
  double sum_ = 0;
  double sumsq_ = 0;
};

struct Estimate {
  std::size_t trials = 0;
  double mean = 0;
  double ci95 = 0;
  double std_error = 0;
  double suc_rate = 0;
  double fail_rate = 0;     // receiver FAIL
  double wrong_rate = 0;    // receiver output present and != M_S
  double silent_wrong_rate = 0;  // wrong with no DETECT event at all
  double detect_rate = 0;   // detect_j
  double any_detect_rate = 0;
  double guess_rate = 0;    // guess_j
};

using ProfileSampler = std::function<CorruptionProfile(RandomSource&)>;
using TrialObserver = std::function<void(std::size_t trial, const GameResult&)>;

Estimate estimate_utility(const Protocol& protocol, const CorruptionProfile& profile,
                          std::span<AdversaryStrategy* const> strategies, const UtilityTable& table, std::size_t j,
                          std::size_t trials, std::uint64_t master_seed, const TrialObserver& observer = {});
Estimate estimate_utility(const Protocol& protocol, const ProfileSampler& sampler,
                          std::span<AdversaryStrategy* const> strategies, const UtilityTable& table, std::size_t j,
                          std::size_t trials, std::uint64_t master_seed, const TrialObserver& observer = {});

}  // namespace psmt
