#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "psmt/game.hpp"
#include "psmt/protocols.hpp"

namespace psmt {

struct AttackCatalogEntry {
  std::string name;
  std::string description;
  std::vector<Variant> applicable;
  std::function<std::unique_ptr<AdversaryStrategy>()> make;

  bool applies_to(Variant v) const;
};

// passive-random-guess, view-guess, share-substitution, share-substitution-1,
// share-substitution-plain, tag-framing, mask-framing, length-tamper,
// block-channel, swap-half.
const std::vector<AttackCatalogEntry>& attack_catalog();
// Throws std::invalid_argument for an unknown name.
const AttackCatalogEntry& find_attack(const std::string& name);
std::unique_ptr<AdversaryStrategy> make_attack(const std::string& name);
// Catalog names applicable to a variant, in catalog order.
std::vector<std::string> applicable_attacks(Variant v);

Variant variant_of(const Protocol& p);

struct NashRow {
  std::size_t adversary;
  std::string attack;
  Estimate estimate;
  Estimate baseline;
  double threshold;
  bool flag;
};

struct NashReport {
  std::vector<NashRow> rows;
  std::size_t attacks = 0;
  std::size_t trials = 0;
  bool any_flag() const;
  std::string summary() const;
};

struct NashOptions {
  std::vector<std::string> attacks;  // empty: every applicable non-passive attack
  std::size_t trials = 10000;
  std::uint64_t seed = 1;
  std::string malicious_attack = "passive-random-guess";
  // Called for every trial of every cell; adversary 0 marks the passive baseline.
  std::function<void(std::size_t adversary, const std::string& attack, std::size_t trial, const GameResult&)> observer;
};

// For every rational slot j and attack A: estimate U_j(A, B_-j) against the all-passive
// profile on the same seeds, flag when the gap exceeds the 95% CI of the difference.
NashReport nash_catalog_check(const Protocol& protocol, const CorruptionProfile& profile, const UtilityTable& table,
                              const NashOptions& options);

// Strategy vector helper: slot j gets `attack`, the malicious slot `malicious`, others passive.
std::vector<std::unique_ptr<AdversaryStrategy>> build_strategies(const CorruptionProfile& profile, std::size_t j,
                                                                 const std::string& attack,
                                                                 const std::string& malicious);
std::vector<AdversaryStrategy*> raw_pointers(const std::vector<std::unique_ptr<AdversaryStrategy>>& v);

}  // namespace psmt
