#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string_view>
#include <vector>

namespace psmt {

// All parties draw randomness through this interface, so a run can be replayed
// from a seed or walked exhaustively.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform in [0, bound). Throws std::invalid_argument when bound is 0.
  virtual std::uint64_t uniform(std::uint64_t bound) = 0;

  // Uniform count-bit string, count <= 63.
  std::uint64_t bits(unsigned count);
};

// mt19937_64 with explicit rejection sampling. The standard distributions are
// implementation-defined, which would make seeds non-portable.
class SeededRng final : public RandomSource {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t uniform(std::uint64_t bound) override;

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view text);

// Independent sub-seed for a labelled stream ("sender", "receiver", "adv-3", ...).
std::uint64_t derive_seed(std::uint64_t master, std::string_view label);
std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index);

// Walks every sequence of draws in odometer order. Usage:
//   EnumeratingSource src;
//   do { run(src); weight is src.run_weight(); } while (src.next());
// Each completed run has probability 1 / run_weight(). Draw positions listed in
// `pinned` return a fixed value and do not branch.
class EnumeratingSource final : public RandomSource {
 public:
  EnumeratingSource() = default;
  explicit EnumeratingSource(std::map<std::size_t, std::uint64_t> pinned) : pinned_(std::move(pinned)) {}

  std::uint64_t uniform(std::uint64_t bound) override;

  // Advance to the next draw sequence. Returns false when all have been visited.
  bool next();

  // Product of the bounds of the branching draws made in the current run.
  long double run_weight() const;
  std::size_t draws() const { return pos_; }

 private:
  struct Draw {
    std::uint64_t bound;
    std::uint64_t choice;
    bool pinned;
  };
  std::vector<Draw> path_;
  std::size_t pos_ = 0;
  std::map<std::size_t, std::uint64_t> pinned_;
};

}  // namespace psmt
