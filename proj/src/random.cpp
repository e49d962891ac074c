#include "psmt/random.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace psmt {

std::uint64_t RandomSource::bits(unsigned count) {
  if (count > 63) throw std::invalid_argument("bits: count must be <= 63");
  return uniform(std::uint64_t{1} << count);
}

std::uint64_t SeededRng::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform: bound must be positive");
  if ((bound & (bound - 1)) == 0) return engine_() & (bound - 1);
  // Largest multiple of bound that fits, so the accepted range is unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = engine_();
    if (x < limit) return x % bound;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label) {
  return splitmix64(master ^ fnv1a(label));
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view label, std::uint64_t index) {
  return splitmix64(derive_seed(master, label) ^ splitmix64(index));
}

std::uint64_t EnumeratingSource::uniform(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform: bound must be positive");
  const std::size_t at = pos_++;
  if (at < path_.size()) {
    const Draw& d = path_[at];
    if (!d.pinned && d.bound != bound)
      throw std::logic_error("EnumeratingSource: draw " + std::to_string(at) + " changed its bound between runs");
    if (d.pinned && d.choice >= bound)
      throw std::invalid_argument("EnumeratingSource: pinned value out of range at draw " + std::to_string(at));
    return d.choice;
  }
  if (auto it = pinned_.find(at); it != pinned_.end()) {
    if (it->second >= bound)
      throw std::invalid_argument("EnumeratingSource: pinned value out of range at draw " + std::to_string(at));
    path_.push_back({bound, it->second, true});
    return it->second;
  }
  path_.push_back({bound, 0, false});
  return 0;
}

bool EnumeratingSource::next() {
  path_.resize(pos_);
  pos_ = 0;
  while (!path_.empty()) {
    Draw& d = path_.back();
    if (!d.pinned && d.choice + 1 < d.bound) {
      ++d.choice;
      return true;
    }
    path_.pop_back();
  }
  return false;
}

long double EnumeratingSource::run_weight() const {
  long double w = 1;
  for (std::size_t i = 0; i < pos_ && i < path_.size(); ++i)
    if (!path_[i].pinned) w *= static_cast<long double>(path_[i].bound);
  return w;
}

}  // namespace psmt
