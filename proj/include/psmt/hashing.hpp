#pragma once

#include <cstdint>
#include <functional>

#include <json.hpp>

#include "psmt/field.hpp"
#include "psmt/random.hpp"

namespace psmt {

// h_{a,b}(x) = low ell bits of (a*x + b) over GF(2^m).
class HashFamilySpec {
 public:
  HashFamilySpec(unsigned domain_bits, unsigned range_bits);
  HashFamilySpec(unsigned domain_bits, unsigned range_bits, const FieldSpec& field);

  unsigned domain_bits() const { return m_; }
  unsigned range_bits() const { return ell_; }
  const FieldSpec& field() const { return field_; }
  std::size_t tag_bytes() const { return (ell_ + 7) / 8; }

  bool operator==(const HashFamilySpec&) const = default;

 private:
  unsigned m_;
  unsigned ell_;
  FieldSpec field_;
};

struct HashFunction {
  HashFamilySpec family;
  FieldElement a;
  FieldElement b;
};

HashFunction sample(const HashFamilySpec& spec, RandomSource& rng);
HashFunction make_hash(const HashFamilySpec& spec, std::uint64_t a, std::uint64_t b);

// Throws std::invalid_argument when x does not fit in m bits.
std::uint64_t evaluate(const HashFunction& h, std::uint64_t x);

double family_gamma(const HashFamilySpec& spec);

// Fraction of the 2^{2m} family members with c1 ^ h(x1) == c2 ^ h(x2).
// Throws std::length_error for m > 12.
double offset_collision_prob_exhaustive(const HashFamilySpec& spec, std::uint64_t x1, std::uint64_t c1,
                                        std::uint64_t x2, std::uint64_t c2);

// Evaluator hook so a deliberately broken family can be checked by the same
// exhaustive routines: (a, b, x) -> tag.
using HashEvaluator = std::function<std::uint64_t(std::uint64_t, std::uint64_t, std::uint64_t)>;
HashEvaluator standard_evaluator(const HashFamilySpec& spec);

double offset_collision_prob_exhaustive(const HashFamilySpec& spec, const HashEvaluator& eval, std::uint64_t x1,
                                        std::uint64_t c1, std::uint64_t x2, std::uint64_t c2);

void to_json(nlohmann::json& j, const HashFunction& h);

}  // namespace psmt
