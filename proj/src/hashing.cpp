#include "psmt/hashing.hpp"

#include <cmath>
#include <stdexcept>

namespace psmt {

HashFamilySpec::HashFamilySpec(unsigned domain_bits, unsigned range_bits)
    : HashFamilySpec(domain_bits, range_bits, FieldSpec::binary(domain_bits)) {}

HashFamilySpec::HashFamilySpec(unsigned domain_bits, unsigned range_bits, const FieldSpec& field)
    : m_(domain_bits), ell_(range_bits), field_(field) {
  if (field.kind() != FieldKind::binary || field.degree() != domain_bits)
    throw std::invalid_argument("hash family needs GF(2^m) with m = domain_bits");
  if (range_bits < 1 || range_bits > domain_bits)
    throw std::invalid_argument("hash range must satisfy 1 <= ell <= m");
}

HashFunction sample(const HashFamilySpec& spec, RandomSource& rng) {
  const std::uint64_t q = spec.field().order();
  const std::uint64_t a = rng.uniform(q);
  const std::uint64_t b = rng.uniform(q);
  return make_hash(spec, a, b);
}

HashFunction make_hash(const HashFamilySpec& spec, std::uint64_t a, std::uint64_t b) {
  return {spec, FieldElement(spec.field(), a), FieldElement(spec.field(), b)};
}

std::uint64_t evaluate(const HashFunction& h, std::uint64_t x) {
  const FieldSpec& f = h.family.field();
  if (x >= f.order()) throw std::invalid_argument("hash input wider than " + std::to_string(f.degree()) + " bits");
  const FieldElement y = h.a * FieldElement(f, x) + h.b;
  const unsigned ell = h.family.range_bits();
  return ell >= 64 ? y.value() : y.value() & ((std::uint64_t{1} << ell) - 1);
}

double family_gamma(const HashFamilySpec& spec) { return std::ldexp(1.0, -2 * static_cast<int>(spec.range_bits())); }

HashEvaluator standard_evaluator(const HashFamilySpec& spec) {
  return [spec](std::uint64_t a, std::uint64_t b, std::uint64_t x) { return evaluate(make_hash(spec, a, b), x); };
}

double offset_collision_prob_exhaustive(const HashFamilySpec& spec, const HashEvaluator& eval, std::uint64_t x1,
                                        std::uint64_t c1, std::uint64_t x2, std::uint64_t c2) {
  if (spec.domain_bits() > 12) throw std::length_error("family too large to enumerate (m > 12)");
  if (x1 == x2 && c1 == c2) throw std::invalid_argument("offset collision needs (x1,c1) != (x2,c2)");
  const std::uint64_t q = spec.field().order();
  std::uint64_t hits = 0;
  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      if ((c1 ^ eval(a, b, x1)) == (c2 ^ eval(a, b, x2))) ++hits;
  return static_cast<double>(hits) / static_cast<double>(q * q);
}

double offset_collision_prob_exhaustive(const HashFamilySpec& spec, std::uint64_t x1, std::uint64_t c1,
                                        std::uint64_t x2, std::uint64_t c2) {
  return offset_collision_prob_exhaustive(spec, standard_evaluator(spec), x1, c1, x2, c2);
}

void to_json(nlohmann::json& j, const HashFunction& h) { j = nlohmann::json::array({h.a.value(), h.b.value()}); }

}  // namespace psmt
