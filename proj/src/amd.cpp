#include "psmt/sharing.hpp"

#include <string>

namespace psmt {

AmdSpec::AmdSpec(const FieldSpec& field, std::size_t d) : field_(field), d_(d) {
  if (d < 1) throw std::invalid_argument("AMD message length must be >= 1");
  if ((d + 2) % field.characteristic() == 0)
    throw std::invalid_argument("AMD code needs d+2 not divisible by the characteristic (d=" + std::to_string(d) +
                                ", p=" + std::to_string(field.characteristic()) + ")");
}

double AmdSpec::failure_bound() const {
  return static_cast<double>(d_ + 1) / static_cast<double>(field_.order());
}

std::vector<FieldElement> AmdCodeword::flatten() const {
  std::vector<FieldElement> v = s;
  v.push_back(x);
  v.push_back(tag);
  return v;
}

AmdCodeword AmdCodeword::unflatten(const std::vector<FieldElement>& v) {
  if (v.size() < 3) throw std::invalid_argument("AMD codeword needs at least 3 coordinates");
  return {std::vector<FieldElement>(v.begin(), v.end() - 2), v[v.size() - 2], v.back()};
}

FieldElement amd_tag(const AmdSpec& spec, const std::vector<FieldElement>& s, const FieldElement& x) {
  if (s.size() != spec.d()) throw std::invalid_argument("AMD message has wrong length");
  FieldElement acc = pow(x, spec.d() + 2);
  FieldElement xp = x;
  for (const auto& si : s) {
    acc = acc + si * xp;
    xp = xp * x;
  }
  return acc;
}

AmdCodeword amd_encode_with(const AmdSpec& spec, const std::vector<FieldElement>& s, const FieldElement& x) {
  return {s, x, amd_tag(spec, s, x)};
}

AmdCodeword amd_encode(const AmdSpec& spec, const std::vector<FieldElement>& s, RandomSource& rng) {
  return amd_encode_with(spec, s, FieldElement(spec.field(), rng.uniform(spec.field().order())));
}

std::optional<std::vector<FieldElement>> amd_decode(const AmdSpec& spec, const AmdCodeword& c) {
  if (c.s.size() != spec.d()) return std::nullopt;
  if (amd_tag(spec, c.s, c.x) != c.tag) return std::nullopt;
  return c.s;
}

RobustSharingSpec::RobustSharingSpec(const AmdSpec& amd, std::size_t t, std::size_t n)
    : amd_(amd), inner_(t, n, amd.field()) {}

ShareSet robust_share(const RobustSharingSpec& spec, const std::vector<FieldElement>& secret, RandomSource& rng) {
  const AmdCodeword c = amd_encode(spec.amd(), secret, rng);
  return shamir_share(spec.inner(), c.flatten(), rng);
}

std::optional<std::vector<FieldElement>> robust_reconstruct(const RobustSharingSpec& spec, const ShareSet& subset) {
  const ShareVector flat = shamir_reconstruct(spec.inner(), subset);
  if (flat.size() != spec.share_length()) throw std::invalid_argument("robust share has wrong length");
  return amd_decode(spec.amd(), AmdCodeword::unflatten(flat));
}

}  // namespace psmt
