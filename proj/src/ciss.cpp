#include <algorithm>

#include "psmt/protocols.hpp"

namespace psmt {

CissProtocol::CissProtocol(const ProtocolSpec& spec)
    : OneRoundProtocol(spec), sharing_(spec.threshold(), spec.n, spec.field), family_(spec.hash_family()) {}

std::uint64_t CissProtocol::share_input(const ShareVector& s) const {
  const unsigned w = spec_.field.element_bits();
  std::uint64_t x = 0;
  for (std::size_t c = 0; c < s.size(); ++c) x |= s[c].value() << (c * w);
  return x;
}

std::uint64_t CissProtocol::tag(std::uint64_t a, std::uint64_t b, const ShareVector& s) const {
  return evaluate(make_hash(family_, a, b), share_input(s));
}

std::vector<CissPayload> CissProtocol::encode_payloads(const Message& m, RandomSource& rng) const {
  const std::size_t n = spec_.n;
  const ShareSet shares = shamir_share(sharing_, m, rng);
  std::vector<CissPayload> out(n);
  for (std::size_t i = 1; i <= n; ++i) {
    out[i - 1].share = shares.at(i);
    const HashFunction h = sample(family_, rng);
    out[i - 1].hash_a = h.a.value();
    out[i - 1].hash_b = h.b.value();
  }
  // r_{i,j} is drawn for the pair (checker i, checked j); T_{i,j} rides on channel i, r_{i,j} on channel j.
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) {
      if (i == j) continue;
      const std::uint64_t r = rng.bits(spec_.ell);
      out[i - 1].tags[j] = tag(out[i - 1].hash_a, out[i - 1].hash_b, shares.at(j)) ^ r;
      out[j - 1].masks[i] = r;
    }
  return out;
}

Payload CissProtocol::serialize(const CissPayload& p, std::size_t channel) const {
  const std::size_t hb = bytes_for_bits(family_.domain_bits());
  const std::size_t tb = family_.tag_bytes();
  ByteWriter w;
  for (const auto& e : p.share) w.put(e.value(), spec_.field.element_bytes());
  w.put(p.hash_a, hb);
  w.put(p.hash_b, hb);
  for (std::size_t j = 1; j <= spec_.n; ++j)
    if (j != channel) w.put(p.tags.at(j), tb);
  for (std::size_t j = 1; j <= spec_.n; ++j)
    if (j != channel) w.put(p.masks.at(j), tb);
  return w.take();
}

std::optional<CissPayload> CissProtocol::parse(std::span<const std::uint8_t> bytes, std::size_t channel) const {
  const std::size_t hb = bytes_for_bits(family_.domain_bits());
  const std::size_t tb = family_.tag_bytes();
  const std::size_t eb = spec_.field.element_bytes();
  const std::size_t expected = spec_.d * eb + 2 * hb + 2 * (spec_.n - 1) * tb;
  if (bytes.size() != expected) return std::nullopt;
  const std::uint64_t hash_limit = family_.field().order();
  const std::uint64_t tag_limit = std::uint64_t{1} << spec_.ell;
  ByteReader r(bytes);
  CissPayload p;
  for (std::size_t c = 0; c < spec_.d; ++c) {
    const std::uint64_t v = *r.get(eb);
    if (v >= spec_.field.order()) return std::nullopt;
    p.share.emplace_back(spec_.field, v);
  }
  p.hash_a = *r.get(hb);
  p.hash_b = *r.get(hb);
  if (p.hash_a >= hash_limit || p.hash_b >= hash_limit) return std::nullopt;
  for (auto* dst : {&p.tags, &p.masks})
    for (std::size_t j = 1; j <= spec_.n; ++j) {
      if (j == channel) continue;
      const std::uint64_t v = *r.get(tb);
      if (v >= tag_limit) return std::nullopt;
      (*dst)[j] = v;
    }
  return p;
}

std::vector<Payload> CissProtocol::encode(const Message& m, RandomSource& rng) const {
  const auto payloads = encode_payloads(m, rng);
  std::vector<Payload> out;
  for (std::size_t i = 1; i <= spec_.n; ++i) out.push_back(serialize(payloads[i - 1], i));
  return out;
}

std::vector<std::optional<std::set<std::size_t>>> CissProtocol::lists(
    const std::vector<std::optional<CissPayload>>& parsed) const {
  const std::size_t n = spec_.n;
  const bool both_ends = spec_.variant == Variant::p2;
  std::vector<std::optional<std::set<std::size_t>>> out(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto& pi = parsed[i - 1];
    if (!pi) continue;
    std::set<std::size_t> l;
    for (std::size_t j = 1; j <= n; ++j) {
      if (j == i) continue;
      const auto& pj = parsed[j - 1];
      const bool mismatch = !pj || (tag(pi->hash_a, pi->hash_b, pj->share) ^ pj->masks.at(i)) != pi->tags.at(j);
      if (mismatch) {
        l.insert(j);
        if (both_ends) l.insert(i);
      }
    }
    out[i - 1] = std::move(l);
  }
  return out;
}

OneRoundProtocol::Decoded CissProtocol::decode(std::span<const Payload> received) const {
  const std::size_t n = spec_.n;
  std::vector<std::optional<CissPayload>> parsed;
  for (std::size_t i = 1; i <= n; ++i) parsed.push_back(parse(received[i - 1], i));
  const auto ls = lists(parsed);

  if (spec_.variant == Variant::p2) {
    std::set<std::size_t> all;
    for (std::size_t i = 1; i <= n; ++i) {
      if (!parsed[i - 1]) all.insert(i);
      if (ls[i - 1]) all.insert(ls[i - 1]->begin(), ls[i - 1]->end());
    }
    if (!all.empty()) return {std::nullopt, std::vector<std::size_t>(all.begin(), all.end())};
    ShareSet shares;
    for (std::size_t i = 1; i <= n; ++i) shares[i] = parsed[i - 1]->share;
    return {shamir_reconstruct(sharing_, shares), {}};
  }

  // Strict majority of byte-identical lists.
  std::optional<std::set<std::size_t>> majority;
  for (std::size_t i = 0; i < n && !majority; ++i) {
    if (!ls[i]) continue;
    const auto votes = static_cast<std::size_t>(std::count(ls.begin(), ls.end(), ls[i]));
    if (2 * votes > n) majority = ls[i];
  }
  if (!majority) return {};
  Decoded out;
  out.detected.assign(majority->begin(), majority->end());

  if (spec_.variant == Variant::p1) {
    ShareSet shares;
    for (std::size_t i = 1; i <= n; ++i)
      if (!majority->count(i) && parsed[i - 1]) shares[i] = parsed[i - 1]->share;
    if (shares.size() <= sharing_.t()) return out;
    out.message = shamir_reconstruct(sharing_, shares);
    return out;
  }

  ShareSet shares;
  for (std::size_t i = 1; i <= n; ++i)
    if (parsed[i - 1]) shares[i] = parsed[i - 1]->share;
  if (shares.size() < sharing_.t() + 1) return out;
  const std::size_t e = std::min(spec_.threshold(), (shares.size() - sharing_.t() - 1) / 2);
  out.message = rs_reconstruct(sharing_, shares, e);
  return out;
}

}  // namespace psmt
