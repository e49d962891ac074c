#include "psmt/protocols.hpp"

#include <algorithm>

namespace psmt {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::sjst: return "sjst";
    case Variant::rss: return "rss";
    case Variant::p1: return "p1";
    case Variant::p2: return "p2";
    case Variant::p3: return "p3";
    case Variant::strawman: return "strawman";
  }
  return "?";
}

Variant variant_from_string(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  for (Variant v : {Variant::sjst, Variant::rss, Variant::p1, Variant::p2, Variant::p3, Variant::strawman})
    if (to_string(v) == l) return v;
  throw std::invalid_argument("unknown protocol variant '" + s + "'");
}

std::size_t ProtocolSpec::threshold() const {
  switch (variant) {
    case Variant::sjst: return n - 1;
    case Variant::rss:
      if (!t) throw std::invalid_argument("rss needs an explicit threshold t");
      return *t;
    case Variant::p1: return (n - 1) / 2;
    case Variant::p2: return n - 1;
    case Variant::p3: return (n - 1) / 3;
    case Variant::strawman: return t ? *t : (n + 1) / 2 - 1;
  }
  return 0;
}

unsigned ProtocolSpec::key_bits() const {
  return k ? *k : static_cast<unsigned>(d) * field.element_bits();
}

unsigned ProtocolSpec::share_bits() const { return static_cast<unsigned>(d) * field.element_bits(); }

HashFamilySpec ProtocolSpec::hash_family() const {
  const unsigned input = variant == Variant::sjst ? key_bits() : share_bits();
  return HashFamilySpec(std::max(input, ell), ell);
}

void ProtocolSpec::validate() const {
  auto fail = [](const std::string& why) { throw std::invalid_argument("protocol config: " + why); };
  if (n < 2) fail("n must be at least 2");
  if (d < 1) fail("d must be at least 1");
  if (ell < 1 || ell > 32) fail("ell must be in [1, 32]");
  if (t && variant != Variant::rss && variant != Variant::strawman)
    fail("t is fixed by the variant for " + to_string(variant));
  if (k && variant != Variant::sjst) fail("k only applies to sjst");
  const unsigned mbits = share_bits();
  switch (variant) {
    case Variant::sjst:
      if (field.kind() != FieldKind::binary) fail("sjst needs a binary field");
      if (key_bits() < mbits) fail("sjst key bits k must cover the message bits");
      if (key_bits() > 32) fail("sjst key bits k must be <= 32");
      break;
    case Variant::rss:
      if (!t) fail("rss needs t");
      if (*t < 1 || *t >= n) fail("rss needs 0 < t < n");
      if (n >= field.order()) fail("rss needs n <= q - 1");
      AmdSpec(field, d);
      break;
    case Variant::p1:
    case Variant::p2:
    case Variant::p3:
    case Variant::strawman:
      if (threshold() < 1) fail("n too small for a positive sharing threshold");
      if (threshold() >= n) fail("threshold must be below n");
      if (n >= field.order()) fail("sharing needs n <= q - 1");
      if (variant != Variant::strawman && std::max(mbits, ell) > 32) fail("hashed share width exceeds 32 bits");
      break;
  }
}

void to_json(nlohmann::json& j, const ProtocolSpec& s) {
  j = {{"variant", to_string(s.variant)}, {"n", s.n}, {"field", s.field}, {"d", s.d}, {"ell", s.ell}};
  if (s.k) j["k"] = *s.k;
  if (s.t) j["t"] = *s.t;
}

ProtocolSpec protocol_from_json(const nlohmann::json& j) {
  ProtocolSpec s;
  s.variant = variant_from_string(j.at("variant").get<std::string>());
  s.n = j.at("n").get<std::size_t>();
  if (j.contains("field")) s.field = field_from_json(j.at("field"));
  if (j.contains("d")) s.d = j.at("d").get<std::size_t>();
  if (j.contains("ell")) s.ell = j.at("ell").get<unsigned>();
  if (j.contains("k") && !j.at("k").is_null()) s.k = j.at("k").get<unsigned>();
  if (j.contains("t") && !j.at("t").is_null()) s.t = j.at("t").get<std::size_t>();
  s.validate();
  return s;
}

std::unique_ptr<Protocol> make_protocol(const ProtocolSpec& spec) {
  spec.validate();
  switch (spec.variant) {
    case Variant::sjst: return std::make_unique<SjstProtocol>(spec);
    case Variant::rss: return std::make_unique<RobustSharingProtocol>(spec);
    case Variant::p1:
    case Variant::p2:
    case Variant::p3: return std::make_unique<CissProtocol>(spec);
    case Variant::strawman: return std::make_unique<StrawmanProtocol>(spec);
  }
  throw std::logic_error("unreachable");
}

OneRoundProtocol::OneRoundProtocol(const ProtocolSpec& spec) : spec_(spec), space_(spec.field, spec.d) {
  spec.validate();
}

std::optional<Message> OneRoundProtocol::run(const Message& m, Network& net, RandomSource& sender,
                                             RandomSource&) const {
  auto delivered = net.transmit(Direction::sender_to_receiver, encode(m, sender));
  Decoded out = decode(delivered);
  for (auto c : out.detected) net.detect(c);
  return out.message;
}

Payload encode_share(const FieldSpec& f, const ShareVector& share) {
  ByteWriter w;
  for (const auto& e : share) w.put(e.value(), f.element_bytes());
  return w.take();
}

std::optional<ShareVector> decode_share(const FieldSpec& f, std::size_t len, std::span<const std::uint8_t> bytes) {
  if (bytes.size() != len * f.element_bytes()) return std::nullopt;
  ByteReader r(bytes);
  ShareVector s;
  for (std::size_t i = 0; i < len; ++i) {
    auto v = r.get(f.element_bytes());
    if (!v || *v >= f.order()) return std::nullopt;
    s.emplace_back(f, *v);
  }
  return s;
}

RobustSharingProtocol::RobustSharingProtocol(const ProtocolSpec& spec)
    : OneRoundProtocol(spec), rss_(AmdSpec(spec.field, spec.d), spec.threshold(), spec.n) {}

std::vector<Payload> RobustSharingProtocol::encode(const Message& m, RandomSource& rng) const {
  const ShareSet shares = robust_share(rss_, m, rng);
  std::vector<Payload> out;
  for (const auto& [i, s] : shares) out.push_back(encode_share(spec_.field, s));
  return out;
}

OneRoundProtocol::Decoded RobustSharingProtocol::decode(std::span<const Payload> received) const {
  // Robustness detects tampering but cannot say where, so FAIL flags every channel.
  Decoded fail;
  for (std::size_t i = 1; i <= spec_.n; ++i) fail.detected.push_back(i);
  ShareSet shares;
  for (std::size_t i = 1; i <= spec_.n; ++i) {
    auto s = decode_share(spec_.field, rss_.share_length(), received[i - 1]);
    if (!s) return fail;
    shares[i] = std::move(*s);
  }
  auto secret = robust_reconstruct(rss_, shares);
  if (!secret) return fail;
  return {std::move(*secret), {}};
}

StrawmanProtocol::StrawmanProtocol(const ProtocolSpec& spec)
    : OneRoundProtocol(spec), sharing_(spec.threshold(), spec.n, spec.field) {}

std::vector<Payload> StrawmanProtocol::encode(const Message& m, RandomSource& rng) const {
  const ShareSet shares = shamir_share(sharing_, m, rng);
  std::vector<Payload> out;
  for (const auto& [i, s] : shares) out.push_back(encode_share(spec_.field, s));
  return out;
}

OneRoundProtocol::Decoded StrawmanProtocol::decode(std::span<const Payload> received) const {
  std::vector<std::size_t> ids;
  ShareSet valid;
  for (std::size_t i = 1; i <= spec_.n; ++i) {
    if (auto s = decode_share(spec_.field, spec_.d, received[i - 1])) {
      valid[i] = std::move(*s);
      ids.push_back(i);
    }
  }
  const std::size_t k = sharing_.t() + 1;
  if (ids.size() < k) return {};
  // Plurality: the first subset (lexicographic) whose interpolant is supported by the most shares.
  std::optional<Message> best;
  std::size_t best_support = 0;
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  for (;;) {
    std::vector<Polynomial> polys;
    for (std::size_t c = 0; c < spec_.d; ++c) {
      std::vector<Point> pts;
      for (auto p : pick) pts.emplace_back(sharing_.eval_point(ids[p]), valid[ids[p]][c]);
      polys.push_back(interpolate(pts));
    }
    std::size_t support = 0;
    for (auto i : ids) {
      bool ok = true;
      for (std::size_t c = 0; c < spec_.d && ok; ++c) ok = poly_eval(polys[c], sharing_.eval_point(i)) == valid[i][c];
      if (ok) ++support;
    }
    if (support > best_support) {
      best_support = support;
      Message m;
      for (const auto& p : polys) m.push_back(p.coeff(0));
      best = std::move(m);
    }
    std::size_t pos = k;
    while (pos > 0 && pick[pos - 1] == ids.size() - k + (pos - 1)) --pos;
    if (pos == 0) break;
    ++pick[pos - 1];
    for (std::size_t j = pos; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return {best, {}};
}

}  // namespace psmt
