#include "psmt/protocols.hpp"

namespace psmt {

SjstProtocol::SjstProtocol(const ProtocolSpec& spec)
    : spec_(spec), space_(spec.field, spec.d), family_(spec.hash_family()) {
  spec.validate();
  if (spec.variant != Variant::sjst) throw std::invalid_argument("SjstProtocol needs the sjst variant");
}

SjstKeys SjstProtocol::round1_sender(RandomSource& rng) const {
  SjstKeys k;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    k.r.push_back(rng.bits(spec_.ell));
    k.R.push_back(rng.bits(spec_.key_bits()));
  }
  return k;
}

std::vector<Payload> SjstProtocol::round1_payloads(const SjstKeys& keys) const {
  std::vector<Payload> out;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    ByteWriter w;
    w.put(keys.r[i], bytes_for_bits(spec_.ell));
    w.put(keys.R[i], bytes_for_bits(spec_.key_bits()));
    out.push_back(w.take());
  }
  return out;
}

std::optional<std::pair<std::uint64_t, std::uint64_t>> SjstProtocol::parse_round1(
    std::span<const std::uint8_t> p) const {
  const std::size_t rb = bytes_for_bits(spec_.ell);
  const std::size_t kb = bytes_for_bits(spec_.key_bits());
  if (p.size() != rb + kb) return std::nullopt;
  ByteReader r(p);
  const std::uint64_t small = *r.get(rb);
  const std::uint64_t big = *r.get(kb);
  if (small >> spec_.ell != 0 || big >> spec_.key_bits() != 0) return std::nullopt;
  return std::pair{small, big};
}

SjstReceiverState SjstProtocol::round2_receiver(std::span<const Payload> received, RandomSource& rng) const {
  SjstReceiverState st;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    auto keys = parse_round1(received[i]);
    st.challenge.b.push_back(!keys);
    st.r.push_back(keys ? keys->first : 0);
    st.R.push_back(keys ? keys->second : 0);
    if (keys) {
      HashFunction h = sample(family_, rng);
      st.challenge.t_prime.push_back(keys->first ^ evaluate(h, keys->second));
      st.challenge.h.push_back(std::move(h));
    } else {
      st.challenge.t_prime.push_back(0);
      st.challenge.h.push_back(std::nullopt);
    }
  }
  return st;
}

SjstResponse SjstProtocol::round3_sender(const SjstKeys& keys, const SjstChallenge& ch, const Message& m) const {
  SjstResponse resp;
  resp.c = space_.pack(m);
  for (std::size_t i = 0; i < spec_.n; ++i) {
    bool flagged = false;
    if (!ch.b[i]) {
      flagged = (keys.r[i] ^ evaluate(*ch.h[i], keys.R[i])) != ch.t_prime[i];
      if (!flagged) resp.c ^= keys.R[i];
    }
    resp.v.push_back(flagged);
  }
  return resp;
}

std::optional<Message> SjstProtocol::finalize_receiver(const SjstReceiverState& st, const SjstResponse& resp) const {
  std::uint64_t x = resp.c;
  for (std::size_t i = 0; i < spec_.n; ++i)
    if (!st.challenge.b[i] && !resp.v[i]) x ^= st.R[i];
  const unsigned bits = space_.bits();
  if (bits < 64) x &= (std::uint64_t{1} << bits) - 1;
  return space_.unpack(x);
}

// Layout: per channel one flag byte, then a, b and T'_i when the flag is 0.
Payload SjstProtocol::encode_challenge(const SjstChallenge& ch) const {
  const std::size_t hb = bytes_for_bits(family_.domain_bits());
  ByteWriter w;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    w.put(ch.b[i] ? 1 : 0, 1);
    if (!ch.b[i]) {
      w.put(ch.h[i]->a.value(), hb);
      w.put(ch.h[i]->b.value(), hb);
      w.put(ch.t_prime[i], family_.tag_bytes());
    }
  }
  return w.take();
}

SjstChallenge SjstProtocol::decode_challenge(std::span<const std::uint8_t> p) const {
  // The public channel is authenticated, so a malformed message is a bug, not an attack.
  const std::size_t hb = bytes_for_bits(family_.domain_bits());
  ByteReader r(p);
  SjstChallenge ch;
  auto need = [](std::optional<std::uint64_t> v) {
    if (!v) throw std::logic_error("truncated public challenge");
    return *v;
  };
  for (std::size_t i = 0; i < spec_.n; ++i) {
    const bool b = need(r.get(1)) != 0;
    ch.b.push_back(b);
    if (b) {
      ch.h.push_back(std::nullopt);
      ch.t_prime.push_back(0);
    } else {
      const std::uint64_t a = need(r.get(hb));
      const std::uint64_t bb = need(r.get(hb));
      ch.h.push_back(make_hash(family_, a, bb));
      ch.t_prime.push_back(need(r.get(family_.tag_bytes())));
    }
  }
  return ch;
}

// Layout: n flag bytes v_i, then c in ceil(k/8) bytes.
Payload SjstProtocol::encode_response(const SjstResponse& resp) const {
  ByteWriter w;
  for (bool v : resp.v) w.put(v ? 1 : 0, 1);
  w.put(resp.c, bytes_for_bits(spec_.key_bits()));
  return w.take();
}

SjstResponse SjstProtocol::decode_response(std::span<const std::uint8_t> p) const {
  ByteReader r(p);
  SjstResponse resp;
  for (std::size_t i = 0; i < spec_.n; ++i) {
    auto v = r.get(1);
    if (!v) throw std::logic_error("truncated public response");
    resp.v.push_back(*v != 0);
  }
  auto c = r.get(bytes_for_bits(spec_.key_bits()));
  if (!c) throw std::logic_error("truncated public response");
  resp.c = *c;
  return resp;
}

std::optional<Message> SjstProtocol::run(const Message& m, Network& net, RandomSource& sender,
                                         RandomSource& receiver) const {
  const SjstKeys keys = round1_sender(sender);
  const auto delivered = net.transmit(Direction::sender_to_receiver, round1_payloads(keys));

  const SjstReceiverState st = round2_receiver(delivered, receiver);
  const Payload p2 = net.publish(Direction::receiver_to_sender, encode_challenge(st.challenge));
  for (std::size_t i = 0; i < spec_.n; ++i)
    if (st.challenge.b[i]) net.detect(i + 1);

  const SjstResponse resp = round3_sender(keys, decode_challenge(p2), m);
  const Payload p3 = net.publish(Direction::sender_to_receiver, encode_response(resp));
  const SjstResponse got = decode_response(p3);
  for (std::size_t i = 0; i < spec_.n; ++i)
    if (got.v[i]) net.detect(i + 1);
  return finalize_receiver(st, got);
}

}  // namespace psmt
