#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "psmt/hashing.hpp"
#include "psmt/message.hpp"
#include "psmt/sharing.hpp"
#include "psmt/transport.hpp"

namespace psmt {

// strawman is the detection-free plurality decoder used as the impossibility witness.
enum class Variant { sjst, rss, p1, p2, p3, strawman };
std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

struct ProtocolSpec {
  Variant variant = Variant::p1;
  std::size_t n = 3;
  FieldSpec field = FieldSpec::binary(8);
  std::size_t d = 1;
  unsigned ell = 16;
  std::optional<unsigned> k;        // SJST key bits, default = message bits
  std::optional<std::size_t> t;     // RSS / strawman threshold

  // Sharing threshold (or SJST's n-1 corruption tolerance).
  std::size_t threshold() const;
  unsigned key_bits() const;
  // Width of the plain share encoding hashed by the CISS variants.
  unsigned share_bits() const;
  HashFamilySpec hash_family() const;
  bool has_public_channel() const { return variant == Variant::sjst; }
  // Throws std::invalid_argument naming the broken constraint.
  void validate() const;
};

void to_json(nlohmann::json& j, const ProtocolSpec& s);
ProtocolSpec protocol_from_json(const nlohmann::json& j);

std::unique_ptr<Protocol> make_protocol(const ProtocolSpec& spec);

// Protocols that send once over the n channels and decode without feedback.
class OneRoundProtocol : public Protocol {
 public:
  struct Decoded {
    std::optional<Message> message;
    std::vector<std::size_t> detected;
  };

  explicit OneRoundProtocol(const ProtocolSpec& spec);
  std::string name() const override { return to_string(spec_.variant); }
  std::size_t channels() const override { return spec_.n; }
  bool has_public_channel() const override { return false; }
  const MessageSpace& message_space() const override { return space_; }
  const ProtocolSpec& spec() const { return spec_; }

  virtual std::vector<Payload> encode(const Message& m, RandomSource& rng) const = 0;
  virtual Decoded decode(std::span<const Payload> received) const = 0;

  std::optional<Message> run(const Message& m, Network& net, RandomSource& sender,
                             RandomSource& receiver) const override;

 protected:
  ProtocolSpec spec_;
  MessageSpace space_;
};

// Shares are d field elements per channel.
Payload encode_share(const FieldSpec& f, const ShareVector& share);
std::optional<ShareVector> decode_share(const FieldSpec& f, std::size_t len, std::span<const std::uint8_t> bytes);

class RobustSharingProtocol final : public OneRoundProtocol {
 public:
  explicit RobustSharingProtocol(const ProtocolSpec& spec);
  const RobustSharingSpec& sharing() const { return rss_; }
  std::vector<Payload> encode(const Message& m, RandomSource& rng) const override;
  Decoded decode(std::span<const Payload> received) const override;

 private:
  RobustSharingSpec rss_;
};

// Payload carried on channel i by Protocols 1-3.
struct CissPayload {
  ShareVector share;
  std::uint64_t hash_a = 0;
  std::uint64_t hash_b = 0;
  std::map<std::size_t, std::uint64_t> tags;   // T_{i,j}, j != i
  std::map<std::size_t, std::uint64_t> masks;  // r_{j,i}, j != i
};

class CissProtocol final : public OneRoundProtocol {
 public:
  explicit CissProtocol(const ProtocolSpec& spec);
  const SharingSpec& sharing() const { return sharing_; }
  const HashFamilySpec& hash_family() const { return family_; }

  std::vector<CissPayload> encode_payloads(const Message& m, RandomSource& rng) const;
  std::vector<Payload> encode(const Message& m, RandomSource& rng) const override;
  Decoded decode(std::span<const Payload> received) const override;

  Payload serialize(const CissPayload& p, std::size_t channel) const;
  std::optional<CissPayload> parse(std::span<const std::uint8_t> bytes, std::size_t channel) const;
  std::uint64_t share_input(const ShareVector& s) const;
  std::uint64_t tag(std::uint64_t a, std::uint64_t b, const ShareVector& s) const;

  // The per-channel mismatch lists; nullopt for a channel whose payload is malformed.
  std::vector<std::optional<std::set<std::size_t>>> lists(const std::vector<std::optional<CissPayload>>& parsed) const;

 private:
  SharingSpec sharing_;
  HashFamilySpec family_;
};

class StrawmanProtocol final : public OneRoundProtocol {
 public:
  explicit StrawmanProtocol(const ProtocolSpec& spec);
  const SharingSpec& sharing() const { return sharing_; }
  std::vector<Payload> encode(const Message& m, RandomSource& rng) const override;
  Decoded decode(std::span<const Payload> received) const override;

 private:
  SharingSpec sharing_;
};

struct SjstKeys {
  std::vector<std::uint64_t> r;  // ell bits
  std::vector<std::uint64_t> R;  // k bits
};

// Public round-2 message: b_i, and H_i = (h_i, T'_i) when b_i = 0.
struct SjstChallenge {
  std::vector<bool> b;
  std::vector<std::optional<HashFunction>> h;
  std::vector<std::uint64_t> t_prime;
};

struct SjstReceiverState {
  SjstChallenge challenge;
  std::vector<std::uint64_t> r;
  std::vector<std::uint64_t> R;
};

struct SjstResponse {
  std::vector<bool> v;
  std::uint64_t c = 0;
};

class SjstProtocol final : public Protocol {
 public:
  explicit SjstProtocol(const ProtocolSpec& spec);
  std::string name() const override { return "sjst"; }
  std::size_t channels() const override { return spec_.n; }
  bool has_public_channel() const override { return true; }
  const MessageSpace& message_space() const override { return space_; }
  const ProtocolSpec& spec() const { return spec_; }
  const HashFamilySpec& hash_family() const { return family_; }

  SjstKeys round1_sender(RandomSource& rng) const;
  std::vector<Payload> round1_payloads(const SjstKeys& keys) const;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> parse_round1(std::span<const std::uint8_t> p) const;
  SjstReceiverState round2_receiver(std::span<const Payload> received, RandomSource& rng) const;
  SjstResponse round3_sender(const SjstKeys& keys, const SjstChallenge& ch, const Message& m) const;
  std::optional<Message> finalize_receiver(const SjstReceiverState& st, const SjstResponse& resp) const;

  Payload encode_challenge(const SjstChallenge& ch) const;
  SjstChallenge decode_challenge(std::span<const std::uint8_t> p) const;
  Payload encode_response(const SjstResponse& r) const;
  SjstResponse decode_response(std::span<const std::uint8_t> p) const;

  std::optional<Message> run(const Message& m, Network& net, RandomSource& sender,
                             RandomSource& receiver) const override;

 private:
  ProtocolSpec spec_;
  MessageSpace space_;
  HashFamilySpec family_;
};

}  // namespace psmt
