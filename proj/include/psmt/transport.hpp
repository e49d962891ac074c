#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psmt/message.hpp"
#include "psmt/random.hpp"
#include "psmt/wire.hpp"

namespace psmt {

inline constexpr std::size_t kPublicChannel = 0;

// A blocked channel delivers the empty payload.
inline const Payload kEmptyPayload{};

enum class Direction { sender_to_receiver, receiver_to_sender };
std::string to_string(Direction d);

// Raised when a strategy breaks the channel model (writes PUBLIC or a channel it
// does not own, or returns a malformed replacement map).
class SimulationFault : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct CorruptionProfile {
  // assignments[j-1] = channels of adversary j
  std::vector<std::set<std::size_t>> assignments;
  std::optional<std::size_t> malicious_id;

  std::size_t adversaries() const { return assignments.size(); }
  const std::set<std::size_t>& channels_of(std::size_t j) const { return assignments.at(j - 1); }
  std::optional<std::size_t> owner_of(std::size_t channel) const;
  std::size_t max_slot() const;
  // Throws std::invalid_argument when sets overlap or leave 1..n.
  void validate(std::size_t n) const;

  static CorruptionProfile single(std::set<std::size_t> channels);
};

void to_json(nlohmann::json& j, const CorruptionProfile& p);
CorruptionProfile profile_from_json(const nlohmann::json& j);

struct RoundRecord {
  std::size_t round = 0;  // 1-based
  Direction direction = Direction::sender_to_receiver;
  // Channel traffic, index i-1 for channel i; empty for public-only rounds.
  std::vector<Payload> sent;
  std::vector<Payload> delivered;
  std::optional<Payload> public_payload;
};

struct DetectEvent {
  std::size_t channel;
  std::size_t round;
  bool mirrored_public;
  bool operator==(const DetectEvent&) const = default;
};

struct Transcript {
  Message sent_message;
  CorruptionProfile profile;
  std::vector<RoundRecord> rounds;
  std::vector<DetectEvent> detect_events;
  std::optional<Message> receiver_output;  // nullopt is FAIL
  std::vector<Message> adversary_outputs;  // index j-1

  bool detected(std::size_t channel) const;
};

void to_json(nlohmann::json& j, const Transcript& t);

// What one adversary sees of a finished run.
struct ViewRound {
  std::size_t round;
  Direction direction;
  std::map<std::size_t, Payload> sent;
  std::map<std::size_t, Payload> delivered;
  std::optional<Payload> public_payload;
  bool operator==(const ViewRound&) const = default;
};

struct AdversaryView {
  std::vector<ViewRound> rounds;
  bool operator==(const AdversaryView&) const = default;
};

AdversaryView view_of(const Transcript& t, std::size_t j);
// Canonical byte encoding of a view, for hashing / counting distributions.
Payload serialize_view(const AdversaryView& v);

class Protocol;

struct AdversaryContext {
  std::size_t id;
  const std::set<std::size_t>* channels;
  const Protocol* protocol;
};

// Handed to observe_and_tamper before the honest payloads of a round are delivered.
struct ChannelObservation {
  std::size_t round;
  Direction direction;
  std::map<std::size_t, Payload> payloads;   // pre-tamper, own channels only
  std::vector<Payload> public_history;
};

class AdversaryStrategy {
 public:
  virtual ~AdversaryStrategy() = default;
  virtual std::string name() const = 0;
  virtual void begin(const AdversaryContext& ctx, RandomSource& rng);
  // Replacement payloads keyed by channel; channels left out pass through.
  virtual std::map<std::size_t, Payload> observe_and_tamper(const ChannelObservation& obs, RandomSource& rng);
  // Default is a uniform guess from the protocol's message space.
  virtual Message final_guess(const AdversaryView& view, RandomSource& rng);

 protected:
  const AdversaryContext& context() const { return ctx_; }

 private:
  AdversaryContext ctx_{0, nullptr, nullptr};
};

// Never tampers, guesses uniformly.
class PassiveStrategy : public AdversaryStrategy {
 public:
  std::string name() const override { return "passive-random-guess"; }
};

// The channel fabric seen by protocol code during one execution.
class Network {
 public:
  Network(std::size_t n, bool public_channel, const CorruptionProfile& profile,
          std::span<AdversaryStrategy* const> strategies, std::span<RandomSource* const> adversary_rngs,
          Transcript& transcript);

  std::size_t channels() const { return n_; }

  // New round: one payload per channel, adversaries interpose, delivered payloads returned.
  std::vector<Payload> transmit(Direction dir, std::vector<Payload> payloads);
  // New round on the authenticated public channel; delivered verbatim.
  Payload publish(Direction dir, Payload payload);
  // Record DETECT at channel for the current round.
  void detect(std::size_t channel);

  std::size_t current_round() const { return round_; }

 private:
  std::size_t n_;
  bool public_channel_;
  const CorruptionProfile& profile_;
  std::span<AdversaryStrategy* const> strategies_;
  std::span<RandomSource* const> rngs_;
  Transcript& transcript_;
  std::vector<Payload> public_history_;
  std::size_t round_ = 0;
};

class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::string name() const = 0;
  virtual std::size_t channels() const = 0;
  virtual bool has_public_channel() const = 0;
  virtual const MessageSpace& message_space() const = 0;
  // Runs both honest parties; nullopt is FAIL.
  virtual std::optional<Message> run(const Message& m, Network& net, RandomSource& sender,
                                     RandomSource& receiver) const = 0;
};

struct RandomStreams {
  RandomSource& sender;
  RandomSource& receiver;
  std::vector<RandomSource*> adversaries;  // index j-1
};

// strategies[j-1] drives adversary j.
Transcript execute(const Protocol& protocol, const Message& m, const CorruptionProfile& profile,
                   std::span<AdversaryStrategy* const> strategies, std::uint64_t master_seed);
Transcript execute_with(const Protocol& protocol, const Message& m, const CorruptionProfile& profile,
                        std::span<AdversaryStrategy* const> strategies, RandomStreams& streams);

}  // namespace psmt
