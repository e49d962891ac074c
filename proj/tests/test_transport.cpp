#include <catch_amalgamated.hpp>

#include "psmt/transport.hpp"

using namespace psmt;

namespace {

// Two rounds of plain forwarding: the sender sends the packed message on
// every channel, the receiver echoes channel 1 back, then posts it publicly.
class EchoProtocol final : public Protocol {
 public:
  EchoProtocol(std::size_t n, bool pub) : n_(n), pub_(pub), space_(FieldSpec::binary(8), 1) {}
  std::string name() const override { return "echo"; }
  std::size_t channels() const override { return n_; }
  bool has_public_channel() const override { return pub_; }
  const MessageSpace& message_space() const override { return space_; }
  std::optional<Message> run(const Message& m, Network& net, RandomSource& sender, RandomSource&) const override {
    const std::uint64_t mask = sender.uniform(256);
    std::vector<Payload> out(n_, Payload{static_cast<std::uint8_t>(space_.pack(m) ^ mask)});
    auto got = net.transmit(Direction::sender_to_receiver, out);
    for (std::size_t i = 1; i <= n_; ++i)
      if (got[i - 1] != got[0]) net.detect(i);
    net.transmit(Direction::receiver_to_sender, std::vector<Payload>(n_, got[0]));
    if (pub_) net.publish(Direction::sender_to_receiver, Payload{static_cast<std::uint8_t>(mask)});
    if (got[0].size() != 1) return std::nullopt;
    return space_.unpack(got[0][0] ^ mask);
  }

 private:
  std::size_t n_;
  bool pub_;
  MessageSpace space_;
};

// Writes a fixed payload on a fixed channel in round 1.
class Writer final : public AdversaryStrategy {
 public:
  Writer(std::size_t channel, Payload p) : channel_(channel), p_(std::move(p)) {}
  std::string name() const override { return "writer"; }
  std::map<std::size_t, Payload> observe_and_tamper(const ChannelObservation& obs, RandomSource&) override {
    seen.push_back(obs);
    if (obs.round != 1) return {};
    return {{channel_, p_}};
  }
  std::vector<ChannelObservation> seen;

 private:
  std::size_t channel_;
  Payload p_;
};

Message msg(std::uint64_t v) { return {FieldElement(FieldSpec::binary(8), v)}; }

}  // namespace

TEST_CASE("corruption profile validation and JSON", "[transport]") {
  CorruptionProfile p{{{1, 2}, {3}}, std::nullopt};
  CHECK_NOTHROW(p.validate(3));
  CHECK_THROWS_AS(p.validate(2), std::invalid_argument);
  CHECK(p.owner_of(3) == 2u);
  CHECK_FALSE(p.owner_of(4).has_value());
  CHECK(p.max_slot() == 2);
  CHECK_THROWS_AS((CorruptionProfile{{{1, 2}, {2}}, std::nullopt}.validate(3)), std::invalid_argument);
  CHECK_THROWS_AS((CorruptionProfile{{{0}}, std::nullopt}.validate(3)), std::invalid_argument);
  CHECK_THROWS_AS((CorruptionProfile{{{1}}, 2}.validate(3)), std::invalid_argument);
  nlohmann::json j = CorruptionProfile{{{1, 2}, {4}}, 2};
  const CorruptionProfile back = profile_from_json(j);
  CHECK(back.assignments == std::vector<std::set<std::size_t>>{{1, 2}, {4}});
  CHECK(back.malicious_id == 2u);
}

TEST_CASE("passive execution delivers every payload verbatim", "[transport]") {
  const EchoProtocol proto(3, true);
  const auto profile = CorruptionProfile::single({2});
  PassiveStrategy passive;
  AdversaryStrategy* s[] = {&passive};
  const Transcript t = execute(proto, msg(77), profile, s, 5);
  CHECK(t.receiver_output == msg(77));
  CHECK(t.detect_events.empty());
  REQUIRE(t.rounds.size() == 3);
  CHECK(t.rounds[0].sent == t.rounds[0].delivered);
  CHECK(t.rounds[1].direction == Direction::receiver_to_sender);
  CHECK(t.rounds[2].public_payload.has_value());
  CHECK(t.adversary_outputs.size() == 1);

  const AdversaryView v = view_of(t, 1);
  REQUIRE(v.rounds.size() == 3);
  CHECK(v.rounds[0].sent.size() == 1);
  CHECK(v.rounds[0].sent.count(2) == 1);
  CHECK(v.rounds[2].public_payload == t.rounds[2].public_payload);
}

TEST_CASE("same seed replays byte for byte", "[transport]") {
  const EchoProtocol proto(3, true);
  const auto profile = CorruptionProfile::single({1});
  PassiveStrategy a, b;
  AdversaryStrategy* sa[] = {&a};
  AdversaryStrategy* sb[] = {&b};
  nlohmann::json ja = execute(proto, msg(9), profile, sa, 11);
  nlohmann::json jb = execute(proto, msg(9), profile, sb, 11);
  nlohmann::json jc = execute(proto, msg(9), profile, sb, 12);
  CHECK(ja.dump() == jb.dump());
  CHECK(ja.dump() != jc.dump());
}

TEST_CASE("rushing adversary sees honest payloads and replaces them", "[transport]") {
  const EchoProtocol proto(3, false);
  const auto profile = CorruptionProfile::single({2});
  Writer w(2, Payload{0xAB});
  AdversaryStrategy* s[] = {&w};
  const Transcript t = execute(proto, msg(5), profile, s, 2);
  REQUIRE_FALSE(w.seen.empty());
  CHECK(w.seen[0].payloads.at(2) == t.rounds[0].sent[1]);
  CHECK(w.seen[0].payloads.size() == 1);
  CHECK(t.rounds[0].delivered[1] == Payload{0xAB});
  CHECK(t.detected(2));
  CHECK_FALSE(t.detected(1));
  CHECK(t.detect_events[0] == DetectEvent{2, 1, false});
}

TEST_CASE("strategies cannot write channels they do not own", "[transport]") {
  const EchoProtocol proto(3, true);
  const auto profile = CorruptionProfile::single({2});
  Writer other(3, Payload{1});
  AdversaryStrategy* s1[] = {&other};
  CHECK_THROWS_AS(execute(proto, msg(1), profile, s1, 1), SimulationFault);
  Writer pub(kPublicChannel, Payload{1});
  AdversaryStrategy* s2[] = {&pub};
  CHECK_THROWS_AS(execute(proto, msg(1), profile, s2, 1), SimulationFault);
  PassiveStrategy p;
  AdversaryStrategy* none[] = {&p, &p};
  CHECK_THROWS(execute(proto, msg(1), profile, none, 1));
}

TEST_CASE("blocked channel delivers the empty payload", "[transport]") {
  const EchoProtocol proto(2, false);
  const auto profile = CorruptionProfile::single({1});
  Writer w(1, kEmptyPayload);
  AdversaryStrategy* s[] = {&w};
  const Transcript t = execute(proto, msg(5), profile, s, 2);
  CHECK(t.rounds[0].delivered[0].empty());
  CHECK_FALSE(t.receiver_output.has_value());
  nlohmann::json j = t;
  CHECK(j.at("receiver_output") == "FAIL");
}

TEST_CASE("view serialization separates different views", "[transport]") {
  const EchoProtocol proto(3, true);
  const auto profile = CorruptionProfile::single({1, 3});
  PassiveStrategy p;
  AdversaryStrategy* s[] = {&p};
  const Transcript a = execute(proto, msg(1), profile, s, 3);
  const Transcript b = execute(proto, msg(2), profile, s, 3);
  CHECK(serialize_view(view_of(a, 1)) == serialize_view(view_of(a, 1)));
  CHECK(serialize_view(view_of(a, 1)) != serialize_view(view_of(b, 1)));
}
