#include "psmt/transport.hpp"

#include <algorithm>

namespace psmt {

std::string to_string(Direction d) { return d == Direction::sender_to_receiver ? "S->R" : "R->S"; }

std::optional<std::size_t> CorruptionProfile::owner_of(std::size_t channel) const {
  for (std::size_t j = 0; j < assignments.size(); ++j)
    if (assignments[j].count(channel)) return j + 1;
  return std::nullopt;
}

std::size_t CorruptionProfile::max_slot() const {
  std::size_t t = 0;
  for (const auto& s : assignments) t = std::max(t, s.size());
  return t;
}

void CorruptionProfile::validate(std::size_t n) const {
  std::set<std::size_t> seen;
  for (std::size_t j = 0; j < assignments.size(); ++j) {
    for (auto c : assignments[j]) {
      if (c < 1 || c > n)
        throw std::invalid_argument("adversary " + std::to_string(j + 1) + " owns channel " + std::to_string(c) +
                                    " outside 1.." + std::to_string(n));
      if (!seen.insert(c).second)
        throw std::invalid_argument("channel " + std::to_string(c) + " assigned to two adversaries");
    }
  }
  if (malicious_id && (*malicious_id < 1 || *malicious_id > assignments.size()))
    throw std::invalid_argument("malicious id does not name an adversary");
}

CorruptionProfile CorruptionProfile::single(std::set<std::size_t> channels) {
  CorruptionProfile p;
  p.assignments.push_back(std::move(channels));
  return p;
}

void to_json(nlohmann::json& j, const CorruptionProfile& p) {
  j = nlohmann::json::object();
  j["adversaries"] = nlohmann::json::array();
  for (const auto& s : p.assignments) j["adversaries"].push_back(std::vector<std::size_t>(s.begin(), s.end()));
  j["malicious"] = p.malicious_id ? nlohmann::json(*p.malicious_id) : nlohmann::json(nullptr);
}

CorruptionProfile profile_from_json(const nlohmann::json& j) {
  CorruptionProfile p;
  for (const auto& a : j.at("adversaries")) {
    std::set<std::size_t> s;
    for (const auto& c : a) {
      if (!s.insert(c.get<std::size_t>()).second) throw std::invalid_argument("duplicate channel in adversary set");
    }
    p.assignments.push_back(std::move(s));
  }
  if (j.contains("malicious") && !j.at("malicious").is_null()) p.malicious_id = j.at("malicious").get<std::size_t>();
  return p;
}

bool Transcript::detected(std::size_t channel) const {
  return std::any_of(detect_events.begin(), detect_events.end(),
                     [channel](const DetectEvent& e) { return e.channel == channel; });
}

namespace {

nlohmann::json message_json(const Message& m) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& e : m) a.push_back(e.value());
  return a;
}

nlohmann::json payloads_json(const std::vector<Payload>& ps) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : ps) a.push_back(to_hex(p));
  return a;
}

}  // namespace

void to_json(nlohmann::json& j, const Transcript& t) {
  j = nlohmann::json::object();
  j["sent_message"] = message_json(t.sent_message);
  j["profile"] = t.profile;
  j["rounds"] = nlohmann::json::array();
  for (const auto& r : t.rounds) {
    nlohmann::json jr = {{"round", r.round}, {"direction", to_string(r.direction)}};
    if (!r.sent.empty()) {
      jr["sent"] = payloads_json(r.sent);
      jr["delivered"] = payloads_json(r.delivered);
    }
    if (r.public_payload) jr["public"] = to_hex(*r.public_payload);
    j["rounds"].push_back(jr);
  }
  j["detect_events"] = nlohmann::json::array();
  for (const auto& e : t.detect_events)
    j["detect_events"].push_back({{"channel", e.channel}, {"round", e.round}, {"public", e.mirrored_public}});
  j["receiver_output"] = t.receiver_output ? message_json(*t.receiver_output) : nlohmann::json("FAIL");
  j["adversary_outputs"] = nlohmann::json::array();
  for (const auto& m : t.adversary_outputs) j["adversary_outputs"].push_back(message_json(m));
}

AdversaryView view_of(const Transcript& t, std::size_t j) {
  if (j < 1 || j > t.profile.adversaries()) throw std::invalid_argument("no such adversary");
  const auto& own = t.profile.channels_of(j);
  AdversaryView v;
  for (const auto& r : t.rounds) {
    ViewRound vr{r.round, r.direction, {}, {}, r.public_payload};
    if (!r.sent.empty())
      for (auto c : own) {
        vr.sent[c] = r.sent[c - 1];
        vr.delivered[c] = r.delivered[c - 1];
      }
    if (!vr.sent.empty() || vr.public_payload) v.rounds.push_back(std::move(vr));
  }
  return v;
}

Payload serialize_view(const AdversaryView& v) {
  ByteWriter w;
  auto put_payload = [&w](const Payload& p) {
    w.put(p.size(), 4);
    for (auto b : p) w.put(b, 1);
  };
  for (const auto& r : v.rounds) {
    w.put(r.round, 2);
    w.put(r.direction == Direction::sender_to_receiver ? 0 : 1, 1);
    w.put(r.sent.size(), 2);
    for (const auto& [c, p] : r.sent) {
      w.put(c, 2);
      put_payload(p);
      put_payload(r.delivered.at(c));
    }
    w.put(r.public_payload ? 1 : 0, 1);
    if (r.public_payload) put_payload(*r.public_payload);
  }
  return w.take();
}

void AdversaryStrategy::begin(const AdversaryContext& ctx, RandomSource&) { ctx_ = ctx; }

std::map<std::size_t, Payload> AdversaryStrategy::observe_and_tamper(const ChannelObservation&, RandomSource&) {
  return {};
}

Message AdversaryStrategy::final_guess(const AdversaryView&, RandomSource& rng) {
  if (!ctx_.protocol) throw SimulationFault("strategy used before begin()");
  return ctx_.protocol->message_space().sample(rng);
}

Network::Network(std::size_t n, bool public_channel, const CorruptionProfile& profile,
                 std::span<AdversaryStrategy* const> strategies, std::span<RandomSource* const> adversary_rngs,
                 Transcript& transcript)
    : n_(n),
      public_channel_(public_channel),
      profile_(profile),
      strategies_(strategies),
      rngs_(adversary_rngs),
      transcript_(transcript) {}

std::vector<Payload> Network::transmit(Direction dir, std::vector<Payload> payloads) {
  if (payloads.size() != n_) throw std::logic_error("transmit needs one payload per channel");
  ++round_;
  RoundRecord rec;
  rec.round = round_;
  rec.direction = dir;
  rec.sent = payloads;
  rec.delivered = std::move(payloads);
  for (std::size_t j = 1; j <= profile_.adversaries(); ++j) {
    ChannelObservation obs{round_, dir, {}, public_history_};
    for (auto c : profile_.channels_of(j)) obs.payloads[c] = rec.sent[c - 1];
    auto replacements = strategies_[j - 1]->observe_and_tamper(obs, *rngs_[j - 1]);
    for (auto& [c, p] : replacements) {
      if (c == kPublicChannel)
        throw SimulationFault("adversary " + std::to_string(j) + " tried to alter the public channel");
      if (!profile_.channels_of(j).count(c))
        throw SimulationFault("adversary " + std::to_string(j) + " wrote to channel " + std::to_string(c) +
                              " it does not own");
      rec.delivered[c - 1] = std::move(p);
    }
  }
  std::vector<Payload> out = rec.delivered;
  transcript_.rounds.push_back(std::move(rec));
  return out;
}

Payload Network::publish(Direction dir, Payload payload) {
  if (!public_channel_) throw std::logic_error("protocol has no public channel");
  ++round_;
  RoundRecord rec;
  rec.round = round_;
  rec.direction = dir;
  rec.public_payload = payload;
  transcript_.rounds.push_back(std::move(rec));
  public_history_.push_back(payload);
  return payload;
}

void Network::detect(std::size_t channel) {
  if (channel < 1 || channel > n_) throw std::logic_error("DETECT must name a channel");
  transcript_.detect_events.push_back({channel, round_, public_channel_});
}

Transcript execute_with(const Protocol& protocol, const Message& m, const CorruptionProfile& profile,
                        std::span<AdversaryStrategy* const> strategies, RandomStreams& streams) {
  profile.validate(protocol.channels());
  if (strategies.size() != profile.adversaries() || streams.adversaries.size() != profile.adversaries())
    throw std::invalid_argument("need one strategy and one rng per adversary");
  if (!protocol.message_space().contains(m)) throw std::invalid_argument("message not in the protocol's space");
  Transcript t;
  t.sent_message = m;
  t.profile = profile;
  for (std::size_t j = 1; j <= profile.adversaries(); ++j)
    strategies[j - 1]->begin({j, &profile.channels_of(j), &protocol}, *streams.adversaries[j - 1]);
  Network net(protocol.channels(), protocol.has_public_channel(), t.profile, strategies, streams.adversaries, t);
  t.receiver_output = protocol.run(m, net, streams.sender, streams.receiver);
  for (std::size_t j = 1; j <= profile.adversaries(); ++j) {
    Message g = strategies[j - 1]->final_guess(view_of(t, j), *streams.adversaries[j - 1]);
    if (!protocol.message_space().contains(g)) throw SimulationFault("adversary guess outside the message space");
    t.adversary_outputs.push_back(std::move(g));
  }
  return t;
}

Transcript execute(const Protocol& protocol, const Message& m, const CorruptionProfile& profile,
                   std::span<AdversaryStrategy* const> strategies, std::uint64_t master_seed) {
  SeededRng sender(derive_seed(master_seed, "sender"));
  SeededRng receiver(derive_seed(master_seed, "receiver"));
  std::vector<SeededRng> adv;
  adv.reserve(profile.adversaries());
  for (std::size_t j = 1; j <= profile.adversaries(); ++j)
    adv.emplace_back(derive_seed(master_seed, "adv-" + std::to_string(j)));
  RandomStreams streams{sender, receiver, {}};
  for (auto& r : adv) streams.adversaries.push_back(&r);
  return execute_with(protocol, m, profile, strategies, streams);
}

}  // namespace psmt
