#include "psmt/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psmt {

namespace {

ShareVector different_share(const FieldSpec& f, const ShareVector& old, RandomSource& rng) {
  for (;;) {
    ShareVector s;
    for (std::size_t c = 0; c < old.size(); ++c) s.emplace_back(f, rng.uniform(f.order()));
    if (s != old) return s;
  }
}

std::uint64_t nonzero_bits(unsigned bits, RandomSource& rng) { return 1 + rng.uniform((std::uint64_t{1} << bits) - 1); }

std::size_t robust_len(const OneRoundProtocol& p) {
  return p.spec().variant == Variant::rss ? p.spec().d + 2 : p.spec().d;
}

// Replaces shares on `count` owned channels (0 = all). In stealth mode the
// adversary's own checkers get their tags recomputed so they stay silent
// about the substitutions.
class ShareSubstitution final : public AdversaryStrategy {
 public:
  ShareSubstitution(std::string name, std::size_t count, bool stealth)
      : name_(std::move(name)), count_(count), stealth_(stealth) {}
  std::string name() const override { return name_; }

  std::map<std::size_t, Payload> observe_and_tamper(const ChannelObservation& obs, RandomSource& rng) override {
    if (obs.round != 1 || obs.payloads.empty()) return {};
    std::vector<std::size_t> targets;
    for (const auto& [c, p] : obs.payloads)
      if (count_ == 0 || targets.size() < count_) targets.push_back(c);
    const Protocol* proto = context().protocol;
    std::map<std::size_t, Payload> out;
    if (auto* sj = dynamic_cast<const SjstProtocol*>(proto)) {
      const unsigned k = sj->spec().key_bits();
      for (auto c : targets) {
        auto keys = sj->parse_round1(obs.payloads.at(c));
        if (!keys) continue;
        const std::uint64_t R = keys->second ^ nonzero_bits(k, rng);
        ByteWriter w;
        w.put(keys->first, bytes_for_bits(sj->spec().ell));
        w.put(R, bytes_for_bits(k));
        out[c] = w.take();
      }
      return out;
    }
    if (auto* cp = dynamic_cast<const CissProtocol*>(proto)) {
      std::map<std::size_t, CissPayload> parsed;
      for (const auto& [c, p] : obs.payloads)
        if (auto q = cp->parse(p, c)) parsed[c] = std::move(*q);
      for (auto c : targets)
        if (parsed.count(c)) parsed[c].share = different_share(cp->spec().field, parsed[c].share, rng);
      if (stealth_)
        for (auto& [i, pi] : parsed)
          for (auto j : targets)
            if (j != i && parsed.count(j))
              pi.tags[j] = cp->tag(pi.hash_a, pi.hash_b, parsed[j].share) ^ parsed[j].masks.at(i);
      for (auto& [c, p] : parsed) out[c] = cp->serialize(p, c);
      return out;
    }
    if (auto* op = dynamic_cast<const OneRoundProtocol*>(proto)) {
      const FieldSpec& f = op->spec().field;
      for (auto c : targets)
        if (auto s = decode_share(f, robust_len(*op), obs.payloads.at(c)))
          out[c] = encode_share(f, different_share(f, *s, rng));
    }
    return out;
  }

 private:
  std::string name_;
  std::size_t count_;
  bool stealth_;
};

// Own checkers accuse every honest channel by corrupting T_{i,j}.
class TagFraming final : public AdversaryStrategy {
 public:
  std::string name() const override { return "tag-framing"; }
  std::map<std::size_t, Payload> observe_and_tamper(const ChannelObservation& obs, RandomSource& rng) override {
    auto* cp = dynamic_cast<const CissProtocol*>(context().protocol);
    if (!cp || obs.round != 1) return {};
    std::map<std::size_t, Payload> out;
    for (const auto& [i, bytes] : obs.payloads) {
      auto p = cp->parse(bytes, i);
      if (!p) continue;
      for (auto& [j, t] : p->tags)
        if (!obs.payloads.count(j)) t ^= nonzero_bits(cp->spec().ell, rng);
      out[i] = cp->serialize(*p, i);
    }
    return out;
  }
};

// Corrupts the masks r_{j,i} that honest checkers j need for the adversary's own shares.
class MaskFraming final : public AdversaryStrategy {
 public:
  std::string name() const override { return "mask-framing"; }
  std::map<std::size_t, Payload> observe_and_tamper(const ChannelObservation& obs, RandomSource& rng) override {
    auto* cp = dynamic_cast<const CissProtocol*>(context().protocol);
    if (!cp || obs.round != 1) return {};
    std::map<std::size_t, Payload> out;
    for (const auto& [i, bytes] : obs.payloads) {
      auto p = cp->parse(bytes, i);
      if (!p) continue;
      for (auto& [j, r] : p->masks)
        if (!obs.payloads.count(j)) r ^= nonzero_bits(cp->spec().ell, rng);
      out[i] = cp->serialize(*p, i);
    }
    return out;
  }
};

class LengthTamper final : public AdversaryStrategy {
 public:
  std::string name() const override { return "length-tamper"; }
  std::map<std::size_t, Payload> observe_and_tamper(const ChannelObservation& obs, RandomSource&) override {
    std::map<std::size_t, Payload> out;
    for (const auto& [c, p] : obs.payloads) {
      Payload q = p;
      q.push_back(0);
      out[c] = std::move(q);
    }
    return out;
  }
};

class BlockChannel final : public AdversaryStrategy {
 public:
  std::string name() const override { return "block-channel"; }
  std::map<std::size_t, Payload> observe_and_tamper(const ChannelObservation& obs, RandomSource&) override {
    std::map<std::size_t, Payload> out;
    for (const auto& [c, p] : obs.payloads) out[c] = kEmptyPayload;
    return out;
  }
};

// Simulates the sender on a fresh uniform message and swaps every owned channel
// for the simulated payload. With n = 2t - 1 the owned channel n is blocked instead.
class SwapHalf final : public AdversaryStrategy {
 public:
  std::string name() const override { return "swap-half"; }
  std::map<std::size_t, Payload> observe_and_tamper(const ChannelObservation& obs, RandomSource& rng) override {
    auto* op = dynamic_cast<const OneRoundProtocol*>(context().protocol);
    if (!op || obs.round != 1 || obs.payloads.empty()) return {};
    const Message fake = op->message_space().sample(rng);
    const auto sim = op->encode(fake, rng);
    const std::size_t n = op->channels();
    const std::size_t t = obs.payloads.size();
    std::map<std::size_t, Payload> out;
    for (const auto& [c, p] : obs.payloads) out[c] = sim[c - 1];
    if (n == 2 * t - 1 && out.count(n)) out[n] = kEmptyPayload;
    return out;
  }
};

// Passive, but guesses a deterministic function of its view. Under perfect
// privacy this still hits M_S with probability exactly 1/|M|.
class ViewGuess final : public AdversaryStrategy {
 public:
  std::string name() const override { return "view-guess"; }
  Message final_guess(const AdversaryView& view, RandomSource&) override {
    const Payload bytes = serialize_view(view);
    const std::uint64_t h = fnv1a(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    const MessageSpace& space = context().protocol->message_space();
    return space.from_index(h % space.size());
  }
};

const std::vector<Variant> kAll{Variant::sjst, Variant::rss, Variant::p1, Variant::p2, Variant::p3, Variant::strawman};
const std::vector<Variant> kOneRound{Variant::rss, Variant::p1, Variant::p2, Variant::p3, Variant::strawman};
const std::vector<Variant> kCiss{Variant::p1, Variant::p2, Variant::p3};

}  // namespace

bool AttackCatalogEntry::applies_to(Variant v) const {
  return std::find(applicable.begin(), applicable.end(), v) != applicable.end();
}

const std::vector<AttackCatalogEntry>& attack_catalog() {
  static const std::vector<AttackCatalogEntry> catalog = {
      {"passive-random-guess", "never tampers, uniform guess", kAll,
       [] { return std::make_unique<PassiveStrategy>(); }},
      {"view-guess", "never tampers, guesses a hash of its view", kAll, [] { return std::make_unique<ViewGuess>(); }},
      {"share-substitution", "random shares (SJST: random R) on every owned channel, own tags repaired", kAll,
       [] { return std::make_unique<ShareSubstitution>("share-substitution", 0, true); }},
      {"share-substitution-1", "random share on the lowest owned channel, own tags repaired", kAll,
       [] { return std::make_unique<ShareSubstitution>("share-substitution-1", 1, true); }},
      {"share-substitution-plain", "random shares on every owned channel, tags untouched", kAll,
       [] { return std::make_unique<ShareSubstitution>("share-substitution-plain", 0, false); }},
      {"tag-framing", "own checkers accuse every honest channel", kCiss,
       [] { return std::make_unique<TagFraming>(); }},
      {"mask-framing", "masks carried for honest checkers are corrupted", kCiss,
       [] { return std::make_unique<MaskFraming>(); }},
      {"length-tamper", "one extra byte on every owned payload", kAll,
       [] { return std::make_unique<LengthTamper>(); }},
      {"block-channel", "every owned channel delivers the empty payload", kAll,
       [] { return std::make_unique<BlockChannel>(); }},
      {"swap-half", "owned channels carry a simulated sender run on a random message", kOneRound,
       [] { return std::make_unique<SwapHalf>(); }},
  };
  return catalog;
}

const AttackCatalogEntry& find_attack(const std::string& name) {
  for (const auto& e : attack_catalog())
    if (e.name == name) return e;
  throw std::invalid_argument("unknown attack '" + name + "'");
}

std::unique_ptr<AdversaryStrategy> make_attack(const std::string& name) { return find_attack(name).make(); }

std::vector<std::string> applicable_attacks(Variant v) {
  std::vector<std::string> out;
  for (const auto& e : attack_catalog())
    if (e.applies_to(v)) out.push_back(e.name);
  return out;
}

Variant variant_of(const Protocol& p) {
  if (auto* s = dynamic_cast<const SjstProtocol*>(&p)) return s->spec().variant;
  if (auto* o = dynamic_cast<const OneRoundProtocol*>(&p)) return o->spec().variant;
  throw std::invalid_argument("protocol of unknown kind");
}

std::vector<std::unique_ptr<AdversaryStrategy>> build_strategies(const CorruptionProfile& profile, std::size_t j,
                                                                 const std::string& attack,
                                                                 const std::string& malicious) {
  std::vector<std::unique_ptr<AdversaryStrategy>> v;
  for (std::size_t k = 1; k <= profile.adversaries(); ++k) {
    if (k == j)
      v.push_back(make_attack(attack));
    else if (profile.malicious_id && *profile.malicious_id == k)
      v.push_back(make_attack(malicious));
    else
      v.push_back(std::make_unique<PassiveStrategy>());
  }
  return v;
}

std::vector<AdversaryStrategy*> raw_pointers(const std::vector<std::unique_ptr<AdversaryStrategy>>& v) {
  std::vector<AdversaryStrategy*> out;
  for (const auto& p : v) out.push_back(p.get());
  return out;
}

bool NashReport::any_flag() const {
  return std::any_of(rows.begin(), rows.end(), [](const NashRow& r) { return r.flag; });
}

std::string NashReport::summary() const {
  const auto flags = std::count_if(rows.begin(), rows.end(), [](const NashRow& r) { return r.flag; });
  std::ostringstream os;
  if (flags == 0)
    os << "no violation found among " << attacks << " attacks x " << trials << " trials";
  else
    os << flags << " flag(s) among " << attacks << " attacks x " << trials << " trials";
  return os.str();
}

namespace {

TrialObserver cell_observer(const NashOptions& o, std::size_t j, const std::string& attack) {
  if (!o.observer) return {};
  return [&o, j, attack](std::size_t trial, const GameResult& r) { o.observer(j, attack, trial, r); };
}

}  // namespace

NashReport nash_catalog_check(const Protocol& protocol, const CorruptionProfile& profile, const UtilityTable& table,
                              const NashOptions& options) {
  const Variant v = variant_of(protocol);
  std::vector<std::string> attacks = options.attacks;
  if (attacks.empty()) attacks = applicable_attacks(v);
  attacks.erase(std::remove(attacks.begin(), attacks.end(), "passive-random-guess"), attacks.end());
  for (const auto& a : attacks)
    if (!find_attack(a).applies_to(v))
      throw std::invalid_argument("attack '" + a + "' does not apply to " + to_string(v));

  NashReport report;
  report.attacks = attacks.size();
  report.trials = options.trials;
  for (std::size_t j = 1; j <= profile.adversaries(); ++j) {
    if (profile.malicious_id && *profile.malicious_id == j) continue;
    auto base_strats = build_strategies(profile, 0, "passive-random-guess", options.malicious_attack);
    auto base_ptrs = raw_pointers(base_strats);
    const Estimate baseline = estimate_utility(protocol, profile, base_ptrs, table, j, options.trials, options.seed,
                                               cell_observer(options, 0, "passive-random-guess"));
    for (const auto& a : attacks) {
      auto strats = build_strategies(profile, j, a, options.malicious_attack);
      auto ptrs = raw_pointers(strats);
      const Estimate est =
          estimate_utility(protocol, profile, ptrs, table, j, options.trials, options.seed, cell_observer(options, j, a));
      const double threshold =
          baseline.mean + 1.96 * std::sqrt(est.std_error * est.std_error + baseline.std_error * baseline.std_error);
      report.rows.push_back({j, a, est, baseline, threshold, est.mean > threshold});
    }
  }
  return report;
}

}  // namespace psmt
