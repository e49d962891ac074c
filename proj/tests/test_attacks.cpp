#include <catch_amalgamated.hpp>

#include <cmath>

#include "psmt/attacks.hpp"
#include "psmt/bounds.hpp"
#include "psmt/config.hpp"

using namespace psmt;

namespace {

ProtocolSpec make(Variant v, std::size_t n, unsigned ell, FieldSpec f = FieldSpec::binary(8),
                  std::optional<std::size_t> t = {}) {
  ProtocolSpec s;
  s.variant = v;
  s.n = n;
  s.field = f;
  s.ell = ell;
  s.t = t;
  return s;
}

// Did adversary j's strategy change anything it forwarded?
bool tampered(const Transcript& t, std::size_t j) {
  for (const auto& r : t.rounds)
    for (std::size_t c : t.profile.channels_of(j))
      if (!r.sent.empty() && r.sent[c - 1] != r.delivered[c - 1]) return true;
  return false;
}

}  // namespace

TEST_CASE("catalog contents", "[attacks]") {
  for (const char* name : {"passive-random-guess", "view-guess", "share-substitution", "share-substitution-1",
                           "share-substitution-plain", "tag-framing", "mask-framing", "length-tamper",
                           "block-channel", "swap-half"}) {
    CHECK_NOTHROW(find_attack(name));
    CHECK(make_attack(name)->name() == name);
  }
  CHECK_THROWS_AS(find_attack("nope"), std::invalid_argument);
  const auto sj = applicable_attacks(Variant::sjst);
  CHECK(std::find(sj.begin(), sj.end(), "tag-framing") == sj.end());
  CHECK(std::find(sj.begin(), sj.end(), "length-tamper") != sj.end());
  const auto sw = applicable_attacks(Variant::strawman);
  CHECK(std::find(sw.begin(), sw.end(), "swap-half") != sw.end());
}

TEST_CASE("build strategies puts the attack in slot j only", "[attacks]") {
  const CorruptionProfile prof{{{1}, {2}, {3, 4}}, 3};
  const auto s = build_strategies(prof, 2, "block-channel", "share-substitution");
  REQUIRE(s.size() == 3);
  CHECK(s[0]->name() == "passive-random-guess");
  CHECK(s[1]->name() == "block-channel");
  CHECK(s[2]->name() == "share-substitution");
  CHECK(raw_pointers(s)[1] == s[1].get());
}

TEST_CASE("P1 witness configuration raises no flag", "[attacks][nash]") {
  const auto proto = make_protocol(make(Variant::p1, 5, 5));
  const CorruptionProfile prof{{{1, 2}, {3, 4}}, std::nullopt};
  NashOptions o;
  o.trials = 3000;
  o.seed = 17;
  const NashReport r = nash_catalog_check(*proto, prof, witness_table(256, 0.5), o);
  CHECK_FALSE(r.any_flag());
  CHECK(r.rows.size() == 2 * (applicable_attacks(Variant::p1).size() - 1));
  CHECK(r.summary() == "no violation found among 9 attacks x 3000 trials");
}

TEST_CASE("P1 tightness probe with a tuned table", "[attacks][nash]") {
  // u1 = 1024 puts the required ell at 14. Flags only appear once ell is
  // several bits under it: the catalog does not reach the union-bound budget.
  const UtilityTable table = UtilityTable::from_sd(1024, 2, 1, 0, 0, 256);
  const auto prof = CorruptionProfile::single({1, 2});
  REQUIRE(required_ell_p1(derive_u_values(table), 5).ell == 14);
  NashOptions o;
  o.trials = 20000;
  o.seed = 5;
  o.attacks = {"share-substitution", "share-substitution-1", "swap-half"};
  const NashReport low = nash_catalog_check(*make_protocol(make(Variant::p1, 5, 9)), prof, table, o);
  CHECK(low.any_flag());
  const NashReport at = nash_catalog_check(*make_protocol(make(Variant::p1, 5, 14)), prof, table, o);
  CHECK_FALSE(at.any_flag());
}

TEST_CASE("P2 strictly timid table at t = n-1 raises no flag", "[attacks][nash]") {
  const auto proto = make_protocol(make(Variant::p2, 4, 1));
  NashOptions o;
  o.trials = 3000;
  const NashReport r = nash_catalog_check(*proto, CorruptionProfile::single({1, 2, 3}), witness_table(256), o);
  CHECK_FALSE(r.any_flag());
}

TEST_CASE("P2 majority profile breaks the equilibrium", "[attacks][nash]") {
  // A rational adversary with 3 of 4 channels next to one with a single channel.
  // At ell = 1 substituting one share goes through undetected about half the time.
  const auto proto = make_protocol(make(Variant::p2, 4, 1));
  const CorruptionProfile prof{{{1, 2, 3}, {4}}, std::nullopt};
  NashOptions o;
  o.trials = 3000;
  const NashReport r = nash_catalog_check(*proto, prof, witness_table(256, 0.5), o);
  CHECK(r.any_flag());
}

TEST_CASE("no false attribution for passive slots", "[attacks]") {
  const std::vector<std::pair<ProtocolSpec, CorruptionProfile>> cases{
      {make(Variant::p1, 5, 8), {{{1, 2}, {3}}, std::nullopt}},
      {make(Variant::p3, 7, 8), {{{1, 2}, {3}, {4}}, std::nullopt}},
  };
  for (const auto& [spec, profile] : cases) {
    const auto proto = make_protocol(spec);
    for (const auto& a : applicable_attacks(spec.variant)) {
      auto strats = build_strategies(profile, 1, a, "passive-random-guess");
      auto ptrs = raw_pointers(strats);
      for (std::uint64_t seed = 0; seed < 150; ++seed) {
        const GameResult g = play_game(*proto, profile, ptrs, witness_table(256, 0.5), seed);
        INFO(to_string(spec.variant) << " " << a << " seed " << seed);
        for (std::size_t j = 2; j <= profile.adversaries(); ++j) REQUIRE_FALSE(g.outcome.detect[j - 1]);
        if (g.outcome.detect[0]) REQUIRE(tampered(g.transcript, 1));
      }
    }
  }
}

TEST_CASE("P2 always names the tamperer, and the checker that caught it", "[attacks]") {
  // Both endpoints of a mismatch enter the list, so a passive slot holding an
  // honest checker is flagged next to the forger.
  const auto proto = make_protocol(make(Variant::p2, 4, 8));
  const CorruptionProfile profile{{{1, 2}, {3}}, std::nullopt};
  std::size_t other_flagged = 0;
  for (const char* a : {"share-substitution", "share-substitution-1", "share-substitution-plain", "length-tamper",
                        "block-channel"}) {
    auto strats = build_strategies(profile, 1, a, "passive-random-guess");
    auto ptrs = raw_pointers(strats);
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const GameResult g = play_game(*proto, profile, ptrs, witness_table(256, 0.5), seed);
      INFO(a << " seed " << seed);
      if (!g.transcript.detect_events.empty()) REQUIRE(g.outcome.detect[0]);
      if (g.outcome.detect[0]) REQUIRE(tampered(g.transcript, 1));
      other_flagged += g.outcome.detect[1];
    }
  }
  CHECK(other_flagged > 0);
  // passive everywhere: nothing is ever listed
  auto strats = build_strategies(profile, 1, "passive-random-guess", "passive-random-guess");
  auto ptrs = raw_pointers(strats);
  for (std::uint64_t seed = 0; seed < 150; ++seed)
    CHECK(play_game(*proto, profile, ptrs, witness_table(256, 0.5), seed).transcript.detect_events.empty());
}

TEST_CASE("guess rate stays at 1/|M| under every attack", "[attacks]") {
  const std::vector<ProtocolSpec> specs{make(Variant::sjst, 3, 4, FieldSpec::binary(2)),
                                        make(Variant::rss, 3, 4, FieldSpec::binary(2), 2),
                                        make(Variant::p1, 3, 4, FieldSpec::binary(2)),
                                        make(Variant::p2, 3, 4, FieldSpec::binary(2))};
  const std::size_t trials = 4000;
  const double sigma = std::sqrt(0.25 * 0.75 / trials);
  for (const auto& sp : specs) {
    const auto proto = make_protocol(sp);
    const std::size_t t = sp.variant == Variant::p1 ? 1 : 2;
    std::set<std::size_t> own;
    for (std::size_t i = 1; i <= t; ++i) own.insert(i);
    const auto prof = CorruptionProfile::single(own);
    for (const auto& a : applicable_attacks(sp.variant)) {
      auto strats = build_strategies(prof, 1, a, "passive-random-guess");
      auto ptrs = raw_pointers(strats);
      const Estimate e = estimate_utility(*proto, prof, ptrs, witness_table(4), 1, trials, 99);
      INFO(to_string(sp.variant) << " " << a);
      CHECK(std::abs(e.guess_rate - 0.25) < 4 * sigma);
    }
  }
}

TEST_CASE("swap-half is neutralized by P1 at t < n/2", "[attacks]") {
  const auto proto = make_protocol(make(Variant::p1, 5, 5));
  const auto prof = CorruptionProfile::single({1, 2});
  auto strats = build_strategies(prof, 1, "swap-half", "passive-random-guess");
  auto ptrs = raw_pointers(strats);
  const Estimate e = estimate_utility(*proto, prof, ptrs, witness_table(256), 1, 5000, 3);
  CHECK(e.mean <= 2 + e.ci95);
  CHECK(e.detect_rate > 0.5);
}

TEST_CASE("strawman swap-half leaves the receiver guessing", "[attacks]") {
  ProtocolSpec sp = make(Variant::strawman, 4, 1, FieldSpec::binary(4), 2);
  const auto proto = make_protocol(sp);
  const auto prof = CorruptionProfile::single({1, 2});
  auto strats = build_strategies(prof, 1, "swap-half", "passive-random-guess");
  auto ptrs = raw_pointers(strats);
  const std::size_t n = 20000;
  const Estimate e = estimate_utility(*proto, prof, ptrs, witness_table(16), 1, n, 8);
  CHECK(e.detect_rate == 0);
  // every 3-subset mixes honest and simulated shares, so the decoder mostly
  // outputs an unrelated message
  CHECK(e.suc_rate <= 0.5 * (1 + 1.0 / 16) + 3 * std::sqrt(0.25 / n));
}
