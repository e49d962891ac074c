#include <catch_amalgamated.hpp>

#include <cmath>

#include "psmt/attacks.hpp"
#include "psmt/config.hpp"
#include "psmt/game.hpp"

using namespace psmt;

namespace {

ProtocolSpec p1_spec(std::size_t n, FieldSpec f, unsigned ell) {
  ProtocolSpec s;
  s.variant = Variant::p1;
  s.n = n;
  s.field = f;
  s.ell = ell;
  return s;
}

}  // namespace

TEST_CASE("u values from the witness table", "[game]") {
  const UValues u = derive_u_values(witness_table(256));
  CHECK(u.u1 == 3);
  CHECK(u.u2 == 2);
  CHECK(u.u3 == 1);
  CHECK(u.u4 == 0);
}

TEST_CASE("u values weight the guess bonus by 1/|M|", "[game]") {
  // |M| = 2, base(1,s,d) = base(0,s,d) + 2  ->  u = base(0,s,d) + 1
  const UtilityTable t({3, 1, 2, 0, 5, 3, 4, 2}, 0, 2);
  const UValues u = derive_u_values(t);
  CHECK(u.u1 == Catch::Approx(4));
  CHECK(u.u2 == Catch::Approx(3));
  CHECK(u.u3 == Catch::Approx(2));
  CHECK(u.u4 == Catch::Approx(1));
  const UtilityTable b = UtilityTable::from_sd(3, 2, 1, 0, 0.25, 16);
  CHECK(derive_u_values(b, 2).u3 == Catch::Approx(1.5));
}

TEST_CASE("utility adds the bonus per other detected adversary", "[game]") {
  const UtilityTable t = UtilityTable::from_sd(3, 2, 1, 0, 0.5, 16);
  Outcome o{true, {false, true, false}, {false, true, true}};
  CHECK(t.utility(o, 1) == Catch::Approx(2 + 1.0));
  CHECK(t.utility(o, 2) == Catch::Approx(0 + 0.5));
  const UtilityTable g({3, 2, 1, 0, 13, 12, 11, 10}, 0, 16);
  CHECK(g.utility(o, 2) == Catch::Approx(10));
}

TEST_CASE("table violations name the broken inequality", "[game]") {
  CHECK(table_violations(witness_table(16), TableClass::strictly_timid, 1).empty());
  // u2 = u3 is timid but not strictly timid
  const UtilityTable flat = UtilityTable::from_sd(3, 1, 1, 0, 0, 16);
  CHECK(table_violations(flat, TableClass::timid, 1).empty());
  const auto strict = table_violations(flat, TableClass::strictly_timid, 1);
  REQUIRE(strict.size() == 1);
  CHECK(strict[0] == "u1 > u2 > u3 > u4");
  const auto bold = table_violations(UtilityTable::from_sd(3, 2, 4, 0, 0, 16), TableClass::timid, 1);
  CHECK(std::find(bold.begin(), bold.end(), "base(g,s,0) > base(g,s,1)") != bold.end());
  const auto multi = table_violations(witness_table(16), TableClass::timid, 2);
  CHECK(std::find(multi.begin(), multi.end(), "bonus > 0") != multi.end());
  CHECK(table_violations(witness_table(16, 0.5), TableClass::timid, 2).empty());
}

TEST_CASE("utility table JSON", "[game]") {
  const nlohmann::json j = {{"base", {{"000", 3}, {"010", 2}, {"001", 1}, {"011", 0}, {"100", 4}}}, {"bonus", 0.5}};
  const UtilityTable t = utility_from_json(j, 16);
  CHECK(t.base(true, false, false) == 4);
  CHECK(t.base(true, true, false) == 2);
  CHECK(t.bonus() == 0.5);
  nlohmann::json back = t;
  CHECK(utility_from_json(back, 16).base(true, false, false) == 4);
  CHECK_THROWS(utility_from_json({{"base", {{"000", 1}}}}, 16));
  CHECK_THROWS(utility_from_json({{"base", {{"0000", 1}}}}, 16));
}

TEST_CASE("running stats merge equals direct accumulation", "[game]") {
  RunningStats all, a, b;
  SeededRng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = static_cast<double>(rng.uniform(100)) / 7;
    all.add(x);
    (i % 3 ? a : b).add(x);
  }
  RunningStats ab = a, ba = b;
  ab.merge(b);
  ba.merge(a);
  CHECK(ab.count() == all.count());
  CHECK(ab.mean() == Catch::Approx(all.mean()));
  CHECK(ab.variance() == Catch::Approx(all.variance()));
  CHECK(ba.mean() == Catch::Approx(ab.mean()));
  CHECK(all.ci95() == Catch::Approx(1.96 * std::sqrt(all.variance() / 1000)));
}

TEST_CASE("all-passive game succeeds with no detection", "[game]") {
  const auto proto = make_protocol(p1_spec(5, FieldSpec::binary(8), 5));
  const CorruptionProfile prof{{{1, 2}, {3, 4}}, std::nullopt};
  PassiveStrategy a, b;
  AdversaryStrategy* s[] = {&a, &b};
  const UtilityTable table = witness_table(256, 0.5);
  const GameResult r = play_game(*proto, prof, s, table, 9);
  CHECK(r.outcome.suc);
  CHECK(r.outcome.detect == std::vector<bool>{false, false});
  CHECK(r.utilities[0] == 2);
  const GameResult again = play_game(*proto, prof, s, table, 9);
  CHECK(again.transcript.sent_message == r.transcript.sent_message);
  CHECK(again.outcome.guess == r.outcome.guess);
  nlohmann::json j1 = r.transcript, j2 = again.transcript;
  CHECK(j1.dump() == j2.dump());

  const Estimate e = estimate_utility(*proto, prof, s, table, 2, 2000, 4);
  CHECK(e.mean == 2);
  CHECK(e.ci95 == 0);
  CHECK(e.suc_rate == 1);
}

TEST_CASE("random guessing hits 1/|M|", "[game]") {
  const auto proto = make_protocol(p1_spec(3, FieldSpec::binary(2), 2));
  const auto prof = CorruptionProfile::single({1});
  PassiveStrategy a;
  AdversaryStrategy* s[] = {&a};
  const std::size_t n = 100000;
  const Estimate e = estimate_utility(*proto, prof, s, witness_table(4), 1, n, 21);
  const double sigma = std::sqrt(0.25 * 0.75 / n);
  CHECK(std::abs(e.guess_rate - 0.25) < 3 * sigma);
}

TEST_CASE("profile sampler draws a fresh profile per trial", "[game]") {
  ProtocolSpec sp;
  sp.variant = Variant::strawman;
  sp.n = 4;
  sp.field = FieldSpec::binary(4);
  sp.t = 2;
  const auto proto = make_protocol(sp);
  std::map<std::set<std::size_t>, std::size_t> seen;
  ProfileSampler sampler = [](RandomSource& rng) {
    std::set<std::size_t> s;
    while (s.size() < 2) s.insert(1 + rng.uniform(4));
    return CorruptionProfile::single(s);
  };
  PassiveStrategy a;
  AdversaryStrategy* s[] = {&a};
  estimate_utility(*proto, sampler, s, witness_table(16), 1, 600, 2,
                   [&](std::size_t, const GameResult& r) { ++seen[r.transcript.profile.assignments[0]]; });
  CHECK(seen.size() == 6);
}
