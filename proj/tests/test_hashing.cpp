#include <catch_amalgamated.hpp>

#include <map>

#include "psmt/hashing.hpp"
#include "psmt/verification.hpp"

using namespace psmt;

namespace {

// Reference: multiply in GF(2^m) bit by bit, add b, keep the low ell bits.
std::uint64_t ref_hash(unsigned m, std::uint64_t poly, unsigned ell, std::uint64_t a, std::uint64_t b,
                       std::uint64_t x) {
  std::uint64_t r = 0;
  for (unsigned i = 0; i < m; ++i) {
    if (x >> i & 1) r ^= a;
    a <<= 1;
    if (a >> m & 1) a ^= poly;
  }
  return (r ^ b) & ((1ull << ell) - 1);
}

}  // namespace

TEST_CASE("evaluate matches the reference affine hash", "[hashing]") {
  for (auto [m, ell] : std::vector<std::pair<unsigned, unsigned>>{{3, 1}, {8, 8}, {16, 5}, {32, 16}}) {
    const HashFamilySpec spec(m, ell);
    SeededRng rng(m * 100 + ell);
    for (int i = 0; i < 200; ++i) {
      const HashFunction h = sample(spec, rng);
      const std::uint64_t x = rng.uniform(1ull << m);
      CHECK(evaluate(h, x) == ref_hash(m, spec.field().polynomial(), ell, h.a.value(), h.b.value(), x));
    }
  }
}

TEST_CASE("hash family parameters", "[hashing]") {
  CHECK(HashFamilySpec(8, 5).tag_bytes() == 1);
  CHECK(HashFamilySpec(16, 16).tag_bytes() == 2);
  CHECK(family_gamma(HashFamilySpec(8, 3)) == 1.0 / 64);
  CHECK_THROWS_AS(HashFamilySpec(3, 4), std::invalid_argument);
  CHECK_THROWS_AS(HashFamilySpec(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(evaluate(make_hash(HashFamilySpec(3, 2), 1, 1), 8), std::invalid_argument);
  SeededRng rng(1);
  const HashFunction h = sample(HashFamilySpec(3, 2), rng);
  CHECK(h.b.value() < 8);
}

TEST_CASE("strong universality counts are exact at m=3", "[hashing]") {
  // Independent count: for every distinct (x1, x2) and target tags, count (a, b).
  for (unsigned ell = 1; ell <= 3; ++ell) {
    const HashFamilySpec spec(3, ell);
    const std::uint64_t poly = spec.field().polynomial();
    const std::uint64_t expect = 1ull << (6 - 2 * ell);
    for (std::uint64_t x1 = 0; x1 < 8; ++x1)
      for (std::uint64_t x2 = 0; x2 < 8; ++x2) {
        if (x1 == x2) continue;
        std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> counts;
        for (std::uint64_t a = 0; a < 8; ++a)
          for (std::uint64_t b = 0; b < 8; ++b) ++counts[{ref_hash(3, poly, ell, a, b, x1), ref_hash(3, poly, ell, a, b, x2)}];
        REQUIRE(counts.size() == (1ull << (2 * ell)));
        for (const auto& [k, c] : counts) REQUIRE(c == expect);
      }
    const CheckResult r = check_hash_strong_universality(spec);
    CHECK(r.pass);
    CHECK(r.observed == 0);
  }
}

TEST_CASE("offset collision probability stays within 2^{1-l}", "[hashing]") {
  const HashFamilySpec spec(4, 2);
  // same x, different offsets never collide; different x collide with prob 2^-l
  CHECK(offset_collision_prob_exhaustive(spec, 3, 1, 3, 2) == 0.0);
  CHECK(offset_collision_prob_exhaustive(spec, 3, 1, 5, 2) == Catch::Approx(0.25));
  CHECK_THROWS_AS(offset_collision_prob_exhaustive(spec, 3, 1, 3, 1), std::invalid_argument);
  const CheckResult r = check_hash_offset_collision(spec);
  CHECK(r.pass);
  CHECK(r.observed <= 0.5);
  CHECK_THROWS_AS(offset_collision_prob_exhaustive(HashFamilySpec(13, 2), 0, 0, 1, 0), std::length_error);
}

TEST_CASE("a broken truncation fails the exhaustive checks", "[hashing]") {
  const HashFamilySpec spec(3, 2);
  const auto good = standard_evaluator(spec);
  // drops the b offset on the top tag bit
  const HashEvaluator broken = [good](std::uint64_t a, std::uint64_t b, std::uint64_t x) { return good(a, b & 1, x); };
  CHECK_FALSE(check_hash_strong_universality(spec, broken).pass);
  // a constant family collides always
  const HashEvaluator constant = [](std::uint64_t, std::uint64_t, std::uint64_t) { return 0ull; };
  CHECK_FALSE(check_hash_offset_collision(spec, constant).pass);
}

TEST_CASE("hash function JSON", "[hashing]") {
  nlohmann::json j = make_hash(HashFamilySpec(8, 4), 17, 200);
  CHECK(j == nlohmann::json::array({17, 200}));
}
