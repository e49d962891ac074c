#include <catch_amalgamated.hpp>

#include "psmt/field.hpp"
#include "psmt/random.hpp"

using namespace psmt;

namespace {

// Shift-and-add reference multiplication in GF(2)[x] / poly, bit at a time.
std::uint64_t ref_gf2_mul(std::uint64_t a, std::uint64_t b, std::uint64_t poly, unsigned m) {
  std::uint64_t r = 0;
  for (unsigned i = 0; i < m; ++i) {
    if (b >> i & 1) r ^= a;
    a <<= 1;
    if (a >> m & 1) a ^= poly;
  }
  return r;
}

// Degree of a GF(2) polynomial stored as bits.
int deg2(std::uint64_t p) { return p ? 63 - __builtin_clzll(p) : -1; }

std::uint64_t mod2(std::uint64_t a, std::uint64_t b) {
  while (deg2(a) >= deg2(b)) a ^= b << (deg2(a) - deg2(b));
  return a;
}

// Trial division by every polynomial of degree 1..m/2.
bool ref_irreducible(std::uint64_t poly) {
  const int m = deg2(poly);
  for (std::uint64_t f = 2; deg2(f) <= m / 2; ++f)
    if (mod2(poly, f) == 0) return false;
  return m >= 1;
}

}  // namespace

TEST_CASE("prime field arithmetic matches integer arithmetic", "[field]") {
  for (std::uint64_t p : {2ull, 5ull, 7ull, 257ull, 65521ull, 4294967291ull}) {
    const FieldSpec f = FieldSpec::prime(p);
    SeededRng rng(p);
    for (int i = 0; i < 200; ++i) {
      const std::uint64_t a = rng.uniform(p), b = rng.uniform(p);
      const FieldElement x(f, a), y(f, b);
      CHECK((x + y).value() == (a + b) % p);
      CHECK((x - y).value() == (a + p - b) % p);
      // p < 2^32, so the product fits in 64 bits
      CHECK((x * y).value() == a * b % p);
      if (b != 0) CHECK(((x / y) * y) == x);
    }
  }
}

TEST_CASE("GF(2^8) with 0x11B matches the AES worked product", "[field]") {
  const FieldSpec f = FieldSpec::binary(8);
  CHECK(f.polynomial() == 0x11B);
  CHECK((FieldElement(f, 0x57) * FieldElement(f, 0x83)).value() == 0xC1);
  CHECK((FieldElement(f, 0x57) * FieldElement(f, 0x13)).value() == 0xFE);
  CHECK(inv(FieldElement(f, 0x53)).value() == 0xCA);
}

TEST_CASE("binary field multiply agrees with the shift-and-add oracle", "[field]") {
  for (unsigned m : {1u, 2u, 3u, 4u, 8u, 13u, 16u, 31u, 32u}) {
    const FieldSpec f = FieldSpec::binary(m);
    const std::uint64_t q = f.order();
    SeededRng rng(m);
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t a = rng.uniform(q), b = rng.uniform(q);
      CHECK((FieldElement(f, a) * FieldElement(f, b)).value() == ref_gf2_mul(a, b, f.polynomial(), m));
      CHECK((FieldElement(f, a) + FieldElement(f, b)).value() == (a ^ b));
    }
  }
}

TEST_CASE("every nonzero element has an inverse, small fields exhaustively", "[field]") {
  for (const FieldSpec& f : {FieldSpec::prime(7), FieldSpec::prime(251), FieldSpec::binary(4), FieldSpec::binary(8),
                             FieldSpec::binary(10)}) {
    const FieldElement one = FieldElement::one(f);
    for (std::uint64_t v = 1; v < f.order(); ++v) {
      const FieldElement a(f, v);
      REQUIRE(a * inv(a) == one);
    }
    CHECK_THROWS_AS(inv(FieldElement::zero(f)), std::domain_error);
  }
}

TEST_CASE("pow follows Fermat", "[field]") {
  const FieldSpec g = FieldSpec::binary(16);
  SeededRng rng(3);
  for (int i = 0; i < 50; ++i) {
    const FieldElement a(g, rng.uniform(g.order()));
    CHECK(pow(a, g.order()) == a);
  }
  const FieldSpec p = FieldSpec::prime(65521);
  CHECK(pow(FieldElement(p, 17), 65520) == FieldElement::one(p));
  CHECK(pow(FieldElement(p, 0), 0) == FieldElement::one(p));
}

TEST_CASE("default polynomial table is irreducible", "[field]") {
  for (unsigned m = 1; m <= 32; ++m) {
    const std::uint64_t poly = default_irreducible_poly(m);
    CHECK(deg2(poly) == static_cast<int>(m));
    CHECK(is_irreducible_gf2(poly));
    if (m <= 20) CHECK(ref_irreducible(poly));
  }
}

TEST_CASE("irreducibility test agrees with trial division", "[field]") {
  for (std::uint64_t poly = 2; poly < (1u << 11); ++poly) REQUIRE(is_irreducible_gf2(poly) == ref_irreducible(poly));
}

TEST_CASE("field construction rejects bad parameters", "[field]") {
  CHECK_THROWS_AS(FieldSpec::prime(6), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(1), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::prime(4294967311ull), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::binary(0), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::binary(33), std::invalid_argument);
  CHECK_THROWS_AS(FieldSpec::binary(4, 0x15), std::invalid_argument);  // x^4+x^2+1 = (x^2+x+1)^2
  CHECK_THROWS_AS(FieldElement(FieldSpec::prime(5), 5), std::invalid_argument);
  CHECK_THROWS_AS(FieldElement(FieldSpec::prime(5), 1) + FieldElement(FieldSpec::prime(7), 1), std::invalid_argument);
}

TEST_CASE("field spec encodes element widths", "[field]") {
  CHECK(FieldSpec::prime(5).element_bits() == 3);
  CHECK(FieldSpec::prime(2).element_bits() == 1);
  CHECK(FieldSpec::binary(8).element_bits() == 8);
  CHECK(FieldSpec::binary(8).element_bytes() == 1);
  CHECK(FieldSpec::binary(9).element_bytes() == 2);
  CHECK(FieldSpec::binary(32).order() == (1ull << 32));
}

TEST_CASE("field JSON round trip", "[field]") {
  for (const FieldSpec& f : {FieldSpec::prime(65521), FieldSpec::binary(8), FieldSpec::binary(4, 0x19)}) {
    nlohmann::json j = f;
    CHECK(field_from_json(j) == f);
  }
  CHECK(field_from_json(nlohmann::json{{"kind", "binary"}, {"m", 4}, {"poly", 0x13}}) == FieldSpec::binary(4, 0x13));
  CHECK_THROWS(field_from_json(nlohmann::json{{"kind", "ternary"}}));
}

TEST_CASE("polynomial arithmetic", "[field]") {
  const FieldSpec f = FieldSpec::prime(7);
  auto P = [&](std::vector<std::uint64_t> c) {
    std::vector<FieldElement> v;
    for (auto x : c) v.emplace_back(f, x);
    return Polynomial(f, v);
  };
  const Polynomial a = P({1, 2, 3}), b = P({4, 0, 1});
  CHECK(poly_mul(a, b) == P({4, 1, 6, 2, 3}));
  CHECK(poly_add(a, b) == P({5, 2, 4}));
  CHECK(P({0, 0, 0}).is_zero());
  CHECK(P({1, 0, 0}).degree() == 0);
  const auto [q, r] = poly_divmod(poly_mul(a, b), b);
  CHECK(q == a);
  CHECK(r.is_zero());
  CHECK(poly_eval(a, FieldElement(f, 2)).value() == (1 + 4 + 12) % 7);
  CHECK_THROWS_AS(poly_divmod(a, P({})), std::domain_error);
}

TEST_CASE("interpolation recovers random polynomials", "[field]") {
  for (const FieldSpec& f : {FieldSpec::prime(65521), FieldSpec::binary(12)}) {
    SeededRng rng(11);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<FieldElement> c;
      const std::size_t deg = 1 + trial % 6;
      for (std::size_t i = 0; i <= deg; ++i) c.emplace_back(f, rng.uniform(f.order()));
      const Polynomial g(f, c);
      std::vector<Point> pts;
      for (std::uint64_t x = 1; x <= deg + 1; ++x) pts.emplace_back(FieldElement(f, x), poly_eval(g, FieldElement(f, x)));
      CHECK(interpolate(pts) == g);
      CHECK(interpolate_at(pts, FieldElement::zero(f)) == g.coeff(0));
    }
    std::vector<Point> dup{{FieldElement(f, 1), FieldElement(f, 2)}, {FieldElement(f, 1), FieldElement(f, 3)}};
    CHECK_THROWS(interpolate(dup));
  }
}
