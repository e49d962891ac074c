#include "psmt/field.hpp"

#include <array>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace psmt {

namespace {

constexpr std::array<std::uint64_t, 33> kDefaultPolys = {
    0,          0x3,        0x7,        0xB,        0x13,        0x25,       0x43,       0x83,       0x11B,
    0x203,      0x409,      0x805,      0x1009,     0x201B,      0x4021,     0x8003,     0x1100B,    0x20009,
    0x40009,    0x80027,    0x100009,   0x200005,   0x400003,    0x800021,   0x100001B,  0x2000009,  0x400001B,
    0x8000027,  0x10000003, 0x20000005, 0x40000003, 0x80000009,  0x10000008D};

unsigned poly_degree_gf2(std::uint64_t p) { return p == 0 ? 0 : 63 - std::countl_zero(p); }

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t m) {
  const unsigned dm = poly_degree_gf2(m);
  while (a != 0 && poly_degree_gf2(a) >= dm) a ^= m << (poly_degree_gf2(a) - dm);
  return a;
}

std::uint64_t clmul_reduce(std::uint64_t a, std::uint64_t b, unsigned m, std::uint64_t poly) {
  std::uint64_t r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> m & 1) a ^= poly;
  }
  return r;
}

void require_same(const FieldElement& a, const FieldElement& b) {
  if (!(a.field() == b.field()))
    throw std::invalid_argument("field mismatch: " + a.field().describe() + " vs " + b.field().describe());
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible_gf2(std::uint64_t poly) {
  const unsigned deg = poly_degree_gf2(poly);
  if (deg < 1) return false;
  // Trial division by every polynomial of degree 1..deg/2.
  for (std::uint64_t d = 2; poly_degree_gf2(d) <= deg / 2; ++d)
    if (gf2_mod(poly, d) == 0) return false;
  return true;
}

std::uint64_t default_irreducible_poly(unsigned m) {
  if (m < 1 || m > 32) throw std::invalid_argument("binary field degree must be in [1, 32]");
  return kDefaultPolys[m];
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 32)) throw std::invalid_argument("prime modulus must be < 2^32");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  return FieldSpec(FieldKind::prime, p, 0, 0);
}

FieldSpec FieldSpec::binary(unsigned m) { return binary(m, default_irreducible_poly(m)); }

FieldSpec FieldSpec::binary(unsigned m, std::uint64_t poly) {
  if (m < 1 || m > 32) throw std::invalid_argument("binary field degree must be in [1, 32]");
  if (poly_degree_gf2(poly) != m) throw std::invalid_argument("polynomial degree does not match m");
  // The stored table is already known to be irreducible; skip the slow check.
  if (poly != kDefaultPolys[m] && !is_irreducible_gf2(poly))
    throw std::invalid_argument("polynomial is reducible over GF(2)");
  return FieldSpec(FieldKind::binary, 0, m, poly);
}

std::uint64_t FieldSpec::order() const { return kind_ == FieldKind::prime ? p_ : std::uint64_t{1} << m_; }

unsigned FieldSpec::element_bits() const { return static_cast<unsigned>(std::bit_width(order() - 1)); }

std::string FieldSpec::describe() const {
  std::ostringstream os;
  if (kind_ == FieldKind::prime) {
    os << "GF(" << p_ << ")";
  } else {
    os << "GF(2^" << m_ << ")/0x" << std::uppercase << std::hex << poly_;
  }
  return os.str();
}

void to_json(nlohmann::json& j, const FieldSpec& f) {
  if (f.kind() == FieldKind::prime) {
    j = {{"kind", "prime"}, {"p", f.modulus()}};
  } else {
    std::ostringstream os;
    os << "0x" << std::uppercase << std::hex << f.polynomial();
    j = {{"kind", "binary"}, {"m", f.degree()}, {"poly", os.str()}};
  }
}

FieldSpec field_from_json(const nlohmann::json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "prime") return FieldSpec::prime(j.at("p").get<std::uint64_t>());
  if (kind == "binary") {
    const unsigned m = j.at("m").get<unsigned>();
    if (!j.contains("poly")) return FieldSpec::binary(m);
    const auto& poly = j.at("poly");
    if (poly.is_number()) return FieldSpec::binary(m, poly.get<std::uint64_t>());
    return FieldSpec::binary(m, std::stoull(poly.get<std::string>(), nullptr, 0));
  }
  throw std::invalid_argument("unknown field kind '" + kind + "'");
}

FieldElement::FieldElement(const FieldSpec& field, std::uint64_t value) : field_(field), value_(value) {
  if (value >= field.order())
    throw std::invalid_argument("value " + std::to_string(value) + " out of range for " + field.describe());
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const FieldSpec& f = a.field();
  if (f.kind() == FieldKind::binary) return {f, a.value() ^ b.value()};
  return {f, (a.value() + b.value()) % f.modulus()};
}

FieldElement neg(const FieldElement& a) {
  const FieldSpec& f = a.field();
  if (f.kind() == FieldKind::binary || a.is_zero()) return a;
  return {f, f.modulus() - a.value()};
}

FieldElement sub(const FieldElement& a, const FieldElement& b) { return add(a, neg(b)); }

FieldElement mul(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const FieldSpec& f = a.field();
  if (f.kind() == FieldKind::prime) return {f, a.value() * b.value() % f.modulus()};
  return {f, clmul_reduce(a.value(), b.value(), f.degree(), f.polynomial())};
}

FieldElement pow(const FieldElement& a, std::uint64_t e) {
  FieldElement result = FieldElement::one(a.field());
  FieldElement base = a;
  while (e != 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

FieldElement inv(const FieldElement& a) {
  if (a.is_zero()) throw std::domain_error("inverse of zero in " + a.field().describe());
  return pow(a, a.field().order() - 2);
}

FieldElement div(const FieldElement& a, const FieldElement& b) { return mul(a, inv(b)); }

Polynomial::Polynomial(const FieldSpec& field, std::vector<FieldElement> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!(c.field() == field_)) throw std::invalid_argument("polynomial coefficient from another field");
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

FieldElement Polynomial::coeff(std::size_t i) const {
  return i < coeffs_.size() ? coeffs_[i] : FieldElement::zero(field_);
}

FieldElement poly_eval(const Polynomial& f, const FieldElement& x) {
  if (!(x.field() == f.field())) throw std::invalid_argument("evaluation point from another field");
  FieldElement acc = FieldElement::zero(f.field());
  for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch");
  std::vector<FieldElement> c;
  const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
  for (std::size_t i = 0; i < len; ++i) c.push_back(a.coeff(i) + b.coeff(i));
  return Polynomial(a.field(), std::move(c));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch");
  if (a.is_zero() || b.is_zero()) return Polynomial(a.field());
  std::vector<FieldElement> c(a.coeffs().size() + b.coeffs().size() - 1, FieldElement::zero(a.field()));
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) c[i + j] = c[i + j] + a.coeffs()[i] * b.coeffs()[j];
  return Polynomial(a.field(), std::move(c));
}

std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  const FieldSpec& f = num.field();
  std::vector<FieldElement> rem = num.coeffs();
  const int dd = den.degree();
  if (num.degree() < dd) return {Polynomial(f), num};
  std::vector<FieldElement> quot(num.degree() - dd + 1, FieldElement::zero(f));
  const FieldElement lead_inv = inv(den.coeffs().back());
  for (int i = num.degree(); i >= dd; --i) {
    const FieldElement factor = rem[i] * lead_inv;
    quot[i - dd] = factor;
    for (int k = 0; k <= dd; ++k) rem[i - dd + k] = rem[i - dd + k] - factor * den.coeffs()[k];
  }
  return {Polynomial(f, std::move(quot)), Polynomial(f, std::move(rem))};
}

Polynomial interpolate(const std::vector<Point>& points) {
  if (points.empty()) throw std::invalid_argument("interpolate: no points");
  const FieldSpec& f = points.front().first.field();
  Polynomial result(f);
  for (std::size_t i = 0; i < points.size(); ++i) {
    Polynomial basis(f, {FieldElement::one(f)});
    FieldElement denom = FieldElement::one(f);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      if (points[i].first == points[j].first) throw std::invalid_argument("interpolate: duplicate x");
      basis = poly_mul(basis, Polynomial(f, {-points[j].first, FieldElement::one(f)}));
      denom = denom * (points[i].first - points[j].first);
    }
    const FieldElement scale = points[i].second / denom;
    std::vector<FieldElement> scaled;
    for (const auto& c : basis.coeffs()) scaled.push_back(c * scale);
    result = poly_add(result, Polynomial(f, std::move(scaled)));
  }
  return result;
}

FieldElement interpolate_at(const std::vector<Point>& points, const FieldElement& x) {
  if (points.empty()) throw std::invalid_argument("interpolate: no points");
  const FieldSpec& f = points.front().first.field();
  FieldElement acc = FieldElement::zero(f);
  for (std::size_t i = 0; i < points.size(); ++i) {
    FieldElement num = FieldElement::one(f);
    FieldElement den = FieldElement::one(f);
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      if (points[i].first == points[j].first) throw std::invalid_argument("interpolate: duplicate x");
      num = num * (x - points[j].first);
      den = den * (points[i].first - points[j].first);
    }
    acc = acc + points[i].second * num / den;
  }
  return acc;
}

}  // namespace psmt
