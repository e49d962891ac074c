#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace psmt {

enum class FieldKind { prime, binary };

// GF(p) with p < 2^32, or GF(2^m) with m <= 32 given by an irreducible polynomial
// (bit i = coefficient of x^i, so 0x11B is x^8 + x^4 + x^3 + x + 1).
class FieldSpec {
 public:
  static FieldSpec prime(std::uint64_t p);
  static FieldSpec binary(unsigned m);
  static FieldSpec binary(unsigned m, std::uint64_t poly);

  FieldKind kind() const { return kind_; }
  std::uint64_t modulus() const { return p_; }      // prime fields
  unsigned degree() const { return m_; }            // binary fields
  std::uint64_t polynomial() const { return poly_; }
  std::uint64_t order() const;
  std::uint64_t characteristic() const { return kind_ == FieldKind::prime ? p_ : 2; }

  // Width of the canonical integer encoding: bit_width(q - 1).
  unsigned element_bits() const;
  std::size_t element_bytes() const { return (element_bits() + 7) / 8; }

  std::string describe() const;
  bool operator==(const FieldSpec&) const = default;

 private:
  FieldSpec(FieldKind kind, std::uint64_t p, unsigned m, std::uint64_t poly) : kind_(kind), p_(p), m_(m), poly_(poly) {}
  FieldKind kind_;
  std::uint64_t p_;
  unsigned m_;
  std::uint64_t poly_;
};

std::uint64_t default_irreducible_poly(unsigned m);
bool is_irreducible_gf2(std::uint64_t poly);
bool is_prime(std::uint64_t n);

void to_json(nlohmann::json& j, const FieldSpec& f);
FieldSpec field_from_json(const nlohmann::json& j);

class FieldElement {
 public:
  // Throws std::invalid_argument when value >= q.
  FieldElement(const FieldSpec& field, std::uint64_t value);
  static FieldElement zero(const FieldSpec& field) { return {field, 0}; }
  static FieldElement one(const FieldSpec& field) { return {field, 1}; }

  const FieldSpec& field() const { return field_; }
  std::uint64_t value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  bool operator==(const FieldElement&) const = default;

 private:
  FieldSpec field_;
  std::uint64_t value_;
};

// Mixed-field operands throw std::invalid_argument.
FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);  // std::domain_error on zero
FieldElement div(const FieldElement& a, const FieldElement& b);
FieldElement pow(const FieldElement& a, std::uint64_t e);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator-(const FieldElement& a) { return neg(a); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }
inline FieldElement operator/(const FieldElement& a, const FieldElement& b) { return div(a, b); }

// Univariate polynomial, coefficient i multiplies x^i. Trailing zeros are trimmed.
class Polynomial {
 public:
  explicit Polynomial(const FieldSpec& field, std::vector<FieldElement> coeffs = {});

  const FieldSpec& field() const { return field_; }
  const std::vector<FieldElement>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return coeffs_.empty(); }
  FieldElement coeff(std::size_t i) const;

  bool operator==(const Polynomial&) const = default;

 private:
  FieldSpec field_;
  std::vector<FieldElement> coeffs_;
};

FieldElement poly_eval(const Polynomial& f, const FieldElement& x);
Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
// Quotient and remainder. Throws std::domain_error for a zero divisor.
std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& num, const Polynomial& den);

using Point = std::pair<FieldElement, FieldElement>;

// Lagrange interpolation through points with distinct x. Throws on duplicates.
Polynomial interpolate(const std::vector<Point>& points);
FieldElement interpolate_at(const std::vector<Point>& points, const FieldElement& x);

}  // namespace psmt
