#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psmt/field.hpp"
#include "psmt/random.hpp"

namespace psmt {

using Message = std::vector<FieldElement>;

// F^d. Messages map to integers by concatenating element encodings,
// element j occupying bits [j*w, (j+1)*w) with w = field.element_bits().
class MessageSpace {
 public:
  MessageSpace(const FieldSpec& field, std::size_t d);

  const FieldSpec& field() const { return field_; }
  std::size_t dimension() const { return d_; }
  std::uint64_t size() const;  // q^d; throws std::overflow_error beyond 2^63
  unsigned bits() const { return static_cast<unsigned>(d_) * field_.element_bits(); }

  Message sample(RandomSource& rng) const;
  Message from_index(std::uint64_t index) const;  // base-q digits, index < size()
  std::uint64_t index_of(const Message& m) const;

  std::uint64_t pack(const Message& m) const;
  // nullopt if some w-bit chunk is not a field element.
  std::optional<Message> unpack(std::uint64_t packed) const;

  bool contains(const Message& m) const;
  std::string to_string(const Message& m) const;

 private:
  FieldSpec field_;
  std::size_t d_;
};

}  // namespace psmt
