#include "psmt/message.hpp"

#include <stdexcept>

namespace psmt {

MessageSpace::MessageSpace(const FieldSpec& field, std::size_t d) : field_(field), d_(d) {
  if (d == 0) throw std::invalid_argument("message dimension must be positive");
  if (bits() > 64) throw std::invalid_argument("message encoding exceeds 64 bits");
}

std::uint64_t MessageSpace::size() const {
  const std::uint64_t q = field_.order();
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < d_; ++i) {
    if (s > (std::uint64_t{1} << 63) / q) throw std::overflow_error("message space too large");
    s *= q;
  }
  return s;
}

Message MessageSpace::sample(RandomSource& rng) const {
  Message m;
  for (std::size_t i = 0; i < d_; ++i) m.emplace_back(field_, rng.uniform(field_.order()));
  return m;
}

Message MessageSpace::from_index(std::uint64_t index) const {
  if (index >= size()) throw std::invalid_argument("message index out of range");
  Message m;
  for (std::size_t i = 0; i < d_; ++i) {
    m.emplace_back(field_, index % field_.order());
    index /= field_.order();
  }
  return m;
}

std::uint64_t MessageSpace::index_of(const Message& m) const {
  if (!contains(m)) throw std::invalid_argument("message not in space");
  std::uint64_t idx = 0;
  for (std::size_t i = d_; i-- > 0;) idx = idx * field_.order() + m[i].value();
  return idx;
}

std::uint64_t MessageSpace::pack(const Message& m) const {
  if (!contains(m)) throw std::invalid_argument("message not in space");
  const unsigned w = field_.element_bits();
  std::uint64_t x = 0;
  for (std::size_t i = 0; i < d_; ++i) x |= m[i].value() << (i * w);
  return x;
}

std::optional<Message> MessageSpace::unpack(std::uint64_t packed) const {
  const unsigned w = field_.element_bits();
  const std::uint64_t mask = w >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1;
  Message m;
  for (std::size_t i = 0; i < d_; ++i) {
    const std::uint64_t v = (packed >> (i * w)) & mask;
    if (v >= field_.order()) return std::nullopt;
    m.emplace_back(field_, v);
  }
  if (bits() < 64 && (packed >> bits()) != 0) return std::nullopt;
  return m;
}

bool MessageSpace::contains(const Message& m) const {
  if (m.size() != d_) return false;
  for (const auto& e : m)
    if (!(e.field() == field_)) return false;
  return true;
}

std::string MessageSpace::to_string(const Message& m) const {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m[i].value());
  }
  return s + "]";
}

}  // namespace psmt
