#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace psmt {

using Payload = std::vector<std::uint8_t>;

// Fixed-width little-endian fields.
class ByteWriter {
 public:
  void put(std::uint64_t value, std::size_t width);
  Payload take() { return std::move(bytes_); }

 private:
  Payload bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}
  // nullopt when fewer than width bytes remain.
  std::optional<std::uint64_t> get(std::size_t width);
  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

inline std::size_t bytes_for_bits(unsigned bits) { return (bits + 7) / 8; }

std::string to_hex(std::span<const std::uint8_t> bytes);
Payload from_hex(const std::string& hex);

}  // namespace psmt
