#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cohen {

// A finite binary sequence. Doubles as a condition of single Cohen forcing
// (ordered by reverse extension) and as the prefix approximation of a real.
// The empty string is the top condition.
class BitString {
public:
  BitString() = default;

  explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {}

  // Parses "0101..."; anything but '0'/'1' is a DomainError.
  static BitString parse(std::string_view text);

  // n zeros.
  static BitString zeros(std::size_t n);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }

  int bit(std::size_t i) const;
  void set(std::size_t i, int b);

  void push_back(int b);
  void append(const BitString& tail);

  // First n bits (n clamped to size).
  BitString prefix(std::size_t n) const;

  // Extended with trailing zeros to length at least n.
  BitString padded(std::size_t n) const;

  std::string str() const;

  auto operator<=>(const BitString&) const = default;

  const std::vector<std::uint8_t>& bits() const { return bits_; }

private:
  std::vector<std::uint8_t> bits_;
};

// True iff q is an initial segment of p, i.e. p is at least as strong a
// condition. Reflexive and transitive.
bool extends(const BitString& p, const BitString& q);

// Round-robin interleaving: output position i*N + j holds input j's bit i.
// Inputs of unequal length are first padded with trailing zeros; an empty
// input sequence is a DomainError. Injective for fixed count and length.
BitString interleave_join(const std::vector<BitString>& inputs);

// Inverse of interleave_join: extracts stride `index` of `count`.
BitString stride_extract(const BitString& joined, std::size_t count, std::size_t index);

// Positions carrying a 1, in increasing order.
std::vector<std::size_t> ones(const BitString& s);

}  // namespace cohen
