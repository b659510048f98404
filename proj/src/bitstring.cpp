#include "cohen/bitstring.hpp"

#include <algorithm>

#include "cohen/errors.hpp"

namespace cohen {

BitString BitString::parse(std::string_view text) {
  BitString out;
  out.bits_.reserve(text.size());
  for (char c : text) {
    if (c == '0') {
      out.bits_.push_back(0);
    } else if (c == '1') {
      out.bits_.push_back(1);
    } else {
      throw DomainError("bit string may contain only '0' and '1', got '" + std::string(1, c) + "'");
    }
  }
  return out;
}

BitString BitString::zeros(std::size_t n) {
  return BitString(std::vector<std::uint8_t>(n, 0));
}

int BitString::bit(std::size_t i) const {
  if (i >= bits_.size()) throw DomainError("bit index out of range");
  return bits_[i];
}

void BitString::set(std::size_t i, int b) {
  if (i >= bits_.size()) throw DomainError("bit index out of range");
  bits_[i] = static_cast<std::uint8_t>(b ? 1 : 0);
}

void BitString::push_back(int b) {
  bits_.push_back(static_cast<std::uint8_t>(b ? 1 : 0));
}

void BitString::append(const BitString& tail) {
  bits_.insert(bits_.end(), tail.bits_.begin(), tail.bits_.end());
}

BitString BitString::prefix(std::size_t n) const {
  n = std::min(n, bits_.size());
  return BitString(std::vector<std::uint8_t>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(n)));
}

BitString BitString::padded(std::size_t n) const {
  BitString out = *this;
  while (out.bits_.size() < n) out.bits_.push_back(0);
  return out;
}

std::string BitString::str() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

bool extends(const BitString& p, const BitString& q) {
  if (q.size() > p.size()) return false;
  return std::equal(q.bits().begin(), q.bits().end(), p.bits().begin());
}

BitString interleave_join(const std::vector<BitString>& inputs) {
  if (inputs.empty()) throw DomainError("interleave_join of an empty sequence");
  std::size_t len = 0;
  for (const auto& x : inputs) len = std::max(len, x.size());
  const std::size_t n = inputs.size();
  std::vector<std::uint8_t> out(len * n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& bits = inputs[j].bits();
    for (std::size_t i = 0; i < bits.size(); ++i) out[i * n + j] = bits[i];
  }
  return BitString(std::move(out));
}

BitString stride_extract(const BitString& joined, std::size_t count, std::size_t index) {
  if (count == 0 || index >= count) throw DomainError("bad stride parameters");
  std::vector<std::uint8_t> out;
  for (std::size_t pos = index; pos < joined.size(); pos += count) {
    out.push_back(static_cast<std::uint8_t>(joined.bit(pos)));
  }
  return BitString(std::move(out));
}

std::vector<std::size_t> ones(const BitString& s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.bit(i)) out.push_back(i);
  }
  return out;
}

}  // namespace cohen
