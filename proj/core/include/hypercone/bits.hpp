#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hypercone {

/// Fixed-length dynamic bitset used for facet and ray incidence sets.
class Bits {
 public:
  Bits() = default;
  explicit Bits(std::size_t size, bool value = false)
      : size_(size), words_((size + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    trim();
  }

  std::size_t size() const { return size_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  Bits& operator&=(const Bits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  Bits& operator|=(const Bits& o) {
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
  friend Bits operator|(Bits a, const Bits& b) { return a |= b; }

  bool is_subset_of(const Bits& o) const {
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      auto w = words_[k];
      while (w) {
        f(k * 64 + static_cast<std::size_t>(std::countr_zero(w)));
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  /// Lowercase hex, most significant word first, zero-padded to the full length.
  std::string to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(words_.size() * 16);
    for (std::size_t k = words_.size(); k-- > 0;)
      for (int shift = 60; shift >= 0; shift -= 4) s.push_back(digits[(words_[k] >> shift) & 15]);
    return s;
  }

  /// Inverse of to_hex; a size-0 Bits signals malformed input.
  static Bits from_hex(std::size_t size, std::string_view hex) {
    Bits b(size);
    if (hex.size() != b.words_.size() * 16) return Bits();
    for (std::size_t pos = 0; pos < hex.size(); ++pos) {
      const char c = hex[pos];
      std::uint64_t v;
      if (c >= '0' && c <= '9')
        v = static_cast<std::uint64_t>(c - '0');
      else if (c >= 'a' && c <= 'f')
        v = static_cast<std::uint64_t>(c - 'a' + 10);
      else
        return Bits();
      const std::size_t word = b.words_.size() - 1 - pos / 16;
      const int shift = 60 - 4 * static_cast<int>(pos % 16);
      b.words_[word] |= v << shift;
    }
    const auto tail = b.words_;
    b.trim();
    if (b.words_ != tail) return Bits();
    return b;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ULL ^ size_;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  bool operator==(const Bits&) const = default;
  /// Orders by size, then by the words read from the most significant end.
  std::strong_ordering operator<=>(const Bits& o) const {
    if (auto c = size_ <=> o.size_; c != 0) return c;
    for (std::size_t k = words_.size(); k-- > 0;)
      if (auto c = words_[k] <=> o.words_[k]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  void trim() {
    if (size_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsHash {
  std::size_t operator()(const Bits& b) const { return b.hash(); }
};

}  // namespace hypercone
