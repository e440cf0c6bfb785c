#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace hypercone {

/// Canonical key of a face under geometric equivalence. Keys of different schemes never
/// compare equal.
struct Certificate {
  std::string scheme;  ///< "schlafli" or "cutgraph"
  std::string bytes;

  auto operator<=>(const Certificate&) const = default;

  /// "scheme:base64(bytes)".
  std::string encode() const;
  static std::optional<Certificate> decode(std::string_view text);
};

std::string base64_encode(std::string_view data);
std::optional<std::string> base64_decode(std::string_view text);

}  // namespace hypercone
