#include "hypercone/rational.hpp"

#include <cctype>
#include <string>

#include "hypercone/errors.hpp"

namespace hypercone {

Rat make_rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  Rat r(Int(static_cast<long>(num)), Int(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool valid_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Int parse_int(std::string_view s) {
  if (!valid_integer(s)) throw DomainError("malformed integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Int(std::string(s));
}

}  // namespace

Rat parse_rat(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  Int den = parse_int(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

RatVec to_rat(const IntVec& v) {
  RatVec out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace hypercone
