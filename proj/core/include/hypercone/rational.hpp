#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hypercone {

using Int = mpz_class;
/// Arbitrary-precision rational; gmpxx keeps results canonical (lowest terms, q > 0).
using Rat = mpq_class;
using RatVec = std::vector<Rat>;
using IntVec = std::vector<std::int64_t>;

Rat make_rat(std::int64_t num, std::int64_t den = 1);

/// Always "p/q", including q = 1.
std::string to_string(const Rat& r);

/// Accepts "p" or "p/q" with an optional sign. Throws DomainError on malformed input
/// or a zero denominator.
Rat parse_rat(std::string_view text);

RatVec to_rat(const IntVec& v);

Rat dot(const RatVec& a, const RatVec& b);

}  // namespace hypercone
