#pragma once

#include <cstdint>
#include <vector>

#include "hypercone/canon.hpp"
#include "hypercone/certificate.hpp"
#include "hypercone/facelat.hpp"

namespace hypercone {

/// The Schlafli graph with the vertices of `mask` colored 1 and the rest 0.
ColoredGraph schlafli_colored(std::uint32_t mask);

/// Key of the Aut(Sch)-orbit of a vertex subset (cached, thread-safe).
std::string schlafli_subset_key(std::uint32_t mask);

/// S(F, d_B) as a 27-bit vertex mask for a Schlafli ray of f.
std::uint32_t schlafli_subset(const ConeContext& ctx, const Face& f, std::size_t ray);

/// Minimum over the Schlafli rays of f of the subset key. Throws DomainError when f has no
/// Schlafli ray.
Certificate schlafli_certificate(const ConeContext& ctx, const Face& f);

/// Canonical form of the annulator/cut incidence structure of a cut-only face. Throws
/// DomainError on a Schlafli ray, a degenerate face, or a missing annulator.
Certificate cut_certificate(const ConeContext& ctx, const Face& f);

/// Computes the annulator when needed and dispatches to the matching scheme; sets f.cert.
/// Throws DomainError on a degenerate face.
Certificate certify(const ConeContext& ctx, Face& f);

/// Brute-force test of geometric equivalence: searches for b^0..b^n in `target` with
/// determinant +-1 such that c -> sum c_i b^i maps `source` onto `target`.
bool oracle_equivalent(const std::vector<BVector>& source, const std::vector<BVector>& target);

/// Same on faces; throws DomainError when an annulator is missing.
bool oracle_equivalent(const Face& f, const Face& g);

}  // namespace hypercone
