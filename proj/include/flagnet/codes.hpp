#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "flagnet/flags.hpp"

namespace flagnet {

/// Operations that enumerate element tuples refuse beyond this many.
inline constexpr std::uint64_t enumeration_budget = std::uint64_t{1} << 24;

/// Linear code in the space of upper triangular n x n matrices over K,
/// measured in the flag-rank metric. Stored by basis; the zero code
/// (empty basis) is allowed. Immutable once built; copies share caches.
class FlagRankCode {
public:
    /// Requires the basis matrices to be K-linearly independent.
    FlagRankCode(Field field, std::size_t n, std::vector<UpperTriangular> basis);

    const Field& field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t dim() const { return basis_.size(); }

    /// Dimension n(n+1)/2 of the ambient matrix space.
    std::size_t packed_dim() const { return n_ * (n_ + 1) / 2; }

    const std::vector<UpperTriangular>& basis() const { return basis_; }

    /// The combination sum_t coeffs[t] * basis[t]; coefficient codes.
    UpperTriangular codeword(const std::vector<std::uint32_t>& coeffs) const;

    /// Membership via a zero syndrome against the dual basis, so it
    /// scales past the enumeration budget.
    bool contains(const UpperTriangular& a) const;

    /// Minimum flag rank over the q^dim - 1 nonzero codewords, cached
    /// after the first call. Rejects the zero code; enumerations past
    /// the budget raise ResourceError.
    std::size_t min_distance() const;

private:
    const std::vector<UpperTriangular>& dual_basis_() const;
    friend FlagRankCode dual_code(const FlagRankCode& code);

    struct Cache;

    Field field_;
    std::size_t n_;
    std::vector<UpperTriangular> basis_;
    std::shared_ptr<Cache> cache_;
};

/// The bilinear form sum_{r<=c} A_{rc} B_{rc}; symmetric and
/// non-degenerate on the packed entries.
FieldElement trace_pairing(const UpperTriangular& a, const UpperTriangular& b);

/// All matrices pairing to zero with every codeword.
/// dim + dual dim = n(n+1)/2 and the double dual is the code itself.
FlagRankCode dual_code(const FlagRankCode& code);

/// The pairings of a against each dual basis element, in order. Zero
/// iff a lies in the code the dual basis came from.
VectorF syndrome(const UpperTriangular& a, const std::vector<UpperTriangular>& dual_basis);

/// Precomputed syndrome decoder: one minimal-weight coset leader per
/// projective syndrome line. Immutable once built; decode is pure.
class SyndromeTable {
public:
    /// Builds the table by a single scan of the whole matrix space,
    /// keeping per line the leader of least flag rank (ties: smallest
    /// packed entries lexicographically). Raises ResourceError when
    /// the scan would exceed the enumeration budget.
    explicit SyndromeTable(FlagRankCode code);

    const FlagRankCode& code() const { return code_; }
    const std::vector<UpperTriangular>& dual_basis() const { return dual_basis_; }

    struct Leader {
        std::vector<std::uint32_t> packed;
        std::size_t weight;
    };

    /// Leaders keyed by normalized syndrome (first nonzero coordinate
    /// scaled to 1); exactly one entry per projective line.
    const std::map<std::vector<std::uint32_t>, Leader>& leaders() const { return leaders_; }

    /// Largest leader weight; an upper bound on any decoding distance.
    std::size_t covering_radius() const;

    /// Nearest-codeword decoding: subtracts the rescaled leader of the
    /// received syndrome's line. The result is a codeword whose
    /// distance to the input is the true minimum.
    UpperTriangular decode(const UpperTriangular& received) const;

private:
    FlagRankCode code_;
    std::vector<UpperTriangular> dual_basis_;
    std::map<std::vector<std::uint32_t>, Leader> leaders_;
};

/// Degree-k extension code: k = floor((n+1)/2) and the basis matrices
/// are the multiplication matrices of the extension's power basis,
/// placed as the k x k block in rows 1..k, columns n+1-k..n. Meets the
/// largest possible minimum distance: k*k when n+1 = 2k, k(k+1) when
/// n+1 = 2k+1, with dimension k.
FlagRankCode build_max_distance_code(const Field& field, std::size_t n);

/// Seeded random code of the given dimension: basis vectors drawn
/// uniformly, redrawing any that are dependent on the earlier ones.
FlagRankCode random_code(const Field& field, std::size_t n, std::size_t dim, std::uint64_t seed);

struct NearestResult {
    UpperTriangular codeword;
    std::size_t distance;
};

/// Brute-force nearest codeword; the independent reference the table
/// decoder is checked against. Ties resolve to the lexicographically
/// smallest codeword in packed-entry order.
NearestResult exhaustive_nearest(const FlagRankCode& code, const UpperTriangular& a);

}  // namespace flagnet
