#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "flagnet/matrix.hpp"
#include "flagnet/subspace.hpp"

namespace flagnet {

/// Upper triangular n x n matrix over a finite field, stored packed
/// (row-major, upper entries only; n(n+1)/2 codes). Entries strictly
/// below the diagonal are structurally zero.
class UpperTriangular {
public:
    UpperTriangular(Field field, std::size_t n);
    UpperTriangular(Field field, std::size_t n, std::vector<std::uint32_t> packed);

    const Field& field() const { return field_; }
    std::size_t n() const { return n_; }
    std::size_t packed_size() const { return packed_.size(); }

    /// Packed upper entries, row-major: row 0 cols 0..n-1, row 1 cols
    /// 1..n-1, and so on.
    const std::vector<std::uint32_t>& packed() const { return packed_; }

    /// Entry (r, c), 0-based; returns zero below the diagonal.
    std::uint32_t code_at(std::size_t r, std::size_t c) const;
    FieldElement at(std::size_t r, std::size_t c) const;

    /// Writes entry (r, c); rejects positions below the diagonal.
    void set_code(std::size_t r, std::size_t c, std::uint32_t code);
    void set(std::size_t r, std::size_t c, const FieldElement& value);

    /// The i x (n+1-i) block of rows 0..i-1 and columns i-1..n-1, for
    /// 1 <= i <= n. Every packed entry lies in exactly one such block
    /// column-wise; their ranks are what flag_rank sums.
    MatrixF corner_slice(std::size_t i) const;

    bool is_zero() const;

    UpperTriangular operator+(const UpperTriangular& other) const;
    UpperTriangular operator-(const UpperTriangular& other) const;
    UpperTriangular operator-() const;
    UpperTriangular scaled(const FieldElement& a) const;

    bool operator==(const UpperTriangular& other) const;
    bool operator!=(const UpperTriangular& other) const { return !(*this == other); }

    /// Lexicographic order on the packed codes; the deterministic
    /// tie-break order used by decoders.
    bool operator<(const UpperTriangular& other) const;

private:
    std::size_t index(std::size_t r, std::size_t c) const {
        return r * n_ - r * (r - 1) / 2 + (c - r);
    }

    Field field_;
    std::size_t n_;
    std::vector<std::uint32_t> packed_;
};

/// Chain V_1, ..., V_n of subspaces of K^{n+1} with dim V_i = i and
/// project(V_i, i, i+1) contained in V_{i+1}. Validated on construction.
class DegenerateFlag {
public:
    explicit DegenerateFlag(std::vector<Subspace> components);

    const Field& field() const { return components_.front().field(); }
    std::size_t n() const { return components_.size(); }
    std::size_t ambient_dim() const { return n() + 1; }

    /// components()[i] has dimension i + 1.
    const std::vector<Subspace>& components() const { return components_; }
    const Subspace& component(std::size_t i) const { return components_.at(i); }

    bool operator==(const DegenerateFlag& other) const { return components_ == other.components_; }
    bool operator!=(const DegenerateFlag& other) const { return !(*this == other); }

private:
    std::vector<Subspace> components_;
};

/// Chain U_1 < U_2 < ... < U_{n+1} = K^{n+1} of nested subspaces with
/// dim U_i = i. Validated on construction.
class FullFlag {
public:
    explicit FullFlag(std::vector<Subspace> components);

    const Field& field() const { return components_.front().field(); }
    std::size_t ambient_dim() const { return components_.size(); }

    const std::vector<Subspace>& components() const { return components_; }
    const Subspace& component(std::size_t i) const { return components_.at(i); }

    bool operator==(const FullFlag& other) const { return components_ == other.components_; }
    bool operator!=(const FullFlag& other) const { return !(*this == other); }

private:
    std::vector<Subspace> components_;
};

/// Degeneration map on coordinates, 1-based levels: zeroes coordinates
/// j+1..i (1-based) and keeps the rest. Identity when j == i.
/// Requires 1 <= j <= i <= v.size().
VectorF project(const VectorF& v, std::size_t j, std::size_t i);

/// Image of a subspace under the coordinate projection.
Subspace project(const Subspace& u, std::size_t j, std::size_t i);

/// True iff the components form a degenerate flag: n components in
/// K^{n+1}, dim V_i = i, and project(V_i, i, i+1) inside V_{i+1}.
/// Components over mixed fields or ambient spaces are rejected.
bool is_degenerate_flag(const std::vector<Subspace>& components);

/// The degenerate flag with components spanned by the rows of
/// (I_i | corner_slice(i)), i = 1..n.
DegenerateFlag flag_from_matrix(const UpperTriangular& delta);

/// Inverse of flag_from_matrix. Every component must have its basis
/// pivots in the leading columns; otherwise the flag lies outside the
/// big cell and a CellError is thrown.
UpperTriangular matrix_from_flag(const DegenerateFlag& flag);

/// Sum of the ranks of all corner slices. A metric weight: zero iff
/// the matrix is zero, invariant under nonzero scaling, subadditive.
std::size_t flag_rank(const UpperTriangular& delta);

/// Sum of componentwise subspace distances.
std::size_t flag_distance(const DegenerateFlag& a, const DegenerateFlag& b);
std::size_t flag_distance(const FullFlag& a, const FullFlag& b);

/// Largest flag distance on an ambient space of dimension N >= 2:
/// k^2 for N = 2k, k(k+1) for N = 2k+1.
std::size_t d_max(std::size_t ambient_dim);

/// Unitriangular (n+1) x (n+1) matrix whose row r is the unit vector
/// e_r plus the entries of delta's row r shifted one column right.
MatrixF to_unitriangular(const UpperTriangular& delta);

/// Inverse of to_unitriangular; rejects matrices that are not
/// unitriangular.
UpperTriangular from_unitriangular(const MatrixF& m);

/// The full flag whose i-th component is spanned by the first i rows
/// of to_unitriangular(delta).
FullFlag full_flag_from_matrix(const UpperTriangular& delta);

}  // namespace flagnet
