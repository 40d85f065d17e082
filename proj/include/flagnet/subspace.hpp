#pragma once

#include <cstddef>
#include <vector>

#include "flagnet/matrix.hpp"

namespace flagnet {

/// Linear subspace of K^N, held as its reduced-row-echelon basis.
/// The basis is canonical, so equal subspaces compare equal entrywise.
class Subspace {
public:
    /// Row space of the given matrix (rows need not be independent).
    static Subspace from_rows(const MatrixF& rows);

    static Subspace zero(const Field& field, std::size_t ambient_dim);
    static Subspace full(const Field& field, std::size_t ambient_dim);

    const Field& field() const { return basis_.field(); }
    std::size_t ambient_dim() const { return basis_.cols(); }
    std::size_t dim() const { return basis_.rows(); }

    /// Canonical basis, dim() rows in reduced row echelon form.
    const MatrixF& basis() const { return basis_; }

    /// Pivot column of each basis row, strictly increasing.
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const VectorF& v) const;

    bool operator==(const Subspace& other) const;
    bool operator!=(const Subspace& other) const { return !(*this == other); }

private:
    Subspace(MatrixF basis, std::vector<std::size_t> pivots);

    MatrixF basis_;
    std::vector<std::size_t> pivots_;
};

/// Smallest subspace containing both arguments.
Subspace subspace_sum(const Subspace& u, const Subspace& w);

/// Distance dim(U + W) - dim U between subspaces of equal dimension in
/// the same ambient space. Rejects mismatched dimensions.
std::size_t grassmann_distance(const Subspace& u, const Subspace& w);

/// True iff the basis pivots are exactly columns 0..dim-1, i.e. the
/// basis has the shape (I | A).
bool is_big_cell(const Subspace& u);

/// The matrix A from the big-cell basis (I | A); dim x (ambient - dim).
/// Rejects subspaces outside the big cell.
MatrixF big_cell_matrix(const Subspace& u);

}  // namespace flagnet
