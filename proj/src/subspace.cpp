#include "flagnet/subspace.hpp"

#include <utility>

#include "flagnet/errors.hpp"

namespace flagnet {

Subspace::Subspace(MatrixF basis, std::vector<std::size_t> pivots)
    : basis_(std::move(basis)), pivots_(std::move(pivots)) {}

Subspace Subspace::from_rows(const MatrixF& rows) {
    MatrixF::Reduced red = rows.rref();
    return Subspace(red.matrix.block(0, 0, red.rank, rows.cols()), std::move(red.pivots));
}

Subspace Subspace::zero(const Field& field, std::size_t ambient_dim) {
    return Subspace(MatrixF(field, 0, ambient_dim), {});
}

Subspace Subspace::full(const Field& field, std::size_t ambient_dim) {
    std::vector<std::size_t> pivots(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) pivots[i] = i;
    return Subspace(MatrixF::identity(field, ambient_dim), std::move(pivots));
}

bool Subspace::contains(const VectorF& v) const {
    if (v.field() != field() || v.size() != ambient_dim())
        throw DomainError("vector does not live in the ambient space");
    // Reduce v against the echelon basis and check that nothing is left.
    std::vector<std::uint32_t> rest = v.codes();
    const Field& f = field();
    for (std::size_t t = 0; t < dim(); ++t) {
        const std::uint32_t coef = rest[pivots_[t]];
        if (coef == 0) continue;
        for (std::size_t c = pivots_[t]; c < ambient_dim(); ++c) {
            const std::uint32_t sub = f.mul_code(coef, basis_.code_at(t, c));
            rest[c] = f.sub_code(rest[c], sub);
        }
    }
    for (std::uint32_t c : rest) {
        if (c != 0) return false;
    }
    return true;
}

bool Subspace::operator==(const Subspace& other) const { return basis_ == other.basis_; }

Subspace subspace_sum(const Subspace& u, const Subspace& w) {
    if (u.field() != w.field() || u.ambient_dim() != w.ambient_dim())
        throw DomainError("subspaces live in different ambient spaces");
    return Subspace::from_rows(vstack(u.basis(), w.basis()));
}

std::size_t grassmann_distance(const Subspace& u, const Subspace& w) {
    if (u.field() != w.field() || u.ambient_dim() != w.ambient_dim())
        throw DomainError("subspaces live in different ambient spaces");
    if (u.dim() != w.dim())
        throw DomainError("distance requires subspaces of equal dimension");
    return subspace_sum(u, w).dim() - u.dim();
}

bool is_big_cell(const Subspace& u) {
    const std::vector<std::size_t>& pivots = u.pivots();
    for (std::size_t t = 0; t < pivots.size(); ++t) {
        if (pivots[t] != t) return false;
    }
    return true;
}

MatrixF big_cell_matrix(const Subspace& u) {
    if (!is_big_cell(u))
        throw CellError("subspace basis does not have the shape (I | A)");
    return u.basis().block(0, u.dim(), u.dim(), u.ambient_dim() - u.dim());
}

}  // namespace flagnet
