#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "flagnet/field.hpp"

namespace flagnet {

/// Row vector over a finite field. Entries are stored as canonical codes.
class VectorF {
public:
    VectorF(Field field, std::size_t size);
    VectorF(Field field, std::vector<std::uint32_t> codes);

    const Field& field() const { return field_; }
    std::size_t size() const { return codes_.size(); }

    std::uint32_t code_at(std::size_t i) const;
    void set_code(std::size_t i, std::uint32_t code);
    FieldElement at(std::size_t i) const;
    void set(std::size_t i, const FieldElement& value);

    const std::vector<std::uint32_t>& codes() const { return codes_; }
    bool is_zero() const;

    VectorF operator+(const VectorF& other) const;
    VectorF operator-(const VectorF& other) const;
    VectorF scaled(const FieldElement& a) const;

    bool operator==(const VectorF& other) const;
    bool operator!=(const VectorF& other) const { return !(*this == other); }

private:
    Field field_;
    std::vector<std::uint32_t> codes_;
};

/// Dense matrix over a finite field, row-major canonical codes.
/// Zero-row and zero-column shapes are valid.
class MatrixF {
public:
    MatrixF(Field field, std::size_t rows, std::size_t cols);

    static MatrixF identity(Field field, std::size_t n);

    const Field& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint32_t code_at(std::size_t r, std::size_t c) const;
    void set_code(std::size_t r, std::size_t c, std::uint32_t code);
    FieldElement at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, const FieldElement& value);

    VectorF row(std::size_t r) const;
    void set_row(std::size_t r, const VectorF& v);

    /// Copy of the rows x cols block with top-left corner (r0, c0).
    MatrixF block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const;

    bool is_zero() const;

    MatrixF operator+(const MatrixF& other) const;
    MatrixF operator-(const MatrixF& other) const;
    MatrixF operator*(const MatrixF& other) const;
    MatrixF scaled(const FieldElement& a) const;
    MatrixF transpose() const;

    struct Reduced;

    /// Reduced row echelon form. Canonical: two matrices with the same
    /// row space reduce to the same matrix.
    Reduced rref() const;

    std::size_t rank() const;

    /// Inverse of a square matrix. Rejects non-square or singular input.
    MatrixF inverse() const;

    /// Basis of the right kernel {x : M x^T = 0} as rows, in reduced
    /// row echelon form. Has cols() columns and cols() - rank() rows.
    MatrixF null_space() const;

    bool operator==(const MatrixF& other) const;
    bool operator!=(const MatrixF& other) const { return !(*this == other); }

private:
    std::size_t index(std::size_t r, std::size_t c) const { return r * cols_ + c; }

    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<std::uint32_t> codes_;
};

struct MatrixF::Reduced {
    MatrixF matrix;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

/// Side-by-side concatenation; row counts must match.
MatrixF hstack(const MatrixF& left, const MatrixF& right);

/// Top-to-bottom concatenation; column counts must match.
MatrixF vstack(const MatrixF& top, const MatrixF& bottom);

}  // namespace flagnet
