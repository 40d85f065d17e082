#include "flagnet/matrix.hpp"

#include <algorithm>
#include <utility>

#include "flagnet/errors.hpp"

namespace flagnet {

namespace {

void require_same_field(const Field& a, const Field& b) {
    if (a != b)
        throw DomainError("operands over " + a.to_string() + " and " + b.to_string() +
                          " cannot be combined");
}

}  // namespace

VectorF::VectorF(Field field, std::size_t size)
    : field_(std::move(field)), codes_(size, 0) {}

VectorF::VectorF(Field field, std::vector<std::uint32_t> codes)
    : field_(std::move(field)), codes_(std::move(codes)) {
    for (std::uint32_t c : codes_) {
        if (c >= field_.order())
            throw DomainError("entry code " + std::to_string(c) + " out of range for " +
                              field_.to_string());
    }
}

std::uint32_t VectorF::code_at(std::size_t i) const {
    if (i >= codes_.size()) throw DomainError("vector index out of range");
    return codes_[i];
}

void VectorF::set_code(std::size_t i, std::uint32_t code) {
    if (i >= codes_.size()) throw DomainError("vector index out of range");
    if (code >= field_.order())
        throw DomainError("entry code " + std::to_string(code) + " out of range for " +
                          field_.to_string());
    codes_[i] = code;
}

FieldElement VectorF::at(std::size_t i) const { return field_.element(code_at(i)); }

void VectorF::set(std::size_t i, const FieldElement& value) {
    if (value.field() != field_) throw DomainError("entry field mismatch");
    set_code(i, value.code());
}

bool VectorF::is_zero() const {
    return std::all_of(codes_.begin(), codes_.end(), [](std::uint32_t c) { return c == 0; });
}

VectorF VectorF::operator+(const VectorF& other) const {
    require_same_field(field_, other.field_);
    if (size() != other.size()) throw DomainError("vector sizes differ");
    VectorF out(field_, size());
    for (std::size_t i = 0; i < size(); ++i)
        out.codes_[i] = field_.add_code(codes_[i], other.codes_[i]);
    return out;
}

VectorF VectorF::operator-(const VectorF& other) const {
    require_same_field(field_, other.field_);
    if (size() != other.size()) throw DomainError("vector sizes differ");
    VectorF out(field_, size());
    for (std::size_t i = 0; i < size(); ++i)
        out.codes_[i] = field_.sub_code(codes_[i], other.codes_[i]);
    return out;
}

VectorF VectorF::scaled(const FieldElement& a) const {
    if (a.field() != field_) throw DomainError("scalar field mismatch");
    VectorF out(field_, size());
    for (std::size_t i = 0; i < size(); ++i) out.codes_[i] = field_.mul_code(a.code(), codes_[i]);
    return out;
}

bool VectorF::operator==(const VectorF& other) const {
    return field_ == other.field_ && codes_ == other.codes_;
}

MatrixF::MatrixF(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), codes_(rows * cols, 0) {}

MatrixF MatrixF::identity(Field field, std::size_t n) {
    MatrixF m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) m.codes_[m.index(i, i)] = 1;
    return m;
}

std::uint32_t MatrixF::code_at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw DomainError("matrix index out of range");
    return codes_[index(r, c)];
}

void MatrixF::set_code(std::size_t r, std::size_t c, std::uint32_t code) {
    if (r >= rows_ || c >= cols_) throw DomainError("matrix index out of range");
    if (code >= field_.order())
        throw DomainError("entry code " + std::to_string(code) + " out of range for " +
                          field_.to_string());
    codes_[index(r, c)] = code;
}

FieldElement MatrixF::at(std::size_t r, std::size_t c) const {
    return field_.element(code_at(r, c));
}

void MatrixF::set(std::size_t r, std::size_t c, const FieldElement& value) {
    if (value.field() != field_) throw DomainError("entry field mismatch");
    set_code(r, c, value.code());
}

VectorF MatrixF::row(std::size_t r) const {
    if (r >= rows_) throw DomainError("matrix row out of range");
    return VectorF(field_, std::vector<std::uint32_t>(codes_.begin() + index(r, 0),
                                                      codes_.begin() + index(r, 0) + cols_));
}

void MatrixF::set_row(std::size_t r, const VectorF& v) {
    if (r >= rows_) throw DomainError("matrix row out of range");
    if (v.field() != field_ || v.size() != cols_) throw DomainError("row shape mismatch");
    std::copy(v.codes().begin(), v.codes().end(), codes_.begin() + index(r, 0));
}

MatrixF MatrixF::block(std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) const {
    if (r0 + rows > rows_ || c0 + cols > cols_) throw DomainError("block out of range");
    MatrixF out(field_, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out.codes_[out.index(r, c)] = codes_[index(r0 + r, c0 + c)];
    return out;
}

bool MatrixF::is_zero() const {
    return std::all_of(codes_.begin(), codes_.end(), [](std::uint32_t c) { return c == 0; });
}

MatrixF MatrixF::operator+(const MatrixF& other) const {
    require_same_field(field_, other.field_);
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix shapes differ");
    MatrixF out(field_, rows_, cols_);
    for (std::size_t i = 0; i < codes_.size(); ++i)
        out.codes_[i] = field_.add_code(codes_[i], other.codes_[i]);
    return out;
}

MatrixF MatrixF::operator-(const MatrixF& other) const {
    require_same_field(field_, other.field_);
    if (rows_ != other.rows_ || cols_ != other.cols_) throw DomainError("matrix shapes differ");
    MatrixF out(field_, rows_, cols_);
    for (std::size_t i = 0; i < codes_.size(); ++i)
        out.codes_[i] = field_.sub_code(codes_[i], other.codes_[i]);
    return out;
}

MatrixF MatrixF::operator*(const MatrixF& other) const {
    require_same_field(field_, other.field_);
    if (cols_ != other.rows_) throw DomainError("matrix shapes do not allow multiplication");
    MatrixF out(field_, rows_, other.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const std::uint32_t a = codes_[index(r, k)];
            if (a == 0) continue;
            for (std::size_t c = 0; c < other.cols_; ++c) {
                const std::uint32_t prod = field_.mul_code(a, other.codes_[other.index(k, c)]);
                std::uint32_t& cell = out.codes_[out.index(r, c)];
                cell = field_.add_code(cell, prod);
            }
        }
    }
    return out;
}

MatrixF MatrixF::scaled(const FieldElement& a) const {
    if (a.field() != field_) throw DomainError("scalar field mismatch");
    MatrixF out(field_, rows_, cols_);
    for (std::size_t i = 0; i < codes_.size(); ++i)
        out.codes_[i] = field_.mul_code(a.code(), codes_[i]);
    return out;
}

MatrixF MatrixF::transpose() const {
    MatrixF out(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out.codes_[out.index(c, r)] = codes_[index(r, c)];
    return out;
}

MatrixF::Reduced MatrixF::rref() const {
    MatrixF m = *this;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t pr = r;
        while (pr < rows_ && m.codes_[m.index(pr, c)] == 0) ++pr;
        if (pr == rows_) continue;
        if (pr != r) {
            for (std::size_t k = 0; k < cols_; ++k)
                std::swap(m.codes_[m.index(pr, k)], m.codes_[m.index(r, k)]);
        }
        const std::uint32_t inv = field_.inv_code(m.codes_[m.index(r, c)]);
        if (inv != 1) {
            for (std::size_t k = c; k < cols_; ++k)
                m.codes_[m.index(r, k)] = field_.mul_code(inv, m.codes_[m.index(r, k)]);
        }
        for (std::size_t rr = 0; rr < rows_; ++rr) {
            if (rr == r) continue;
            const std::uint32_t factor = m.codes_[m.index(rr, c)];
            if (factor == 0) continue;
            for (std::size_t k = c; k < cols_; ++k) {
                const std::uint32_t sub = field_.mul_code(factor, m.codes_[m.index(r, k)]);
                m.codes_[m.index(rr, k)] = field_.sub_code(m.codes_[m.index(rr, k)], sub);
            }
        }
        pivots.push_back(c);
        ++r;
    }
    return Reduced{std::move(m), r, std::move(pivots)};
}

std::size_t MatrixF::rank() const { return rref().rank; }

MatrixF MatrixF::inverse() const {
    if (rows_ != cols_) throw DomainError("only square matrices can be inverted");
    Reduced red = hstack(*this, identity(field_, rows_)).rref();
    // The identity block keeps the augmented rank at rows_ regardless;
    // invertibility means the pivots stay inside the left block.
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i >= red.pivots.size() || red.pivots[i] != i)
            throw DomainError("matrix is singular");
    }
    return red.matrix.block(0, cols_, rows_, cols_);
}

MatrixF MatrixF::null_space() const {
    const Reduced red = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : red.pivots) is_pivot[c] = true;

    MatrixF basis(field_, cols_ - red.rank, cols_);
    std::size_t out_row = 0;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        basis.set_code(out_row, f, 1);
        for (std::size_t t = 0; t < red.rank; ++t) {
            const std::uint32_t coef = red.matrix.code_at(t, f);
            if (coef != 0) basis.set_code(out_row, red.pivots[t], field_.neg_code(coef));
        }
        ++out_row;
    }
    return basis.rref().matrix;
}

bool MatrixF::operator==(const MatrixF& other) const {
    return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
           codes_ == other.codes_;
}

MatrixF hstack(const MatrixF& left, const MatrixF& right) {
    require_same_field(left.field(), right.field());
    if (left.rows() != right.rows()) throw DomainError("row counts differ");
    MatrixF out(left.field(), left.rows(), left.cols() + right.cols());
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (std::size_t c = 0; c < left.cols(); ++c) out.set_code(r, c, left.code_at(r, c));
        for (std::size_t c = 0; c < right.cols(); ++c)
            out.set_code(r, left.cols() + c, right.code_at(r, c));
    }
    return out;
}

MatrixF vstack(const MatrixF& top, const MatrixF& bottom) {
    require_same_field(top.field(), bottom.field());
    if (top.cols() != bottom.cols()) throw DomainError("column counts differ");
    MatrixF out(top.field(), top.rows() + bottom.rows(), top.cols());
    for (std::size_t r = 0; r < top.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c) out.set_code(r, c, top.code_at(r, c));
    for (std::size_t r = 0; r < bottom.rows(); ++r)
        for (std::size_t c = 0; c < out.cols(); ++c)
            out.set_code(top.rows() + r, c, bottom.code_at(r, c));
    return out;
}

}  // namespace flagnet
