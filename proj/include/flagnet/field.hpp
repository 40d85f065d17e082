#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace flagnet {

class FieldElement;
class MatrixF;

/// A finite field F_{p^m}. Extension fields (m > 1) are represented as
/// F_p[x]/(g) for a monic irreducible g of degree m; elements are reduced
/// polynomials in the power basis 1, x, ..., x^{m-1}.
///
/// Elements are identified by their canonical integer code
/// sum_i c_i p^i where (c_0, ..., c_{m-1}) are the power-basis
/// coefficients (for m == 1 the code is just the residue). Codes are
/// dense in [0, order()).
///
/// Field is a cheap shared handle; copies refer to the same tables.
/// Two fields compare equal iff p, m and the modulus coincide.
class Field {
public:
    /// Prime field F_p. Rejects non-prime p.
    static Field gf(std::uint32_t p);

    /// F_{p^m} with the built-in modulus: the first monic irreducible
    /// of degree m in ascending order of the integer encoding
    /// sum_i c_i p^i of the non-leading coefficients.
    static Field gf(std::uint32_t p, std::uint32_t m);

    /// F_{p^m} with an explicit modulus, coefficients low-to-high of
    /// length m + 1. Rejects non-monic, wrong-degree, out-of-range
    /// coefficients and reducible polynomials.
    static Field gf(std::uint32_t p, std::uint32_t m, const std::vector<std::uint32_t>& modulus);

    /// Parses "GF(p)" or "GF(p^m; c0,c1,...,cm)". Whitespace between
    /// tokens is ignored.
    static Field parse(std::string_view text);

    std::uint32_t characteristic() const;
    std::uint32_t degree() const;
    std::uint32_t order() const;

    /// Modulus coefficients, low-to-high (length degree() + 1).
    /// Empty for prime fields.
    const std::vector<std::uint32_t>& modulus() const;

    /// Renders the field in the same syntax parse() accepts.
    std::string to_string() const;

    bool operator==(const Field& other) const;
    bool operator!=(const Field& other) const { return !(*this == other); }

    FieldElement zero() const;
    FieldElement one() const;

    /// Element with the given canonical code. Rejects code >= order().
    FieldElement element(std::uint32_t code) const;

    /// Element with the given power-basis coefficients (low-to-high,
    /// at most degree() of them; each < characteristic()).
    FieldElement from_coeffs(const std::vector<std::uint32_t>& coeffs) const;

    // Arithmetic on canonical codes. All arguments must be < order().
    std::uint32_t add_code(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub_code(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg_code(std::uint32_t a) const;
    std::uint32_t mul_code(std::uint32_t a, std::uint32_t b) const;
    /// Rejects a == 0.
    std::uint32_t inv_code(std::uint32_t a) const;

private:
    struct Data;
    explicit Field(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

    std::shared_ptr<const Data> data_;
};

/// An element of a finite field, always stored reduced.
class FieldElement {
public:
    FieldElement(Field field, std::uint32_t code);

    const Field& field() const { return field_; }
    std::uint32_t code() const { return code_; }

    /// Power-basis coefficients, low-to-high, length degree().
    std::vector<std::uint32_t> coeffs() const;

    bool is_zero() const { return code_ == 0; }

    FieldElement operator+(const FieldElement& other) const;
    FieldElement operator-(const FieldElement& other) const;
    FieldElement operator*(const FieldElement& other) const;
    FieldElement operator-() const;

    /// Multiplicative inverse. Rejects zero.
    FieldElement inverse() const;

    bool operator==(const FieldElement& other) const;
    bool operator!=(const FieldElement& other) const { return !(*this == other); }

    /// The canonical code rendered as a decimal integer.
    std::string to_string() const;

private:
    Field field_;
    std::uint32_t code_;
};

/// Matrix of f acting on base^m by multiplication, in the power basis:
/// row r holds the coefficients of x^r * f. base must be the prime
/// field of f's field; the matrix is degree() x degree() over base.
MatrixF regular_representation(const FieldElement& f, const Field& base);

}  // namespace flagnet
