#include "doctest.h"

#include <cstdint>
#include <vector>

#include "flagnet/errors.hpp"
#include "flagnet/field.hpp"
#include "flagnet/matrix.hpp"

using namespace flagnet;

TEST_CASE("prime field arithmetic facts") {
    const Field f3 = Field::gf(3);
    CHECK(f3.order() == 3);
    CHECK(f3.characteristic() == 3);
    CHECK(f3.degree() == 1);
    CHECK(f3.add_code(2, 2) == 1);
    CHECK(f3.mul_code(2, 2) == 1);
    CHECK(f3.neg_code(1) == 2);
    CHECK(f3.sub_code(0, 2) == 1);
    CHECK(f3.inv_code(2) == 2);

    const Field f7 = Field::gf(7);
    CHECK(f7.inv_code(3) == 5);  // 3 * 5 = 15 = 1 mod 7
    CHECK(f7.mul_code(6, 6) == 1);
}

TEST_CASE("built-in moduli are the first irreducibles in encoding order") {
    CHECK(Field::gf(2, 2).modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(Field::gf(2, 3).modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(Field::gf(3, 2).modulus() == std::vector<std::uint32_t>{1, 0, 1});
    CHECK(Field::gf(2, 4).modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
}

TEST_CASE("GF(4) multiplication table") {
    // Codes: 0, 1, 2 = x, 3 = x + 1 with x^2 = x + 1.
    const Field f4 = Field::gf(2, 2);
    CHECK(f4.mul_code(2, 2) == 3);
    CHECK(f4.mul_code(2, 3) == 1);
    CHECK(f4.mul_code(3, 3) == 2);
    CHECK(f4.add_code(2, 3) == 1);
    CHECK(f4.inv_code(2) == 3);
    CHECK(f4.inv_code(3) == 2);
}

TEST_CASE("field axioms hold exhaustively at small orders") {
    for (const Field& f : {Field::gf(2), Field::gf(5), Field::gf(2, 2), Field::gf(3, 2),
                           Field::gf(2, 3), Field::gf(2, 4)}) {
        const std::uint32_t q = f.order();
        for (std::uint32_t a = 0; a < q; ++a) {
            CHECK(f.add_code(a, 0) == a);
            CHECK(f.mul_code(a, 1) == a);
            CHECK(f.add_code(a, f.neg_code(a)) == 0);
            if (a != 0) CHECK(f.mul_code(a, f.inv_code(a)) == 1);
            for (std::uint32_t b = 0; b < q; ++b) {
                CHECK(f.add_code(a, b) == f.add_code(b, a));
                CHECK(f.mul_code(a, b) == f.mul_code(b, a));
                for (std::uint32_t c = 0; c < q; ++c) {
                    CHECK(f.add_code(f.add_code(a, b), c) == f.add_code(a, f.add_code(b, c)));
                    CHECK(f.mul_code(f.mul_code(a, b), c) == f.mul_code(a, f.mul_code(b, c)));
                    CHECK(f.mul_code(a, f.add_code(b, c)) ==
                          f.add_code(f.mul_code(a, b), f.mul_code(a, c)));
                }
            }
        }
    }
}

TEST_CASE("large prime field inverse") {
    const Field f = Field::gf(104729);
    for (std::uint32_t a : {1u, 2u, 104728u, 54321u}) {
        CHECK(f.mul_code(a, f.inv_code(a)) == 1);
    }
}

TEST_CASE("element coefficient round trips") {
    const Field f8 = Field::gf(2, 3);
    const FieldElement e = f8.from_coeffs({1, 1});
    CHECK(e.code() == 3);
    CHECK(e.coeffs() == std::vector<std::uint32_t>{1, 1, 0});
    CHECK(f8.from_coeffs({0, 0, 1}).code() == 4);

    const Field f9 = Field::gf(3, 2);
    CHECK(f9.from_coeffs({2, 1}).code() == 5);
    CHECK(f9.element(5).coeffs() == std::vector<std::uint32_t>{2, 1});
}

TEST_CASE("element operators") {
    const Field f9 = Field::gf(3, 2);
    const FieldElement x = f9.element(3);
    const FieldElement y = f9.element(4);
    CHECK((x + y).code() == f9.add_code(3, 4));
    CHECK((x - y).code() == f9.sub_code(3, 4));
    CHECK((x * y).code() == f9.mul_code(3, 4));
    CHECK((-x).code() == f9.neg_code(3));
    CHECK((x * x.inverse()).code() == 1);
    CHECK(x != y);
    CHECK(x == f9.element(3));
}

TEST_CASE("parse and to_string round trip") {
    for (const Field& f : {Field::gf(2), Field::gf(13), Field::gf(2, 2), Field::gf(3, 2),
                           Field::gf(2, 4), Field::gf(2, 3, {1, 0, 1, 1})}) {
        CHECK(Field::parse(f.to_string()) == f);
    }
    CHECK(Field::parse("GF(7)") == Field::gf(7));
    CHECK(Field::parse("GF(2^3; 1,1,0,1)") == Field::gf(2, 3));
    CHECK(Field::parse("GF(2^3)") == Field::gf(2, 3));  // built-in shorthand
    CHECK(Field::parse(" GF( 3 ^ 2 ; 1 , 0 , 1 ) ") == Field::gf(3, 2));
    CHECK(Field::gf(3).to_string() == "GF(3)");
    CHECK(Field::gf(2, 2).to_string() == "GF(2^2; 1,1,1)");
}

TEST_CASE("parse rejects malformed field text") {
    CHECK_THROWS_AS(Field::parse("GF(6)"), ParseError);
    CHECK_THROWS_AS(Field::parse("GF(4)"), ParseError);  // 4 is not prime; needs 2^2
    CHECK_THROWS_AS(Field::parse("GF()"), ParseError);
    CHECK_THROWS_AS(Field::parse("GF(2^2; 1,0,1)"), ParseError);  // reducible
    CHECK_THROWS_AS(Field::parse("gf(3)"), ParseError);
    CHECK_THROWS_AS(Field::parse("GF(3) trailing"), ParseError);
}

TEST_CASE("field construction rejections") {
    CHECK_THROWS_AS(Field::gf(4), DomainError);
    CHECK_THROWS_AS(Field::gf(2, 0), DomainError);
    CHECK_THROWS_AS(Field::gf(2, 9), DomainError);  // 512 exceeds built-in moduli
    CHECK_THROWS_AS(Field::gf(2, 2, {1, 0, 1}), DomainError);       // (x+1)^2
    CHECK_THROWS_AS(Field::gf(2, 2, {1, 1}), DomainError);          // wrong degree
    CHECK_THROWS_AS(Field::gf(3, 2, {1, 0, 2}), DomainError);       // not monic
    CHECK_THROWS_AS(Field::gf(3, 2, {4, 0, 1}), DomainError);       // coefficient not reduced
    CHECK_THROWS_AS(Field::gf(3).element(3), DomainError);
    CHECK_THROWS_AS(Field::gf(3).inv_code(0), DomainError);
}

TEST_CASE("equality distinguishes moduli") {
    CHECK(Field::gf(3) == Field::gf(3));
    CHECK(Field::gf(2, 2) != Field::gf(2, 3));
    CHECK(Field::gf(2, 3, {1, 1, 0, 1}) == Field::gf(2, 3));
    CHECK(Field::gf(2, 3, {1, 0, 1, 1}) != Field::gf(2, 3));
    CHECK(Field::gf(2) != Field::gf(3));
}

TEST_CASE("mixed-field element operations are rejected") {
    const FieldElement a = Field::gf(2).one();
    const FieldElement b = Field::gf(3).one();
    CHECK_THROWS_AS(a + b, DomainError);
    CHECK_THROWS_AS(a * b, DomainError);
}

TEST_CASE("multiplication matrix of the generator") {
    const Field f2 = Field::gf(2);
    const Field f4 = Field::gf(2, 2);
    const MatrixF rho = regular_representation(f4.element(2), f2);
    REQUIRE(rho.rows() == 2);
    REQUIRE(rho.cols() == 2);
    CHECK(rho.code_at(0, 0) == 0);
    CHECK(rho.code_at(0, 1) == 1);
    CHECK(rho.code_at(1, 0) == 1);
    CHECK(rho.code_at(1, 1) == 1);
}

TEST_CASE("multiplication matrices form a ring homomorphism") {
    const Field f3 = Field::gf(3);
    const Field f9 = Field::gf(3, 2);
    for (std::uint32_t a = 0; a < 9; ++a) {
        const MatrixF ra = regular_representation(f9.element(a), f3);
        // Nonzero elements act invertibly.
        CHECK(ra.rank() == (a == 0 ? 0 : 2));
        for (std::uint32_t b = 0; b < 9; ++b) {
            const MatrixF rb = regular_representation(f9.element(b), f3);
            CHECK(regular_representation(f9.element(a) + f9.element(b), f3) == ra + rb);
            CHECK(regular_representation(f9.element(a) * f9.element(b), f3) == ra * rb);
        }
    }
}

TEST_CASE("representation base must be the prime field") {
    const Field f4 = Field::gf(2, 2);
    CHECK_THROWS_AS(regular_representation(f4.element(2), f4), DomainError);
    CHECK_THROWS_AS(regular_representation(f4.element(2), Field::gf(3)), DomainError);
}
