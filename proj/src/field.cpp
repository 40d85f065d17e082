#include "flagnet/field.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "flagnet/errors.hpp"
#include "flagnet/matrix.hpp"

namespace flagnet {

namespace {

constexpr std::uint32_t table_limit = 256;
constexpr std::uint32_t extension_order_limit = 1u << 24;

bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    if (p % 2 == 0) return p == 2;
    for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

/// Base-p digits of code, low-to-high, padded to length m.
std::vector<std::uint32_t> code_digits(std::uint32_t code, std::uint32_t p, std::uint32_t m) {
    std::vector<std::uint32_t> d(m, 0);
    for (std::uint32_t i = 0; i < m && code != 0; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

std::uint32_t digits_code(const std::vector<std::uint32_t>& d, std::uint32_t p) {
    std::uint64_t code = 0;
    std::uint64_t scale = 1;
    for (std::uint32_t c : d) {
        code += c * scale;
        scale *= p;
    }
    return static_cast<std::uint32_t>(code);
}

/// Remainder of a modulo the monic polynomial g, both low-to-high over F_p.
std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a,
                                    const std::vector<std::uint32_t>& g,
                                    std::uint32_t p) {
    const std::size_t dg = g.size() - 1;
    while (a.size() > dg) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - dg;
        if (lead != 0) {
            for (std::size_t i = 0; i <= dg; ++i) {
                const std::uint64_t sub = static_cast<std::uint64_t>(lead) * g[i] % p;
                std::uint32_t& coef = a[shift + i];
                coef = static_cast<std::uint32_t>((coef + p - sub) % p);
            }
        }
        a.pop_back();
    }
    return a;
}

bool is_zero_poly(const std::vector<std::uint32_t>& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
}

/// Tests a monic polynomial for irreducibility by trial division with
/// every monic polynomial of degree at most deg/2.
bool is_irreducible(const std::vector<std::uint32_t>& g, std::uint32_t p) {
    const std::uint32_t deg = static_cast<std::uint32_t>(g.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            std::vector<std::uint32_t> divisor = code_digits(static_cast<std::uint32_t>(v), p, d);
            divisor.push_back(1);
            if (is_zero_poly(poly_rem(g, divisor, p))) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> builtin_modulus(std::uint32_t p, std::uint32_t m,
                                           std::uint32_t order) {
    for (std::uint32_t v = 0; v < order; ++v) {
        std::vector<std::uint32_t> g = code_digits(v, p, m);
        g.push_back(1);
        if (is_irreducible(g, p)) return g;
    }
    throw DomainError("no irreducible modulus found");  // unreachable for prime p
}

}  // namespace

struct Field::Data {
    std::uint32_t p = 0;
    std::uint32_t m = 1;
    std::uint32_t order = 0;
    std::vector<std::uint32_t> modulus;  // empty iff m == 1

    // Dense tables, built for extension fields of order <= table_limit.
    bool has_tables = false;
    std::vector<std::uint16_t> add_tab;
    std::vector<std::uint16_t> mul_tab;
    std::vector<std::uint32_t> inv_tab;

    std::uint32_t generic_add(std::uint32_t a, std::uint32_t b) const {
        std::uint64_t out = 0;
        std::uint64_t scale = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            out += ((a % p) + (b % p)) % p * scale;
            a /= p;
            b /= p;
            scale *= p;
        }
        return static_cast<std::uint32_t>(out);
    }

    std::uint32_t generic_neg(std::uint32_t a) const {
        std::uint64_t out = 0;
        std::uint64_t scale = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            out += (p - a % p) % p * scale;
            a /= p;
            scale *= p;
        }
        return static_cast<std::uint32_t>(out);
    }

    std::uint32_t generic_mul(std::uint32_t a, std::uint32_t b) const {
        const std::vector<std::uint32_t> da = code_digits(a, p, m);
        const std::vector<std::uint32_t> db = code_digits(b, p, m);
        std::vector<std::uint32_t> prod(2 * m - 1, 0);
        for (std::uint32_t i = 0; i < m; ++i) {
            if (da[i] == 0) continue;
            for (std::uint32_t j = 0; j < m; ++j) {
                prod[i + j] = static_cast<std::uint32_t>(
                    (prod[i + j] + static_cast<std::uint64_t>(da[i]) * db[j]) % p);
            }
        }
        if (m > 1) prod = poly_rem(std::move(prod), modulus, p);
        prod.resize(m, 0);
        return digits_code(prod, p);
    }

    std::uint32_t pow_code(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t result = 1;
        std::uint32_t base = a;
        while (e != 0) {
            if (e & 1) result = generic_mul(result, base);
            base = generic_mul(base, base);
            e >>= 1;
        }
        return result;
    }
};

Field Field::gf(std::uint32_t p) {
    if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    auto data = std::make_shared<Data>();
    data->p = p;
    data->m = 1;
    data->order = p;
    return Field(std::move(data));
}

Field Field::gf(std::uint32_t p, std::uint32_t m) {
    if (m == 1) return gf(p);
    if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (m == 0) throw DomainError("extension degree must be positive");
    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < m; ++i) order *= p;
    if (order > table_limit) {
        throw DomainError("no built-in modulus for order " + std::to_string(order) +
                          "; pass the modulus explicitly");
    }
    return gf(p, m, builtin_modulus(p, m, static_cast<std::uint32_t>(order)));
}

Field Field::gf(std::uint32_t p, std::uint32_t m, const std::vector<std::uint32_t>& modulus) {
    if (m == 1) {
        // A degree-1 modulus is legal but redundant; the field is F_p.
        if (!modulus.empty() && (modulus.size() != 2 || modulus[1] != 1))
            throw DomainError("modulus for a prime field must be monic of degree 1");
        return gf(p);
    }
    if (!is_prime(p)) throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (m == 0) throw DomainError("extension degree must be positive");

    std::uint64_t order = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
        order *= p;
        if (order > extension_order_limit)
            throw DomainError("field order exceeds the supported limit 2^24");
    }
    if (modulus.size() != static_cast<std::size_t>(m) + 1)
        throw DomainError("modulus must have exactly degree + 1 coefficients");
    if (modulus.back() != 1) throw DomainError("modulus must be monic");
    for (std::uint32_t c : modulus) {
        if (c >= p) throw DomainError("modulus coefficient " + std::to_string(c) +
                                      " is not reduced modulo " + std::to_string(p));
    }
    if (!is_irreducible(modulus, p)) {
        throw DomainError("modulus is reducible over GF(" + std::to_string(p) + ")");
    }

    auto data = std::make_shared<Data>();
    data->p = p;
    data->m = m;
    data->order = static_cast<std::uint32_t>(order);
    data->modulus = modulus;

    if (order <= table_limit) {
        const std::uint32_t q = data->order;
        data->add_tab.resize(static_cast<std::size_t>(q) * q);
        data->mul_tab.resize(static_cast<std::size_t>(q) * q);
        data->inv_tab.assign(q, 0);
        for (std::uint32_t a = 0; a < q; ++a) {
            for (std::uint32_t b = 0; b < q; ++b) {
                data->add_tab[static_cast<std::size_t>(a) * q + b] =
                    static_cast<std::uint16_t>(data->generic_add(a, b));
                const std::uint32_t prod = data->generic_mul(a, b);
                data->mul_tab[static_cast<std::size_t>(a) * q + b] =
                    static_cast<std::uint16_t>(prod);
                if (prod == 1) data->inv_tab[a] = b;
            }
        }
        data->has_tables = true;
    }
    return Field(std::move(data));
}

Field Field::parse(std::string_view text) {
    const auto fail = [&](const std::string& why) -> ParseError {
        return ParseError("bad field \"" + std::string(text) + "\": " + why);
    };
    const auto parse_uint = [&](std::string_view tok) -> std::uint32_t {
        std::size_t a = tok.find_first_not_of(" \t");
        std::size_t b = tok.find_last_not_of(" \t");
        if (a == std::string_view::npos) throw fail("empty number");
        tok = tok.substr(a, b - a + 1);
        std::uint64_t v = 0;
        for (char ch : tok) {
            if (ch < '0' || ch > '9') throw fail("expected a number, got \"" + std::string(tok) + "\"");
            v = v * 10 + static_cast<std::uint64_t>(ch - '0');
            if (v > 0xffffffffull) throw fail("number out of range");
        }
        return static_cast<std::uint32_t>(v);
    };

    std::size_t a = text.find_first_not_of(" \t");
    std::size_t b = text.find_last_not_of(" \t");
    if (a == std::string_view::npos) throw fail("empty");
    std::string_view body = text.substr(a, b - a + 1);
    if (body.size() < 5 || body.substr(0, 2) != "GF" || body.back() != ')')
        throw fail("expected GF(...)");
    std::size_t open = body.find('(');
    if (open == std::string_view::npos) throw fail("expected GF(...)");
    for (std::size_t i = 2; i < open; ++i) {
        if (body[i] != ' ' && body[i] != '\t') throw fail("expected GF(...)");
    }
    std::string_view inner = body.substr(open + 1, body.size() - open - 2);

    std::string_view head = inner;
    std::string_view coeff_part;
    if (std::size_t semi = inner.find(';'); semi != std::string_view::npos) {
        head = inner.substr(0, semi);
        coeff_part = inner.substr(semi + 1);
    }

    std::uint32_t p = 0;
    std::uint32_t m = 1;
    if (std::size_t caret = head.find('^'); caret != std::string_view::npos) {
        p = parse_uint(head.substr(0, caret));
        m = parse_uint(head.substr(caret + 1));
    } else {
        p = parse_uint(head);
    }

    try {
        if (coeff_part.empty() && inner.find(';') == std::string_view::npos) {
            return m == 1 ? gf(p) : gf(p, m);
        }
        std::vector<std::uint32_t> coeffs;
        std::size_t pos = 0;
        while (pos <= coeff_part.size()) {
            std::size_t comma = coeff_part.find(',', pos);
            if (comma == std::string_view::npos) comma = coeff_part.size();
            coeffs.push_back(parse_uint(coeff_part.substr(pos, comma - pos)));
            pos = comma + 1;
        }
        return gf(p, m, coeffs);
    } catch (const DomainError& e) {
        throw fail(e.what());
    }
}

std::uint32_t Field::characteristic() const { return data_->p; }
std::uint32_t Field::degree() const { return data_->m; }
std::uint32_t Field::order() const { return data_->order; }
const std::vector<std::uint32_t>& Field::modulus() const { return data_->modulus; }

std::string Field::to_string() const {
    std::ostringstream out;
    out << "GF(" << data_->p;
    if (data_->m > 1) {
        out << '^' << data_->m << "; ";
        for (std::size_t i = 0; i < data_->modulus.size(); ++i) {
            if (i) out << ',';
            out << data_->modulus[i];
        }
    }
    out << ')';
    return out.str();
}

bool Field::operator==(const Field& other) const {
    if (data_ == other.data_) return true;
    return data_->p == other.data_->p && data_->m == other.data_->m &&
           data_->modulus == other.data_->modulus;
}

FieldElement Field::zero() const { return FieldElement(*this, 0); }
FieldElement Field::one() const { return FieldElement(*this, 1); }

FieldElement Field::element(std::uint32_t code) const { return FieldElement(*this, code); }

FieldElement Field::from_coeffs(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() > data_->m)
        throw DomainError("too many coefficients for degree " + std::to_string(data_->m));
    for (std::uint32_t c : coeffs) {
        if (c >= data_->p)
            throw DomainError("coefficient " + std::to_string(c) + " is not reduced modulo " +
                              std::to_string(data_->p));
    }
    return FieldElement(*this, digits_code(coeffs, data_->p));
}

std::uint32_t Field::add_code(std::uint32_t a, std::uint32_t b) const {
    const Data& d = *data_;
    if (d.m == 1) return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) + b) % d.p);
    if (d.has_tables) return d.add_tab[static_cast<std::size_t>(a) * d.order + b];
    return d.generic_add(a, b);
}

std::uint32_t Field::sub_code(std::uint32_t a, std::uint32_t b) const {
    return add_code(a, neg_code(b));
}

std::uint32_t Field::neg_code(std::uint32_t a) const {
    const Data& d = *data_;
    if (d.m == 1) return (d.p - a) % d.p;
    return d.generic_neg(a);
}

std::uint32_t Field::mul_code(std::uint32_t a, std::uint32_t b) const {
    const Data& d = *data_;
    if (d.m == 1) return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % d.p);
    if (d.has_tables) return d.mul_tab[static_cast<std::size_t>(a) * d.order + b];
    return d.generic_mul(a, b);
}

std::uint32_t Field::inv_code(std::uint32_t a) const {
    if (a == 0) throw DomainError("zero has no multiplicative inverse");
    const Data& d = *data_;
    if (d.m == 1) {
        // Extended Euclid on (a, p).
        std::int64_t r0 = d.p, r1 = a, s0 = 0, s1 = 1;
        while (r1 != 0) {
            const std::int64_t q = r0 / r1;
            r0 -= q * r1;
            std::swap(r0, r1);
            s0 -= q * s1;
            std::swap(s0, s1);
        }
        return static_cast<std::uint32_t>((s0 % d.p + d.p) % d.p);
    }
    if (d.has_tables) return d.inv_tab[a];
    return d.pow_code(a, static_cast<std::uint64_t>(d.order) - 2);
}

FieldElement::FieldElement(Field field, std::uint32_t code)
    : field_(std::move(field)), code_(code) {
    if (code_ >= field_.order())
        throw DomainError("element code " + std::to_string(code_) + " out of range for " +
                          field_.to_string());
}

std::vector<std::uint32_t> FieldElement::coeffs() const {
    return code_digits(code_, field_.characteristic(), field_.degree());
}

namespace {
void require_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.field() != b.field())
        throw DomainError("elements of " + a.field().to_string() + " and " +
                          b.field().to_string() + " cannot be combined");
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& other) const {
    require_same_field(*this, other);
    return FieldElement(field_, field_.add_code(code_, other.code_));
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
    require_same_field(*this, other);
    return FieldElement(field_, field_.sub_code(code_, other.code_));
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
    require_same_field(*this, other);
    return FieldElement(field_, field_.mul_code(code_, other.code_));
}

FieldElement FieldElement::operator-() const {
    return FieldElement(field_, field_.neg_code(code_));
}

FieldElement FieldElement::inverse() const {
    return FieldElement(field_, field_.inv_code(code_));
}

bool FieldElement::operator==(const FieldElement& other) const {
    return field_ == other.field_ && code_ == other.code_;
}

std::string FieldElement::to_string() const { return std::to_string(code_); }

MatrixF regular_representation(const FieldElement& f, const Field& base) {
    const Field& ext = f.field();
    if (base.degree() != 1)
        throw DomainError("representation base must be a prime field");
    if (base.characteristic() != ext.characteristic())
        throw DomainError("representation base has characteristic " +
                          std::to_string(base.characteristic()) + ", element lives over " +
                          std::to_string(ext.characteristic()));

    const std::uint32_t m = ext.degree();
    const std::uint32_t p = ext.characteristic();
    MatrixF rep(base, m, m);
    std::vector<std::uint32_t> cur = f.coeffs();
    for (std::uint32_t r = 0; r < m; ++r) {
        for (std::uint32_t c = 0; c < m; ++c) rep.set_code(r, c, cur[c]);
        if (r + 1 == m) break;
        // Multiply by x: shift up and reduce with x^m = -(low part of modulus).
        const std::uint32_t carry = cur[m - 1];
        for (std::uint32_t i = m - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (carry != 0 && m > 1) {
            const std::vector<std::uint32_t>& g = ext.modulus();
            for (std::uint32_t i = 0; i < m; ++i) {
                const std::uint64_t sub = static_cast<std::uint64_t>(carry) * g[i] % p;
                cur[i] = static_cast<std::uint32_t>((cur[i] + p - sub) % p);
            }
        }
    }
    return rep;
}

}  // namespace flagnet
