#include "flagnet/codes.hpp"

#include <algorithm>
#include <mutex>
#include <utility>

#include "flagnet/errors.hpp"
#include "flagnet/rng.hpp"

namespace flagnet {

namespace {

/// Advances a little-endian tuple over [0, q)^len; false once it wraps
/// back to all zeros.
bool next_tuple(std::vector<std::uint32_t>& t, std::uint32_t q) {
    for (std::uint32_t& c : t) {
        if (++c < q) return true;
        c = 0;
    }
    return false;
}

/// q^e if it stays within the enumeration budget, else ResourceError.
std::uint64_t checked_count(std::uint32_t q, std::size_t e, const std::string& what) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < e; ++i) {
        count *= q;
        if (count > enumeration_budget)
            throw ResourceError(what + " requires enumerating " + std::to_string(q) + "^" +
                                std::to_string(e) + " elements; the enumeration budget is 2^24 = " +
                                std::to_string(enumeration_budget));
    }
    return count;
}

MatrixF flatten_basis(const Field& field, std::size_t packed_dim,
                      const std::vector<UpperTriangular>& basis) {
    MatrixF m(field, basis.size(), packed_dim);
    for (std::size_t r = 0; r < basis.size(); ++r)
        for (std::size_t c = 0; c < packed_dim; ++c) m.set_code(r, c, basis[r].packed()[c]);
    return m;
}

}  // namespace

struct FlagRankCode::Cache {
    std::once_flag min_flag;
    std::optional<std::size_t> min_distance;
    std::once_flag dual_flag;
    std::optional<std::vector<UpperTriangular>> dual;
};

FlagRankCode::FlagRankCode(Field field, std::size_t n, std::vector<UpperTriangular> basis)
    : field_(std::move(field)), n_(n), basis_(std::move(basis)),
      cache_(std::make_shared<Cache>()) {
    if (n_ == 0) throw DomainError("matrix side must be positive");
    for (const UpperTriangular& b : basis_) {
        if (b.field() != field_ || b.n() != n_)
            throw DomainError("basis matrix has a different shape or field");
    }
    if (basis_.size() > packed_dim() ||
        flatten_basis(field_, packed_dim(), basis_).rank() != basis_.size())
        throw DomainError("basis matrices are linearly dependent");
}

UpperTriangular FlagRankCode::codeword(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() != basis_.size())
        throw DomainError("expected " + std::to_string(basis_.size()) + " coefficients");
    for (std::uint32_t a : coeffs) {
        if (a >= field_.order()) throw DomainError("coefficient code out of range");
    }
    std::vector<std::uint32_t> packed(packed_dim(), 0);
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
        const std::uint32_t a = coeffs[t];
        if (a == 0) continue;
        const std::vector<std::uint32_t>& b = basis_[t].packed();
        for (std::size_t i = 0; i < packed.size(); ++i)
            packed[i] = field_.add_code(packed[i], field_.mul_code(a, b[i]));
    }
    return UpperTriangular(field_, n_, std::move(packed));
}

const std::vector<UpperTriangular>& FlagRankCode::dual_basis_() const {
    std::call_once(cache_->dual_flag, [&] {
        const MatrixF kernel = flatten_basis(field_, packed_dim(), basis_).null_space();
        std::vector<UpperTriangular> dual;
        dual.reserve(kernel.rows());
        for (std::size_t r = 0; r < kernel.rows(); ++r) {
            std::vector<std::uint32_t> packed(packed_dim());
            for (std::size_t c = 0; c < packed.size(); ++c) packed[c] = kernel.code_at(r, c);
            dual.emplace_back(field_, n_, std::move(packed));
        }
        cache_->dual = std::move(dual);
    });
    return *cache_->dual;
}

bool FlagRankCode::contains(const UpperTriangular& a) const {
    if (a.field() != field_ || a.n() != n_)
        throw DomainError("matrix has a different shape or field");
    return syndrome(a, dual_basis_()).is_zero();
}

std::size_t FlagRankCode::min_distance() const {
    if (dim() == 0) throw DomainError("the zero code has no minimum distance");
    std::call_once(cache_->min_flag, [&] {
        checked_count(field_.order(), dim(), "minimum distance");
        std::size_t best = flag_rank(basis_.front());  // some nonzero codeword
        std::vector<std::uint32_t> coeffs(dim(), 0);
        while (next_tuple(coeffs, field_.order())) {
            const std::size_t w = flag_rank(codeword(coeffs));
            if (w < best) best = w;
        }
        cache_->min_distance = best;
    });
    return *cache_->min_distance;
}

FieldElement trace_pairing(const UpperTriangular& a, const UpperTriangular& b) {
    if (a.field() != b.field() || a.n() != b.n())
        throw DomainError("pairing requires matching shapes and fields");
    const Field& f = a.field();
    std::uint32_t acc = 0;
    for (std::size_t i = 0; i < a.packed().size(); ++i)
        acc = f.add_code(acc, f.mul_code(a.packed()[i], b.packed()[i]));
    return f.element(acc);
}

FlagRankCode dual_code(const FlagRankCode& code) {
    return FlagRankCode(code.field(), code.n(), code.dual_basis_());
}

VectorF syndrome(const UpperTriangular& a, const std::vector<UpperTriangular>& dual_basis) {
    VectorF out(a.field(), dual_basis.size());
    for (std::size_t t = 0; t < dual_basis.size(); ++t)
        out.set(t, trace_pairing(dual_basis[t], a));
    return out;
}

SyndromeTable::SyndromeTable(FlagRankCode code)
    : code_(std::move(code)), dual_basis_(dual_code(code_).basis()) {
    if (dual_basis_.empty()) return;  // full-space code: every matrix decodes to itself

    const Field& f = code_.field();
    const std::uint32_t q = f.order();
    const std::size_t packed_dim = code_.packed_dim();
    checked_count(q, packed_dim, "syndrome table construction");

    std::vector<const std::vector<std::uint32_t>*> dual_packed;
    dual_packed.reserve(dual_basis_.size());
    for (const UpperTriangular& d : dual_basis_) dual_packed.push_back(&d.packed());

    // One scan over the whole matrix space; each nonzero-syndrome
    // matrix is normalized onto its projective line and competes for
    // that line's leader slot.
    std::vector<std::uint32_t> packed(packed_dim, 0);
    std::vector<std::uint32_t> syn(dual_basis_.size());
    while (next_tuple(packed, q)) {
        for (std::size_t t = 0; t < dual_packed.size(); ++t) {
            std::uint32_t acc = 0;
            const std::vector<std::uint32_t>& d = *dual_packed[t];
            for (std::size_t i = 0; i < packed_dim; ++i)
                acc = f.add_code(acc, f.mul_code(d[i], packed[i]));
            syn[t] = acc;
        }
        std::size_t lead = 0;
        while (lead < syn.size() && syn[lead] == 0) ++lead;
        if (lead == syn.size()) continue;  // codeword

        const std::uint32_t inv = f.inv_code(syn[lead]);
        std::vector<std::uint32_t> key(syn.size());
        for (std::size_t t = 0; t < syn.size(); ++t) key[t] = f.mul_code(inv, syn[t]);
        std::vector<std::uint32_t> candidate(packed_dim);
        for (std::size_t i = 0; i < packed_dim; ++i) candidate[i] = f.mul_code(inv, packed[i]);
        const std::size_t weight = flag_rank(UpperTriangular(f, code_.n(), candidate));

        auto [it, inserted] = leaders_.try_emplace(std::move(key), Leader{candidate, weight});
        if (!inserted && (weight < it->second.weight ||
                          (weight == it->second.weight && candidate < it->second.packed))) {
            it->second = Leader{std::move(candidate), weight};
        }
    }

    // Every projective line of syndromes must have been hit.
    std::uint64_t lines = 0;
    std::uint64_t power = 1;
    for (std::size_t i = 0; i < dual_basis_.size(); ++i) power *= q;
    lines = (power - 1) / (q - 1);
    if (leaders_.size() != lines)
        throw Error("syndrome table covers " + std::to_string(leaders_.size()) +
                    " lines, expected " + std::to_string(lines));
}

std::size_t SyndromeTable::covering_radius() const {
    std::size_t r = 0;
    for (const auto& [key, leader] : leaders_) r = std::max(r, leader.weight);
    return r;
}

UpperTriangular SyndromeTable::decode(const UpperTriangular& received) const {
    if (received.field() != code_.field() || received.n() != code_.n())
        throw DomainError("matrix has a different shape or field");
    if (dual_basis_.empty()) return received;

    const Field& f = code_.field();
    const VectorF syn = syndrome(received, dual_basis_);
    std::size_t lead = 0;
    while (lead < syn.size() && syn.code_at(lead) == 0) ++lead;
    if (lead == syn.size()) return received;

    const std::uint32_t a = syn.code_at(lead);
    const std::uint32_t inv = f.inv_code(a);
    std::vector<std::uint32_t> key(syn.size());
    for (std::size_t t = 0; t < syn.size(); ++t) key[t] = f.mul_code(inv, syn.code_at(t));
    const auto it = leaders_.find(key);
    if (it == leaders_.end()) throw Error("syndrome line missing from the table");

    std::vector<std::uint32_t> out(received.packed());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = f.sub_code(out[i], f.mul_code(a, it->second.packed[i]));
    return UpperTriangular(f, code_.n(), std::move(out));
}

FlagRankCode build_max_distance_code(const Field& field, std::size_t n) {
    if (n == 0) throw DomainError("matrix side must be positive");
    const std::size_t k = (n + 1) / 2;
    const std::uint32_t q = field.order();

    // First monic irreducible of degree k over the field, scanning
    // non-leading coefficient tuples in ascending little-endian order.
    const auto poly_rem_codes = [&](std::vector<std::uint32_t> a,
                                    const std::vector<std::uint32_t>& g) {
        const std::size_t dg = g.size() - 1;
        while (a.size() > dg) {
            const std::uint32_t lead = a.back();
            const std::size_t shift = a.size() - 1 - dg;
            if (lead != 0) {
                for (std::size_t i = 0; i <= dg; ++i)
                    a[shift + i] = field.sub_code(a[shift + i], field.mul_code(lead, g[i]));
            }
            a.pop_back();
        }
        return a;
    };
    const auto is_zero = [](const std::vector<std::uint32_t>& a) {
        return std::all_of(a.begin(), a.end(), [](std::uint32_t c) { return c == 0; });
    };
    const auto irreducible = [&](const std::vector<std::uint32_t>& g) {
        const std::size_t deg = g.size() - 1;
        for (std::size_t d = 1; 2 * d <= deg; ++d) {
            std::vector<std::uint32_t> divisor(d, 0);
            divisor.push_back(1);
            while (true) {
                if (is_zero(poly_rem_codes(g, divisor))) return false;
                std::vector<std::uint32_t> low(divisor.begin(), divisor.end() - 1);
                if (!next_tuple(low, q)) break;
                std::copy(low.begin(), low.end(), divisor.begin());
            }
        }
        return true;
    };

    std::vector<std::uint32_t> g;
    {
        std::vector<std::uint32_t> low(k, 0);
        while (true) {
            std::vector<std::uint32_t> candidate = low;
            candidate.push_back(1);
            if (irreducible(candidate)) {
                g = std::move(candidate);
                break;
            }
            if (!next_tuple(low, q)) throw Error("no irreducible polynomial found");
        }
    }

    // Powers of the extension generator y in the power basis: rows of
    // the multiplication matrices. powers[s] holds y^s mod g.
    std::vector<std::vector<std::uint32_t>> powers(2 * k - 1,
                                                   std::vector<std::uint32_t>(k, 0));
    powers[0][0] = 1;
    for (std::size_t s = 1; s + 1 <= 2 * k - 1; ++s) {
        const std::vector<std::uint32_t>& prev = powers[s - 1];
        std::vector<std::uint32_t>& cur = powers[s];
        const std::uint32_t carry = prev[k - 1];
        for (std::size_t i = k - 1; i > 0; --i) cur[i] = prev[i - 1];
        cur[0] = 0;
        if (carry != 0) {
            for (std::size_t i = 0; i < k; ++i)
                cur[i] = field.sub_code(cur[i], field.mul_code(carry, g[i]));
        }
    }

    // Basis element t is multiplication by y^t, placed in the top-right
    // k x k corner block (rows 0..k-1, columns n-k..n-1).
    std::vector<UpperTriangular> basis;
    basis.reserve(k);
    for (std::size_t t = 0; t < k; ++t) {
        UpperTriangular delta(field, n);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < k; ++c) delta.set_code(r, n - k + c, powers[r + t][c]);
        basis.push_back(std::move(delta));
    }
    return FlagRankCode(field, n, std::move(basis));
}

FlagRankCode random_code(const Field& field, std::size_t n, std::size_t dim,
                         std::uint64_t seed) {
    if (n == 0) throw DomainError("matrix side must be positive");
    const std::size_t packed_dim = n * (n + 1) / 2;
    if (dim > packed_dim)
        throw DomainError("dimension " + std::to_string(dim) + " exceeds the matrix space (" +
                          std::to_string(packed_dim) + ")");

    Rng rng(seed);
    std::vector<UpperTriangular> basis;
    MatrixF flat(field, 0, packed_dim);
    std::size_t attempts = 0;
    while (basis.size() < dim) {
        if (++attempts > 1000 * dim + 1000) throw Error("random basis generation stalled");
        std::vector<std::uint32_t> packed(packed_dim);
        for (std::uint32_t& c : packed) c = rng.below(field.order());
        UpperTriangular candidate(field, n, packed);
        MatrixF row(field, 1, packed_dim);
        for (std::size_t c = 0; c < packed_dim; ++c) row.set_code(0, c, packed[c]);
        MatrixF extended = vstack(flat, row);
        if (extended.rank() != basis.size() + 1) continue;
        flat = std::move(extended);
        basis.push_back(std::move(candidate));
    }
    return FlagRankCode(field, n, std::move(basis));
}

NearestResult exhaustive_nearest(const FlagRankCode& code, const UpperTriangular& a) {
    if (a.field() != code.field() || a.n() != code.n())
        throw DomainError("matrix has a different shape or field");
    checked_count(code.field().order(), code.dim(), "nearest-codeword search");

    UpperTriangular best = code.codeword(std::vector<std::uint32_t>(code.dim(), 0));
    std::size_t best_dist = flag_rank(a - best);
    std::vector<std::uint32_t> coeffs(code.dim(), 0);
    while (next_tuple(coeffs, code.field().order())) {
        UpperTriangular cw = code.codeword(coeffs);
        const std::size_t dist = flag_rank(a - cw);
        if (dist < best_dist || (dist == best_dist && cw < best)) {
            best = std::move(cw);
            best_dist = dist;
        }
    }
    return NearestResult{std::move(best), best_dist};
}

}  // namespace flagnet
