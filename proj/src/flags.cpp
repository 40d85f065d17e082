#include "flagnet/flags.hpp"

#include <utility>

#include "flagnet/errors.hpp"

namespace flagnet {

UpperTriangular::UpperTriangular(Field field, std::size_t n)
    : field_(std::move(field)), n_(n), packed_(n * (n + 1) / 2, 0) {
    if (n_ == 0) throw DomainError("triangular size must be positive");
}

UpperTriangular::UpperTriangular(Field field, std::size_t n, std::vector<std::uint32_t> packed)
    : field_(std::move(field)), n_(n), packed_(std::move(packed)) {
    if (n_ == 0) throw DomainError("triangular size must be positive");
    if (packed_.size() != n * (n + 1) / 2)
        throw DomainError("packed data has " + std::to_string(packed_.size()) +
                          " entries, expected " + std::to_string(n * (n + 1) / 2));
    for (std::uint32_t c : packed_) {
        if (c >= field_.order())
            throw DomainError("entry code " + std::to_string(c) + " out of range for " +
                              field_.to_string());
    }
}

std::uint32_t UpperTriangular::code_at(std::size_t r, std::size_t c) const {
    if (r >= n_ || c >= n_) throw DomainError("triangular index out of range");
    if (r > c) return 0;
    return packed_[index(r, c)];
}

FieldElement UpperTriangular::at(std::size_t r, std::size_t c) const {
    return field_.element(code_at(r, c));
}

void UpperTriangular::set_code(std::size_t r, std::size_t c, std::uint32_t code) {
    if (r >= n_ || c >= n_) throw DomainError("triangular index out of range");
    if (r > c) throw DomainError("entries below the diagonal are structurally zero");
    if (code >= field_.order())
        throw DomainError("entry code " + std::to_string(code) + " out of range for " +
                          field_.to_string());
    packed_[index(r, c)] = code;
}

void UpperTriangular::set(std::size_t r, std::size_t c, const FieldElement& value) {
    if (value.field() != field_) throw DomainError("entry field mismatch");
    set_code(r, c, value.code());
}

MatrixF UpperTriangular::corner_slice(std::size_t i) const {
    if (i < 1 || i > n_) throw DomainError("corner slice index out of range");
    MatrixF out(field_, i, n_ + 1 - i);
    for (std::size_t r = 0; r < i; ++r)
        for (std::size_t c = 0; c + i <= n_; ++c)
            out.set_code(r, c, packed_[index(r, i - 1 + c)]);
    return out;
}

bool UpperTriangular::is_zero() const {
    for (std::uint32_t c : packed_) {
        if (c != 0) return false;
    }
    return true;
}

namespace {
void require_compatible(const UpperTriangular& a, const UpperTriangular& b) {
    if (a.field() != b.field() || a.n() != b.n())
        throw DomainError("triangular matrices have different shape or field");
}
}  // namespace

UpperTriangular UpperTriangular::operator+(const UpperTriangular& other) const {
    require_compatible(*this, other);
    UpperTriangular out(field_, n_);
    for (std::size_t i = 0; i < packed_.size(); ++i)
        out.packed_[i] = field_.add_code(packed_[i], other.packed_[i]);
    return out;
}

UpperTriangular UpperTriangular::operator-(const UpperTriangular& other) const {
    require_compatible(*this, other);
    UpperTriangular out(field_, n_);
    for (std::size_t i = 0; i < packed_.size(); ++i)
        out.packed_[i] = field_.sub_code(packed_[i], other.packed_[i]);
    return out;
}

UpperTriangular UpperTriangular::operator-() const {
    UpperTriangular out(field_, n_);
    for (std::size_t i = 0; i < packed_.size(); ++i) out.packed_[i] = field_.neg_code(packed_[i]);
    return out;
}

UpperTriangular UpperTriangular::scaled(const FieldElement& a) const {
    if (a.field() != field_) throw DomainError("scalar field mismatch");
    UpperTriangular out(field_, n_);
    for (std::size_t i = 0; i < packed_.size(); ++i)
        out.packed_[i] = field_.mul_code(a.code(), packed_[i]);
    return out;
}

bool UpperTriangular::operator==(const UpperTriangular& other) const {
    return field_ == other.field_ && n_ == other.n_ && packed_ == other.packed_;
}

bool UpperTriangular::operator<(const UpperTriangular& other) const {
    require_compatible(*this, other);
    return packed_ < other.packed_;
}

DegenerateFlag::DegenerateFlag(std::vector<Subspace> components)
    : components_(std::move(components)) {
    if (!is_degenerate_flag(components_))
        throw ValidationError("components do not form a degenerate flag");
}

FullFlag::FullFlag(std::vector<Subspace> components) : components_(std::move(components)) {
    if (components_.empty()) throw ValidationError("a flag needs at least one component");
    const Field& f = components_.front().field();
    const std::size_t ambient = components_.size();
    for (std::size_t i = 0; i < components_.size(); ++i) {
        if (components_[i].field() != f)
            throw DomainError("flag components live over different fields");
        if (components_[i].ambient_dim() != ambient)
            throw DomainError("flag components live in different ambient spaces");
        if (components_[i].dim() != i + 1)
            throw ValidationError("component " + std::to_string(i + 1) + " has dimension " +
                                  std::to_string(components_[i].dim()) + ", expected " +
                                  std::to_string(i + 1));
        if (i + 1 < components_.size() &&
            subspace_sum(components_[i], components_[i + 1]).dim() != i + 2)
            throw ValidationError("component " + std::to_string(i + 1) +
                                  " is not contained in its successor");
    }
}

VectorF project(const VectorF& v, std::size_t j, std::size_t i) {
    if (j < 1 || j > i || i > v.size()) throw DomainError("projection levels out of range");
    VectorF out = v;
    for (std::size_t k = j; k < i; ++k) out.set_code(k, 0);
    return out;
}

Subspace project(const Subspace& u, std::size_t j, std::size_t i) {
    MatrixF rows(u.field(), u.dim(), u.ambient_dim());
    for (std::size_t r = 0; r < u.dim(); ++r) rows.set_row(r, project(u.basis().row(r), j, i));
    return Subspace::from_rows(rows);
}

bool is_degenerate_flag(const std::vector<Subspace>& components) {
    if (components.empty()) return false;
    const Field& f = components.front().field();
    const std::size_t ambient = components.size() + 1;
    for (const Subspace& c : components) {
        if (c.field() != f) throw DomainError("flag components live over different fields");
        if (c.ambient_dim() != components.front().ambient_dim())
            throw DomainError("flag components live in different ambient spaces");
    }
    if (components.front().ambient_dim() != ambient) return false;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (components[i].dim() != i + 1) return false;
    }
    for (std::size_t i = 0; i + 1 < components.size(); ++i) {
        const Subspace image = project(components[i], i + 1, i + 2);
        if (subspace_sum(image, components[i + 1]).dim() != components[i + 1].dim()) return false;
    }
    return true;
}

DegenerateFlag flag_from_matrix(const UpperTriangular& delta) {
    const std::size_t n = delta.n();
    std::vector<Subspace> components;
    components.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) {
        components.push_back(Subspace::from_rows(
            hstack(MatrixF::identity(delta.field(), i), delta.corner_slice(i))));
    }
    return DegenerateFlag(std::move(components));
}

UpperTriangular matrix_from_flag(const DegenerateFlag& flag) {
    const std::size_t n = flag.n();
    const Field& f = flag.field();
    for (std::size_t i = 0; i < n; ++i) {
        if (!is_big_cell(flag.component(i)))
            throw CellError("flag component " + std::to_string(i + 1) +
                            " lies outside the big cell");
    }

    UpperTriangular delta(f, n);

    // Component 1: normalize a vector with nonzero leading coordinate.
    {
        const MatrixF& basis = flag.component(0).basis();
        const std::uint32_t inv = f.inv_code(basis.code_at(0, 0));
        for (std::size_t c = 1; c <= n; ++c)
            delta.set_code(0, c - 1, f.mul_code(inv, basis.code_at(0, c)));
    }

    // Component i: strip the already-known contribution of the first
    // i-1 coordinates, then normalize by the i-th.
    for (std::size_t i = 2; i <= n; ++i) {
        const MatrixF& basis = flag.component(i - 1).basis();
        std::size_t wr = 0;
        while (wr < basis.rows() && basis.code_at(wr, i - 1) == 0) ++wr;
        if (wr == basis.rows())
            throw CellError("flag component " + std::to_string(i) +
                            " lies outside the big cell");

        std::vector<std::uint32_t> u(n + 1 - i);
        for (std::size_t c = 0; c < u.size(); ++c) u[c] = basis.code_at(wr, i + c);
        for (std::size_t j = 1; j < i; ++j) {
            const std::uint32_t coef = basis.code_at(wr, j - 1);
            if (coef == 0) continue;
            for (std::size_t c = 0; c < u.size(); ++c) {
                const std::uint32_t sub = f.mul_code(coef, delta.code_at(j - 1, i - 1 + c));
                u[c] = f.sub_code(u[c], sub);
            }
        }
        const std::uint32_t inv = f.inv_code(basis.code_at(wr, i - 1));
        for (std::size_t c = 0; c < u.size(); ++c)
            delta.set_code(i - 1, i - 1 + c, f.mul_code(inv, u[c]));
    }
    return delta;
}

std::size_t flag_rank(const UpperTriangular& delta) {
    std::size_t total = 0;
    for (std::size_t i = 1; i <= delta.n(); ++i) total += delta.corner_slice(i).rank();
    return total;
}

namespace {
std::size_t component_distance_sum(const std::vector<Subspace>& a,
                                   const std::vector<Subspace>& b) {
    if (a.size() != b.size()) throw DomainError("flags have different lengths");
    std::size_t total = 0;
    for (std::size_t i = 0; i < a.size(); ++i) total += grassmann_distance(a[i], b[i]);
    return total;
}
}  // namespace

std::size_t flag_distance(const DegenerateFlag& a, const DegenerateFlag& b) {
    return component_distance_sum(a.components(), b.components());
}

std::size_t flag_distance(const FullFlag& a, const FullFlag& b) {
    return component_distance_sum(a.components(), b.components());
}

std::size_t d_max(std::size_t ambient_dim) {
    if (ambient_dim < 2) throw DomainError("ambient dimension must be at least 2");
    const std::size_t k = ambient_dim / 2;
    return ambient_dim % 2 == 0 ? k * k : k * (k + 1);
}

MatrixF to_unitriangular(const UpperTriangular& delta) {
    const std::size_t n = delta.n();
    MatrixF m = MatrixF::identity(delta.field(), n + 1);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) m.set_code(r, c + 1, delta.code_at(r, c));
    return m;
}

UpperTriangular from_unitriangular(const MatrixF& m) {
    if (m.rows() != m.cols() || m.rows() < 2)
        throw DomainError("expected a square matrix of size at least 2");
    const std::size_t n = m.rows() - 1;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (m.code_at(r, r) != 1) throw DomainError("matrix is not unitriangular");
        for (std::size_t c = 0; c < r; ++c)
            if (m.code_at(r, c) != 0) throw DomainError("matrix is not unitriangular");
    }
    UpperTriangular delta(m.field(), n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) delta.set_code(r, c, m.code_at(r, c + 1));
    return delta;
}

FullFlag full_flag_from_matrix(const UpperTriangular& delta) {
    const MatrixF m = to_unitriangular(delta);
    std::vector<Subspace> components;
    components.reserve(m.rows());
    for (std::size_t i = 1; i <= m.rows(); ++i)
        components.push_back(Subspace::from_rows(m.block(0, 0, i, m.cols())));
    return FullFlag(std::move(components));
}

}  // namespace flagnet
