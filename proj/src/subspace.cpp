#include "qfc/subspace.hpp"

#include <string>

namespace qfc {
namespace {

void check_vector(const Field& f, std::span<const felem> v, unsigned ambient) {
    if (v.size() != ambient) throw InvalidArgumentError("vector has wrong length");
    for (felem x : v)
        if (!f.in_base_field(x))
            throw InvalidArgumentError("vector entry is not a base-field element");
}

void check_same_space(const Subspace& a, const Subspace& b) {
    if (a.ambient() != b.ambient())
        throw InvalidArgumentError("subspaces have different ambient dimensions");
    if (&a.scalar_field() != &b.scalar_field() && a.scalar_field() != b.scalar_field())
        throw SpecMismatchError("subspaces belong to different fields");
}

}  // namespace

std::uint64_t gaussian_binomial(unsigned m, unsigned r, std::uint64_t q) {
    if (q < 2) throw InvalidArgumentError("q must be at least 2");
    if (r > m) return 0;
    // q-Pascal: [n,k] = [n-1,k-1] + q^k [n-1,k]
    std::vector<unsigned __int128> row(r + 1, 0);
    row[0] = 1;
    for (unsigned n = 1; n <= m; ++n) {
        for (unsigned k = std::min(n, r); k >= 1; --k) {
            unsigned __int128 qk = 1;
            for (unsigned t = 0; t < k; ++t) qk *= q;
            row[k] = row[k - 1] + qk * row[k];
            if (row[k] >> 64) throw CapacityError("subspace count overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(row[r]);
}

Subspace::Subspace(FieldPtr f, unsigned ambient) : f_(std::move(f)), ambient_(ambient) {
    if (!f_) throw InvalidArgumentError("null field");
    if (ambient_ > 31) throw InvalidArgumentError("ambient dimension too large");
}

Subspace Subspace::from_generators(FieldPtr f, unsigned ambient, linalg::Mat gens) {
    Subspace s(std::move(f), ambient);
    for (const auto& g : gens) check_vector(*s.f_, g, ambient);
    linalg::rref(*s.f_, gens);
    s.rows_ = std::move(gens);
    return s;
}

Subspace Subspace::from_rref(FieldPtr f, unsigned ambient, linalg::Mat rows) {
    Subspace s(std::move(f), ambient);
    int prev = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != ambient) throw InternalInconsistencyError("row length mismatch");
        unsigned p = 0;
        while (p < ambient && rows[i][p] == 0) ++p;
        if (p == ambient || rows[i][p] != 1 || static_cast<int>(p) <= prev)
            throw InternalInconsistencyError("rows are not in reduced row echelon form");
        for (std::size_t j = 0; j < rows.size(); ++j)
            if (j != i && rows[j][p] != 0)
                throw InternalInconsistencyError("rows are not in reduced row echelon form");
        prev = static_cast<int>(p);
    }
    s.rows_ = std::move(rows);
    return s;
}

bool Subspace::contains(std::span<const felem> v) const {
    check_vector(*f_, v, ambient_);
    std::vector<felem> w(v.begin(), v.end());
    for (const auto& row : rows_) {
        unsigned p = 0;
        while (row[p] == 0) ++p;
        if (w[p] == 0) continue;
        const felem c = w[p];
        for (unsigned k = 0; k < ambient_; ++k) w[k] ^= f_->mul(c, row[k]);
    }
    for (felem x : w)
        if (x != 0) return false;
    return true;
}

Subspace Subspace::intersect(const Subspace& o) const {
    check_same_space(*this, o);
    linalg::Mat constraints = linalg::kernel(*f_, rows_, ambient_);
    linalg::Mat other = linalg::kernel(*f_, o.rows_, ambient_);
    constraints.insert(constraints.end(), other.begin(), other.end());
    return from_rref(f_, ambient_, linalg::kernel(*f_, constraints, ambient_));
}

Subspace Subspace::sum_with(const Subspace& o) const {
    check_same_space(*this, o);
    linalg::Mat gens = rows_;
    gens.insert(gens.end(), o.rows_.begin(), o.rows_.end());
    return from_generators(f_, ambient_, std::move(gens));
}

std::vector<std::vector<felem>> Subspace::elements(std::uint64_t limit) const {
    const auto& base = f_->base_elements();
    const std::uint64_t q = base.size();
    const unsigned d = dim();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < d; ++i) {
        if (total > limit / q)
            throw CapacityError("subspace has more elements than the enumeration limit");
        total *= q;
    }
    std::vector<std::vector<felem>> out;
    out.reserve(total);
    std::vector<std::size_t> digit(d, 0);
    std::vector<felem> cur(ambient_, 0);
    for (;;) {
        out.push_back(cur);
        std::size_t idx = d;
        bool done = true;
        while (idx > 0) {
            --idx;
            if (digit[idx] + 1 < q) {
                ++digit[idx];
                done = false;
                break;
            }
            digit[idx] = 0;
        }
        if (done) break;
        // rebuild from digits; exact and simple at these sizes
        std::fill(cur.begin(), cur.end(), 0);
        for (unsigned i = 0; i < d; ++i) {
            if (digit[i] == 0) continue;
            const felem c = base[digit[i]];
            for (unsigned k = 0; k < ambient_; ++k) cur[k] ^= f_->mul(c, rows_[i][k]);
        }
    }
    return out;
}

bool Subspace::operator==(const Subspace& o) const {
    check_same_space(*this, o);
    return rows_ == o.rows_;
}

Subspace dual_under(const linalg::Mat& b, const Subspace& h) {
    const Field& f = h.scalar_field();
    if (b.size() != h.ambient()) throw InvalidArgumentError("matrix size does not match ambient");
    linalg::Mat constraints = linalg::matmul(f, h.rows(), b);
    return Subspace::from_rref(h.scalar_field_ptr(), h.ambient(),
                               linalg::kernel(f, constraints, h.ambient()));
}

std::vector<std::uint32_t> pivot_patterns(unsigned m, unsigned r) {
    if (m > 31) throw InvalidArgumentError("ambient dimension too large");
    std::vector<std::uint32_t> out;
    if (r > m) return out;
    std::vector<unsigned> c(r);
    for (unsigned i = 0; i < r; ++i) c[i] = i;
    for (;;) {
        std::uint32_t mask = 0;
        for (unsigned p : c) mask |= std::uint32_t{1} << p;
        out.push_back(mask);
        int i = static_cast<int>(r) - 1;
        while (i >= 0 && c[i] == m - r + i) --i;
        if (i < 0) break;
        ++c[i];
        for (unsigned j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
    }
    return out;
}

std::vector<Subspace> enumerate_subspaces(const FieldPtr& f, unsigned m, unsigned r,
                                          std::uint64_t limit) {
    const std::uint64_t count = gaussian_binomial(m, r, f->q());
    if (count > limit)
        throw CapacityError("subspace enumeration exceeds limit: " + std::to_string(count));
    std::vector<Subspace> out;
    out.reserve(count);
    visit_subspaces(*f, m, r, [&](const linalg::Mat& rows) {
        out.push_back(Subspace::from_rref(f, m, rows));
    });
    return out;
}

}  // namespace qfc
