#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qfc/field.hpp"
#include "qfc/linalg.hpp"

namespace qfc {

// Guard for subspace enumeration and span walks.
inline constexpr std::uint64_t kSubspaceEnumerationLimit = 10'000'000;

// Number of r-dimensional subspaces of F_q^m.
std::uint64_t gaussian_binomial(unsigned m, unsigned r, std::uint64_t q);

// A subspace of F_q^m held as a canonical RREF basis (pivot columns strictly
// increasing, pivot entries 1, pivot columns elsewhere 0).  Row entries are
// base-field elements of the attached Field, so two subspaces are equal iff
// their rows are identical.
class Subspace {
public:
    Subspace(FieldPtr f, unsigned ambient);  // zero subspace
    static Subspace from_generators(FieldPtr f, unsigned ambient, linalg::Mat gens);
    // Trusted constructor for rows already in RREF (shape is still checked).
    static Subspace from_rref(FieldPtr f, unsigned ambient, linalg::Mat rows);

    unsigned dim() const { return static_cast<unsigned>(rows_.size()); }
    unsigned ambient() const { return ambient_; }
    const linalg::Mat& rows() const { return rows_; }
    const Field& scalar_field() const { return *f_; }
    const FieldPtr& scalar_field_ptr() const { return f_; }

    bool contains(std::span<const felem> v) const;
    Subspace intersect(const Subspace& o) const;
    Subspace sum_with(const Subspace& o) const;

    // All q^dim vectors, ordered lexicographically by combination
    // coefficients (first basis row's coefficient most significant, scalars
    // in base-element order).
    std::vector<std::vector<felem>> elements(
        std::uint64_t limit = kSubspaceEnumerationLimit) const;

    bool operator==(const Subspace& o) const;
    bool operator!=(const Subspace& o) const { return !(*this == o); }

private:
    FieldPtr f_;
    unsigned ambient_;
    linalg::Mat rows_;
};

// {x : x B h^T = 0 for all h in H} for a symmetric matrix B over the base
// field; the orthogonal complement of H under the bilinear form B.
Subspace dual_under(const linalg::Mat& b, const Subspace& h);

// Pivot-column masks of all r-dimensional RREF patterns in F_q^m, ordered
// lexicographically by the tuple of pivot positions.  These partition the
// subspace enumeration and are the unit of parallel work.
std::vector<std::uint32_t> pivot_patterns(unsigned m, unsigned r);

// Streams every RREF basis with the given pivot mask into `visit(rows,
// ordinal)`.  The rows buffer is reused between calls; `ordinal` counts
// assignments of the free entries, last free cell (row-major) moving
// fastest.  Scalars run through f.base_elements() in order.
template <class Visit>
void visit_pattern_subspaces(const Field& f, unsigned m, std::uint32_t pattern,
                             Visit&& visit) {
    const auto& base = f.base_elements();
    const std::size_t q = base.size();
    std::vector<unsigned> piv;
    for (unsigned c = 0; c < m; ++c)
        if ((pattern >> c) & 1) piv.push_back(c);
    const unsigned d = static_cast<unsigned>(piv.size());
    linalg::Mat rows(d, std::vector<felem>(m, 0));
    for (unsigned i = 0; i < d; ++i) rows[i][piv[i]] = 1;
    std::vector<std::pair<unsigned, unsigned>> cells;  // free (row, col), row-major
    for (unsigned i = 0; i < d; ++i)
        for (unsigned c = piv[i] + 1; c < m; ++c)
            if (!((pattern >> c) & 1)) cells.emplace_back(i, c);
    std::vector<std::size_t> digit(cells.size(), 0);
    std::uint64_t ordinal = 0;
    for (;;) {
        visit(const_cast<const linalg::Mat&>(rows), ordinal);
        if (cells.empty()) return;
        std::size_t idx = cells.size();
        for (;;) {
            --idx;
            if (digit[idx] + 1 < q) {
                ++digit[idx];
                rows[cells[idx].first][cells[idx].second] = base[digit[idx]];
                break;
            }
            digit[idx] = 0;
            rows[cells[idx].first][cells[idx].second] = base[0];
            if (idx == 0) return;
        }
        ++ordinal;
    }
}

// Streams every r-dimensional subspace of F_q^m in the global enumeration
// order: pivot patterns lexicographically, then free entries as above.
template <class Visit>
void visit_subspaces(const Field& f, unsigned m, unsigned r, Visit&& visit) {
    for (std::uint32_t pattern : pivot_patterns(m, r))
        visit_pattern_subspaces(f, m, pattern,
                                [&](const linalg::Mat& rows, std::uint64_t) { visit(rows); });
}

// Materializes the stream; CapacityError when the count exceeds `limit`.
std::vector<Subspace> enumerate_subspaces(
    const FieldPtr& f, unsigned m, unsigned r,
    std::uint64_t limit = kSubspaceEnumerationLimit);

}  // namespace qfc
