#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <bit>
#include <random>
#include <set>

#include "qfc/errors.hpp"
#include "qfc/field.hpp"
#include "qfc/linalg.hpp"
#include "qfc/subspace.hpp"

using namespace qfc;

namespace {

linalg::Mat random_mat(const Field& f, std::mt19937_64& rng, unsigned rows, unsigned cols) {
    const auto& base = f.base_elements();
    linalg::Mat m(rows, std::vector<felem>(cols));
    for (auto& row : m)
        for (auto& x : row) x = base[rng() % base.size()];
    return m;
}

Subspace random_subspace(const FieldPtr& f, std::mt19937_64& rng, unsigned ambient,
                         unsigned gens) {
    return Subspace::from_generators(f, ambient, random_mat(*f, rng, gens, ambient));
}

// RREF shape: pivots strictly increasing, pivot entries 1, pivot columns
// clear elsewhere.
bool is_rref(const linalg::Mat& rows, unsigned m) {
    int last = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m) return false;
        unsigned p = 0;
        while (p < m && rows[i][p] == 0) ++p;
        if (p == m || static_cast<int>(p) <= last || rows[i][p] != 1) return false;
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (k != i && rows[k][p] != 0) return false;
        last = static_cast<int>(p);
    }
    return true;
}

}  // namespace

TEST_CASE("gaussian binomials match known values") {
    CHECK(gaussian_binomial(4, 2, 2) == 35);
    CHECK(gaussian_binomial(6, 3, 2) == 1395);
    CHECK(gaussian_binomial(4, 1, 2) == 15);
    CHECK(gaussian_binomial(4, 2, 4) == 357);
    CHECK(gaussian_binomial(5, 0, 2) == 1);
    CHECK(gaussian_binomial(5, 5, 2) == 1);
    CHECK(gaussian_binomial(3, 4, 2) == 0);
    CHECK_THROWS_AS(gaussian_binomial(4, 2, 1), InvalidArgumentError);
    CHECK_THROWS_AS(gaussian_binomial(64, 32, 2), CapacityError);
}

TEST_CASE("gaussian binomial symmetry and q-Pascal identity") {
    for (std::uint64_t q : {2ull, 4ull})
        for (unsigned m = 0; m <= 8; ++m)
            for (unsigned r = 0; r <= m; ++r) {
                CHECK(gaussian_binomial(m, r, q) == gaussian_binomial(m, m - r, q));
                if (m && r) {
                    std::uint64_t qr = 1;
                    for (unsigned t = 0; t < r; ++t) qr *= q;
                    CHECK(gaussian_binomial(m, r, q) ==
                          gaussian_binomial(m - 1, r - 1, q) +
                              qr * gaussian_binomial(m - 1, r, q));
                }
            }
}

TEST_CASE("rref produces canonical shape and preserves row space") {
    const FieldPtr f = make_field(2, 1);  // scalars F_4
    std::mt19937_64 rng(11);
    for (int it = 0; it < 60; ++it) {
        linalg::Mat a = random_mat(*f, rng, 3 + it % 3, 5);
        linalg::Mat b = a;
        const auto piv = linalg::rref(*f, b);
        CHECK(b.size() == piv.size());
        CHECK(is_rref(b, 5));
        CHECK(std::is_sorted(piv.begin(), piv.end()));
        // row spaces agree: every original row reduces to zero against b
        const Subspace sa = Subspace::from_generators(f, 5, a);
        const Subspace sb = Subspace::from_generators(f, 5, b);
        CHECK(sa == sb);
        // rref of an rref is itself
        linalg::Mat c = b;
        linalg::rref(*f, c);
        CHECK(c == b);
    }
}

TEST_CASE("rank-nullity over F2 and F4") {
    for (unsigned e : {1u, 2u}) {
        const FieldPtr f = make_field(e, 1);
        std::mt19937_64 rng(17 + e);
        for (int it = 0; it < 50; ++it) {
            const unsigned rows = 1 + rng() % 5, cols = 1 + rng() % 6;
            const linalg::Mat a = random_mat(*f, rng, rows, cols);
            const linalg::Mat ker = linalg::kernel(*f, a, cols);
            CHECK(linalg::rank(*f, a) + ker.size() == cols);
            // every kernel row is annihilated by a
            for (const auto& v : ker)
                for (const auto& row : a) {
                    felem acc = 0;
                    for (unsigned c = 0; c < cols; ++c) acc ^= f->mul(row[c], v[c]);
                    CHECK(acc == 0);
                }
        }
    }
}

TEST_CASE("matmul and transpose basics") {
    const FieldPtr f = make_field(1, 1);
    const linalg::Mat a = {{1, 1, 0}, {0, 1, 1}};
    const linalg::Mat b = {{1, 0}, {1, 1}, {0, 1}};
    const linalg::Mat ab = linalg::matmul(*f, a, b);
    CHECK(ab == linalg::Mat{{0, 1}, {1, 0}});
    CHECK(linalg::transpose(a, 3) == b);
    CHECK(linalg::transpose(linalg::transpose(a, 3), 2) == a);
}

TEST_CASE("subspace construction canonicalizes generators") {
    const FieldPtr f = make_field(1, 1);
    const Subspace s = Subspace::from_generators(f, 4, {{1, 1, 0, 0}, {0, 0, 1, 1}});
    // shuffled and redundant generators give the same object
    const Subspace t = Subspace::from_generators(
        f, 4, {{0, 0, 1, 1}, {1, 1, 1, 1}, {1, 1, 0, 0}});
    CHECK(s == t);
    CHECK(s.dim() == 2);
    CHECK(s.ambient() == 4);
    CHECK(is_rref(s.rows(), 4));
    CHECK(s.contains(std::vector<felem>{1, 1, 1, 1}));
    CHECK(!s.contains(std::vector<felem>{1, 0, 0, 0}));

    const Subspace zero(f, 4);
    CHECK(zero.dim() == 0);
    CHECK(zero.contains(std::vector<felem>{0, 0, 0, 0}));

    CHECK_THROWS_AS(Subspace::from_rref(f, 4, linalg::Mat{{0, 1, 1, 0}, {1, 0, 0, 0}}),
                    InternalInconsistencyError);  // trusted path, shape bug = caller bug
    CHECK_THROWS_AS(Subspace::from_generators(f, 4, linalg::Mat{{1, 0}}),
                    InvalidArgumentError);
}

TEST_CASE("element streams cover the subspace in coefficient-lex order") {
    const FieldPtr f = make_field(1, 1);
    const Subspace s = Subspace::from_generators(f, 3, {{1, 0, 1}, {0, 1, 1}});
    const auto els = s.elements();
    REQUIRE(els.size() == 4);
    CHECK(els[0] == std::vector<felem>{0, 0, 0});
    CHECK(els[1] == std::vector<felem>{0, 1, 1});  // second row first
    CHECK(els[2] == std::vector<felem>{1, 0, 1});
    CHECK(els[3] == std::vector<felem>{1, 1, 0});
    for (const auto& v : els) CHECK(s.contains(v));

    const FieldPtr g = make_field(2, 1);
    const Subspace u = Subspace::from_generators(g, 4, {{1, 0, 2, 3}, {0, 1, 1, 2}});
    const auto uel = u.elements();
    CHECK(uel.size() == 16);  // q^dim with q = 4
    const std::set<std::vector<felem>> uniq(uel.begin(), uel.end());
    CHECK(uniq.size() == uel.size());
    for (const auto& v : uel) CHECK(u.contains(v));
}

TEST_CASE("intersection and sum satisfy the dimension formula") {
    for (unsigned e : {1u, 2u}) {
        const FieldPtr f = make_field(e, 1);
        std::mt19937_64 rng(31 + e);
        for (int it = 0; it < 40; ++it) {
            const Subspace a = random_subspace(f, rng, 5, 1 + rng() % 4);
            const Subspace b = random_subspace(f, rng, 5, 1 + rng() % 4);
            const Subspace cap = a.intersect(b);
            const Subspace cup = a.sum_with(b);
            CHECK(a.dim() + b.dim() == cap.dim() + cup.dim());
            for (const auto& v : cap.elements()) {
                CHECK(a.contains(v));
                CHECK(b.contains(v));
            }
            for (const auto& v : a.elements()) CHECK(cup.contains(v));
            CHECK(cap.intersect(a) == cap);
            CHECK(cup.sum_with(a) == cup);
        }
    }
}

TEST_CASE("duality under a nondegenerate symmetric pairing") {
    const FieldPtr f = make_field(1, 1);
    // hyperbolic pairing on F_2^4: e1<->e2, e3<->e4
    const linalg::Mat b = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    std::mt19937_64 rng(41);
    for (int it = 0; it < 60; ++it) {
        const Subspace h = random_subspace(f, rng, 4, 1 + rng() % 4);
        const Subspace hd = dual_under(b, h);
        CHECK(h.dim() + hd.dim() == 4);
        CHECK(dual_under(b, hd) == h);
        const Subspace k = random_subspace(f, rng, 4, 1 + rng() % 4);
        const Subspace ks = h.sum_with(k);
        // inclusion reversal: (h + k)* is contained in h*
        for (const auto& v : dual_under(b, ks).elements()) CHECK(hd.contains(v));
    }
}

TEST_CASE("duality under a degenerate pairing always contains the radical") {
    const FieldPtr f = make_field(1, 1);
    const linalg::Mat b = {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}};
    std::mt19937_64 rng(43);
    for (int it = 0; it < 30; ++it) {
        const Subspace h = random_subspace(f, rng, 4, 1 + rng() % 4);
        const Subspace hd = dual_under(b, h);
        CHECK(hd.contains(std::vector<felem>{0, 0, 1, 0}));
        CHECK(hd.contains(std::vector<felem>{0, 0, 0, 1}));
    }
}

TEST_CASE("pivot patterns are binomial-many in pivot-tuple order") {
    const auto p42 = pivot_patterns(4, 2);
    CHECK(p42 == std::vector<std::uint32_t>{0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100});
    CHECK(pivot_patterns(5, 0) == std::vector<std::uint32_t>{0});
    CHECK(pivot_patterns(6, 3).size() == 20);
    for (std::uint32_t p : pivot_patterns(6, 3)) CHECK(std::popcount(p) == 3);
    CHECK_THROWS_AS(pivot_patterns(32, 1), InvalidArgumentError);
}

TEST_CASE("pattern streams partition the enumeration with sequential ordinals") {
    const FieldPtr f = make_field(2, 1);
    const unsigned m = 4, r = 2;
    std::uint64_t total = 0;
    std::vector<Subspace> streamed;
    for (std::uint32_t pattern : pivot_patterns(m, r)) {
        std::uint64_t expect = 0;
        visit_pattern_subspaces(*f, m, pattern, [&](const linalg::Mat& rows,
                                                    std::uint64_t ordinal) {
            CHECK(ordinal == expect);
            ++expect;
            CHECK(is_rref(rows, m));
            streamed.push_back(Subspace::from_rref(f, m, rows));
        });
        total += expect;
    }
    CHECK(total == gaussian_binomial(m, r, 4));
    const auto listed = enumerate_subspaces(f, m, r);
    REQUIRE(listed.size() == streamed.size());
    for (std::size_t i = 0; i < listed.size(); ++i) CHECK(listed[i] == streamed[i]);
    const std::set<linalg::Mat> uniq = [&] {
        std::set<linalg::Mat> s;
        for (const auto& sub : streamed) s.insert(sub.rows());
        return s;
    }();
    CHECK(uniq.size() == streamed.size());
}

TEST_CASE("enumeration counts match gaussian binomials for q in {2,4}") {
    for (unsigned e : {1u, 2u}) {
        const FieldPtr f = make_field(e, 1);
        for (unsigned m = 1; m <= 5; ++m)
            for (unsigned r = 0; r <= m; ++r)
                CHECK(enumerate_subspaces(f, m, r).size() ==
                      gaussian_binomial(m, r, f->q()));
    }
    CHECK_THROWS_AS(enumerate_subspaces(make_field(1, 1), 6, 3, 10), CapacityError);
}
