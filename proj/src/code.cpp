#include "qfc/code.hpp"

#include <algorithm>
#include <string>

namespace qfc {

DefiningSet::DefiningSet(QuadraticForm f, felem a, std::vector<felem> elements,
                         Classification cls, unsigned span_dim)
    : form_(std::move(f)),
      a_(a),
      elems_(std::move(elements)),
      cls_(cls),
      span_dim_(span_dim) {
    if (!std::is_sorted(elems_.begin(), elems_.end()))
        throw InternalInconsistencyError("defining set is not sorted");
}

bool DefiningSet::contains(felem x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

std::uint64_t DefiningSet::count_in_span(const linalg::Mat& rows) const {
    const Field& f = field();
    const auto& eps = form_.basis().elements();
    const unsigned d = static_cast<unsigned>(rows.size());
    std::vector<felem> gens(d, 0);
    for (unsigned i = 0; i < d; ++i) {
        for (std::size_t c = 0; c < rows[i].size(); ++c) {
            if (rows[i][c] == 0) continue;
            gens[i] ^= (rows[i][c] == 1) ? eps[c] : f.mul(rows[i][c], eps[c]);
        }
    }
    if (f.q() == 2) {
        // Gray-code walk over the 2^d span: one XOR per step.
        std::uint64_t cnt = contains(0) ? 1 : 0;
        felem cur = 0;
        const std::uint64_t total = std::uint64_t{1} << d;
        for (std::uint64_t g = 1; g < total; ++g) {
            cur ^= gens[std::countr_zero(g)];
            if (contains(cur)) ++cnt;
        }
        return cnt;
    }
    const auto& base = f.base_elements();
    std::vector<std::vector<felem>> scaled(d, std::vector<felem>(base.size()));
    for (unsigned i = 0; i < d; ++i)
        for (std::size_t s = 0; s < base.size(); ++s) scaled[i][s] = f.mul(base[s], gens[i]);
    std::uint64_t cnt = 0;
    auto walk = [&](auto&& self, unsigned level, felem partial) -> void {
        if (level == d) {
            if (contains(partial)) ++cnt;
            return;
        }
        for (std::size_t s = 0; s < base.size(); ++s)
            self(self, level + 1, partial ^ scaled[level][s]);
    };
    walk(walk, 0, 0);
    return cnt;
}

DefiningSet defining_set(const QuadraticForm& f, felem a, std::uint64_t limit) {
    const Field& fld = f.field();
    if (fld.order() > limit) throw CapacityError("field exceeds enumeration limit");
    if (!fld.in_base_field(a))
        throw InvalidArgumentError("target value must be in the base field");
    std::vector<felem> elems;
    for (felem x = 0; x < fld.order(); ++x)
        if (f.eval(x) == a) elems.push_back(x);

    const Classification cls = classify(f, limit);
    const std::uint64_t expected = count_solutions_formula(fld.q(), fld.degree(), cls, a);
    if (elems.size() != expected)
        throw InternalInconsistencyError(
            "defining set size disagrees with the classification count: got " +
            std::to_string(elems.size()) + ", formula says " + std::to_string(expected));

    const Basis& omega = f.basis();
    linalg::Mat coords;
    coords.reserve(elems.size());
    for (felem d : elems) coords.push_back(omega.coords(d));
    const unsigned span = linalg::rank(fld, std::move(coords));
    return DefiningSet(f, a, std::move(elems), cls, span);
}

LinearCode::LinearCode(FieldPtr f, unsigned message_dim, linalg::Mat generator, std::size_t n)
    : f_(std::move(f)), message_dim_(message_dim), gen_(std::move(generator)), n_(n) {
    if (!f_) throw InvalidArgumentError("null field");
    for (const auto& row : gen_)
        if (row.size() != n_) throw InternalInconsistencyError("generator row length mismatch");
}

LinearCode build_code(const DefiningSet& d, const Basis& omega) {
    if (d.size() == 0) throw InvalidArgumentError("defining set is empty");
    const Field& f = d.field();
    if (&f != &omega.field() && f != omega.field())
        throw SpecMismatchError("basis belongs to a different field");
    const unsigned m = f.degree();
    linalg::Mat raw(m, std::vector<felem>(d.size()));
    for (unsigned i = 0; i < m; ++i) {
        const felem eps = omega.elements()[i];
        for (std::size_t j = 0; j < d.elements().size(); ++j)
            raw[i][j] = f.rel_trace(f.mul(eps, d.elements()[j]));
    }
    linalg::rref(f, raw);
    return LinearCode(d.field_ptr(), m, std::move(raw), d.size());
}

std::map<std::size_t, std::uint64_t> weight_distribution(const LinearCode& c,
                                                         std::uint64_t limit) {
    const Field& f = c.field();
    const std::uint64_t q = f.q();
    const unsigned k = c.dim();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (total > limit / q) throw CapacityError("codeword enumeration exceeds limit");
        total *= q;
    }
    const auto& base = f.base_elements();
    std::map<std::size_t, std::uint64_t> dist;
    std::vector<std::size_t> digit(k, 0);
    std::vector<felem> cw(c.length(), 0);
    for (;;) {
        std::size_t w = 0;
        for (felem x : cw)
            if (x != 0) ++w;
        ++dist[w];
        std::size_t idx = k;
        bool done = true;
        while (idx > 0) {
            --idx;
            if (digit[idx] + 1 < base.size()) {
                ++digit[idx];
                done = false;
                break;
            }
            digit[idx] = 0;
        }
        if (done) break;
        std::fill(cw.begin(), cw.end(), 0);
        for (unsigned i = 0; i < k; ++i) {
            if (digit[i] == 0) continue;
            const felem s = base[digit[i]];
            for (std::size_t j = 0; j < c.length(); ++j)
                cw[j] ^= f.mul(s, c.generator()[i][j]);
        }
    }
    return dist;
}

std::uint64_t intersection_count(const DefiningSet& d, const Subspace& k) {
    const Field& f = d.field();
    if (&f != &k.scalar_field() && f != k.scalar_field())
        throw SpecMismatchError("subspace is over a different field");
    if (k.ambient() != f.degree())
        throw InvalidArgumentError("subspace ambient dimension does not match the field");
    const Basis& omega = d.form().basis();
    std::uint64_t cnt = 0;
    for (const auto& v : k.elements())
        if (d.contains(omega.from_coords(v))) ++cnt;
    return cnt;
}

std::uint64_t ghw_direct(const LinearCode& c, unsigned r, std::uint64_t limit) {
    const Field& f = c.field();
    const unsigned k = c.dim();
    if (r < 1 || r > k)
        throw InvalidArgumentError("subcode dimension must lie in 1..k");
    if (gaussian_binomial(k, r, f.q()) > limit)
        throw CapacityError("subcode enumeration exceeds limit");
    std::size_t best = c.length() + 1;
    std::vector<char> support(c.length());
    std::vector<felem> cw(c.length());
    visit_subspaces(f, k, r, [&](const linalg::Mat& rows) {
        std::fill(support.begin(), support.end(), 0);
        for (const auto& u : rows) {
            std::fill(cw.begin(), cw.end(), 0);
            for (unsigned i = 0; i < k; ++i) {
                if (u[i] == 0) continue;
                for (std::size_t j = 0; j < c.length(); ++j)
                    cw[j] ^= (u[i] == 1) ? c.generator()[i][j]
                                         : f.mul(u[i], c.generator()[i][j]);
            }
            for (std::size_t j = 0; j < c.length(); ++j)
                if (cw[j] != 0) support[j] = 1;
        }
        const std::size_t w =
            static_cast<std::size_t>(std::count(support.begin(), support.end(), 1));
        best = std::min(best, w);
    });
    return best;
}

}  // namespace qfc
