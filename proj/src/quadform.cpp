#include "qfc/quadform.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace qfc {
namespace {

std::uint64_t u64pow(std::uint64_t b, unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < k; ++i) {
        if (b != 0 && r > UINT64_MAX / b) throw CapacityError("power overflows 64 bits");
        r *= b;
    }
    return r;
}

void check_same_field(const Field& a, const Field& b, const char* what) {
    if (&a != &b && a != b) throw SpecMismatchError(what);
}

// Streams all vectors of F_q^d (entries in base-element order, last
// coordinate fastest) into visit(v).
template <class Visit>
void visit_vectors(const Field& f, unsigned d, Visit&& visit) {
    const auto& base = f.base_elements();
    const std::size_t q = base.size();
    std::vector<felem> v(d, 0);
    std::vector<std::size_t> digit(d, 0);
    for (;;) {
        visit(const_cast<const std::vector<felem>&>(v));
        std::size_t idx = d;
        for (;;) {
            if (idx == 0) return;
            --idx;
            if (digit[idx] + 1 < q) {
                ++digit[idx];
                v[idx] = base[digit[idx]];
                break;
            }
            digit[idx] = 0;
            v[idx] = 0;
        }
    }
}

}  // namespace

DOPolynomial::DOPolynomial(const Field& f, std::vector<DOMonomial> monomials) {
    std::map<std::pair<unsigned, unsigned>, felem> merged;
    for (const auto& mono : monomials) {
        if (mono.i > mono.j)
            throw InvalidArgumentError("monomial exponents require i <= j");
        if (mono.j >= f.degree())
            throw InvalidArgumentError("monomial exponent j must be below m = " +
                                       std::to_string(f.degree()));
        if (mono.lambda >= f.order())
            throw InvalidArgumentError("monomial coefficient out of range");
        merged[{mono.i, mono.j}] ^= mono.lambda;
    }
    for (const auto& [ij, lambda] : merged)
        if (lambda != 0) monos_.push_back({ij.first, ij.second, lambda});
}

felem DOPolynomial::eval(const Field& f, felem x) const {
    const unsigned e = f.base_exponent();
    felem acc = 0;
    for (const auto& mono : monos_)
        acc ^= f.mul(mono.lambda,
                     f.mul(f.frobenius(x, e * mono.i), f.frobenius(x, e * mono.j)));
    return acc;
}

QuadraticForm::QuadraticForm(FieldPtr f, DOPolynomial poly, Basis basis)
    : f_(std::move(f)), poly_(std::move(poly)), basis_(std::move(basis)) {
    if (!f_) throw InvalidArgumentError("null field");
    check_same_field(*f_, basis_.field(), "basis belongs to a different field");
}

felem QuadraticForm::eval(felem x) const { return f_->rel_trace(poly_.eval(*f_, x)); }

felem QuadraticForm::bilinear(felem x, felem y) const {
    return eval(x ^ y) ^ eval(x) ^ eval(y);
}

QuadraticForm monomial_form(FieldPtr f, unsigned i, felem lambda) {
    DOPolynomial poly(*f, {DOMonomial{0, i, lambda}});
    Basis omega = Basis::polynomial(f);
    return QuadraticForm(std::move(f), std::move(poly), std::move(omega));
}

const char* to_string(StandardType s) {
    switch (s) {
        case StandardType::I: return "I";
        case StandardType::II: return "II";
        default: return "III";
    }
}

Classification make_classification(unsigned m, unsigned rank, StandardType standard) {
    if (rank > m) throw InvalidClassificationError("rank exceeds the number of variables");
    const bool odd = (rank % 2) != 0;
    if (odd && standard != StandardType::III)
        throw InvalidClassificationError("odd rank requires standard type III");
    if (!odd && standard == StandardType::III)
        throw InvalidClassificationError("standard type III requires odd rank");
    if (standard == StandardType::II && rank < 2)
        throw InvalidClassificationError("standard type II requires rank >= 2");
    Classification c;
    c.m = m;
    c.rank = rank;
    c.type = odd ? 1 : 0;
    c.standard = standard;
    c.s = rank / 2;
    c.dim_ker_form = m - rank;
    c.dim_ker_bilinear = c.dim_ker_form + c.type;
    c.degenerate = rank < m;
    return c;
}

FormMatrix::FormMatrix(FieldPtr scalars, linalg::Mat upper)
    : f_(std::move(scalars)), entries_(std::move(upper)) {
    if (!f_) throw InvalidArgumentError("null field");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i].size() != entries_.size())
            throw InvalidArgumentError("form matrix must be square");
        for (std::size_t j = 0; j < entries_.size(); ++j) {
            if (j < i && entries_[i][j] != 0)
                throw InvalidArgumentError("form matrix must be upper-triangular");
            if (!f_->in_base_field(entries_[i][j]))
                throw InvalidArgumentError("form matrix entry is not a base-field element");
        }
    }
}

felem FormMatrix::eval(std::span<const felem> y) const {
    if (y.size() != dim()) throw InvalidArgumentError("vector has wrong length");
    felem acc = 0;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = i; j < entries_.size(); ++j)
            if (entries_[i][j] != 0 && y[j] != 0)
                acc ^= f_->mul(entries_[i][j], f_->mul(y[i], y[j]));
    }
    return acc;
}

linalg::Mat FormMatrix::bilinear() const {
    const unsigned d = dim();
    linalg::Mat b(d, std::vector<felem>(d, 0));
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = i + 1; j < d; ++j) b[i][j] = b[j][i] = entries_[i][j];
    return b;
}

FormMatrix form_matrix(const QuadraticForm& f) {
    const auto& eps = f.basis().elements();
    const unsigned m = f.field().degree();
    linalg::Mat upper(m, std::vector<felem>(m, 0));
    for (unsigned i = 0; i < m; ++i) {
        upper[i][i] = f.eval(eps[i]);
        for (unsigned j = i + 1; j < m; ++j) upper[i][j] = f.bilinear(eps[i], eps[j]);
    }
    return FormMatrix(f.field_ptr(), std::move(upper));
}

Subspace radical(const FormMatrix& mat) {
    return Subspace::from_rref(mat.scalar_field_ptr(), mat.dim(),
                               linalg::kernel(mat.scalar_field(), mat.bilinear(), mat.dim()));
}

Subspace radical(const QuadraticForm& f) { return radical(form_matrix(f)); }

namespace {

// Shared kernel filter: keep radical vectors on which `value` vanishes.
template <class Eval>
Subspace kernel_filter(const Subspace& rad, std::uint64_t limit, Eval&& value) {
    linalg::Mat gens;
    for (const auto& v : rad.elements(limit))
        if (value(v) == 0) gens.push_back(v);
    return Subspace::from_generators(rad.scalar_field_ptr(), rad.ambient(), std::move(gens));
}

Classification finish_classification(unsigned m, std::uint64_t q, unsigned dim_rad,
                                     unsigned dim_ker, std::uint64_t n0) {
    if (dim_rad < dim_ker || dim_rad - dim_ker > 1)
        throw InternalInconsistencyError("kernel dimensions are inconsistent");
    if ((m - dim_rad) % 2 != 0)
        throw InternalInconsistencyError("alternating form has odd rank");
    const unsigned t = m - dim_ker;
    StandardType standard;
    if (t % 2 == 1) {
        standard = StandardType::III;
    } else {
        const std::uint64_t swing = u64pow(q, m - (t + 2) / 2);
        const std::uint64_t base = u64pow(q, m - 1);
        if (n0 == base + (q - 1) * swing)
            standard = StandardType::I;
        else if (n0 == base - (q - 1) * swing)
            standard = StandardType::II;
        else
            throw InternalInconsistencyError("zero count matches neither even-rank type");
    }
    Classification c = make_classification(m, t, standard);
    if (c.dim_ker_bilinear != dim_rad)
        throw InternalInconsistencyError("radical dimension disagrees with rank/type");
    return c;
}

}  // namespace

Subspace form_kernel(const FormMatrix& mat, std::uint64_t limit) {
    return kernel_filter(radical(mat), limit,
                         [&](const std::vector<felem>& v) { return mat.eval(v); });
}

Subspace form_kernel(const QuadraticForm& f, std::uint64_t limit) {
    const Basis& omega = f.basis();
    return kernel_filter(radical(f), limit, [&](const std::vector<felem>& v) {
        return f.eval(omega.from_coords(v));
    });
}

Classification classify(const FormMatrix& mat, std::uint64_t limit) {
    const Field& f = mat.scalar_field();
    const std::uint64_t q = f.q();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < mat.dim(); ++i) {
        if (total > limit / q) throw CapacityError("vector space exceeds enumeration limit");
        total *= q;
    }
    const Subspace rad = radical(mat);
    const Subspace ker = form_kernel(mat, limit);
    std::uint64_t n0 = 0;
    visit_vectors(f, mat.dim(), [&](const std::vector<felem>& v) {
        if (mat.eval(v) == 0) ++n0;
    });
    return finish_classification(mat.dim(), q, rad.dim(), ker.dim(), n0);
}

Classification classify(const QuadraticForm& f, std::uint64_t limit) {
    const Field& fld = f.field();
    if (fld.order() > limit) throw CapacityError("field exceeds enumeration limit");
    const Subspace rad = radical(f);
    const Subspace ker = form_kernel(f, limit);
    std::uint64_t n0 = 0;
    for (felem x = 0; x < fld.order(); ++x)
        if (f.eval(x) == 0) ++n0;
    return finish_classification(fld.degree(), fld.q(), rad.dim(), ker.dim(), n0);
}

std::uint64_t count_solutions_formula(std::uint64_t q, unsigned m, const Classification& c,
                                      felem a) {
    if (c.m != m) throw InvalidArgumentError("classification is for a different m");
    if (c.standard == StandardType::III) {
        if (c.rank % 2 == 0) throw InvalidClassificationError("type III requires odd rank");
        return u64pow(q, m - 1);
    }
    if (c.rank % 2 != 0) throw InvalidClassificationError("even-rank type with odd rank");
    const std::uint64_t base = u64pow(q, m - 1);
    const std::uint64_t swing = u64pow(q, m - (c.rank + 2) / 2);
    const bool plus_on_zero = (c.standard == StandardType::I);
    if (a == 0) return plus_on_zero ? base + (q - 1) * swing : base - (q - 1) * swing;
    return plus_on_zero ? base - swing : base + swing;
}

std::uint64_t count_solutions_exhaustive(const QuadraticForm& f, felem a,
                                         std::uint64_t limit) {
    const Field& fld = f.field();
    if (fld.order() > limit) throw CapacityError("field exceeds enumeration limit");
    if (!fld.in_base_field(a)) throw InvalidArgumentError("target value must be in the base field");
    std::uint64_t n = 0;
    for (felem x = 0; x < fld.order(); ++x)
        if (f.eval(x) == a) ++n;
    return n;
}

std::uint64_t count_solutions_exhaustive(const FormMatrix& mat, felem a,
                                         std::uint64_t limit) {
    const Field& f = mat.scalar_field();
    if (!f.in_base_field(a)) throw InvalidArgumentError("target value must be in the base field");
    const std::uint64_t q = f.q();
    std::uint64_t total = 1;
    for (unsigned i = 0; i < mat.dim(); ++i) {
        if (total > limit / q) throw CapacityError("vector space exceeds enumeration limit");
        total *= q;
    }
    std::uint64_t n = 0;
    visit_vectors(f, mat.dim(), [&](const std::vector<felem>& v) {
        if (mat.eval(v) == a) ++n;
    });
    return n;
}

FormMatrix restrict_to(const FormMatrix& mat, const Subspace& h) {
    check_same_field(mat.scalar_field(), h.scalar_field(), "subspace is over a different field");
    if (h.ambient() != mat.dim())
        throw InvalidArgumentError("subspace ambient dimension does not match the form");
    const Field& f = mat.scalar_field();
    const linalg::Mat pm = linalg::matmul(f, h.rows(), mat.entries());
    const linalg::Mat full =
        linalg::matmul(f, pm, linalg::transpose(h.rows(), mat.dim()));
    const unsigned d = h.dim();
    linalg::Mat upper(d, std::vector<felem>(d, 0));
    for (unsigned i = 0; i < d; ++i) {
        upper[i][i] = full[i][i];
        for (unsigned j = i + 1; j < d; ++j) upper[i][j] = full[i][j] ^ full[j][i];
    }
    return FormMatrix(mat.scalar_field_ptr(), std::move(upper));
}

FormMatrix restrict_to(const QuadraticForm& f, const Subspace& h) {
    return restrict_to(form_matrix(f), h);
}

namespace {

// Least alpha with absolute trace 1; cross-checked against the equivalent
// criterion alpha not in {x^2 + x : x in F_q}.
felem type_two_alpha(const Field& f) {
    const felem alpha = f.least_trace_one_base_element();
    for (felem x : f.base_elements())
        if ((f.mul(x, x) ^ x) == alpha)
            throw InternalInconsistencyError("trace-one element is of the form x^2 + x");
    return alpha;
}

}  // namespace

FormMatrix canonical_form_matrix(FieldPtr scalars, unsigned m, const Classification& c) {
    if (make_classification(m, c.rank, c.standard) != c)
        throw InvalidClassificationError("classification fields are inconsistent");
    linalg::Mat upper(m, std::vector<felem>(m, 0));
    const unsigned t = c.rank;
    switch (c.standard) {
        case StandardType::I:
            for (unsigned k = 0; 2 * k + 1 < t; ++k) upper[2 * k][2 * k + 1] = 1;
            break;
        case StandardType::II: {
            for (unsigned k = 0; 2 * k + 3 < t; ++k) upper[2 * k][2 * k + 1] = 1;
            const felem alpha = type_two_alpha(*scalars);
            upper[t - 2][t - 2] = alpha;
            upper[t - 2][t - 1] = 1;
            upper[t - 1][t - 1] = alpha;
            break;
        }
        case StandardType::III:
            for (unsigned k = 0; 2 * k + 1 < t; ++k) upper[2 * k][2 * k + 1] = 1;
            upper[t - 1][t - 1] = 1;
            break;
    }
    return FormMatrix(std::move(scalars), std::move(upper));
}

Subspace find_isotropic(const QuadraticForm& f, unsigned r) {
    const unsigned m = f.field().degree();
    if (r == 0 || 2 * r >= m)
        throw InvalidArgumentError("isotropic search requires 0 < 2r < m");
    const Classification c = classify(f);
    if (c.degenerate)
        throw InvalidArgumentError("isotropic search requires a non-degenerate form");
    const FormMatrix mat = form_matrix(f);
    const linalg::Mat b = mat.bilinear();
    const FieldPtr scalars = f.field_ptr();

    linalg::Mat chosen;
    auto extend = [&](auto&& self, unsigned level) -> bool {
        if (level == r) return true;
        const Subspace span = Subspace::from_generators(scalars, m, chosen);
        const Subspace dual = dual_under(b, span);
        std::vector<std::vector<felem>> cands = dual.elements();
        // prefer candidates on which the form itself vanishes
        std::stable_partition(cands.begin(), cands.end(),
                              [&](const std::vector<felem>& v) { return mat.eval(v) == 0; });
        for (const auto& v : cands) {
            if (span.contains(v)) continue;
            chosen.push_back(v);
            if (self(self, level + 1)) return true;
            chosen.pop_back();
        }
        return false;
    };
    if (!extend(extend, 0))
        throw InternalInconsistencyError("isotropic subspace search exhausted");
    const Subspace h = Subspace::from_generators(scalars, m, chosen);
    const Subspace dual = dual_under(b, h);
    for (const auto& row : h.rows())
        if (!dual.contains(row))
            throw InternalInconsistencyError("isotropic candidate fails self-orthogonality");
    return h;
}

}  // namespace qfc
