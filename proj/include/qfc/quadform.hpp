#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qfc/field.hpp"
#include "qfc/linalg.hpp"
#include "qfc/subspace.hpp"

namespace qfc {

// One term lambda * x^(q^i + q^j) of a Dembowski-Ostrom polynomial.
struct DOMonomial {
    unsigned i = 0, j = 0;
    felem lambda = 0;
    bool operator==(const DOMonomial&) const = default;
};

// F(x) = sum of DO monomials; Tr(F(x)) ranges over all quadratic forms.
class DOPolynomial {
public:
    DOPolynomial() = default;  // zero polynomial
    DOPolynomial(const Field& f, std::vector<DOMonomial> monomials);

    const std::vector<DOMonomial>& monomials() const { return monos_; }
    bool is_zero() const { return monos_.empty(); }
    felem eval(const Field& f, felem x) const;

private:
    std::vector<DOMonomial> monos_;  // i <= j, nonzero lambda, sorted by (i, j)
};

// f(x) = Tr_{F_{q^m}/F_q}(F(x)) together with the basis fixing its
// coordinate matrix.
class QuadraticForm {
public:
    QuadraticForm(FieldPtr f, DOPolynomial poly, Basis basis);

    const Field& field() const { return *f_; }
    const FieldPtr& field_ptr() const { return f_; }
    const DOPolynomial& poly() const { return poly_; }
    const Basis& basis() const { return basis_; }

    felem eval(felem x) const;               // base-field value
    felem bilinear(felem x, felem y) const;  // f(x+y) + f(x) + f(y)

private:
    FieldPtr f_;
    DOPolynomial poly_;
    Basis basis_;
};

// Tr(lambda * x^(q^i + 1)) over the polynomial basis; the sweep family.
QuadraticForm monomial_form(FieldPtr f, unsigned i, felem lambda);

enum class StandardType { I, II, III };
const char* to_string(StandardType s);

// Invariants of a quadratic form under coordinate change: rank t, the
// type dim(ker l_f / ker f), and which standard form it is equivalent to.
struct Classification {
    unsigned m = 0;     // number of variables
    unsigned rank = 0;  // t = m - dim ker f
    unsigned type = 0;  // 0 or 1; equals rank mod 2
    StandardType standard = StandardType::I;
    unsigned s = 0;  // floor(rank / 2)
    unsigned dim_ker_bilinear = 0;
    unsigned dim_ker_form = 0;
    bool degenerate = false;  // rank < m
    bool operator==(const Classification&) const = default;
};

// Fills the derived fields from (m, rank, standard); throws
// InvalidClassificationError on inconsistent input (rank > m, parity
// mismatch, Type II with rank < 2).
Classification make_classification(unsigned m, unsigned rank, StandardType standard);

// Upper-triangular coordinate matrix of a quadratic form on F_q^d:
// evaluation is y M y^T.  Entries are base-field elements of the attached
// field; the lower triangle is identically zero.
class FormMatrix {
public:
    FormMatrix(FieldPtr scalars, linalg::Mat upper);

    unsigned dim() const { return static_cast<unsigned>(entries_.size()); }
    const linalg::Mat& entries() const { return entries_; }
    const Field& scalar_field() const { return *f_; }
    const FieldPtr& scalar_field_ptr() const { return f_; }

    felem eval(std::span<const felem> y) const;
    linalg::Mat bilinear() const;  // B = M + M^T, symmetric with zero diagonal

private:
    FieldPtr f_;
    linalg::Mat entries_;
};

// Matrix of f in its basis: diagonal f(eps_i), above-diagonal l_f(eps_i, eps_j).
FormMatrix form_matrix(const QuadraticForm& f);

// ker l_f as a coordinate subspace (nullspace of B).
Subspace radical(const FormMatrix& mat);
Subspace radical(const QuadraticForm& f);

// ker f = {x in radical : f(x) = 0}.
Subspace form_kernel(const FormMatrix& mat, std::uint64_t limit = kSubspaceEnumerationLimit);
Subspace form_kernel(const QuadraticForm& f, std::uint64_t limit = kSubspaceEnumerationLimit);

// Full classification; the standard type is discriminated by exhaustively
// counting zeros of f, which doubles as a solution-count self-test.
Classification classify(const FormMatrix& mat, std::uint64_t limit = kFieldEnumerationLimit);
Classification classify(const QuadraticForm& f, std::uint64_t limit = kFieldEnumerationLimit);

// |{x : f(x) = a}| from the classification alone: Type I gives
// q^(m-1) + delta(a) q^(m-(t+2)/2), Type II the same with -delta(a),
// Type III q^(m-1), where delta(0) = q-1 and delta(a) = -1 otherwise.
std::uint64_t count_solutions_formula(std::uint64_t q, unsigned m, const Classification& c,
                                      felem a);

std::uint64_t count_solutions_exhaustive(const QuadraticForm& f, felem a,
                                         std::uint64_t limit = kFieldEnumerationLimit);
std::uint64_t count_solutions_exhaustive(const FormMatrix& mat, felem a,
                                         std::uint64_t limit = kFieldEnumerationLimit);

// The form induced on a subspace: P M P^T folded back to upper-triangular
// form (entry (i,j), i<j, receives the (i,j)+(j,i) sum; diagonal kept).
FormMatrix restrict_to(const FormMatrix& mat, const Subspace& h);
FormMatrix restrict_to(const QuadraticForm& f, const Subspace& h);

// m x m matrix of the standard form for c, padded with trailing zeros:
// Type I  x1x2 + ... + x_{t-1}x_t,
// Type II ... + alpha x_{t-1}^2 + x_{t-1}x_t + alpha x_t^2,
// Type III ... + x_t^2,
// with alpha the least base element of absolute trace 1.
FormMatrix canonical_form_matrix(FieldPtr scalars, unsigned m, const Classification& c);

// An r-dimensional H with l_f vanishing on H x H (H inside its own dual),
// found by deterministic extension search.  Requires f non-degenerate and
// 0 < 2r < m.
Subspace find_isotropic(const QuadraticForm& f, unsigned r);

}  // namespace qfc
