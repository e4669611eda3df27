#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "qfc/errors.hpp"

namespace qfc {

// An element of F_{2^(e*m)}, stored as the F_2 coefficient bit vector of its
// residue mod the field modulus: bit i is the coefficient of z^i.  Element
// order throughout the library means increasing integer order of this value.
using felem = std::uint64_t;

// Enumeration guard for whole-field scans (classification, defining sets).
inline constexpr std::uint64_t kFieldEnumerationLimit = std::uint64_t{1} << 24;

// F_{q^m} with q = 2^e, realized as F_2[z]/(modulus).  Immutable; owns the
// arithmetic on raw `felem` words.  Long-lived objects share it by pointer.
class Field {
public:
    // `modulus_bits` must be irreducible over F_2 of degree exactly e*m
    // (bit i = coefficient of z^i).  Validated with Rabin's test.
    Field(unsigned e, unsigned m, std::uint64_t modulus_bits);

    unsigned base_exponent() const { return e_; }   // e
    unsigned degree() const { return m_; }          // m, over F_q
    unsigned bit_degree() const { return em_; }     // e*m, over F_2
    std::uint64_t q() const { return std::uint64_t{1} << e_; }
    std::uint64_t order() const { return std::uint64_t{1} << em_; }
    std::uint64_t modulus_bits() const { return mod_; }

    // Multiplicative generator candidate: the class of z.
    felem z() const { return z_; }
    bool z_is_primitive() const { return z_primitive_; }

    felem add(felem a, felem b) const { return a ^ b; }
    felem mul(felem a, felem b) const;
    felem sqr(felem a) const { return mul(a, a); }
    felem pow(felem a, std::uint64_t k) const;
    felem inv(felem a) const;                    // DomainError on 0
    felem frobenius(felem a, unsigned k) const;  // a^(2^k)
    felem rel_trace(felem a) const;              // sum of a^(q^i), i < m

    // The base field F_q inside this field.
    bool in_base_field(felem a) const;
    const std::vector<felem>& base_elements() const { return base_; }  // sorted
    unsigned base_label(felem a) const;  // index into base_elements()
    felem base_trace_to_f2(felem a) const;  // absolute trace of a base element
    felem least_trace_one_base_element() const { return alpha_; }

    bool operator==(const Field& o) const {
        return e_ == o.e_ && m_ == o.m_ && mod_ == o.mod_;
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    unsigned e_, m_, em_;
    std::uint64_t mod_;
    felem z_;
    bool z_primitive_;
    felem alpha_;
    std::vector<felem> base_;
};

using FieldPtr = std::shared_ptr<const Field>;

FieldPtr make_field(unsigned e, unsigned m, std::uint64_t modulus_bits);
// Uses the built-in modulus table (degrees 1..6, all with z primitive).
FieldPtr make_field(unsigned e, unsigned m);
// Bit vector of the table entry for `degree`; InvalidArgumentError if absent.
std::uint64_t default_modulus(unsigned degree);

// All field elements in increasing integer order; CapacityError when the
// field order exceeds `limit`.
std::vector<felem> enumerate_field(const Field& f,
                                   std::uint64_t limit = kFieldEnumerationLimit);

// Convenience wrapper carrying its field; useful at API boundaries and in
// tests.  Hot paths use Field methods on raw felem words instead.
class FieldElement {
public:
    FieldElement(FieldPtr f, felem v);

    felem value() const { return v_; }
    const Field& field() const { return *f_; }
    const FieldPtr& field_ptr() const { return f_; }

    FieldElement pow(std::uint64_t k) const;
    FieldElement inverse() const;
    FieldElement frobenius(unsigned k) const;
    FieldElement rel_trace() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b);

private:
    FieldPtr f_;
    felem v_;
};

// An ordered F_q-basis (eps_1..eps_m) of the field.  Provides the coordinate
// isomorphism F_{q^m} <-> F_q^m used by all matrix-level code.
class Basis {
public:
    Basis(FieldPtr f, std::vector<felem> elements);
    static Basis polynomial(FieldPtr f);  // {1, z, ..., z^(m-1)}

    const Field& field() const { return *f_; }
    const FieldPtr& field_ptr() const { return f_; }
    const std::vector<felem>& elements() const { return eps_; }
    unsigned size() const { return static_cast<unsigned>(eps_.size()); }

    // Coordinates over F_q (entries are base-field elements of `field()`).
    std::vector<felem> coords(felem x) const;
    felem from_coords(std::span<const felem> c) const;

private:
    FieldPtr f_;
    std::vector<felem> eps_;
    felem gamma_;                      // F_2-generator of the base field
    std::vector<felem> gamma_pows_;    // gamma^0..gamma^(e-1)
    std::vector<std::uint64_t> solve_; // bit rows: coord bit k = parity(solve_[k] & x)
};

}  // namespace qfc
