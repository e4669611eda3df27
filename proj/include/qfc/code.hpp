#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qfc/quadform.hpp"
#include "qfc/subspace.hpp"

namespace qfc {

// D = {x : f(x) = a}, in element order, together with its provenance.
// Membership queries go through a sorted array + binary search so results
// are deterministic and allocation-free.
class DefiningSet {
public:
    DefiningSet(QuadraticForm f, felem a, std::vector<felem> elements,
                Classification cls, unsigned span_dim);

    const Field& field() const { return form_.field(); }
    const FieldPtr& field_ptr() const { return form_.field_ptr(); }
    const QuadraticForm& form() const { return form_; }
    felem target() const { return a_; }
    const std::vector<felem>& elements() const { return elems_; }
    std::uint64_t size() const { return elems_.size(); }
    const Classification& classification() const { return cls_; }
    // Dimension of the F_q-span of D; the code dimension k of build_code.
    unsigned span_dim() const { return span_dim_; }

    bool contains(felem x) const;

    // |D ∩ span(rows)| where rows are coordinate vectors over the form's
    // basis.  Walks the q^rows span; the kernel of the hierarchy search.
    std::uint64_t count_in_span(const linalg::Mat& rows) const;

private:
    QuadraticForm form_;
    felem a_;
    std::vector<felem> elems_;  // sorted ascending
    Classification cls_;
    unsigned span_dim_;
};

// Enumerates the solution set and cross-checks its size against the
// classification count formula (InternalInconsistencyError on mismatch).
DefiningSet defining_set(const QuadraticForm& f, felem a,
                         std::uint64_t limit = kFieldEnumerationLimit);

// The trace code C_D: rows of the raw m x n matrix are (Tr(eps_i d_j))_j.
// The stored generator is its row-reduced form of rank k; when k < m the
// code is usable but flagged (full_rank() == false) because the
// subspace-maximization identity for the hierarchy requires k = m.
class LinearCode {
public:
    LinearCode(FieldPtr f, unsigned message_dim, linalg::Mat generator, std::size_t n);

    const Field& field() const { return *f_; }
    const FieldPtr& field_ptr() const { return f_; }
    std::size_t length() const { return n_; }
    unsigned dim() const { return static_cast<unsigned>(gen_.size()); }
    unsigned message_dim() const { return message_dim_; }
    bool full_rank() const { return dim() == message_dim_; }
    const linalg::Mat& generator() const { return gen_; }

private:
    FieldPtr f_;
    unsigned message_dim_;
    linalg::Mat gen_;
    std::size_t n_;
};

LinearCode build_code(const DefiningSet& d, const Basis& omega);

// Exhaustive codeword weights; q^k guarded.
std::map<std::size_t, std::uint64_t> weight_distribution(
    const LinearCode& c, std::uint64_t limit = kSubspaceEnumerationLimit);

// |D ∩ K| by mapping K's elements through from_coords into the membership
// index.  Same value as count_in_span; kept separate as an independent path.
std::uint64_t intersection_count(const DefiningSet& d, const Subspace& k);

// d_r by direct subcode enumeration over the code's own row space; the
// second, formula-free hierarchy oracle.
std::uint64_t ghw_direct(const LinearCode& c, unsigned r,
                         std::uint64_t limit = kSubspaceEnumerationLimit);

}  // namespace qfc
