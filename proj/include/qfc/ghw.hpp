#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfc/code.hpp"

namespace qfc {

struct GhwOptions {
    std::uint64_t max_subspaces = kSubspaceEnumerationLimit;
    // 0 = all available threads (parallel kernel); 1 = the serial reference
    // path, which also anchors determinism tests.
    int threads = 0;
    bool collect_witness = true;
};

// Maximizing subspace of a fixed dimension for |D ∩ K|, with the first
// maximizer in global enumeration order as witness.
struct SpanMax {
    std::uint64_t count = 0;
    std::optional<Subspace> witness;
};

SpanMax max_intersection_serial(const DefiningSet& d, unsigned subspace_dim,
                                const GhwOptions& opts = {});
SpanMax max_intersection_parallel(const DefiningSet& d, unsigned subspace_dim,
                                  const GhwOptions& opts = {});
// Dispatches on opts.threads and OpenMP availability.
SpanMax max_intersection(const DefiningSet& d, unsigned subspace_dim,
                         const GhwOptions& opts = {});

struct GhwValue {
    std::uint64_t value = 0;
    std::optional<Subspace> witness;
};

// d_r = n - max |D ∩ K| over all (m-r)-dimensional K.  Maximizing over all
// such K is equivalent to maximizing over duals of r-dimensional spaces
// under any non-degenerate pairing.  Requires the defining set to span.
GhwValue ghw_via_subspaces(const DefiningSet& d, unsigned r, const GhwOptions& opts = {});

// |{y in H : f|_H(y) = a}| for nonzero a from the restricted rank R and
// standard type alone: R odd -> q^(d-1); R even Type I/II -> q^(d-1) -/+
// q^(d-(R+2)/2); R = 0 -> 0.
std::uint64_t count_from_restriction(unsigned d, unsigned rank, StandardType standard,
                                     felem a, std::uint64_t q);

struct WeightHierarchy {
    enum class Method { formula, brute, direct };
    Method method = Method::formula;
    std::vector<std::uint64_t> values;  // d_1 .. d_len
    std::vector<std::optional<Subspace>> witnesses;  // brute only, per r
};

// Closed-form hierarchy for nonzero a, as one unified family over
// (rank, standard); throws InvalidClassificationError for rank 0.
WeightHierarchy hierarchy_formula(std::uint64_t q, unsigned m, const Classification& c);

// The as-published variant of the degenerate closed forms, kept for audit
// output: the degenerate Type II family with base term q^(s-1) instead of
// q^(m-s-1), and the degenerate Type III family whose middle exponent
// m-(2s+3)/2 is not an integer.  For every other classification the
// published and implemented formulas coincide.
struct AuditVariant {
    bool differs = false;   // variant differs from the implemented formula
    bool integral = true;   // variant evaluates to integers
    std::vector<std::uint64_t> values;  // set when differs && integral
    std::string note;
};
AuditVariant hierarchy_formula_uncorrected(std::uint64_t q, unsigned m,
                                           const Classification& c);

struct HierarchyReport {
    Classification cls;
    unsigned m = 0;
    unsigned k = 0;
    std::uint64_t n = 0;
    bool full_rank = false;
    std::optional<WeightHierarchy> formula;
    std::optional<WeightHierarchy> brute;
    std::optional<WeightHierarchy> direct;  // k < m fallback
    struct Mismatch {
        unsigned r;
        std::uint64_t formula_value;
        std::uint64_t brute_value;
    };
    std::vector<Mismatch> mismatches;
    std::optional<AuditVariant> audit;
    std::vector<std::string> notes;
    std::optional<std::string> error;  // e.g. zero form
    bool ok() const { return !error && mismatches.empty(); }
};

struct VerifyOptions {
    GhwOptions ghw;
    bool run_formula = true;
    bool run_brute = true;
    bool audit = false;
};

// classify + defining set + code, then every requested hierarchy and the
// entrywise comparison.  Zero forms and a = 0 / k < m routing surface as
// report fields rather than exceptions; capacity errors still throw.
HierarchyReport verify_hierarchy(const QuadraticForm& f, felem a,
                                 const VerifyOptions& opts = {});

}  // namespace qfc
