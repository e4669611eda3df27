#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfc/ghw.hpp"

namespace qfc {

// One classification class hit while scanning coefficients, with the shared
// invariants every member was checked against and the verification tally.
struct SweepGroup {
    Classification cls;
    std::vector<felem> lambdas;  // members, in scan order
    std::uint64_t n = 0;
    unsigned k = 0;
    bool full_rank = false;
    std::optional<std::vector<std::uint64_t>> formula;  // k = m and a != 0 only
    std::optional<std::vector<std::uint64_t>> brute;
    std::optional<std::vector<std::uint64_t>> direct;  // k < m fallback
    unsigned verified = 0;  // members with formula == brute at every r
    std::vector<std::string> notes;
};

struct FamilySweep {
    unsigned exponent = 0;  // the i of x^(q^i + 1)
    std::vector<SweepGroup> groups;  // ordered by first appearance
};

// Runs the full formula-vs-search verification for every nonzero coefficient
// in every requested monomial family.  Forms landing in one classification
// class must agree on (n, k) and on the searched hierarchy — they are
// linearly equivalent — and any disagreement throws
// InternalInconsistencyError rather than being folded into the tally.
struct SweepResult {
    FieldPtr field;
    felem a = 1;
    std::uint64_t forms = 0;  // (lambda, family) pairs scanned
    unsigned verified = 0;
    unsigned zero_forms = 0;  // coefficients whose trace form vanishes identically
    unsigned low_rank = 0;    // members with k < m
    bool all_verified = true;  // no member with both routes disagreed
    std::vector<FamilySweep> families;
};

SweepResult sweep_families(const FieldPtr& f, const std::vector<unsigned>& exponents, felem a,
                           const GhwOptions& opts = {});

}  // namespace qfc
