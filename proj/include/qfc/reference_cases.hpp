#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qfc/ghw.hpp"

namespace qfc {

// A built-in end-to-end check over the default fields: scan lambda = w^k
// upward until Tr(lambda x^(q^family + 1)) lands in the stated class, then
// run both hierarchy routes against the frozen expectation.  The hierarchy
// depends on the class alone, so any representative coefficient serves.
struct ReferenceCase {
    std::string name;
    unsigned e = 1;
    unsigned m = 0;
    unsigned family = 1;  // the i of x^(q^i + 1)
    unsigned rank = 0;
    StandardType standard = StandardType::I;
    std::vector<std::uint64_t> expected;  // d_1 .. d_m at a = 1
};

const std::vector<ReferenceCase>& reference_cases();

struct ReferenceRun {
    ReferenceCase item;
    felem lambda = 0;
    std::uint64_t lambda_log = 0;
    Classification cls;
    std::uint64_t n = 0;
    std::vector<std::uint64_t> formula;
    std::vector<std::uint64_t> brute;
    bool pass = false;
};

// The table is a parameter so that a deliberately corrupted expectation can
// demonstrate the harness really rejects bad values.
ReferenceRun run_reference_case(const ReferenceCase& rc, const GhwOptions& opts = {});
std::vector<ReferenceRun> run_reference_cases(const std::vector<ReferenceCase>& table,
                                              const GhwOptions& opts = {});

}  // namespace qfc
