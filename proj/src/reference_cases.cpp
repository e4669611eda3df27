#include "qfc/reference_cases.hpp"

#include "qfc/errors.hpp"

namespace qfc {

const std::vector<ReferenceCase>& reference_cases() {
    using S = StandardType;
    static const std::vector<ReferenceCase> table = {
        {"non-degenerate-even-minus", 1, 4, 1, 4, S::I, {2, 3, 5, 6}},
        {"non-degenerate-even-plus", 1, 6, 1, 6, S::II, {16, 24, 30, 33, 35, 36}},
        {"non-degenerate-odd", 1, 5, 1, 5, S::III, {6, 10, 13, 15, 16}},
        {"degenerate-even-minus", 1, 6, 1, 4, S::I, {8, 12, 18, 21, 23, 24}},
        {"degenerate-even-plus", 1, 4, 1, 2, S::II, {6, 9, 11, 12}},
        {"degenerate-odd", 1, 6, 2, 5, S::III, {12, 20, 26, 29, 31, 32}},
    };
    return table;
}

ReferenceRun run_reference_case(const ReferenceCase& rc, const GhwOptions& opts) {
    ReferenceRun run;
    run.item = rc;
    const FieldPtr f = make_field(rc.e, rc.m);
    if (!f->z_is_primitive())
        throw InternalInconsistencyError("default modulus generator is not primitive");
    felem lam = 1;
    bool found = false;
    for (std::uint64_t k = 0; k + 1 < f->order(); ++k, lam = f->mul(lam, f->z())) {
        const Classification c = classify(monomial_form(f, rc.family, lam));
        if (c.rank == rc.rank && c.standard == rc.standard) {
            run.lambda = lam;
            run.lambda_log = k;
            run.cls = c;
            found = true;
            break;
        }
    }
    if (!found)
        throw InvalidArgumentError("no coefficient realizes the required class for " + rc.name);
    VerifyOptions vo;
    vo.ghw = opts;
    const HierarchyReport rep = verify_hierarchy(monomial_form(f, rc.family, run.lambda), 1, vo);
    run.n = rep.n;
    if (rep.formula) run.formula = rep.formula->values;
    if (rep.brute) run.brute = rep.brute->values;
    run.pass = rep.ok() && rep.full_rank && run.formula == rc.expected && run.brute == rc.expected;
    return run;
}

std::vector<ReferenceRun> run_reference_cases(const std::vector<ReferenceCase>& table,
                                              const GhwOptions& opts) {
    std::vector<ReferenceRun> out;
    out.reserve(table.size());
    for (const ReferenceCase& rc : table) out.push_back(run_reference_case(rc, opts));
    return out;
}

}  // namespace qfc
