#include "qfc/sweep.hpp"

#include <utility>

#include "qfc/errors.hpp"

namespace qfc {

namespace {

// Scan order for the coefficients: powers of the canonical generator when it
// is primitive (so positions double as discrete logs), ascending element
// order otherwise.  Either way the order is deterministic.
std::vector<felem> coefficient_scan(const Field& f) {
    std::vector<felem> out;
    out.reserve(f.order() - 1);
    if (f.z_is_primitive()) {
        felem cur = 1;
        for (std::uint64_t k = 0; k + 1 < f.order(); ++k) {
            out.push_back(cur);
            cur = f.mul(cur, f.z());
        }
    } else {
        for (felem x = 1; x < f.order(); ++x) out.push_back(x);
    }
    return out;
}

void check_group_consistency(const SweepGroup& g, const HierarchyReport& rep, felem lam) {
    const std::string who = "coefficient " + std::to_string(lam) + " of an existing class";
    if (rep.n != g.n || rep.k != g.k)
        throw InternalInconsistencyError(who + " disagrees on (n, k)");
    if (g.brute && rep.brute && *g.brute != rep.brute->values)
        throw InternalInconsistencyError(who + " disagrees on the searched hierarchy");
    if (g.direct && rep.direct && *g.direct != rep.direct->values)
        throw InternalInconsistencyError(who + " disagrees on the direct hierarchy");
}

}  // namespace

SweepResult sweep_families(const FieldPtr& f, const std::vector<unsigned>& exponents, felem a,
                           const GhwOptions& opts) {
    if (exponents.empty()) throw InvalidArgumentError("no monomial families requested");
    SweepResult out;
    out.field = f;
    out.a = a;
    const std::vector<felem> lambdas = coefficient_scan(*f);
    VerifyOptions vo;
    vo.ghw = opts;
    for (unsigned i : exponents) {
        FamilySweep fam;
        fam.exponent = i;
        for (felem lam : lambdas) {
            const HierarchyReport rep = verify_hierarchy(monomial_form(f, i, lam), a, vo);
            ++out.forms;
            SweepGroup* g = nullptr;
            for (auto& grp : fam.groups)
                if (grp.cls == rep.cls) {
                    g = &grp;
                    break;
                }
            if (!g) {
                fam.groups.emplace_back();
                g = &fam.groups.back();
                g->cls = rep.cls;
                g->n = rep.n;
                g->k = rep.k;
                g->full_rank = rep.full_rank;
                if (rep.formula) g->formula = rep.formula->values;
                if (rep.brute) g->brute = rep.brute->values;
                if (rep.direct) g->direct = rep.direct->values;
                g->notes = rep.notes;
                if (rep.error) g->notes.push_back(*rep.error);
            } else {
                check_group_consistency(*g, rep, lam);
            }
            g->lambdas.push_back(lam);
            if (rep.cls.rank == 0) {
                ++out.zero_forms;
            } else if (!rep.full_rank) {
                ++out.low_rank;
            } else if (rep.formula && rep.brute) {
                if (rep.mismatches.empty()) {
                    ++g->verified;
                    ++out.verified;
                } else {
                    out.all_verified = false;
                    g->notes.push_back("coefficient " + std::to_string(lam) +
                                       ": formula and search disagree");
                }
            }
        }
        out.families.push_back(std::move(fam));
    }
    return out;
}

}  // namespace qfc
