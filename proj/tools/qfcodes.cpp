#include <chrono>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qfc/errors.hpp"
#include "qfc/ghw.hpp"
#include "qfc/reference_cases.hpp"
#include "qfc/spec_io.hpp"
#include "qfc/sweep.hpp"

namespace {

using nlohmann::ordered_json;

struct CommonOpts {
    std::string format = "json";
    bool witnesses = false;
    bool audit = false;
    std::uint64_t max_subspaces = qfc::kSubspaceEnumerationLimit;
    int threads = 0;
    bool no_timing = false;
};

class StageTimer {
public:
    void lap(const char* name) {
        const auto now = clock::now();
        stages_.emplace_back(name, std::chrono::duration<double, std::milli>(now - mark_).count());
        mark_ = now;
    }
    ordered_json to_json() const {
        ordered_json out;
        for (const auto& [name, ms] : stages_) out[name] = ms;
        return out;
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point mark_ = clock::now();
    std::vector<std::pair<std::string, double>> stages_;
};

ordered_json classification_json(const qfc::Classification& c) {
    return ordered_json{{"m", c.m},
                        {"rank", c.rank},
                        {"type", c.type},
                        {"standard", qfc::to_string(c.standard)},
                        {"s", c.s},
                        {"dim_ker_bilinear", c.dim_ker_bilinear},
                        {"dim_ker_form", c.dim_ker_form},
                        {"degenerate", c.degenerate}};
}

ordered_json report_json(const ordered_json& echo, const qfc::HierarchyReport& rep,
                         const CommonOpts& o) {
    ordered_json doc;
    doc["spec"] = echo;
    doc["classification"] = classification_json(rep.cls);
    if (!rep.error)
        doc["code"] =
            ordered_json{{"n", rep.n}, {"k", rep.k}, {"m", rep.m}, {"full_rank", rep.full_rank}};
    ordered_json h = ordered_json::object();
    if (rep.formula) h["formula"] = rep.formula->values;
    if (rep.brute) h["brute"] = rep.brute->values;
    if (rep.direct) h["direct"] = rep.direct->values;
    doc["hierarchy"] = std::move(h);
    ordered_json mm = ordered_json::array();
    for (const auto& x : rep.mismatches)
        mm.push_back(
            ordered_json{{"r", x.r}, {"formula", x.formula_value}, {"brute", x.brute_value}});
    doc["mismatches"] = std::move(mm);
    if (o.witnesses && rep.brute) {
        ordered_json ws = ordered_json::array();
        for (std::size_t idx = 0; idx < rep.brute->witnesses.size(); ++idx)
            if (rep.brute->witnesses[idx]) {
                const qfc::Subspace& k = *rep.brute->witnesses[idx];
                ws.push_back(ordered_json{{"r", idx + 1},
                                          {"dim", k.dim()},
                                          {"rows", qfc::witness_rows(k)}});
            }
        doc["witnesses"] = std::move(ws);
    }
    if (rep.audit)
        doc["audit"] = ordered_json{{"differs", rep.audit->differs},
                                    {"integral", rep.audit->integral},
                                    {"values", rep.audit->values},
                                    {"note", rep.audit->note}};
    doc["notes"] = rep.notes;
    if (rep.error) doc["error"] = *rep.error;
    return doc;
}

std::string csv_escape(const std::string& s) {
    // The fields emitted here never contain quotes or newlines; commas would
    // only appear in notes, which CSV output omits.
    return s;
}

void render_kv(std::ostream& os, const ordered_json& obj, const std::string& indent) {
    for (const auto& [key, val] : obj.items())
        os << indent << key << " = " << (val.is_string() ? val.get<std::string>() : val.dump())
           << "\n";
}

void render_hierarchy_table(std::ostream& os, const ordered_json& doc) {
    if (doc.contains("classification")) {
        os << "classification\n";
        render_kv(os, doc["classification"], "  ");
    }
    if (doc.contains("code")) {
        const auto& c = doc["code"];
        os << "code  n=" << c["n"] << "  k=" << c["k"] << "  m=" << c["m"]
           << (c["full_rank"].get<bool>() ? "  (full rank)" : "  (RANK DEFICIENT)") << "\n";
    }
    const auto& h = doc["hierarchy"];
    std::vector<std::string> methods;
    for (const auto& [key, val] : h.items()) {
        (void)val;
        methods.push_back(key);
    }
    if (!methods.empty()) {
        os << "  r";
        for (const auto& mth : methods) os << "\t" << mth;
        os << "\n";
        const std::size_t len = h[methods.front()].size();
        for (std::size_t i = 0; i < len; ++i) {
            os << "  " << (i + 1);
            for (const auto& mth : methods) os << "\t" << h[mth][i];
            os << "\n";
        }
    }
    for (const auto& x : doc["mismatches"])
        os << "MISMATCH at r=" << x["r"] << ": formula=" << x["formula"]
           << " brute=" << x["brute"] << "\n";
    if (doc.contains("witnesses"))
        for (const auto& w : doc["witnesses"]) {
            os << "witness r=" << w["r"] << " (dim " << w["dim"] << ")\n";
            for (const auto& row : w["rows"]) {
                os << "   ";
                for (const auto& v : row) os << " " << v;
                os << "\n";
            }
        }
    if (doc.contains("audit")) {
        os << "audit: " << doc["audit"]["note"].get<std::string>() << "\n";
        if (!doc["audit"]["values"].empty()) os << "audit values: " << doc["audit"]["values"].dump() << "\n";
    }
    if (doc.contains("notes"))
        for (const auto& nte : doc["notes"]) os << "note: " << nte.get<std::string>() << "\n";
    if (doc.contains("error")) os << "error: " << doc["error"].get<std::string>() << "\n";
}

void render_hierarchy_csv(std::ostream& os, const ordered_json& doc) {
    const auto& h = doc["hierarchy"];
    const bool has_f = h.contains("formula");
    const bool has_b = h.contains("brute");
    std::size_t len = 0;
    if (has_f) len = h["formula"].size();
    if (has_b) len = std::max(len, h["brute"].size());
    os << "r,d_formula,d_brute,match\n";
    for (std::size_t i = 0; i < len; ++i) {
        os << (i + 1) << ",";
        if (has_f) os << h["formula"][i];
        os << ",";
        if (has_b) os << h["brute"][i];
        os << ",";
        if (has_f && has_b) os << (h["formula"][i] == h["brute"][i] ? "yes" : "no");
        os << "\n";
    }
}

void emit(const ordered_json& doc, const std::string& format, const std::string& kind) {
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    if (format == "csv") {
        if (kind == "hierarchy") {
            render_hierarchy_csv(std::cout, doc);
        } else if (kind == "classify") {
            std::cout << "field,value\n";
            for (const auto& [key, val] : doc["classification"].items())
                std::cout << key << ","
                          << (val.is_string() ? csv_escape(val.get<std::string>()) : val.dump())
                          << "\n";
        } else if (kind == "examples") {
            std::cout << "name,m,family,lambda_log,rank,standard,pass\n";
            for (const auto& c : doc["cases"])
                std::cout << c["name"].get<std::string>() << "," << c["m"] << "," << c["family"]
                          << "," << c["lambda_log"] << "," << c["classification"]["rank"] << ","
                          << c["classification"]["standard"].get<std::string>() << ","
                          << (c["pass"].get<bool>() ? "yes" : "no") << "\n";
        } else {  // sweep
            std::cout << "family,rank,standard,count,n,k,verified\n";
            for (const auto& fam : doc["families"])
                for (const auto& g : fam["groups"])
                    std::cout << fam["exponent"] << "," << g["classification"]["rank"] << ","
                              << g["classification"]["standard"].get<std::string>() << ","
                              << g["count"] << "," << g["n"] << "," << g["k"] << ","
                              << g["verified"] << "\n";
        }
        return;
    }
    // table
    if (kind == "hierarchy") {
        render_hierarchy_table(std::cout, doc);
    } else if (kind == "classify") {
        std::cout << "classification\n";
        render_kv(std::cout, doc["classification"], "  ");
    } else if (kind == "examples") {
        for (const auto& c : doc["cases"])
            std::cout << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  "
                      << c["name"].get<std::string>() << "  m=" << c["m"]
                      << " family=" << c["family"] << " lambda=w^" << c["lambda_log"] << " (t="
                      << c["classification"]["rank"] << ", "
                      << c["classification"]["standard"].get<std::string>()
                      << ")  expected=" << c["expected"].dump() << " brute=" << c["brute"].dump()
                      << "\n";
        std::cout << doc["passed"] << "/" << doc["cases"].size() << " pass\n";
    } else {  // sweep
        for (const auto& fam : doc["families"]) {
            std::cout << "family x^(q^" << fam["exponent"] << "+1)\n";
            for (const auto& g : fam["groups"]) {
                std::cout << "  t=" << g["classification"]["rank"] << " "
                          << g["classification"]["standard"].get<std::string>() << "  count="
                          << g["count"] << "  n=" << g["n"] << "  k=" << g["k"]
                          << "  verified=" << g["verified"] << "\n";
                if (g.contains("notes"))
                    for (const auto& nte : g["notes"])
                        std::cout << "    note: " << nte.get<std::string>() << "\n";
            }
        }
        std::cout << "forms=" << doc["forms"] << " verified=" << doc["verified"]
                  << " zero_forms=" << doc["zero_forms"] << " low_rank=" << doc["low_rank"]
                  << " all_verified=" << (doc["all_verified"].get<bool>() ? "yes" : "no") << "\n";
    }
}

int cmd_classify(const std::string& spec_path, const CommonOpts& o) {
    StageTimer t;
    const qfc::ResolvedForm rf = qfc::load_form_spec(spec_path);
    t.lap("parse_ms");
    const qfc::Classification cls = qfc::classify(rf.form);
    t.lap("classify_ms");
    ordered_json doc;
    doc["spec"] = rf.echo;
    doc["classification"] = classification_json(cls);
    if (!o.no_timing) doc["timing_ms"] = t.to_json();
    emit(doc, o.format, "classify");
    if (cls.rank == 0) {
        std::cerr << "error: the trace form vanishes identically (zero form)\n";
        return 2;
    }
    return 0;
}

int cmd_hierarchy(const std::string& spec_path, const std::string& method, const CommonOpts& o) {
    StageTimer t;
    const qfc::ResolvedForm rf = qfc::load_form_spec(spec_path);
    t.lap("parse_ms");
    if (rf.a == 0 && method == "formula") {
        std::cerr << "error: no closed form for a = 0; use brute\n";
        return 2;
    }
    qfc::VerifyOptions vo;
    vo.run_formula = method != "brute";
    vo.run_brute = method != "formula";
    vo.audit = o.audit;
    vo.ghw.max_subspaces = o.max_subspaces;
    vo.ghw.threads = o.threads;
    vo.ghw.collect_witness = o.witnesses;
    const qfc::HierarchyReport rep = qfc::verify_hierarchy(rf.form, rf.a, vo);
    t.lap("run_ms");
    ordered_json doc = report_json(rf.echo, rep, o);
    if (!o.no_timing) doc["timing_ms"] = t.to_json();
    emit(doc, o.format, "hierarchy");
    if (rep.error) {
        std::cerr << "error: " << *rep.error << "\n";
        return 2;
    }
    return rep.mismatches.empty() ? 0 : 1;
}

int cmd_examples(const CommonOpts& o) {
    StageTimer t;
    qfc::GhwOptions go;
    go.max_subspaces = o.max_subspaces;
    go.threads = o.threads;
    go.collect_witness = false;
    const auto runs = qfc::run_reference_cases(qfc::reference_cases(), go);
    t.lap("run_ms");
    ordered_json doc;
    ordered_json arr = ordered_json::array();
    std::size_t passed = 0;
    for (const auto& run : runs) {
        arr.push_back(ordered_json{{"name", run.item.name},
                                   {"e", run.item.e},
                                   {"m", run.item.m},
                                   {"family", run.item.family},
                                   {"lambda_log", run.lambda_log},
                                   {"classification", classification_json(run.cls)},
                                   {"n", run.n},
                                   {"expected", run.item.expected},
                                   {"formula", run.formula},
                                   {"brute", run.brute},
                                   {"pass", run.pass}});
        passed += run.pass ? 1 : 0;
    }
    doc["cases"] = std::move(arr);
    doc["passed"] = passed;
    doc["failed"] = runs.size() - passed;
    if (!o.no_timing) doc["timing_ms"] = t.to_json();
    emit(doc, o.format, "examples");
    return passed == runs.size() ? 0 : 1;
}

int cmd_sweep(unsigned e, unsigned m, const std::vector<unsigned>& families,
              const std::string& a_text, const CommonOpts& o) {
    StageTimer t;
    const qfc::FieldPtr f = qfc::make_field(e, m);
    const qfc::felem a = qfc::parse_element_text(*f, a_text, "a");
    if (!f->in_base_field(a)) throw qfc::ParseError("a: target value must lie in the base field");
    qfc::GhwOptions go;
    go.max_subspaces = o.max_subspaces;
    go.threads = o.threads;
    go.collect_witness = false;
    const qfc::SweepResult res = qfc::sweep_families(f, families, a, go);
    t.lap("run_ms");
    ordered_json doc;
    doc["e"] = e;
    doc["m"] = m;
    doc["q"] = f->q();
    doc["a"] = a;
    ordered_json fams = ordered_json::array();
    for (const auto& fam : res.families) {
        ordered_json groups = ordered_json::array();
        for (const auto& g : fam.groups) {
            ordered_json gj;
            gj["classification"] = classification_json(g.cls);
            gj["count"] = g.lambdas.size();
            gj["first_lambda"] = g.lambdas.empty() ? 0 : g.lambdas.front();
            gj["n"] = g.n;
            gj["k"] = g.k;
            gj["full_rank"] = g.full_rank;
            if (g.formula) gj["formula"] = *g.formula;
            if (g.brute) gj["brute"] = *g.brute;
            if (g.direct) gj["direct"] = *g.direct;
            gj["verified"] = g.verified;
            gj["notes"] = g.notes;
            groups.push_back(std::move(gj));
        }
        fams.push_back(ordered_json{{"exponent", fam.exponent}, {"groups", std::move(groups)}});
    }
    doc["families"] = std::move(fams);
    doc["forms"] = res.forms;
    doc["verified"] = res.verified;
    doc["zero_forms"] = res.zero_forms;
    doc["low_rank"] = res.low_rank;
    doc["all_verified"] = res.all_verified;
    if (!o.no_timing) doc["timing_ms"] = t.to_json();
    emit(doc, o.format, "sweep");
    return res.all_verified ? 0 : 1;
}

void add_format(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "table", "csv"}));
    cmd->add_flag("--no-timing", o.no_timing, "omit timing fields (determinism tests)");
}

void add_search(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--max-subspaces", o.max_subspaces,
                    "abort (exit 3) if a search would visit more subspaces");
    cmd->add_option("--threads", o.threads,
                    "search threads; 0 = all, 1 = serial reference path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"trace codes from quadratic forms over even-characteristic fields: "
                 "classification, weight hierarchies, verification sweeps"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string spec_path;
    std::string method = "both";
    unsigned sweep_e = 1;
    unsigned sweep_m = 0;
    std::vector<unsigned> sweep_families_arg{1};
    std::string sweep_a = "1";

    CLI::App* classify_cmd = app.add_subcommand("classify", "classify a form spec");
    classify_cmd->add_option("--spec", spec_path, "form spec JSON file")->required();
    add_format(classify_cmd, o);

    CLI::App* hier_cmd =
        app.add_subcommand("hierarchy", "weight hierarchy of the code of a form spec");
    hier_cmd->add_option("--spec", spec_path, "form spec JSON file")->required();
    hier_cmd->add_option("--method", method, "hierarchy route")
        ->check(CLI::IsMember({"formula", "brute", "both"}));
    hier_cmd->add_flag("--witnesses", o.witnesses, "emit maximizing subspaces");
    hier_cmd->add_flag("--audit-typos", o.audit,
                       "emit the as-published degenerate closed forms next to the implemented ones");
    add_format(hier_cmd, o);
    add_search(hier_cmd, o);

    CLI::App* ex_cmd = app.add_subcommand("examples", "run the built-in reference hierarchies");
    add_format(ex_cmd, o);
    add_search(ex_cmd, o);

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "verify formula against search across whole monomial families");
    sweep_cmd->add_option("--e", sweep_e, "base-field exponent, q = 2^e");
    sweep_cmd->add_option("--m", sweep_m, "extension degree")->required();
    sweep_cmd->add_option("--i", sweep_families_arg, "family exponents i of x^(q^i+1)");
    sweep_cmd->add_option("--a", sweep_a, "target value: 0, 1 or w^k");
    add_format(sweep_cmd, o);
    add_search(sweep_cmd, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int rc = app.exit(err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (classify_cmd->parsed()) return cmd_classify(spec_path, o);
        if (hier_cmd->parsed()) return cmd_hierarchy(spec_path, method, o);
        if (ex_cmd->parsed()) return cmd_examples(o);
        return cmd_sweep(sweep_e, sweep_m, sweep_families_arg, sweep_a, o);
    } catch (const qfc::CapacityError& err) {
        std::cerr << "capacity: " << err.what() << "\n";
        return 3;
    } catch (const qfc::InternalInconsistencyError& err) {
        std::cerr << "internal error: " << err.what() << "\n";
        return 4;
    } catch (const qfc::Error& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}
