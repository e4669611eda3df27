#include "qfc/spec_io.hpp"

#include <fstream>

#include "qfc/errors.hpp"

namespace qfc {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ParseError(field + ": " + why);
}

felem power_of_w(const Field& f, const std::string& text, const std::string& field) {
    if (!f.z_is_primitive())
        fail(field, "w^k notation needs the canonical generator to be primitive; "
                    "give an explicit coefficient list instead");
    std::uint64_t k = 1;
    if (text != "w") {
        if (text.size() < 3 || text[0] != 'w' || text[1] != '^') fail(field, "expected \"w^k\"");
        k = 0;
        for (std::size_t p = 2; p < text.size(); ++p) {
            if (text[p] < '0' || text[p] > '9') fail(field, "expected \"w^k\" with decimal k");
            k = k * 10 + static_cast<std::uint64_t>(text[p] - '0');
            if (k > (std::uint64_t{1} << 62)) fail(field, "exponent too large");
        }
        k %= f.order() - 1;
    }
    return f.pow(f.z(), k);
}

const json& require(const json& doc, const char* key) {
    if (!doc.is_object()) fail(key, "spec document is not a JSON object");
    const auto it = doc.find(key);
    if (it == doc.end()) fail(key, "required field is missing");
    return *it;
}

std::uint64_t get_uint(const json& v, const char* field, std::uint64_t min_value) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        fail(field, "expected a non-negative integer");
    const auto u = v.get<std::uint64_t>();
    if (u < min_value) fail(field, "value below " + std::to_string(min_value));
    return u;
}

felem bits_from_list(const json& v, const char* field, unsigned max_bits) {
    if (!v.is_array() || v.empty()) fail(field, "expected a non-empty list of 0/1 coefficients");
    if (v.size() > max_bits) fail(field, "coefficient list longer than " + std::to_string(max_bits));
    felem bits = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& b = v[i];
        if (!b.is_number_integer() || (b.get<std::int64_t>() != 0 && b.get<std::int64_t>() != 1))
            fail(field, "coefficients must be 0 or 1");
        if (b.get<std::int64_t>() == 1) bits |= felem{1} << i;
    }
    return bits;
}

felem element_from(const Field& f, const json& v, const char* field) {
    if (v.is_string()) return parse_element_text(f, v.get<std::string>(), field);
    if (v.is_array()) return bits_from_list(v, field, f.bit_degree());
    fail(field, "expected \"0\", \"1\", \"w^k\" or a coefficient list");
}

}  // namespace

felem parse_element_text(const Field& f, const std::string& text, const std::string& field) {
    if (text == "0") return 0;
    if (text == "1") return 1;
    return power_of_w(f, text, field);
}

ResolvedForm resolve_form_spec(const json& doc) {
    const auto e = static_cast<unsigned>(get_uint(require(doc, "e"), "e", 1));
    const auto m = static_cast<unsigned>(get_uint(require(doc, "m"), "m", 1));

    FieldPtr field;
    try {
        if (doc.contains("modulus"))
            field = make_field(e, m, bits_from_list(doc["modulus"], "modulus", 64));
        else
            field = make_field(e, m);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& err) {
        fail(doc.contains("modulus") ? "modulus" : "e/m", err.what());
    }

    const json& monos = require(doc, "monomials");
    if (!monos.is_array() || monos.empty()) fail("monomials", "expected a non-empty list");
    std::vector<DOMonomial> terms;
    for (const auto& entry : monos) {
        if (!entry.is_object()) fail("monomials", "entries must be {i, j, lambda} objects");
        DOMonomial t;
        t.i = static_cast<unsigned>(get_uint(require(entry, "i"), "monomials.i", 0));
        t.j = static_cast<unsigned>(get_uint(require(entry, "j"), "monomials.j", 0));
        t.lambda = element_from(*field, require(entry, "lambda"), "monomials.lambda");
        terms.push_back(t);
    }
    DOPolynomial poly;
    try {
        poly = DOPolynomial(*field, std::move(terms));
    } catch (const Error& err) {
        fail("monomials", err.what());
    }
    if (poly.is_zero()) fail("monomials", "all coefficients vanish; the zero form has no code");

    felem a = 1;
    if (doc.contains("a")) {
        const json& av = doc["a"];
        if (!av.is_string()) fail("a", "expected \"0\", \"1\" or \"w^k\"");
        a = element_from(*field, av, "a");
        if (!field->in_base_field(a)) fail("a", "target value must lie in the base field");
    }

    ordered_json echo;
    echo["e"] = e;
    echo["m"] = m;
    echo["q"] = field->q();
    ordered_json mod_bits = ordered_json::array();
    for (unsigned b = 0; b <= field->bit_degree(); ++b)
        mod_bits.push_back((field->modulus_bits() >> b) & 1);
    echo["modulus"] = std::move(mod_bits);
    ordered_json mono_echo = ordered_json::array();
    for (const DOMonomial& t : poly.monomials())
        mono_echo.push_back(ordered_json{{"i", t.i}, {"j", t.j}, {"lambda", t.lambda}});
    echo["monomials"] = std::move(mono_echo);
    echo["a"] = a;

    return ResolvedForm{field, QuadraticForm(field, poly, Basis::polynomial(field)), a,
                        std::move(echo)};
}

ResolvedForm load_form_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("spec file: cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& err) {
        throw ParseError(std::string("spec file: ") + err.what());
    }
    return resolve_form_spec(doc);
}

std::vector<std::vector<std::uint64_t>> witness_rows(const Subspace& h) {
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(h.dim());
    for (const auto& row : h.rows()) {
        std::vector<std::uint64_t> labels;
        labels.reserve(row.size());
        for (felem v : row) labels.push_back(h.scalar_field().base_label(v));
        out.push_back(std::move(labels));
    }
    return out;
}

}  // namespace qfc
