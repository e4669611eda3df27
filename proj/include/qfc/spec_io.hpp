#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfc/quadform.hpp"
#include "qfc/subspace.hpp"

namespace qfc {

// A form-spec document resolved into live objects plus a normalized echo for
// result documents.  Element values in the echo are polynomial-basis bit
// vectors read as integers (bit i = coefficient of z^i).
struct ResolvedForm {
    FieldPtr field;
    QuadraticForm form;
    felem a;
    nlohmann::ordered_json echo;
};

// Accepted document shape:
//   e         positive integer, q = 2^e
//   m         positive integer, extension degree over F_q
//   modulus   optional little-endian 0/1 list for the degree-(e*m) modulus,
//             e.g. z^4+z+1 -> [1,1,0,0,1]; defaults to the built-in table
//   monomials non-empty list of {i, j, lambda}
//   a         "0", "1" or "w^k" (base-field element)
// where lambda is "w^k" (k-th power of the canonical generator, which must
// be primitive for this notation) or a little-endian 0/1 coefficient list.
// Violations throw ParseError naming the offending field.
ResolvedForm resolve_form_spec(const nlohmann::json& doc);
ResolvedForm load_form_spec(const std::string& path);

// "0" | "1" | "w^k" -> element value; ParseError (naming `field`) otherwise.
felem parse_element_text(const Field& f, const std::string& text, const std::string& field);

// Subspace rows with entries converted to base-field labels (the index of
// the entry in base-element order; for q = 2 the label is the bit itself).
std::vector<std::vector<std::uint64_t>> witness_rows(const Subspace& h);

}  // namespace qfc
