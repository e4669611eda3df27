#pragma once

#include <vector>

#include "qfc/field.hpp"

// Dense linear algebra over the base field F_q of a Field.  Matrix entries
// must be base-field elements; callers validate, these routines trust.
namespace qfc::linalg {

using Mat = std::vector<std::vector<felem>>;

// In-place reduced row echelon form; zero rows are removed.  Returns the
// pivot columns in increasing order (so rows.size() == pivots.size()).
std::vector<unsigned> rref(const Field& f, Mat& rows);

unsigned rank(const Field& f, Mat rows);

// RREF basis of {x in F_q^n : C x^T = 0} for C given as rows of length n.
Mat kernel(const Field& f, const Mat& c, unsigned n);

Mat matmul(const Field& f, const Mat& a, const Mat& b);
Mat transpose(const Mat& a, unsigned ncols);

}  // namespace qfc::linalg
