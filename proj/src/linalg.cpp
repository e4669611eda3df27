#include "qfc/linalg.hpp"

#include <algorithm>

namespace qfc::linalg {

std::vector<unsigned> rref(const Field& f, Mat& rows) {
    std::vector<unsigned> pivots;
    if (rows.empty()) return pivots;
    const std::size_t ncols = rows[0].size();
    std::size_t r = 0;
    for (unsigned c = 0; c < ncols && r < rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < rows.size() && rows[sel][c] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        const felem s = f.inv(rows[r][c]);
        for (auto& v : rows[r]) v = f.mul(v, s);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const felem t = rows[i][c];
            for (std::size_t k = 0; k < ncols; ++k)
                rows[i][k] ^= f.mul(t, rows[r][k]);
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

unsigned rank(const Field& f, Mat rows) {
    return static_cast<unsigned>(rref(f, rows).size());
}

Mat kernel(const Field& f, const Mat& c, unsigned n) {
    Mat red = c;
    for (auto& row : red)
        if (row.size() != n) throw InvalidArgumentError("constraint row has wrong length");
    const std::vector<unsigned> piv = rref(f, red);
    std::vector<bool> is_pivot(n, false);
    for (unsigned p : piv) is_pivot[p] = true;
    Mat out;
    for (unsigned fc = 0; fc < n; ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<felem> x(n, 0);
        x[fc] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = red[i][fc];
        out.push_back(std::move(x));
    }
    rref(f, out);  // canonical row order
    return out;
}

Mat matmul(const Field& f, const Mat& a, const Mat& b) {
    if (a.empty()) return {};
    const std::size_t k = a[0].size();
    if (k != b.size()) throw InvalidArgumentError("matrix dimensions do not match");
    const std::size_t nc = b.empty() ? 0 : b[0].size();
    Mat out(a.size(), std::vector<felem>(nc, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t t = 0; t < k; ++t) {
            if (a[i][t] == 0) continue;
            for (std::size_t j = 0; j < nc; ++j)
                out[i][j] ^= f.mul(a[i][t], b[t][j]);
        }
    return out;
}

Mat transpose(const Mat& a, unsigned ncols) {
    Mat out(ncols, std::vector<felem>(a.size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (unsigned j = 0; j < ncols; ++j) out[j][i] = a[i][j];
    return out;
}

}  // namespace qfc::linalg
