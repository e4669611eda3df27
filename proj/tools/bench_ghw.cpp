#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

#include "CLI11.hpp"

#include "qfc/ghw.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

template <class F>
double best_ms(int reps, F&& run) {
    double best = 0;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        run();
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (i == 0 || ms < best) best = ms;
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"timing: serial vs parallel subspace maximization"};
    unsigned e = 1, m = 6, family = 1, lambda_log = 1;
    int reps = 3;
    std::vector<unsigned> rs;
    app.add_option("--e", e, "base-field exponent");
    app.add_option("--m", m, "extension degree");
    app.add_option("--i", family, "family exponent of x^(q^i+1)");
    app.add_option("--lambda-log", lambda_log, "coefficient w^k");
    app.add_option("--reps", reps, "repetitions per cell (best kept)");
    app.add_option("--r", rs, "subcode dimensions (default: every r)");
    CLI11_PARSE(app, argc, argv);

    const qfc::FieldPtr f = qfc::make_field(e, m);
    const qfc::QuadraticForm form = qfc::monomial_form(f, family, f->pow(f->z(), lambda_log));
    const qfc::DefiningSet d = qfc::defining_set(form, 1);
    if (d.span_dim() != m) {
        std::cerr << "chosen coefficient gives k < m; pick another --lambda-log\n";
        return 2;
    }
    if (rs.empty())
        for (unsigned r = 1; r <= m; ++r) rs.push_back(r);

#ifdef _OPENMP
    std::printf("# OpenMP, max threads %d\n", omp_get_max_threads());
#else
    std::printf("# built without OpenMP: parallel falls back to the serial path\n");
#endif
    std::printf("# q=%llu m=%u family=%u lambda=w^%u n=%llu\n",
                static_cast<unsigned long long>(f->q()), m, family, lambda_log,
                static_cast<unsigned long long>(d.size()));
    std::printf("%4s %12s %12s %12s %8s\n", "r", "subspaces", "serial_ms", "parallel_ms",
                "speedup");
    for (unsigned r : rs) {
        if (r < 1 || r > m) {
            std::cerr << "skipping r=" << r << " outside 1.." << m << "\n";
            continue;
        }
        qfc::GhwOptions serial;
        serial.threads = 1;
        serial.collect_witness = false;
        qfc::GhwOptions par;
        par.threads = 0;
        par.collect_witness = false;
        qfc::SpanMax a, b;
        const double ts = best_ms(reps, [&] { a = qfc::max_intersection_serial(d, m - r, serial); });
        const double tp = best_ms(reps, [&] { b = qfc::max_intersection_parallel(d, m - r, par); });
        if (a.count != b.count) {
            std::cerr << "serial and parallel maxima disagree at r=" << r << "\n";
            return 1;
        }
        std::printf("%4u %12llu %12.3f %12.3f %8.2f\n", r,
                    static_cast<unsigned long long>(qfc::gaussian_binomial(m, m - r, f->q())), ts,
                    tp, tp > 0 ? ts / tp : 0.0);
    }
    return 0;
}
