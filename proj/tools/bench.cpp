// Benchmark of the orbit-sampling kernel: serial reference vs OpenMP,
// verifying that both produce identical outcomes.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "germlab/normalform.hpp"
#include "germlab/orbit.hpp"
#include "germlab/series.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace germlab;

namespace {

Germ bench_germ(int trunc) {
    Series2 x(trunc), y(trunc);
    x.set_coeff(1, 0, RationalComplex(1));
    x.set_coeff(1, 1, RationalComplex(1));
    x.set_coeff(3, 0, RationalComplex(Rational(-1, 2)));
    y.set_coeff(0, 1, RationalComplex(1));
    y.set_coeff(1, 1, RationalComplex(-1));
    return Germ::from_map(Map2(x, y), true);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_outcomes(const InvarianceResult& a, const InvarianceResult& b) {
    if (a.outcomes.size() != b.outcomes.size()) return false;
    for (size_t i = 0; i < a.outcomes.size(); ++i) {
        if (a.outcomes[i].ok() != b.outcomes[i].ok()) return false;
        if (a.outcomes[i].start_z.re.str(40) != b.outcomes[i].start_z.re.str(40)) return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    long samples = 64, steps = 2000;
    mpfr_prec_t prec = 256;
    for (int i = 1; i + 1 < argc; i += 2) {
        if (!std::strcmp(argv[i], "--samples")) samples = std::atol(argv[i + 1]);
        if (!std::strcmp(argv[i], "--steps")) steps = std::atol(argv[i + 1]);
        if (!std::strcmp(argv[i], "--precision")) prec = std::atol(argv[i + 1]);
    }

    Germ g = bench_germ(12);
    DirectionReport rep = classify(g, prec);
    NormalFormData nf = decompose(g, rep.k, *rep.t, *rep.r, rep.s);
    RescaledGerm rg = rescale(g, nf, rep, prec);
    DomainParams params = default_params(rep.k, *rep.t, *rep.r, rep.orders.front().m, rep.s,
                                         rg.beta, rg.Delta, prec);

    std::printf("orbit sampling kernel: %ld samples x %ld steps at %ld bits\n", samples, steps,
                static_cast<long>(prec));

    auto t0 = std::chrono::steady_clock::now();
    InvarianceResult serial = invariance_check_serial(rg.map, params, samples, steps, 7);
    double t_serial = seconds_since(t0);
    std::printf("  serial reference: %8.3f s  (%ld violations)\n", t_serial,
                serial.violation_count());

    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    for (int threads = 1; threads <= max_threads; threads *= 2) {
        t0 = std::chrono::steady_clock::now();
        InvarianceResult par = invariance_check(rg.map, params, samples, steps, 7, threads);
        double t_par = seconds_since(t0);
        bool match = same_outcomes(serial, par);
        std::printf("  openmp %2d thread%s: %8.3f s  speedup %.2fx  results %s\n", threads,
                    threads == 1 ? " " : "s", t_par, t_serial / t_par,
                    match ? "identical" : "DIFFER");
        if (!match) return 1;
    }

    // single long orbit (rate-style run)
    t0 = std::chrono::steady_clock::now();
    OrbitOptions opt;
    opt.n_max = 100000;
    opt.record_every = 1000;
    Complex z0(Real::parse("0.1", prec), Real(prec));
    Complex w0(Real::parse("1e-9", prec), Real(prec));
    OrbitRecord rec = iterate_orbit(rg.map, z0, w0, opt);
    double t_orbit = seconds_since(t0);
    std::printf("single orbit, %ld steps: %8.3f s (%.2f us/step)\n", rec.steps, t_orbit,
                1e6 * t_orbit / static_cast<double>(rec.steps));
    return 0;
}
