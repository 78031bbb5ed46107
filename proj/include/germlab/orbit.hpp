#ifndef GERMLAB_ORBIT_HPP
#define GERMLAB_ORBIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "germlab/germ.hpp"
#include "germlab/numericmap.hpp"

namespace germlab {

/// The attracting domain D_{delta,theta,mu}: a z-sector of radius delta and
/// half-angle theta fibered by |w| < |z|^mu.
struct DomainParams {
    Real delta;
    double theta = 0;
    double epsilon = 0;
    double mu = 0;
    Complex beta_hat;
    // Constants used to resolve the paper-level "much less than":
    double c_theta = 0.5, c_delta = 0.01;
};

/// mu = max{(r-k+eps)/m + 1, r-k+eps, t-k+1+eps}; the first term is 1 when
/// m is infinite.  Validates 0 < eps < 1/3 and k <= t <= r, k < r.
double mu_exponent(int k, int t, int r, const OrderVal& m, double eps);

struct ParamOverrides {
    std::optional<double> theta, epsilon, c_theta, c_delta;
    std::optional<std::string> delta;  // decimal, parsed at precision P
};

DomainParams default_params(int k, int t, int r, const OrderVal& m, const DegreeS& s,
                            const Complex& beta, const Complex& Delta, mpfr_prec_t prec,
                            const ParamOverrides& ov = {});

bool in_domain(const Complex& z, const Complex& w, const DomainParams& p);

// --- orbit iteration ---

struct OrbitOptions {
    long n_max = 100000;
    long record_every = 1;   // full-precision samples kept every k steps
    double guard = 1.0;      // divergence guard: stop when |z| or |w| reaches it
    int increments_r = 0;    // when > 0, record 1/z_n^r - 1/z_{n-1}^r
};

struct OrbitRecord {
    std::vector<long> rec_n;
    std::vector<Complex> rec_z, rec_w;
    std::vector<double> log_abs_z, log_abs_w;  // index = step, natural logs
    std::vector<double> incr_re, incr_im;      // 1/z^r increments when requested
    long steps = 0;
    bool diverged = false;      // left the guard ball
    bool non_finite = false;    // overflow/NaN (treated as an error by callers)
    long stop_step = -1;
};

OrbitRecord iterate_orbit(const NumericMap2& f, const Complex& z0, const Complex& w0,
                          const OrbitOptions& opt);

// --- invariance verification ---

struct SampleOutcome {
    Complex start_z, start_w;
    bool domain_ok = true;
    int fail_kind = 0;  // 1: |z| left (0,delta); 2: |Arg z| >= theta; 3: |w| >= |z|^mu
    long fail_step = -1;
    Complex fail_z, fail_w;
    bool ratio_ok = true;  // |w/z| non-increasing after burn-in, decreasing overall
    long ratio_step = -1;
    bool ok() const { return domain_ok && ratio_ok; }
};

struct InvarianceResult {
    long samples = 0, steps = 0;
    std::vector<SampleOutcome> outcomes;
    long violation_count() const;
};

/// Samples starts in D (log-uniform radius, uniform sector angle,
/// log-uniform |w|/|z|^mu in [1e-6,1), uniform phase), iterates each one and
/// verifies the three domain inequalities plus |w/z| monotonicity.  The
/// per-sample RNG stream is derived from seed and sample index, so results
/// are independent of the thread count.
InvarianceResult invariance_check(const NumericMap2& f, const DomainParams& p, long n_samples,
                                  long n_steps, std::uint64_t seed, int threads,
                                  long burn_in = 64);
/// Serial reference implementation (identical outcomes by construction).
InvarianceResult invariance_check_serial(const NumericMap2& f, const DomainParams& p,
                                         long n_samples, long n_steps, std::uint64_t seed,
                                         long burn_in = 64);

// --- asymptotic rate fits ---

enum class WCase {
    ExpDecay,    // t != r, s = inf : exp(-(r Re beta/(r-t)) n^{(r-t)/r})
    PowerSum,    // t != r, s finite: n^{-(s+1-t)/r}
    PowerNuPos,  // t = r, nu > 0   : n^{-(s+1-t)/r}
    PowerBeta,   // t = r, nu < 0   : n^{-Re beta}
    LogEnvelope, // t = r, nu = 0   : n^{-Re beta} log n
    WZero,       // orbit has identically zero w (nothing to fit)
    Unresolved   // s not exact (beyond truncation): no w-case selectable
};
std::string w_case_str(WCase c);

struct RateFit {
    long n_lo = 0, n_hi = 0;
    double z_slope = 0, z_expected = 0, z_tol = 0.01;
    bool z_ok = false;
    double incr_mean_re = 0, incr_mean_im = 0;
    bool incr_ok = false;  // mean of 1/z^r increments within 2% of 1
    WCase w_case = WCase::Unresolved;
    double nu = 0;
    bool w_slope_checked = false;
    double w_slope = 0, w_expected = 0, w_tol = 0;
    bool w_ok = false;
    bool envelope_checked = false;
    double cn_max_over_median = 0;
    bool bound_ok = false;  // max C_n <= 2 median C_n
    bool ok() const {
        return z_ok && (!w_slope_checked || w_ok) && (!envelope_checked || bound_ok);
    }
};

/// Selects the Prop-4.2 w-case from (t, r, s, Re beta) and fits the orbit
/// over [n_lo, n_hi].  nu = -(s+1-t)/r + Re beta.
RateFit fit_rates(const OrbitRecord& orbit, int k, int t, int r, const DegreeS& s,
                  const Complex& beta, long n_lo, long n_hi);

struct RateStart {
    double abs_z = 0.1;
    double arg_frac = 0;    // Arg z0 = arg_frac * theta
    double w_factor = 1e-7; // |w0| = w_factor * |z0|^mu
};

struct RateRun {
    RateStart start;
    Complex z0, w0;
    OrbitRecord orbit;
    RateFit fit;
};

std::vector<RateStart> default_rate_starts();

/// Runs one rate orbit per start (in parallel) and fits each; deterministic
/// merge by start index.
std::vector<RateRun> run_rate_stage(const NumericMap2& f, const DomainParams& p, int k, int t,
                                    int r, const DegreeS& s, const Complex& beta, long n_max,
                                    const std::vector<RateStart>& starts, int threads,
                                    long record_every = 100);

/// Thread-count cap: GERMLAB_THREADS when set, else the OpenMP default.
int effective_threads();

}  // namespace germlab

#endif
