#include "germlab/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace germlab {

int effective_threads() {
    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    if (const char* env = std::getenv("GERMLAB_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) return static_cast<int>(std::min<long>(v, 256));
    }
    return max_threads;
}

double mu_exponent(int k, int t, int r, const OrderVal& m, double eps) {
    if (!(k >= 1 && k < r && k <= t && t <= r))
        throw Error("mu_exponent: requires 1 <= k <= t <= r and k < r");
    if (m && *m < 1) throw Error("mu_exponent: m must be >= 1 (or infinite)");
    if (!(eps > 0 && eps < 1.0 / 3)) throw Error("mu_exponent: epsilon must be in (0, 1/3)");
    double first = m ? (r - k + eps) / *m + 1.0 : 1.0;
    double mu = std::max({first, r - k + eps, t - k + 1 + eps});
    if (mu > r - k + 1 + eps + 1e-12) throw Error("mu_exponent: bound mu <= r-k+1+eps violated");
    return mu;
}

DomainParams default_params(int k, int t, int r, const OrderVal& m, const DegreeS& s,
                            const Complex& beta, const Complex& Delta, mpfr_prec_t prec,
                            const ParamOverrides& ov) {
    DomainParams p;
    p.c_theta = ov.c_theta.value_or(0.5);
    p.c_delta = ov.c_delta.value_or(0.01);
    double re_delta = Delta.re.to_double();

    p.epsilon = ov.epsilon ? *ov.epsilon
                           : (t == r ? std::min(0.1, 0.5 * r * re_delta) : 0.1);
    if (!(p.epsilon > 0 && p.epsilon < 1.0 / 3))
        throw Error("params: epsilon must be in (0, 1/3)");
    if (t == r && !(p.epsilon < r * re_delta))
        throw Error("params: t = r requires epsilon < r Re Delta");

    p.theta = ov.theta ? *ov.theta : p.c_theta * std::numbers::pi / (4.0 * r);
    if (!(p.theta > 0 && p.theta <= std::numbers::pi / (4.0 * r)))
        throw Error("params: theta must satisfy 0 < theta < pi/(4 r)");

    p.mu = mu_exponent(k, t, r, m, p.epsilon);

    p.beta_hat = beta;
    if (t == r) p.beta_hat = beta - Complex::of(p.mu / r, 0.0, prec);
    if (!(p.beta_hat.re.sgn() > 0))
        throw Error("params: not transversally attracting at these parameters (Re beta_hat <= 0)");

    Real one_over_r = Real::of(1L, prec) / Real::of(static_cast<long>(r), prec);
    Real bound = p.beta_hat.re < one_over_r ? p.beta_hat.re : one_over_r;
    if (ov.delta) {
        p.delta = Real::parse(*ov.delta, prec);
        if (!(p.delta.sgn() > 0)) throw Error("params: delta must be positive");
        Real lhs = pow(p.delta, Real::of(p.epsilon, prec));
        if (lhs > Real::of(p.c_delta, prec) * bound)
            throw Error("params: delta^epsilon exceeds c_delta * min(1/r, Re beta_hat)");
    } else {
        Real base = Real::of(p.c_delta, prec) * bound;
        p.delta = pow(base, Real::of(1.0 / p.epsilon, prec));
        Real cap = Real::of(0.1, prec);
        if (p.delta > cap) p.delta = cap;
    }

    // Remark-4.1 compatibility gate: s+1 >= mu + t + 2 eps for finite s.
    if (s.is_exact() && !(s.value + 1 >= p.mu + t + 2 * p.epsilon))
        throw Error("params: s+1 >= mu + t + 2 epsilon fails at the stated degrees");
    return p;
}

bool in_domain(const Complex& z, const Complex& w, const DomainParams& p) {
    mpfr_prec_t prec = std::max(z.prec(), p.delta.prec());
    Real az = z.abs();
    if (!(az > Real(prec)) || !(az < p.delta)) return false;
    if (!(abs(z.arg()) < Real::of(p.theta, prec))) return false;
    Real zmu = pow(az, Real::of(p.mu, prec));
    return w.abs() < zmu;
}

// ---------- orbit engine ----------

namespace {

/// RAII array of mpfr_t at one precision.
class MpBuf {
  public:
    MpBuf(size_t n, mpfr_prec_t p) : n_(n), v_(new __mpfr_struct[n]) {
        for (size_t i = 0; i < n_; ++i) {
            mpfr_init2(&v_[i], p);
            mpfr_set_zero(&v_[i], 1);
        }
    }
    ~MpBuf() {
        for (size_t i = 0; i < n_; ++i) mpfr_clear(&v_[i]);
        delete[] v_;
    }
    MpBuf(const MpBuf&) = delete;
    MpBuf& operator=(const MpBuf&) = delete;
    mpfr_ptr operator[](size_t i) { return &v_[i]; }
    mpfr_srcptr operator[](size_t i) const { return &v_[i]; }

  private:
    size_t n_;
    __mpfr_struct* v_;
};

/// Preallocated iteration workspace: power tables and accumulators.  All
/// hot-loop arithmetic is in-place MPFR (no temporaries).
class OrbitEngine {
  public:
    explicit OrbitEngine(const NumericMap2& f)
        : f_(&f),
          prec_(f.prec),
          nz_(static_cast<size_t>(std::max(1, f.max_zp)) + 1),
          nw_(static_cast<size_t>(std::max(1, f.max_wp)) + 1),
          zpr_(nz_, f.prec),
          zpi_(nz_, f.prec),
          wpr_(nw_, f.prec),
          wpi_(nw_, f.prec),
          acc_(4, f.prec),
          tmp_(4, f.prec) {
        mpfr_set_ui(zpr_[0], 1, MPFR_RNDN);
        mpfr_set_ui(wpr_[0], 1, MPFR_RNDN);
    }

    void set_start(const Complex& z0, const Complex& w0) {
        mpfr_set(zpr_[1], z0.re.raw(), MPFR_RNDN);
        mpfr_set(zpi_[1], z0.im.raw(), MPFR_RNDN);
        mpfr_set(wpr_[1], w0.re.raw(), MPFR_RNDN);
        mpfr_set(wpi_[1], w0.im.raw(), MPFR_RNDN);
    }

    mpfr_srcptr zre() const { return zpr_[1]; }
    mpfr_srcptr zim() const { return zpi_[1]; }
    mpfr_srcptr wre() const { return wpr_[1]; }
    mpfr_srcptr wim() const { return wpi_[1]; }

    Complex z() const {
        Complex c(prec_);
        mpfr_set(c.re.raw(), zre(), MPFR_RNDN);
        mpfr_set(c.im.raw(), zim(), MPFR_RNDN);
        return c;
    }
    Complex w() const {
        Complex c(prec_);
        mpfr_set(c.re.raw(), wre(), MPFR_RNDN);
        mpfr_set(c.im.raw(), wim(), MPFR_RNDN);
        return c;
    }

    void step() {
        for (size_t i = 2; i < nz_; ++i) {
            mpfr_fmms(zpr_[i], zpr_[i - 1], zpr_[1], zpi_[i - 1], zpi_[1], MPFR_RNDN);
            mpfr_fmma(zpi_[i], zpr_[i - 1], zpi_[1], zpi_[i - 1], zpr_[1], MPFR_RNDN);
        }
        for (size_t j = 2; j < nw_; ++j) {
            mpfr_fmms(wpr_[j], wpr_[j - 1], wpr_[1], wpi_[j - 1], wpi_[1], MPFR_RNDN);
            mpfr_fmma(wpi_[j], wpr_[j - 1], wpi_[1], wpi_[j - 1], wpr_[1], MPFR_RNDN);
        }
        accumulate(f_->fx, acc_[0], acc_[1]);
        accumulate(f_->fy, acc_[2], acc_[3]);
        mpfr_swap(zpr_[1], acc_[0]);
        mpfr_swap(zpi_[1], acc_[1]);
        mpfr_swap(wpr_[1], acc_[2]);
        mpfr_swap(wpi_[1], acc_[3]);
    }

  private:
    void accumulate(const std::vector<NumericTerm>& terms, mpfr_ptr out_re, mpfr_ptr out_im) {
        mpfr_set_zero(out_re, 1);
        mpfr_set_zero(out_im, 1);
        for (const NumericTerm& t : terms) {
            mpfr_srcptr tre, tim;
            size_t zp = static_cast<size_t>(t.zp), wp = static_cast<size_t>(t.wp);
            if (t.zp > 0 && t.wp > 0) {
                mpfr_fmms(tmp_[0], zpr_[zp], wpr_[wp], zpi_[zp], wpi_[wp], MPFR_RNDN);
                mpfr_fmma(tmp_[1], zpr_[zp], wpi_[wp], zpi_[zp], wpr_[wp], MPFR_RNDN);
                tre = tmp_[0];
                tim = tmp_[1];
            } else if (t.zp > 0) {
                tre = zpr_[zp];
                tim = zpi_[zp];
            } else if (t.wp > 0) {
                tre = wpr_[wp];
                tim = wpi_[wp];
            } else {
                tre = zpr_[0];  // 1
                tim = zpi_[0];  // 0
            }
            mpfr_fmms(tmp_[2], t.c.re.raw(), tre, t.c.im.raw(), tim, MPFR_RNDN);
            mpfr_fmma(tmp_[3], t.c.re.raw(), tim, t.c.im.raw(), tre, MPFR_RNDN);
            mpfr_add(out_re, out_re, tmp_[2], MPFR_RNDN);
            mpfr_add(out_im, out_im, tmp_[3], MPFR_RNDN);
        }
    }

    const NumericMap2* f_;
    mpfr_prec_t prec_;
    size_t nz_, nw_;
    MpBuf zpr_, zpi_, wpr_, wpi_;
    MpBuf acc_, tmp_;
};

uint64_t splitmix64(uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform01(uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

}  // namespace

OrbitRecord iterate_orbit(const NumericMap2& f, const Complex& z0, const Complex& w0,
                          const OrbitOptions& opt) {
    if (!z0.is_finite() || !w0.is_finite()) throw Error("iterate: start point must be finite");
    mpfr_prec_t prec = f.prec;
    OrbitRecord rec;
    rec.log_abs_z.reserve(static_cast<size_t>(opt.n_max) + 1);
    rec.log_abs_w.reserve(static_cast<size_t>(opt.n_max) + 1);

    OrbitEngine eng(f);
    eng.set_start(z0, w0);

    MpBuf s(4, prec);  // |z|, |w|, log scratch, guard
    mpfr_set_d(s[3], opt.guard, MPFR_RNDN);

    // r-th power bookkeeping for the 1/z^r increments.
    Complex prev_inv(prec);
    bool have_prev = false;

    auto observe = [&](long n) {
        mpfr_hypot(s[0], eng.zre(), eng.zim(), MPFR_RNDN);
        mpfr_hypot(s[1], eng.wre(), eng.wim(), MPFR_RNDN);
        mpfr_log(s[2], s[0], MPFR_RNDN);
        rec.log_abs_z.push_back(mpfr_get_d(s[2], MPFR_RNDN));
        mpfr_log(s[2], s[1], MPFR_RNDN);
        rec.log_abs_w.push_back(mpfr_get_d(s[2], MPFR_RNDN));
        if (n % opt.record_every == 0) {
            rec.rec_n.push_back(n);
            rec.rec_z.push_back(eng.z());
            rec.rec_w.push_back(eng.w());
        }
        if (opt.increments_r > 0) {
            Complex zc = eng.z();
            if (!zc.is_zero()) {
                Complex inv = Complex::of(1.0, 0.0, prec) / pow_int(zc, opt.increments_r);
                if (have_prev) {
                    Complex d = inv - prev_inv;
                    rec.incr_re.push_back(d.re.to_double());
                    rec.incr_im.push_back(d.im.to_double());
                }
                prev_inv = inv;
                have_prev = true;
            }
        }
    };

    observe(0);
    for (long n = 1; n <= opt.n_max; ++n) {
        eng.step();
        if (!mpfr_number_p(eng.zre()) || !mpfr_number_p(eng.zim()) ||
            !mpfr_number_p(eng.wre()) || !mpfr_number_p(eng.wim())) {
            rec.non_finite = true;
            rec.stop_step = n;
            break;
        }
        mpfr_hypot(s[0], eng.zre(), eng.zim(), MPFR_RNDN);
        mpfr_hypot(s[1], eng.wre(), eng.wim(), MPFR_RNDN);
        if (mpfr_greaterequal_p(s[0], s[3]) || mpfr_greaterequal_p(s[1], s[3])) {
            rec.diverged = true;
            rec.stop_step = n;
            break;
        }
        observe(n);
        rec.steps = n;
    }
    return rec;
}

// ---------- invariance ----------

long InvarianceResult::violation_count() const {
    long c = 0;
    for (const SampleOutcome& o : outcomes)
        if (!o.ok()) ++c;
    return c;
}

namespace {

SampleOutcome run_invariance_sample(const NumericMap2& f, const DomainParams& p, uint64_t seed,
                                    long index, long n_steps, long burn_in) {
    mpfr_prec_t prec = f.prec;
    uint64_t state = seed ^ (0x9E3779B97F4A7C15ULL * static_cast<uint64_t>(index + 1));
    splitmix64(state);
    splitmix64(state);
    double u_radius = uniform01(state);
    double u_arg = uniform01(state);
    double u_wratio = uniform01(state);
    double u_phase = uniform01(state);

    // |z| log-uniform over [delta/10, delta), Arg uniform over (-theta,theta),
    // |w|/|z|^mu log-uniform over [1e-6, 1), uniform w phase.
    Real ten = Real::of(10L, prec);
    Real az = p.delta * pow(ten, Real::of(u_radius - 1.0, prec));
    Real zarg = Real::of(p.theta * (2.0 * u_arg - 1.0), prec);
    Complex z0 = polar(az, zarg);
    Real wr = pow(az, Real::of(p.mu, prec)) * pow(ten, Real::of(6.0 * (u_wratio - 1.0), prec));
    Real warg = Real::of(2.0, prec) * Real::pi(prec) * Real::of(u_phase, prec);
    Complex w0 = polar(wr, warg);

    SampleOutcome out;
    out.start_z = z0;
    out.start_w = w0;

    OrbitEngine eng(f);
    eng.set_start(z0, w0);

    MpBuf s(8, prec);
    // s: 0=|z| 1=|w| 2=arg 3=|z|^mu 4=ratio 5=prev ratio 6=burn-in ratio 7=scratch
    Real theta_r = Real::of(p.theta, prec);
    Real mu_r = Real::of(p.mu, prec);

    auto check = [&](long n) {
        mpfr_hypot(s[0], eng.zre(), eng.zim(), MPFR_RNDN);
        mpfr_hypot(s[1], eng.wre(), eng.wim(), MPFR_RNDN);
        if (!(mpfr_sgn(s[0]) > 0) || !mpfr_less_p(s[0], p.delta.raw())) return 1;
        mpfr_atan2(s[2], eng.zim(), eng.zre(), MPFR_RNDN);
        mpfr_abs(s[2], s[2], MPFR_RNDN);
        if (!mpfr_less_p(s[2], theta_r.raw())) return 2;
        mpfr_pow(s[3], s[0], mu_r.raw(), MPFR_RNDN);
        if (!mpfr_less_p(s[1], s[3])) return 3;
        mpfr_div(s[4], s[1], s[0], MPFR_RNDN);  // |w/z|, for the monotonicity check
        (void)n;
        return 0;
    };

    int kind = check(0);
    if (kind != 0) {
        out.domain_ok = false;
        out.fail_kind = kind;
        out.fail_step = 0;
        out.fail_z = eng.z();
        out.fail_w = eng.w();
        return out;
    }
    mpfr_set(s[5], s[4], MPFR_RNDN);

    for (long n = 1; n <= n_steps; ++n) {
        eng.step();
        kind = check(n);
        if (kind != 0) {
            out.domain_ok = false;
            out.fail_kind = kind;
            out.fail_step = n;
            out.fail_z = eng.z();
            out.fail_w = eng.w();
            return out;
        }
        if (n == burn_in) mpfr_set(s[6], s[4], MPFR_RNDN);
        if (n > burn_in && out.ratio_ok && mpfr_greater_p(s[4], s[5])) {
            out.ratio_ok = false;
            out.ratio_step = n;
        }
        mpfr_set(s[5], s[4], MPFR_RNDN);
    }
    // |w/z| must have decreased overall past the burn-in (unless it was 0).
    if (out.ratio_ok && n_steps > burn_in && mpfr_sgn(s[6]) > 0 &&
        !mpfr_less_p(s[4], s[6])) {
        out.ratio_ok = false;
        out.ratio_step = n_steps;
    }
    return out;
}

}  // namespace

InvarianceResult invariance_check(const NumericMap2& f, const DomainParams& p, long n_samples,
                                  long n_steps, std::uint64_t seed, int threads, long burn_in) {
    InvarianceResult res;
    res.samples = n_samples;
    res.steps = n_steps;
    res.outcomes.resize(static_cast<size_t>(n_samples));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (long i = 0; i < n_samples; ++i)
        res.outcomes[static_cast<size_t>(i)] =
            run_invariance_sample(f, p, seed, i, n_steps, burn_in);
    return res;
}

InvarianceResult invariance_check_serial(const NumericMap2& f, const DomainParams& p,
                                         long n_samples, long n_steps, std::uint64_t seed,
                                         long burn_in) {
    InvarianceResult res;
    res.samples = n_samples;
    res.steps = n_steps;
    res.outcomes.reserve(static_cast<size_t>(n_samples));
    for (long i = 0; i < n_samples; ++i)
        res.outcomes.push_back(run_invariance_sample(f, p, seed, i, n_steps, burn_in));
    return res;
}

// ---------- rate fits ----------

std::string w_case_str(WCase c) {
    switch (c) {
        case WCase::ExpDecay: return "t!=r, s=inf: exp(-(r Re beta/(r-t)) n^((r-t)/r))";
        case WCase::PowerSum: return "t!=r, s finite: n^(-(s+1-t)/r)";
        case WCase::PowerNuPos: return "t=r, nu>0: n^(-(s+1-t)/r)";
        case WCase::PowerBeta: return "t=r, nu<0: n^(-Re beta)";
        case WCase::LogEnvelope: return "t=r, nu=0: n^(-Re beta) log n";
        case WCase::WZero: return "w identically zero";
        case WCase::Unresolved: return "unresolved (s beyond truncation)";
    }
    return "?";
}

namespace {

double lsq_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw Error("rate fit: degenerate regressor");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace

RateFit fit_rates(const OrbitRecord& orbit, int k, int t, int r, const DegreeS& s,
                  const Complex& beta, long n_lo, long n_hi) {
    (void)k;
    if (orbit.diverged || orbit.non_finite)
        throw Error("rate fit: orbit did not converge (diverged or non-finite)");
    if (orbit.steps < 1000) throw Error("rate fit: orbit too short (needs >= 1000 steps)");
    n_hi = std::min<long>(n_hi, orbit.steps);
    if (n_lo < 1 || n_lo >= n_hi) throw Error("rate fit: empty window");

    RateFit fit;
    fit.n_lo = n_lo;
    fit.n_hi = n_hi;
    double re_beta = beta.re.to_double();

    // z exponent: slope of log|z_n| against log n.
    std::vector<double> xs, ys;
    xs.reserve(static_cast<size_t>(n_hi - n_lo + 1));
    ys.reserve(static_cast<size_t>(n_hi - n_lo + 1));
    for (long n = n_lo; n <= n_hi; ++n) {
        xs.push_back(std::log(static_cast<double>(n)));
        ys.push_back(orbit.log_abs_z[static_cast<size_t>(n)]);
    }
    fit.z_slope = lsq_slope(xs, ys);
    fit.z_expected = -1.0 / r;
    fit.z_ok = std::abs(fit.z_slope - fit.z_expected) <= fit.z_tol;

    if (!orbit.incr_re.empty()) {
        // increments stored for steps 1..steps at index n-1
        double sr = 0, si = 0;
        long cnt = 0;
        for (long n = n_lo; n <= n_hi && static_cast<size_t>(n - 1) < orbit.incr_re.size(); ++n) {
            sr += orbit.incr_re[static_cast<size_t>(n - 1)];
            si += orbit.incr_im[static_cast<size_t>(n - 1)];
            ++cnt;
        }
        if (cnt > 0) {
            fit.incr_mean_re = sr / static_cast<double>(cnt);
            fit.incr_mean_im = si / static_cast<double>(cnt);
            fit.incr_ok = std::hypot(fit.incr_mean_re - 1.0, fit.incr_mean_im) <= 0.02;
        }
    }

    // w case selection per (t, r, s, Re beta).
    if (!s.is_exact() && !s.is_infinite()) {
        fit.w_case = WCase::Unresolved;
        return fit;
    }
    if (s.is_infinite()) {
        fit.nu = -std::numeric_limits<double>::infinity();
        fit.w_case = t != r ? WCase::ExpDecay : WCase::PowerBeta;
    } else {
        fit.nu = -static_cast<double>(s.value + 1 - t) / r + re_beta;
        if (t != r)
            fit.w_case = WCase::PowerSum;
        else if (std::abs(fit.nu) < 1e-9)
            fit.w_case = WCase::LogEnvelope;
        else
            fit.w_case = fit.nu > 0 ? WCase::PowerNuPos : WCase::PowerBeta;
    }

    std::vector<double> wy, wx_log, wx_pow, log_g;
    double pow_exp = static_cast<double>(r - t) / r;
    bool any_zero = false;
    for (long n = n_lo; n <= n_hi; ++n) {
        double lw = orbit.log_abs_w[static_cast<size_t>(n)];
        if (!std::isfinite(lw)) {
            any_zero = true;
            continue;
        }
        double ln = std::log(static_cast<double>(n));
        wy.push_back(lw);
        wx_log.push_back(ln);
        wx_pow.push_back(std::pow(static_cast<double>(n), pow_exp));
        switch (fit.w_case) {
            case WCase::ExpDecay:
                log_g.push_back(-(r * re_beta / (r - t)) * std::pow(static_cast<double>(n), pow_exp));
                break;
            case WCase::PowerSum:
            case WCase::PowerNuPos:
                log_g.push_back(-(static_cast<double>(s.value + 1 - t) / r) * ln);
                break;
            case WCase::PowerBeta:
                log_g.push_back(-re_beta * ln);
                break;
            case WCase::LogEnvelope:
                log_g.push_back(-re_beta * ln + std::log(ln));
                break;
            default:
                break;
        }
    }
    if (wy.empty() || any_zero) {
        fit.w_case = wy.empty() ? WCase::WZero : fit.w_case;
        if (wy.empty()) return fit;
    }

    switch (fit.w_case) {
        case WCase::ExpDecay:
            fit.w_slope = lsq_slope(wx_pow, wy);
            fit.w_expected = -(r * re_beta) / (r - t);
            fit.w_tol = 0.05 * std::abs(fit.w_expected);
            fit.w_slope_checked = true;
            break;
        case WCase::PowerSum:
        case WCase::PowerNuPos:
            fit.w_slope = lsq_slope(wx_log, wy);
            fit.w_expected = -static_cast<double>(s.value + 1 - t) / r;
            fit.w_tol = 0.05;
            fit.w_slope_checked = true;
            break;
        case WCase::PowerBeta:
            fit.w_slope = lsq_slope(wx_log, wy);
            fit.w_expected = -re_beta;
            fit.w_tol = 0.1;
            fit.w_slope_checked = true;
            break;
        case WCase::LogEnvelope:
            break;
        default:
            return fit;
    }
    if (fit.w_slope_checked) fit.w_ok = std::abs(fit.w_slope - fit.w_expected) <= fit.w_tol;

    // Envelope stability: C_n = |w_n| / g(n) over the window.
    std::vector<double> log_c(wy.size());
    for (size_t i = 0; i < wy.size(); ++i) log_c[i] = wy[i] - log_g[i];
    double mx = *std::max_element(log_c.begin(), log_c.end());
    std::vector<double> tmp = log_c;
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<long>(tmp.size() / 2), tmp.end());
    double med = tmp[tmp.size() / 2];
    fit.cn_max_over_median = std::exp(mx - med);
    fit.envelope_checked = true;
    fit.bound_ok = fit.cn_max_over_median <= 2.0;
    return fit;
}

std::vector<RateStart> default_rate_starts() {
    return {{0.1, 0.0, 1e-7}, {0.1, 0.5, 1e-7}, {0.1, -0.5, 1e-7}, {0.12, 0.0, 1e-7}};
}

std::vector<RateRun> run_rate_stage(const NumericMap2& f, const DomainParams& p, int k, int t,
                                    int r, const DegreeS& s, const Complex& beta, long n_max,
                                    const std::vector<RateStart>& starts, int threads,
                                    long record_every) {
    std::vector<RateRun> runs(starts.size());
    mpfr_prec_t prec = f.prec;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (size_t i = 0; i < starts.size(); ++i) {
        const RateStart& st = starts[i];
        RateRun run;
        run.start = st;
        Real az = Real::of(st.abs_z, prec);
        run.z0 = polar(az, Real::of(st.arg_frac * p.theta, prec));
        Real aw = Real::of(st.w_factor, prec) * pow(az, Real::of(p.mu, prec));
        run.w0 = Complex(aw, Real(prec));
        OrbitOptions opt;
        opt.n_max = n_max;
        opt.record_every = record_every;
        opt.increments_r = r;
        run.orbit = iterate_orbit(f, run.z0, run.w0, opt);
        run.fit = fit_rates(run.orbit, k, t, r, s, beta, n_max / 10, n_max);
        runs[i] = std::move(run);
    }
    return runs;
}

}  // namespace germlab
