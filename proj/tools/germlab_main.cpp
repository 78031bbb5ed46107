// germlab: classification, normal forms, conjugation invariance, and
// attracting-domain verification for germs tangent to the identity in C^2.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "germlab/germspec.hpp"
#include "germlab/report.hpp"

using namespace germlab;

namespace {

enum ExitCode {
    kOk = 0,
    kInputError = 1,
    kVerdictFails = 2,
    kTruncationLimited = 3,
    kPropCViolation = 4,
    kInvarianceViolation = 5,
    kRateFailure = 6,
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file '" + path + "'");
    out << text;
}

struct CommonOpts {
    std::string input;
    std::string out;
    int truncation = 0;  // 0: use the file's value
    long precision = kDefaultPrecision;
    std::string direction = "1:0";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("input", o.input, "germ spec JSON file ('-' for stdin)")->required();
    cmd->add_option("--out", o.out, "write the JSON report here instead of stdout");
    cmd->add_option("--truncation", o.truncation, "override the working truncation degree");
    cmd->add_option("--precision", o.precision, "binary floating-point precision in bits (>= 64)")
        ->check(CLI::Range(64L, 65536L));
    cmd->add_option("--direction", o.direction,
                    "projective direction 'a:b' to classify (default [1:0])");
}

Germ load_germ(const CommonOpts& o) {
    Germ g = parse_germ_spec(read_input(o.input), o.truncation);
    Direction v = Direction::parse(o.direction);
    return move_to_e1(g, v);
}

int exit_for_verdict(const Verdict& v) {
    switch (v.status) {
        case Verdict::Status::Applies: return kOk;
        case Verdict::Status::Fails: return kVerdictFails;
        case Verdict::Status::TruncationLimited: return kTruncationLimited;
    }
    return kInputError;
}

DirectionReport classify_or_explain(const Germ& g, const std::string& direction,
                                    mpfr_prec_t prec) {
    try {
        DirectionReport rep = classify(g, prec);
        rep.direction = Direction::parse(direction);
        return rep;
    } catch (const Error& e) {
        std::string msg = e.what();
        if (msg.find("not a characteristic direction") == std::string::npos) throw;
        CharDirections dirs = char_directions(g, g.order(), prec);
        std::string hint = " (characteristic directions at degree " +
                           std::to_string(g.order()) + ":";
        for (const CharDirection& d : dirs.list)
            hint += " " + (d.exact ? ("[" + d.dir.str() + "]")
                                   : ("[1:" + d.approx_u.str(8) + "]"));
        hint += "; pass one with --direction)";
        throw Error(msg + hint);
    }
}

// ---- classify ----

int cmd_classify(const CommonOpts& o) {
    Germ g = load_germ(o);
    DirectionReport rep = classify_or_explain(g, o.direction, o.precision);
    ordered_json j = report_header("classify", g.trunc(), o.precision);
    j["input"] = json_map_spec(g.map(), g.full_polynomial());
    j["classification"] = json_direction_report(rep);
    write_output(o.out, j.dump(2) + "\n");
    return exit_for_verdict(rep.verdict);
}

// ---- normalize ----

struct NormalizeOpts {
    CommonOpts common;
    std::string lambda_max = "1e-3";
};

int cmd_normalize(const NormalizeOpts& o) {
    Germ g = load_germ(o.common);
    DirectionReport rep = classify_or_explain(g, o.common.direction, o.common.precision);
    ordered_json j = report_header("normalize", g.trunc(), o.common.precision);
    j["input"] = json_map_spec(g.map(), g.full_polynomial());
    j["classification"] = json_direction_report(rep);

    bool conditions_hold = rep.r && rep.t && *rep.t <= *rep.r &&
                           rep.s.greater_than(*rep.r).value_or(false);
    if (!conditions_hold) {
        j["normal_form"] = nullptr;
        j["error"] = "Theorem A conditions (1)-(3) do not hold: " + rep.verdict.reason;
        write_output(o.common.out, j.dump(2) + "\n");
        int code = exit_for_verdict(rep.verdict);
        return code == kOk ? kVerdictFails : code;
    }
    NormalFormData nf = decompose(g, rep.k, *rep.t, *rep.r, rep.s);
    RescaledGerm rg = rescale(g, nf, rep, o.common.precision, o.lambda_max);
    j["normal_form"] = json_normal_form(nf);
    j["rescaled"] = json_rescaled(rg);
    // beta_hat needs the domain constants; attach when attraction holds.
    try {
        DomainParams params = default_params(rep.k, *rep.t, *rep.r, rep.orders.front().m, rep.s,
                                             rg.beta, rg.Delta, o.common.precision);
        j["beta_hat"] = json_complex(params.beta_hat);
        j["mu"] = params.mu;
        j["epsilon"] = params.epsilon;
    } catch (const Error&) {
        j["beta_hat"] = nullptr;
    }
    write_output(o.common.out, j.dump(2) + "\n");
    return exit_for_verdict(rep.verdict);
}

// ---- conjugate ----

struct ConjugateOpts {
    CommonOpts common;
    std::string psi_path;
    bool check_invariance = true;
};

int cmd_conjugate(const ConjugateOpts& o) {
    Germ g = load_germ(o.common);
    Biholo psi = parse_biholo_spec(read_input(o.psi_path), o.common.truncation);
    if (psi.trunc() != g.trunc())
        throw Error(
            "conjugate: germ and biholomorphism must share a truncation (use --truncation)");
    ordered_json j = report_header("conjugate", g.trunc(), o.common.precision);
    j["input"] = json_map_spec(g.map(), g.full_polynomial());
    j["psi"] = json_map_spec(psi.map(), psi.full_polynomial());

    Germ conj = conjugate(g, psi);
    j["conjugated"] = json_map_spec(conj.map(), false);
    if (!o.check_invariance) {
        write_output(o.common.out, j.dump(2) + "\n");
        return kOk;
    }
    PropCReport rep = prop_c_report(g, psi, o.common.precision);
    j["prop_c"] = json_prop_c(rep);
    write_output(o.common.out, j.dump(2) + "\n");
    return rep.ok() ? kOk : kPropCViolation;
}

// ---- iterate ----

struct IterateOpts {
    CommonOpts common;
    std::string start_z = "0.05";
    std::string start_w = "0";
    long steps = 100000;
    long decimate = 1;
    std::string out_csv;
    bool normalized = false;
    std::string lambda_max = "1e-3";
};

Complex parse_decimal_complex(const std::string& s, mpfr_prec_t prec) {
    // decimal grammar: <dec> or <dec>(+|-)<dec>i, e.g. "0.1-2e-3i"
    if (s.empty()) throw Error("empty numeric value");
    if (s.back() != 'i') return Complex(Real::parse(s, prec), Real(prec));
    std::string body = s.substr(0, s.size() - 1);
    size_t sep = std::string::npos;
    for (size_t i = 1; i < body.size(); ++i) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E')
            sep = i;
    }
    if (sep == std::string::npos) return Complex(Real(prec), Real::parse(body, prec));
    std::string re = body.substr(0, sep);
    std::string im = body.substr(sep);
    if (im.size() > 1 && im[0] == '+') im.erase(0, 1);
    return Complex(Real::parse(re, prec), Real::parse(im, prec));
}

std::string csv_cell(const Real& x) { return x.str(20); }

int cmd_iterate(const IterateOpts& o) {
    Germ g = load_germ(o.common);
    mpfr_prec_t prec = o.common.precision;
    NumericMap2 map = NumericMap2::from_exact(g.map(), prec);
    ordered_json j = report_header("iterate", g.trunc(), prec);
    j["input"] = json_map_spec(g.map(), g.full_polynomial());
    if (o.normalized) {
        DirectionReport rep = classify_or_explain(g, o.common.direction, prec);
        if (!rep.r || !rep.t) throw Error("iterate --normalized: germ has no normal form");
        NormalFormData nf = decompose(g, rep.k, *rep.t, *rep.r, rep.s);
        RescaledGerm rg = rescale(g, nf, rep, prec, o.lambda_max);
        map = rg.map;
        j["rescaled"] = json_rescaled(rg);
    }

    Complex z0 = parse_decimal_complex(o.start_z, prec);
    Complex w0 = parse_decimal_complex(o.start_w, prec);
    OrbitOptions opt;
    opt.n_max = o.steps;
    opt.record_every = o.decimate;
    OrbitRecord rec = iterate_orbit(map, z0, w0, opt);
    if (rec.non_finite)
        throw Error("iterate: overflow or NaN at step " + std::to_string(rec.stop_step) +
                    "; try a higher --precision");

    if (!o.out_csv.empty()) {
        std::ostringstream csv;
        csv << "n,re_z,im_z,abs_z,abs_w,abs_w_over_z\n";
        for (size_t i = 0; i < rec.rec_n.size(); ++i) {
            const Complex& z = rec.rec_z[i];
            const Complex& w = rec.rec_w[i];
            Real az = z.abs(), aw = w.abs();
            Real ratio = az.is_zero() ? Real(prec) : aw / az;
            csv << rec.rec_n[i] << "," << csv_cell(z.re) << "," << csv_cell(z.im) << ","
                << csv_cell(az) << "," << csv_cell(aw) << "," << csv_cell(ratio) << "\n";
        }
        write_output(o.out_csv, csv.str());
    }

    j["start_z"] = json_complex(z0);
    j["start_w"] = json_complex(w0);
    j["steps_requested"] = o.steps;
    j["steps_completed"] = rec.steps;
    j["diverged"] = rec.diverged;
    if (rec.diverged) j["diverged_at"] = rec.stop_step;
    j["final_z"] = json_complex(rec.rec_z.back());
    j["final_w"] = json_complex(rec.rec_w.back());
    j["rows_recorded"] = rec.rec_n.size();
    write_output(o.common.out, j.dump(2) + "\n");
    return kOk;
}

// ---- verify ----

struct VerifyOpts {
    CommonOpts common;
    long samples = 200;
    long steps = 10000;
    long rate_steps = 100000;
    std::uint64_t seed = 1;
    std::string lambda_max = "1e-3";
    std::string delta;
    double theta = 0, epsilon = 0;
    double c_theta = 0, c_delta = 0;
    long burn_in = 64;
};

int cmd_verify(const VerifyOpts& o) {
    Germ g = load_germ(o.common);
    mpfr_prec_t prec = o.common.precision;
    ordered_json j = report_header("verify", g.trunc(), prec);
    j["seed"] = o.seed;
    j["input"] = json_map_spec(g.map(), g.full_polynomial());

    DirectionReport rep = classify_or_explain(g, o.common.direction, prec);
    j["classification"] = json_direction_report(rep);
    if (rep.verdict.status != Verdict::Status::Applies) {
        // no sampling: the theorem's hypotheses are not established
        j["result"] = {{"status", rep.verdict.str()}, {"reason", rep.verdict.reason}};
        write_output(o.common.out, j.dump(2) + "\n");
        return exit_for_verdict(rep.verdict);
    }

    NormalFormData nf = decompose(g, rep.k, *rep.t, *rep.r, rep.s);
    RescaledGerm rg = rescale(g, nf, rep, prec, o.lambda_max);
    j["normal_form"] = json_normal_form(nf);
    j["rescaled"] = json_rescaled(rg);

    ParamOverrides ov;
    if (!o.delta.empty()) ov.delta = o.delta;
    if (o.theta > 0) ov.theta = o.theta;
    if (o.epsilon > 0) ov.epsilon = o.epsilon;
    if (o.c_theta > 0) ov.c_theta = o.c_theta;
    if (o.c_delta > 0) ov.c_delta = o.c_delta;
    DomainParams params = default_params(rep.k, *rep.t, *rep.r, rep.orders.front().m, rep.s,
                                         rg.beta, rg.Delta, prec, ov);
    j["domain_params"] = json_domain_params(params);

    int threads = effective_threads();
    InvarianceResult inv =
        invariance_check(rg.map, params, o.samples, o.steps, o.seed, threads, o.burn_in);
    j["invariance"] = json_invariance(inv);

    auto runs = run_rate_stage(rg.map, params, rep.k, *rep.t, *rep.r, rep.s, rg.beta,
                               o.rate_steps, default_rate_starts(), threads);
    ordered_json jruns = ordered_json::array();
    bool rates_ok = true;
    double lo = runs[0].fit.z_slope, hi = lo;
    for (const RateRun& run : runs) {
        jruns.push_back(json_rate_run(run));
        rates_ok = rates_ok && run.fit.ok();
        lo = std::min(lo, run.fit.z_slope);
        hi = std::max(hi, run.fit.z_slope);
    }
    j["rates"] = {{"runs", std::move(jruns)},
                  {"z_exponent_spread", hi - lo},
                  {"all_ok", rates_ok}};

    int code = kOk;
    if (inv.violation_count() > 0)
        code = kInvarianceViolation;
    else if (!rates_ok)
        code = kRateFailure;
    j["result"] = {{"status", code == kOk ? "ok" : "failed"}, {"exit_code", code}};
    write_output(o.common.out, j.dump(2) + "\n");
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "germlab: classification and attracting-domain verification for germs tangent to the "
        "identity in C^2"};
    app.require_subcommand(1);

    CommonOpts classify_o;
    CLI::App* classify_cmd =
        app.add_subcommand("classify", "classify a germ at a characteristic direction");
    add_common(classify_cmd, classify_o);

    NormalizeOpts normalize_o;
    CLI::App* normalize_cmd =
        app.add_subcommand("normalize", "extract the R,S,T,U,V decomposition and rescale");
    add_common(normalize_cmd, normalize_o.common);
    normalize_cmd->add_option("--lambda-max", normalize_o.lambda_max,
                              "target bound for |lambda| in the rescaled form");

    ConjugateOpts conjugate_o;
    CLI::App* conjugate_cmd =
        app.add_subcommand("conjugate", "conjugate by a biholomorphism and check invariance");
    add_common(conjugate_cmd, conjugate_o.common);
    conjugate_cmd->add_option("--psi", conjugate_o.psi_path, "biholomorphism spec JSON")
        ->required();
    conjugate_cmd->add_flag("--check-invariance,!--no-check-invariance",
                            conjugate_o.check_invariance,
                            "evaluate the sigma thresholds (default on)");

    IterateOpts iterate_o;
    CLI::App* iterate_cmd = app.add_subcommand("iterate", "iterate an orbit and emit CSV");
    add_common(iterate_cmd, iterate_o.common);
    iterate_cmd->add_option("--z", iterate_o.start_z, "start z (decimal, optionally a+bi)");
    iterate_cmd->add_option("--w", iterate_o.start_w, "start w");
    iterate_cmd->add_option("--steps", iterate_o.steps, "iteration count");
    iterate_cmd->add_option("--decimate", iterate_o.decimate, "record every k-th step")
        ->check(CLI::PositiveNumber);
    iterate_cmd->add_option("--out-csv", iterate_o.out_csv, "orbit CSV path");
    iterate_cmd->add_flag("--normalized", iterate_o.normalized,
                          "iterate the rescaled normal form instead of the raw germ");
    iterate_cmd->add_option("--lambda-max", iterate_o.lambda_max, "bound for |lambda|");

    VerifyOpts verify_o;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "verify domain invariance and convergence rates numerically");
    add_common(verify_cmd, verify_o.common);
    verify_cmd->add_option("--samples", verify_o.samples, "number of sampled starts");
    verify_cmd->add_option("--steps", verify_o.steps, "iterations per sampled start");
    verify_cmd->add_option("--rate-steps", verify_o.rate_steps, "iterations for rate orbits");
    verify_cmd->add_option("--seed", verify_o.seed, "RNG seed for the sampler");
    verify_cmd->add_option("--lambda-max", verify_o.lambda_max, "bound for |lambda|");
    verify_cmd->add_option("--delta", verify_o.delta, "override delta (decimal string)");
    verify_cmd->add_option("--theta", verify_o.theta, "override theta (radians)");
    verify_cmd->add_option("--epsilon", verify_o.epsilon, "override epsilon");
    verify_cmd->add_option("--c-theta", verify_o.c_theta, "theta as a fraction of pi/(4r)");
    verify_cmd->add_option("--c-delta", verify_o.c_delta, "delta^epsilon bound factor");
    verify_cmd->add_option("--burn-in", verify_o.burn_in, "monotonicity burn-in steps");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*classify_cmd) return cmd_classify(classify_o);
        if (*normalize_cmd) return cmd_normalize(normalize_o);
        if (*conjugate_cmd) return cmd_conjugate(conjugate_o);
        if (*iterate_cmd) return cmd_iterate(iterate_o);
        if (*verify_cmd) return cmd_verify(verify_o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
