#include "germlab/report.hpp"

#include <cmath>

namespace germlab {

ordered_json json_map_spec(const Map2& m, bool polynomial) {
    ordered_json out;
    out["truncation"] = m.trunc();
    out["polynomial"] = polynomial;
    for (int ci = 0; ci < 2; ++ci) {
        ordered_json arr = ordered_json::array();
        const Series2& s = ci == 0 ? m.first() : m.second();
        for (const auto& [mono, v] : s.terms()) {
            ordered_json t;
            t["coeff"] = v.str();
            t["z_pow"] = mono.zp;
            t["w_pow"] = mono.wp;
            arr.push_back(std::move(t));
        }
        out[ci == 0 ? "coord1" : "coord2"] = std::move(arr);
    }
    return out;
}

ordered_json json_real(const Real& x) { return x.str(kReportDigits); }

ordered_json json_complex(const Complex& x) {
    ordered_json j;
    j["re"] = x.re.str(kReportDigits);
    j["im"] = x.im.str(kReportDigits);
    return j;
}

ordered_json json_series(const Series2& s) {
    ordered_json arr = ordered_json::array();
    for (const auto& [mono, v] : s.terms()) {
        ordered_json t;
        t["coeff"] = v.str();
        t["z_pow"] = mono.zp;
        t["w_pow"] = mono.wp;
        arr.push_back(std::move(t));
    }
    return arr;
}

ordered_json json_poly1(const Poly1& p) {
    ordered_json arr = ordered_json::array();
    for (int i = 0; i <= p.degree(); ++i) arr.push_back(p.coeff(i).str());
    return arr;
}

ordered_json json_degree_s(const DegreeS& s) {
    ordered_json j;
    switch (s.kind) {
        case DegreeS::Kind::Exact:
            j["kind"] = "exact";
            j["value"] = s.value;
            break;
        case DegreeS::Kind::AtLeastTrunc:
            j["kind"] = "at_least_truncation";
            j["value"] = s.value;
            break;
        case DegreeS::Kind::Infinite:
            j["kind"] = "infinite";
            break;
    }
    return j;
}

ordered_json json_order(const OrderVal& v) {
    if (v) return *v;
    return "inf";
}

ordered_json report_header(const char* command, int truncation, mpfr_prec_t precision) {
    ordered_json j;
    j["schema_version"] = 1;
    j["tool"] = "germlab";
    j["command"] = command;
    j["truncation"] = truncation;
    j["precision_bits"] = static_cast<long>(precision);
    return j;
}

static ordered_json json_director(const DirectorInfo& d) {
    ordered_json j;
    j["value"] = json_complex(d.value);
    j["exact"] = d.exact;
    if (d.exact) j["exact_value"] = d.exact_value.str();
    ordered_json branches = ordered_json::array();
    for (const Complex& b : d.branches) branches.push_back(json_complex(b));
    j["branches"] = std::move(branches);
    j["a1"] = json_complex(d.a1);
    return j;
}

ordered_json json_direction_report(const DirectionReport& rep) {
    ordered_json j;
    j["direction"] = rep.direction.str();
    j["k"] = rep.k;
    j["order"] = rep.k + 1;
    j["type"] = dir_type_str(rep.type);

    ordered_json orders = ordered_json::array();
    for (const VanishingOrders& v : rep.orders) {
        ordered_json o;
        o["degree"] = v.degree;
        o["m"] = json_order(v.m);
        o["l"] = json_order(v.l);
        o["n"] = json_order(v.n);
        orders.push_back(std::move(o));
    }
    j["vanishing_orders"] = std::move(orders);

    j["s"] = json_degree_s(rep.s);
    j["r"] = rep.r ? ordered_json(*rep.r) : ordered_json(nullptr);
    j["t"] = rep.t ? ordered_json(*rep.t) : ordered_json(nullptr);
    j["r_definitely_absent"] = rep.r_definitely_absent;
    j["t_definitely_absent"] = rep.t_definitely_absent;
    j["abate_index"] =
        rep.abate_index ? ordered_json(rep.abate_index->str()) : ordered_json(nullptr);
    j["director"] = rep.director ? json_director(*rep.director) : ordered_json(nullptr);
    if (rep.r) j["R0"] = rep.a_coeff.str();
    if (rep.t) j["T0"] = rep.b_coeff.str();
    j["transversally_attracting"] = attracting_str(rep.transversally_attracting);

    ordered_json verdict;
    verdict["status"] = rep.verdict.str();
    verdict["reason"] = rep.verdict.reason;
    j["theorem_a"] = std::move(verdict);

    ordered_json dirs;
    dirs["dicritical"] = rep.leading_directions.dicritical;
    ordered_json list = ordered_json::array();
    for (const CharDirection& d : rep.leading_directions.list) {
        ordered_json e;
        e["exact"] = d.exact;
        if (d.exact)
            e["direction"] = d.dir.str();
        else {
            e["direction_u"] = json_complex(d.approx_u);
            e["residual"] = json_real(d.residual);
        }
        e["multiplicity"] = d.multiplicity;
        list.push_back(std::move(e));
    }
    dirs["list"] = std::move(list);
    j["characteristic_directions"] = std::move(dirs);
    return j;
}

ordered_json json_normal_form(const NormalFormData& nf) {
    ordered_json j;
    j["a"] = nf.a.str();
    j["b"] = nf.b.str();
    j["c"] = nf.s_infinite ? ordered_json(nullptr) : ordered_json(nf.c.str());
    j["s_infinite"] = nf.s_infinite;
    j["R"] = json_poly1(nf.R);
    j["S"] = json_poly1(nf.S);
    j["T"] = json_poly1(nf.T);
    j["U"] = json_series(nf.U);
    j["V"] = json_series(nf.V);
    j["u_min_w_power"] = nf.u_min_w_power;
    j["v_min_w_power"] = nf.v_min_w_power;
    return j;
}

ordered_json json_rescaled(const RescaledGerm& rg) {
    ordered_json j;
    j["a1"] = json_complex(rg.a1);
    j["a2"] = json_complex(rg.a2);
    j["beta"] = json_complex(rg.beta);
    j["lambda"] = json_complex(rg.lambda);
    j["Delta"] = json_complex(rg.Delta);
    j["coeff_z_r_plus_1"] = json_complex(rg.coeff_zr1);
    j["coeff_z_t_w"] = json_complex(rg.coeff_zt_w);
    return j;
}

ordered_json json_domain_params(const DomainParams& p) {
    ordered_json j;
    j["delta"] = json_real(p.delta);
    j["theta"] = p.theta;
    j["epsilon"] = p.epsilon;
    j["mu"] = p.mu;
    j["beta_hat"] = json_complex(p.beta_hat);
    j["c_theta"] = p.c_theta;
    j["c_delta"] = p.c_delta;
    return j;
}

ordered_json json_invariance(const InvarianceResult& res) {
    ordered_json j;
    j["samples"] = res.samples;
    j["steps"] = res.steps;
    j["violations"] = res.violation_count();
    ordered_json fails = ordered_json::array();
    for (size_t i = 0; i < res.outcomes.size(); ++i) {
        const SampleOutcome& o = res.outcomes[i];
        if (o.ok()) continue;
        ordered_json e;
        e["sample"] = i;
        e["start_z"] = json_complex(o.start_z);
        e["start_w"] = json_complex(o.start_w);
        if (!o.domain_ok) {
            const char* kinds[] = {"", "abs_z_outside", "arg_outside", "w_outside"};
            e["kind"] = kinds[o.fail_kind];
            e["step"] = o.fail_step;
            e["z"] = json_complex(o.fail_z);
            e["w"] = json_complex(o.fail_w);
        } else {
            e["kind"] = "ratio_not_monotone";
            e["step"] = o.ratio_step;
        }
        fails.push_back(std::move(e));
    }
    j["failures"] = std::move(fails);
    return j;
}

ordered_json json_rate_fit(const RateFit& fit) {
    ordered_json j;
    j["window"] = {fit.n_lo, fit.n_hi};
    j["z_slope"] = fit.z_slope;
    j["z_expected"] = fit.z_expected;
    j["z_tolerance"] = fit.z_tol;
    j["z_ok"] = fit.z_ok;
    j["inv_z_r_increment_mean"] = {fit.incr_mean_re, fit.incr_mean_im};
    j["increment_ok"] = fit.incr_ok;
    j["w_case"] = w_case_str(fit.w_case);
    j["nu"] = std::isfinite(fit.nu) ? ordered_json(fit.nu) : ordered_json("-inf");
    if (fit.w_slope_checked) {
        j["w_slope"] = fit.w_slope;
        j["w_expected"] = fit.w_expected;
        j["w_tolerance"] = fit.w_tol;
        j["w_ok"] = fit.w_ok;
    }
    if (fit.envelope_checked) {
        j["cn_max_over_median"] = fit.cn_max_over_median;
        j["bound_ok"] = fit.bound_ok;
    }
    j["ok"] = fit.ok();
    return j;
}

ordered_json json_rate_run(const RateRun& run) {
    ordered_json j;
    j["start_z"] = json_complex(run.z0);
    j["start_w"] = json_complex(run.w0);
    j["steps"] = run.orbit.steps;
    j["fit"] = json_rate_fit(run.fit);
    return j;
}

ordered_json json_prop_c(const PropCReport& rep) {
    ordered_json j;
    j["sigma"] = rep.sigma.str();
    j["k"] = {{"before", rep.k_before}, {"after", rep.k_after}};
    auto opt = [](const std::optional<int>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    j["t"] = {{"before", opt(rep.t_before)},
              {"after", opt(rep.t_after)},
              {"threshold_met", rep.t_threshold},
              {"equal", rep.t_equal}};
    j["r"] = {{"before", opt(rep.r_before)},
              {"after", opt(rep.r_after)},
              {"threshold_met", rep.r_threshold},
              {"equal", rep.r_equal}};
    j["s"] = {{"before", json_degree_s(rep.s_before)},
              {"after", json_degree_s(rep.s_after)},
              {"threshold_met", rep.s_threshold},
              {"consistent", rep.s_consistent}};
    j["violations"] = rep.violations;
    j["ok"] = rep.ok();
    return j;
}

ordered_json json_inverse_invariants(const InverseInvariants& inv) {
    ordered_json j;
    auto opt = [](const std::optional<int>& v) {
        return v ? ordered_json(*v) : ordered_json(nullptr);
    };
    j["k"] = {{"f", inv.k}, {"f_inv", inv.k_hat}};
    j["t"] = {{"f", opt(inv.t)}, {"f_inv", opt(inv.t_hat)}};
    j["r"] = {{"f", opt(inv.r)}, {"f_inv", opt(inv.r_hat)}};
    j["s"] = {{"f", json_degree_s(inv.s)}, {"f_inv", json_degree_s(inv.s_hat)}};
    j["R0"] = {{"f", inv.a.str()}, {"f_inv", inv.a_hat.str()}};
    j["T0"] = {{"f", inv.b.str()}, {"f_inv", inv.b_hat.str()}};
    j["transversally_attracting"] = {{"f", attracting_str(inv.f_attracting)},
                                     {"f_inv", attracting_str(inv.finv_attracting)}};
    j["violations"] = inv.violations;
    j["ok"] = inv.ok;
    return j;
}

}  // namespace germlab
