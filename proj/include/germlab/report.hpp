#ifndef GERMLAB_REPORT_HPP
#define GERMLAB_REPORT_HPP

#include <json.hpp>

#include "germlab/conjugation.hpp"
#include "germlab/normalform.hpp"
#include "germlab/orbit.hpp"

namespace germlab {

using ordered_json = nlohmann::ordered_json;

/// Significant decimal digits used for every numeric field in reports.
constexpr int kReportDigits = 30;

ordered_json json_map_spec(const Map2& m, bool polynomial);
ordered_json json_real(const Real& x);
ordered_json json_complex(const Complex& x);
ordered_json json_series(const Series2& s);
ordered_json json_poly1(const Poly1& p);
ordered_json json_degree_s(const DegreeS& s);
ordered_json json_order(const OrderVal& v);

ordered_json report_header(const char* command, int truncation, mpfr_prec_t precision);
ordered_json json_direction_report(const DirectionReport& rep);
ordered_json json_normal_form(const NormalFormData& nf);
ordered_json json_rescaled(const RescaledGerm& rg);
ordered_json json_domain_params(const DomainParams& p);
ordered_json json_invariance(const InvarianceResult& res);
ordered_json json_rate_fit(const RateFit& fit);
ordered_json json_rate_run(const RateRun& run);
ordered_json json_prop_c(const PropCReport& rep);
ordered_json json_inverse_invariants(const InverseInvariants& inv);

}  // namespace germlab

#endif
