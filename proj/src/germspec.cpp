#include "germlab/germspec.hpp"

#include <json.hpp>

#include "germlab/report.hpp"

namespace germlab {

namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::pair<int, int> line_col_of(const std::string& text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

json parse_json_or_throw(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        auto [line, col] = line_col_of(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("germ spec: " + std::string(e.what()) + " at line " +
                             std::to_string(line) + ", column " + std::to_string(col),
                         line, col);
    }
}

std::string mono_name(int zp, int wp) {
    return "z^" + std::to_string(zp) + " w^" + std::to_string(wp);
}

struct ParsedSpec {
    Map2 map;
    bool polynomial;
    ParsedSpec(Map2 m, bool p) : map(std::move(m)), polynomial(p) {}
};

ParsedSpec parse_common(const std::string& text, int truncation_override) {
    json j = parse_json_or_throw(text);
    if (!j.is_object()) throw ParseError("germ spec: top-level value must be an object");
    if (!j.contains("truncation") || !j["truncation"].is_number_integer())
        throw ParseError("germ spec: integer field 'truncation' is required");
    int file_trunc = j["truncation"].get<int>();
    if (file_trunc < 1) throw ParseError("germ spec: truncation must be >= 1");
    bool polynomial = j.value("polynomial", true);

    int trunc = file_trunc;
    if (truncation_override > 0) {
        if (truncation_override > file_trunc && !polynomial)
            throw ParseError(
                "germ spec: cannot raise the truncation of a non-polynomial input (coefficients "
                "beyond the stated truncation are unknown)");
        trunc = truncation_override;
    }

    Series2 coords[2] = {Series2(trunc), Series2(trunc)};
    bool dropped = false;
    for (int ci = 0; ci < 2; ++ci) {
        std::string key = ci == 0 ? "coord1" : "coord2";
        if (!j.contains(key) || !j[key].is_array())
            throw ParseError("germ spec: array field '" + key + "' is required");
        for (const json& item : j[key]) {
            if (!item.is_object() || !item.contains("coeff") || !item.contains("z_pow") ||
                !item.contains("w_pow"))
                throw ParseError("germ spec: each monomial needs 'coeff', 'z_pow', 'w_pow'");
            int zp = item["z_pow"].get<int>();
            int wp = item["w_pow"].get<int>();
            if (zp < 0 || wp < 0)
                throw ParseError("germ spec: negative exponent in " + key + " " +
                                 mono_name(zp, wp));
            RationalComplex c;
            try {
                c = RationalComplex::parse(item["coeff"].get<std::string>());
            } catch (const Error& e) {
                throw ParseError("germ spec: " + key + " " + mono_name(zp, wp) + ": " + e.what());
            }
            if (zp + wp > file_trunc)
                throw ParseError("germ spec: monomial " + mono_name(zp, wp) + " in " + key +
                                 " exceeds the stated truncation");
            if (zp + wp > trunc) {
                if (!c.is_zero()) dropped = true;
                continue;
            }
            coords[ci].set_coeff(zp, wp, coords[ci].coeff(zp, wp) + c);
        }
    }
    // Dropping nonzero monomials turns a full polynomial into a truncation.
    if (dropped) polynomial = false;
    return ParsedSpec(Map2(coords[0], coords[1]), polynomial);
}

void require_no_constant(const Map2& m) {
    if (!m.first().coeff(0, 0).is_zero())
        throw ParseError("germ spec: coord1 has a constant term " + mono_name(0, 0) +
                         " (maps must fix the origin)");
    if (!m.second().coeff(0, 0).is_zero())
        throw ParseError("germ spec: coord2 has a constant term " + mono_name(0, 0) +
                         " (maps must fix the origin)");
}

}  // namespace

Germ parse_germ_spec(const std::string& json_text, int truncation_override) {
    ParsedSpec ps = parse_common(json_text, truncation_override);
    require_no_constant(ps.map);
    auto L = ps.map.linear_part();
    auto check = [](const RationalComplex& got, long want, const char* coord, int zp, int wp) {
        if (got == RationalComplex(want)) return;
        throw ParseError("germ spec: linear part differs from the identity: " +
                         std::string(coord) + " monomial " + mono_name(zp, wp) +
                         " has coefficient " + got.str() + ", expected " +
                         std::to_string(want));
    };
    check(L[0][0], 1, "coord1", 1, 0);
    check(L[0][1], 0, "coord1", 0, 1);
    check(L[1][0], 0, "coord2", 1, 0);
    check(L[1][1], 1, "coord2", 0, 1);
    return Germ::from_map(ps.map, ps.polynomial);
}

Biholo parse_biholo_spec(const std::string& json_text, int truncation_override) {
    ParsedSpec ps = parse_common(json_text, truncation_override);
    require_no_constant(ps.map);
    return Biholo::from_map(ps.map, ps.polynomial);
}

std::string map_to_spec_json(const Map2& m, bool polynomial) {
    return json_map_spec(m, polynomial).dump(2);
}

}  // namespace germlab
