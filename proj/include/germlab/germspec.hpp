#ifndef GERMLAB_GERMSPEC_HPP
#define GERMLAB_GERMSPEC_HPP

#include <string>

#include "germlab/conjugation.hpp"
#include "germlab/germ.hpp"

namespace germlab {

/// Input error with source position when available (JSON syntax errors).
struct ParseError : Error {
    ParseError(const std::string& msg, int line = -1, int col = -1)
        : Error(msg), line(line), col(col) {}
    int line, col;
};

/// Parses a germ specification:
///   { "truncation": 12, "polynomial": true,
///     "coord1": [ {"coeff": "1", "z_pow": 1, "w_pow": 0}, ... ],
///     "coord2": [ ... ] }
/// Coefficients use the exact grammar <rat>, <rat>i, <rat>(+|-)<rat>i.
/// Duplicate monomials are summed.  The linear part must be exactly the
/// identity and constant terms must be absent.  `truncation_override`, when
/// positive, re-truncates (raising the truncation is only allowed for
/// full-polynomial inputs).
Germ parse_germ_spec(const std::string& json_text, int truncation_override = 0);

/// Same format, for a biholomorphism: the linear part must be invertible
/// (not necessarily the identity) and constant terms absent.
Biholo parse_biholo_spec(const std::string& json_text, int truncation_override = 0);

/// Serializes a map back to the monomial-list JSON (canonical order).
std::string map_to_spec_json(const Map2& m, bool polynomial);

}  // namespace germlab

#endif
