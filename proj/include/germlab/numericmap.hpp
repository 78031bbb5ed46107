#ifndef GERMLAB_NUMERICMAP_HPP
#define GERMLAB_NUMERICMAP_HPP

#include <utility>
#include <vector>

#include "germlab/highprec.hpp"
#include "germlab/series.hpp"

namespace germlab {

struct NumericTerm {
    int zp, wp;
    Complex c;
};

/// Polynomial self-map of C^2 with precision-P complex coefficients -- the
/// evaluation substrate for orbit iteration.  Produced either from an exact
/// germ (coefficients rounded once to P bits) or from rescaling.
struct NumericMap2 {
    std::vector<NumericTerm> fx, fy;
    mpfr_prec_t prec = kDefaultPrecision;
    int max_zp = 0, max_wp = 0;

    static NumericMap2 from_exact(const Map2& m, mpfr_prec_t prec);
    /// Drops zero terms and recomputes power-table bounds.
    void finalize();
    /// Reference evaluation (allocating); the orbit engine has the fast path.
    std::pair<Complex, Complex> eval(const Complex& z, const Complex& w) const;
};

}  // namespace germlab

#endif
