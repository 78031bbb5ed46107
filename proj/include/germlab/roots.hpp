#ifndef GERMLAB_ROOTS_HPP
#define GERMLAB_ROOTS_HPP

#include <vector>

#include "germlab/highprec.hpp"
#include "germlab/poly1.hpp"

namespace germlab {

/// One root of a univariate polynomial.  Exact roots carry a verified
/// rational-complex value; numeric roots carry the residual |p(root)|.
struct PolyRoot {
    bool exact = false;
    RationalComplex exact_value;  // valid iff exact
    Complex approx;               // always filled
    Real residual;                // |p(approx)|, zero for exact roots
    int multiplicity = 1;
};

/// All complex roots with multiplicities.  Uses square-free factorization
/// over the rationals for multiplicities, then extracts rational-complex
/// roots exactly (verified by substitution) and leaves the rest as numeric
/// roots at the requested precision.
std::vector<PolyRoot> find_roots(const Poly1& p, mpfr_prec_t prec);

}  // namespace germlab

#endif
