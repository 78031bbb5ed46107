#ifndef GERMLAB_NORMALFORM_HPP
#define GERMLAB_NORMALFORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "germlab/germ.hpp"
#include "germlab/numericmap.hpp"
#include "germlab/poly1.hpp"

namespace germlab {

/// The five-piece decomposition
///   f1 = z(1 + z^r R(z)) + w U(z,w)
///   f2 = w(1 + z^t T(z) + w V(z,w)) + z^{s+1} S(z)
/// with a=R(0), b=T(0) nonzero and c=S(0) nonzero unless S vanishes.
struct NormalFormData {
    Poly1 R, S, T;
    Series2 U, V;
    RationalComplex a, b, c;
    bool s_infinite = false;  // S identically zero through the data we have
    // Finer vanishing bounds from the orders m, l (reported, not asserted):
    int u_min_w_power = -1;  // minimal w-power among U terms, -1 when U == 0
    int v_min_w_power = -1;

    NormalFormData() : U(1), V(1) {}
};

/// Conjugates f by a linear map sending [1:0] to v; k is invariant.
Germ move_to_e1(const Germ& f, const Direction& v);

/// Extracts R,S,T,U,V at [1:0]; requires Theorem A conditions (1)-(3)
/// (throws naming the missing degree otherwise).
NormalFormData decompose(const Germ& f, int k, int t, int r, const DegreeS& s);

/// Reassembles the decomposition into a map (exact round-trip).
Map2 rebuild(const NormalFormData& nf, int t, int r, const DegreeS& s, int trunc);

/// The germ after the diag(a1,a2) rescaling, with precision-P coefficients:
///   f1 = z(1 - (1/r) z^r R(z)) + wU,  f2 = w(1 - beta z^t T(z) + wV) + lambda z^{s+1} S(z)
/// where R(0)=T(0)=S(0)=1.
struct RescaledGerm {
    NumericMap2 map;
    Complex a1, a2, beta, lambda, Delta;
    int k = 0, t = 0, r = 0;
    DegreeS s;
    // Spot checks of the normal form (computed, tested against -1/r and -beta):
    Complex coeff_zr1;  // z^{r+1} coefficient of the first coordinate
    Complex coeff_zt_w; // z^t w coefficient of the second coordinate
};

RescaledGerm rescale(const Germ& f, const NormalFormData& nf, const DirectionReport& rep,
                     mpfr_prec_t prec, const std::string& lambda_max = "1e-3");

/// Lemma-level report comparing f with its inverse: shared (k,t,r,s),
/// R(0)/T(0) sign flips, and the director relations for r=t and r=2t.
struct InverseInvariants {
    bool ok = true;
    std::vector<std::string> violations;
    int k = 0, k_hat = 0;
    std::optional<int> t, t_hat, r, r_hat;
    DegreeS s, s_hat;
    RationalComplex a, a_hat, b, b_hat;
    std::optional<DirectorInfo> director_f, director_finv;
    Attracting f_attracting = Attracting::Undetermined;
    Attracting finv_attracting = Attracting::Undetermined;
};

InverseInvariants inverse_invariants(const Germ& f, mpfr_prec_t prec);

}  // namespace germlab

#endif
