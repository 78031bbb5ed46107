#ifndef GERMLAB_SERIES_HPP
#define GERMLAB_SERIES_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "germlab/highprec.hpp"
#include "germlab/poly1.hpp"
#include "germlab/rational.hpp"

namespace germlab {

struct Mono {
    int zp = 0, wp = 0;
    int deg() const { return zp + wp; }
    friend bool operator==(Mono a, Mono b) { return a.zp == b.zp && a.wp == b.wp; }
};

/// Graded order (total degree, then z-power descending) so iteration walks
/// the series degree by degree.
struct MonoLess {
    bool operator()(Mono a, Mono b) const {
        if (a.deg() != b.deg()) return a.deg() < b.deg();
        return a.zp > b.zp;
    }
};

/// Bivariate formal power series over RationalComplex, truncated at total
/// degree N.  Zero coefficients are never stored.
class Series2 {
  public:
    using CoeffMap = std::map<Mono, RationalComplex, MonoLess>;

    explicit Series2(int trunc = 1);
    static Series2 constant(int trunc, RationalComplex v);
    static Series2 monomial(int trunc, int zp, int wp, RationalComplex v);
    /// Embeds a univariate polynomial as a series in z (var=0) or w (var=1).
    static Series2 from_poly1(int trunc, const Poly1& p, int var = 0);

    int trunc() const { return trunc_; }
    bool is_zero() const { return c_.empty(); }
    const CoeffMap& terms() const { return c_; }

    RationalComplex coeff(int zp, int wp) const;
    void set_coeff(int zp, int wp, RationalComplex v);

    /// Lowest total degree of a nonzero term; nullopt for the zero series.
    std::optional<int> order() const;
    int max_degree() const;

    Series2 truncated(int n) const;
    Series2 homogeneous_part(int d) const;

    Series2& operator+=(const Series2& o);
    Series2& operator-=(const Series2& o);
    friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
    friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
    friend Series2 operator-(const Series2& a);
    friend Series2 operator*(const Series2& a, const Series2& b);
    Series2 scaled(const RationalComplex& s) const;
    friend bool operator==(const Series2& a, const Series2& b) {
        return a.trunc_ == b.trunc_ && a.c_ == b.c_;
    }

    Series2 derivative_z() const;
    Series2 derivative_w() const;
    /// Multiplies by z^dz w^dw; negative powers divide and must be exact.
    Series2 shifted(int dz, int dw) const;

    /// Restriction to the line z=1: sum_{i,j} c_{ij} u^j.  Meaningful for
    /// homogeneous parts and polynomial inputs.
    Poly1 substitute_z1() const;
    /// Coefficients of z^i w^0 as a univariate polynomial in z.
    Poly1 z_axis_part() const;
    /// Coefficients of z^i w^1 as a univariate polynomial in z.
    Poly1 w_linear_part() const;

    Complex eval(const Complex& z, const Complex& w) const;

    std::string str() const;

  private:
    void check_same_trunc(const Series2& o) const;
    int trunc_;
    CoeffMap c_;
};

/// Pair of series sharing one truncation -- a (formal) self-map of C^2.
class Map2 {
  public:
    Map2(Series2 x, Series2 y);
    static Map2 identity(int trunc);
    static Map2 zero(int trunc);

    int trunc() const { return x_.trunc(); }
    const Series2& first() const { return x_; }
    const Series2& second() const { return y_; }
    Series2& first() { return x_; }
    Series2& second() { return y_; }

    bool has_zero_constant_term() const;
    /// Linear part as {{a,b},{c,d}} acting on (z,w).
    std::array<std::array<RationalComplex, 2>, 2> linear_part() const;
    bool is_tangent_to_identity() const;

    Map2 truncated(int n) const;
    std::pair<Series2, Series2> homogeneous_part(int d) const;

    friend Map2 operator+(const Map2& a, const Map2& b);
    friend Map2 operator-(const Map2& a, const Map2& b);
    friend bool operator==(const Map2& a, const Map2& b) {
        return a.x_ == b.x_ && a.y_ == b.y_;
    }

    std::pair<Complex, Complex> eval(const Complex& z, const Complex& w) const;

  private:
    Series2 x_, y_;
};

/// f(g1,g2) truncated to the shared truncation; g1,g2 must have zero
/// constant term.
Series2 compose(const Series2& f, const Series2& g1, const Series2& g2);
/// f after g, i.e. (f o g)(p) = f(g(p)).
Map2 compose(const Map2& f, const Map2& g);

/// Inverse of a tangent-to-identity map, exact through the truncation.
Map2 invert_tangent_to_identity(const Map2& f);

/// Inverse of a map with invertible linear part (factors out the linear
/// part, inverts the tangent-to-identity remainder).
Map2 invert_map(const Map2& f);

/// Composes with an invertible linear map L(z,w)=(a z + b w, c z + d w)
/// exactly: returns L^-1 o f o L.
Map2 conjugate_by_linear(const Map2& f, const std::array<std::array<RationalComplex, 2>, 2>& L);

}  // namespace germlab

#endif
