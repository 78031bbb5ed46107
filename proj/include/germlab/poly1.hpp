#ifndef GERMLAB_POLY1_HPP
#define GERMLAB_POLY1_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "germlab/highprec.hpp"
#include "germlab/rational.hpp"

namespace germlab {

/// Dense univariate polynomial / truncated series over RationalComplex.
/// Coefficients are stored low degree first with trailing zeros trimmed.
class Poly1 {
  public:
    Poly1() = default;
    explicit Poly1(std::vector<RationalComplex> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly1 constant(RationalComplex v);
    static Poly1 monomial(int deg, RationalComplex v);

    bool is_zero() const { return c_.empty(); }
    /// Degree of the polynomial, -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    RationalComplex coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return RationalComplex();
        return c_[static_cast<size_t>(i)];
    }
    void set_coeff(int i, RationalComplex v);
    const std::vector<RationalComplex>& coeffs() const { return c_; }

    /// Order of vanishing at 0; nullopt when identically zero (infinite).
    std::optional<int> vanishing_order() const;

    Poly1& operator+=(const Poly1& o);
    Poly1& operator-=(const Poly1& o);
    friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }
    friend Poly1 operator-(Poly1 a, const Poly1& b) { return a -= b; }
    friend Poly1 operator-(const Poly1& a);
    friend Poly1 operator*(const Poly1& a, const Poly1& b);
    Poly1 scaled(const RationalComplex& s) const;
    friend bool operator==(const Poly1& a, const Poly1& b) { return a.c_ == b.c_; }

    /// Product with all terms of degree > n dropped.
    Poly1 mul_truncated(const Poly1& o, int n) const;
    Poly1 truncated(int n) const;
    /// Multiplies by z^k (k >= 0) or divides exactly by z^-k (k < 0).
    Poly1 shifted(int k) const;
    Poly1 derivative() const;

    RationalComplex eval(const RationalComplex& x) const;
    Complex eval(const Complex& x) const;

    /// Requires coeff(0) != 0: multiplicative series inverse modulo z^{n+1}.
    Poly1 series_inverse(int n) const;
    /// this(o(z)) modulo z^{n+1}; o must have zero constant term.
    Poly1 compose_truncated(const Poly1& o, int n) const;
    /// Compositional inverse modulo z^{n+1}; requires h(0)=0, h'(0)!=0.
    Poly1 reverse_series(int n) const;

    /// Leading-coefficient-1 rescaling (zero polynomial unchanged).
    Poly1 monic() const;
    /// Polynomial division: returns {quotient, remainder}.
    std::pair<Poly1, Poly1> divrem(const Poly1& d) const;

    std::string str(const char* var = "z") const;

  private:
    void trim();
    std::vector<RationalComplex> c_;
};

Poly1 gcd(const Poly1& a, const Poly1& b);

/// Square-free decomposition (Yun): p = lead * prod f_i^{m_i} with the f_i
/// monic, square-free, pairwise coprime; returned as (f_i, m_i) pairs.
std::vector<std::pair<Poly1, int>> squarefree_decomposition(const Poly1& p);

/// Residue at x=0 of the rational function num/den (den != 0), i.e. the
/// coefficient of x^{-1} in its Laurent expansion.  Exact.
RationalComplex residue_at_zero(const Poly1& num, const Poly1& den);

}  // namespace germlab

#endif
