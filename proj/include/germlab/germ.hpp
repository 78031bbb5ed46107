#ifndef GERMLAB_GERM_HPP
#define GERMLAB_GERM_HPP

#include <optional>
#include <string>
#include <vector>

#include "germlab/roots.hpp"
#include "germlab/series.hpp"

namespace germlab {

/// A tangent-to-identity germ at the origin.  `full_polynomial` records that
/// the map is the complete polynomial (no coefficients hide beyond the
/// truncation), which makes statements like "S identically zero" decidable.
class Germ {
  public:
    static Germ from_map(Map2 map, bool full_polynomial);

    const Map2& map() const { return map_; }
    int order() const { return order_; }  // k+1
    int k() const { return order_ - 1; }
    int trunc() const { return map_.trunc(); }
    bool full_polynomial() const { return full_polynomial_; }

  private:
    Germ(Map2 m, int order, bool fp) : map_(std::move(m)), order_(order), full_polynomial_(fp) {}
    Map2 map_;
    int order_;
    bool full_polynomial_;
};

/// Projective direction [a:b], canonicalized to [1:b/a] or [0:1].
struct Direction {
    RationalComplex a, b;

    static Direction of(RationalComplex a, RationalComplex b);
    static Direction e1() { return of(RationalComplex(1), RationalComplex()); }
    static Direction e2() { return of(RationalComplex(), RationalComplex(1)); }
    /// Parses "a:b" with rational-complex components.
    static Direction parse(std::string_view s);

    bool is_e1() const { return a == RationalComplex(1) && b.is_zero(); }
    std::string str() const;
    friend bool operator==(const Direction& x, const Direction& y) {
        return x.a == y.a && x.b == y.b;
    }
};

/// Order of vanishing: a non-negative integer, or infinity (nullopt) when
/// the restricted polynomial is identically zero.
using OrderVal = std::optional<int>;
inline bool order_ge(const OrderVal& v, int x) { return !v.has_value() || *v >= x; }
std::string order_str(const OrderVal& v);

struct VanishingOrders {
    int degree;      // j
    OrderVal m, l, n;  // of p_j(1,u), q_j(1,u), r_j(1,u) at u=0
};

enum class DirType { Fuchsian, Irregular, Apparent, DicriticalOrigin };
std::string dir_type_str(DirType t);

/// Characteristic degree s, which may be exact, only known to reach the
/// truncation, or exactly infinite (decidable for full polynomials).
struct DegreeS {
    enum class Kind { Exact, AtLeastTrunc, Infinite } kind = Kind::Exact;
    int value = 0;  // Exact: s; AtLeastTrunc: the truncation N

    static DegreeS exact(int s) { return {Kind::Exact, s}; }
    static DegreeS at_least(int n) { return {Kind::AtLeastTrunc, n}; }
    static DegreeS infinite() { return {Kind::Infinite, 0}; }

    bool is_exact() const { return kind == Kind::Exact; }
    bool is_infinite() const { return kind == Kind::Infinite; }
    /// Three-valued comparison s > x: true/false when decidable.
    std::optional<bool> greater_than(int x) const;
    /// Whether two values are consistent under truncation-flag semantics.
    bool consistent_with(const DegreeS& o) const;
    std::string str() const;
    friend bool operator==(const DegreeS& a, const DegreeS& b) {
        return a.kind == b.kind && (a.kind != Kind::Exact || a.value == b.value);
    }
};

/// One projective characteristic direction of some P_j with multiplicity.
struct CharDirection {
    bool exact = false;
    Direction dir;     // valid iff exact
    Complex approx_u;  // the root u0 of r_j(1,u) for [1:u0] when not exact
    Real residual;
    int multiplicity = 1;
    bool at_infinity = false;  // the direction [0:1]
};

struct CharDirections {
    bool dicritical = false;  // r_j identically zero
    std::vector<CharDirection> list;
};

/// The director Delta with its branch list (several values when the 1/r-th
/// root is multivalued; the stored value is the selected branch).
struct DirectorInfo {
    Complex value;
    std::vector<Complex> branches;
    bool exact = false;           // t=r and the nondegenerate fallback
    RationalComplex exact_value;  // valid iff exact
    Complex a1;                   // the r-th root of -1/(r a) realizing the branch
};

enum class Attracting { Yes, No, Undetermined };
std::string attracting_str(Attracting a);

struct Verdict {
    enum class Status { Applies, Fails, TruncationLimited } status;
    std::string reason;  // first violated condition, or the truncation gap
    std::string str() const;
};

struct DirectionReport {
    Direction direction;  // as requested, before moving to [1:0]
    int k = 0;
    std::vector<VanishingOrders> orders;  // j = k+1 .. N
    DirType type = DirType::Fuchsian;
    DegreeS s;
    std::optional<int> r, t;
    bool r_definitely_absent = false;  // full polynomial with no nondegenerate level
    bool t_definitely_absent = false;
    std::optional<RationalComplex> abate_index;
    std::optional<DirectorInfo> director;
    Attracting transversally_attracting = Attracting::Undetermined;
    Verdict verdict{Verdict::Status::Fails, ""};
    CharDirections leading_directions;  // at degree k+1
    RationalComplex a_coeff, b_coeff;   // R(0), T(0) when r, t exist
};

// --- individual classification operations (all at direction [1:0]) ---

/// Smallest j with P_j != 0; throws when f == Id through the truncation.
int germ_order(const Map2& map);

/// r_j = z q_j - w p_j, homogeneous of degree j+1 (possibly zero).
Series2 r_poly(const Germ& f, int j);

CharDirections char_directions(const Germ& f, int j, mpfr_prec_t prec);

VanishingOrders vanishing_orders(const Germ& f, int j);

/// Type of [1:0] from (m, n) at degree k+1; requires n >= 1 or dicritical.
DirType classify_type(const Germ& f);

DegreeS degree_s(const Germ& f);
/// Smallest r with m_{r+1}=0 after all-degenerate lower levels; second
/// member is true when the absence is exact (full polynomial).
std::pair<std::optional<int>, bool> degree_r(const Germ& f);
std::pair<std::optional<int>, bool> degree_t(const Germ& f);

/// Residue at u=0 of p_{k+1}(1,u)/r_{k+1}(1,u); throws when dicritical.
RationalComplex abate_index(const Germ& f);

/// Extended director (t<r branch enumeration, t=r closed form, k=t=r
/// classical definition needs the germ itself -- see director_nondegenerate).
DirectorInfo director(int k, int t, int r, const RationalComplex& a, const RationalComplex& b,
                      mpfr_prec_t prec);
/// Classical director of a non-degenerate direction (m=0).
RationalComplex director_nondegenerate(const Germ& f);

/// Full per-direction classification of [1:0].
DirectionReport classify(const Germ& f, mpfr_prec_t prec);

}  // namespace germlab

#endif
