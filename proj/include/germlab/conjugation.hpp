#ifndef GERMLAB_CONJUGATION_HPP
#define GERMLAB_CONJUGATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "germlab/germ.hpp"
#include "germlab/poly1.hpp"
#include "germlab/series.hpp"

namespace germlab {

/// Biholomorphism germ at the origin: invertible linear part, no constant
/// term.  `full_polynomial` has the same meaning as for Germ.
class Biholo {
  public:
    static Biholo from_map(Map2 map, bool full_polynomial);
    const Map2& map() const { return map_; }
    int trunc() const { return map_.trunc(); }
    bool full_polynomial() const { return full_polynomial_; }

  private:
    Biholo(Map2 m, bool fp) : map_(std::move(m)), full_polynomial_(fp) {}
    Map2 map_;
    bool full_polynomial_;
};

/// Largest degree through which a direction is fixed.  Exact when the first
/// moving term is visible; "at least N" when it is beyond the truncation;
/// infinite when the map provably preserves the direction line.
struct SigmaVal {
    enum class Kind { Exact, AtLeastTrunc, Infinite } kind = Kind::Exact;
    int value = 0;

    bool greater_than(int x) const { return kind != Kind::Exact || value > x; }
    std::string str() const;
};

/// sigma such that psi fixes [v] up through degree sigma.
SigmaVal fixes_up_to(const Biholo& psi, const Direction& v);

/// Theorem-B decomposition at [1:0]: psi = Phi o chi with
/// Phi = Id + (0, z^{sigma+1} phi(z)) and chi preserving {w=0}.
struct PhiChi {
    Map2 Phi, chi;
    Poly1 phi;
    SigmaVal sigma;
    PhiChi(int trunc) : Phi(Map2::identity(trunc)), chi(Map2::identity(trunc)) {}
};

PhiChi phi_chi_decompose(const Biholo& psi);

/// psi^{-1} o f o psi truncated to the shared truncation.
Map2 conjugate(const Map2& f, const Biholo& psi);
Germ conjugate(const Germ& f, const Biholo& psi);

/// Proposition-C bookkeeping: classify the conjugated germ, evaluate the
/// sigma thresholds, and assert equality of every quantity whose threshold
/// is met.
struct PropCReport {
    SigmaVal sigma;
    int k_before = 0, k_after = 0;
    std::optional<int> t_before, t_after, r_before, r_after;
    DegreeS s_before, s_after;
    bool t_threshold = false, r_threshold = false, s_threshold = false;
    bool t_equal = false, r_equal = false, s_consistent = false;
    std::vector<std::string> violations;  // above-threshold mismatches only
    bool ok() const { return violations.empty(); }
};

PropCReport prop_c_report(const Germ& f, const Biholo& psi, mpfr_prec_t prec);

}  // namespace germlab

#endif
