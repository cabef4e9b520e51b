#pragma once

// Cohomology bookkeeping on the rank one del Pezzo surface T = ψ(S):
// Riemann–Roch on S through ⌊ψ*D⌋, Serre duality, degree vanishing, the
// linear-equivalence rewrite 2E_i ~ 2E_j ~ −K_T, and vanishing for effective
// nef and big divisors. Every certified entry carries a rule token.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "conekit/contraction.hpp"
#include "conekit/km_surface.hpp"

namespace conekit {

/// Rule tokens attached to certificates.
namespace rule {
inline constexpr const char* kStructureSheaf = "rational-surface-structure-sheaf";
inline constexpr const char* kH0RestrictionToE = "km-h0-vanishing";
inline constexpr const char* kEffective = "effective-divisor";
inline constexpr const char* kH2Duality = "serre-duality+h0-vanishing";
inline constexpr const char* kEffNefBig = "eff-nef-big-vanishing";
inline constexpr const char* kEulerChar = "euler-characteristic";
inline constexpr const char* kRiemannRoch = "riemann-roch-floor-pullback";
inline constexpr const char* kClosedFormChi = "closed-form-chi";
inline constexpr const char* kRewrite = "effective-ample-rewrite";
inline constexpr const char* kSerre = "serre-duality";
inline constexpr const char* kDegree = "negative-anticanonical-degree";
inline constexpr const char* kDegreeZero = "degree-zero-not-numerically-trivial";
inline constexpr const char* kIndexSymmetry = "index-relabelling";
}  // namespace rule


/// Raised when two independent routes to the same number disagree.
struct InternalInconsistency : std::logic_error {
    using std::logic_error::logic_error;
};

/// The surface S together with ψ: S → T.
class KmTarget {
public:
    explicit KmTarget(int d);

    int d() const { return surface_.d; }
    const KMSurface& surface() const { return surface_; }
    const Contraction& psi() const { return psi_; }
    /// (E_i^T)² = 1/(2d−4).
    Rat e_square() const;

private:
    KMSurface surface_;
    Contraction psi_;
};

/// A = Σ_{i≤q1} E_i^T − Σ_{q1<j≤q1+q2} E_j^T.
struct FamilyDescriptor {
    int d = 0;
    int q1 = 0;
    int q2 = 0;

    void validate() const;
    NamedDivisor divisor() const;
};

enum class HStatus { ExactZero, Exact, AtLeastOne, Unknown };

struct HValue {
    HStatus status = HStatus::Unknown;
    long value = 0;  // meaningful for Exact

    static HValue zero() { return {HStatus::ExactZero, 0}; }
    static HValue exact(long n) { return n == 0 ? zero() : HValue{HStatus::Exact, n}; }
    static HValue at_least_one() { return {HStatus::AtLeastOne, 0}; }
    static HValue unknown() { return {HStatus::Unknown, 0}; }

    bool is_exact() const { return status == HStatus::ExactZero || status == HStatus::Exact; }
    bool is_zero() const { return status == HStatus::ExactZero; }
    bool is_positive() const { return status == HStatus::AtLeastOne || (status == HStatus::Exact && value > 0); }
    std::optional<long> exact_value() const;
    /// "0", "3", ">=1" or "unknown".
    std::string str() const;
    friend bool operator==(const HValue&, const HValue&) = default;
};

struct Certificate {
    std::string entry;  // "h0", "h1", "h2", "chi", ...
    std::string rule;
};

struct CohomReport {
    HValue h0;
    HValue h1;
    HValue h2;
    long chi = 0;
    std::vector<Certificate> certificates;

    /// h0 − h1 + h2 = chi whenever all three are exact.
    bool consistent() const;
    std::vector<std::string> rules_for(const std::string& entry) const;
};

/// χ(𝒪) + D·(D−K)/2 on a surface; D must be integral.
long chi_rr(const Surface& surface, const NamedDivisor& d);

/// χ(T, 𝒪_T(D)) = χ(S, 𝒪_S(⌊ψ*D⌋)) for an integral divisor D on T.
long chi_on_target(const KmTarget& t, const NamedDivisor& d);

struct FloorPullbackStats {
    NamedDivisor divisor;  // ⌊ψ*A⌋
    Rat floor_term;        // ⌊(q1−q2)/(2d−4)⌋
    Rat square;
    Rat dot_minus_k;
};

/// Lattice values of ⌊ψ*A⌋; throws InternalInconsistency if they differ from
/// the closed forms in (q1, q2, d).
FloorPullbackStats floor_pullback_stats(const KmTarget& t, const FamilyDescriptor& fam);

/// Closed-form χ(T, 𝒪_T(A)) for the family.
long family_chi_closed_form(const FamilyDescriptor& fam);

CohomReport km_family_cohomology(const KmTarget& t, const FamilyDescriptor& fam);

/// K − D; h^i(D) = h^{2−i}(K − D).
NamedDivisor serre_dual(const NamedDivisor& d);

/// ExactZero when D·(−K_T) < 0, or = 0 with D not numerically trivial.
HValue h0_zero_by_degree(const KmTarget& t, const NamedDivisor& d);

/// For D integral and supported on the E_i^T (and K), an effective divisor
/// linearly equivalent to D under 2E_i^T ~ 2E_j^T ~ −K_T, if one exists.
std::optional<NamedDivisor> effective_ample_rewrite(const KmTarget& t, const NamedDivisor& d);

struct EffNefBigVanishing {
    bool applies = false;
    std::optional<NamedDivisor> effective_representative;
    Rat degree;  // D·(−K_T)
    std::vector<Certificate> certificates;  // entries "h1(-D)" and "h1(K+D)"
};

/// If D is linearly equivalent to an effective divisor and D·(−K_T) > 0,
/// certifies h¹(−D) = 0 and h¹(K_T + D) = 0.
EffNefBigVanishing h1_vanish_eff_nef_big(const KmTarget& t, const NamedDivisor& d);

/// Cohomology of nA or nA − E_j^T for the family, dispatched by n. A
/// subtracted index inside {1, …, q1+q2} yields Unknown h⁰, h¹, h² (χ only).
CohomReport cohomology_of_nA(const KmTarget& t, const FamilyDescriptor& fam, int n,
                             std::optional<int> subtract = std::nullopt);

}  // namespace conekit
