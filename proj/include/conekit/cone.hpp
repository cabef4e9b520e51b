#pragma once

// Numerical ledger of the cone construction X → Y → Z over T.
//
// X is the P¹-fibration over S glued from 𝒪_S and 𝒪_S(ψ*A) with sections
// S^±, f: X → Y contracts the rulings of each R_C = π⁻¹(C)_red, and
// g: Y → Z contracts T^− = f(S^−) to a point. Threefold cycles are symbolic;
// their intersection numbers come from closed formulas in the surface data
// and are cross-checked against independent lattice computations.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conekit/cohomology.hpp"

namespace conekit {

struct AssumptionViolation : std::invalid_argument {
    AssumptionViolation(std::string curve_name, Rat fractional_part);
    std::string curve;
    Rat fractional;
};

/// m_C for each contracted curve, in contraction order: the fractional part of
/// the ψ*A-coefficient of C must be 0 (m_C = 1) or 1/m with m ≥ 2.
std::vector<std::pair<std::string, int>> validate_assumption_A(const KmTarget& t, const NamedDivisor& a);

struct CurveNumbers {
    std::string curve;
    int m = 1;
    Rat self_intersection;           // C² on S
    int pullback_multiplicity = 1;   // π*C = m·R_C
    Rat section_square_in_R;         // (C^± in R_C)²
    Rat section_dot_curve;           // S^±·C^±
    Rat canonical_dot_curve;         // K_X·C^± = (−C² − 2m)/m
};

struct SectionNumbers {
    int i = 0;
    int j = 0;
    Rat psiA_dot_Ej;                 // ψ*A·E_j
    Rat s_plus_dot_Ej_plus;          // S^+·E_j^+
    Rat s_minus_dot_Ej_minus;        // S^−·E_j^−
    Rat canonical_dot_Ei_plus;       // K_X·E_i^+
    Rat canonical_dot_Ei_minus;      // K_X·E_i^−
    Rat crepant_term;                // (Σ c_C R_C)·E_i^±, uniform formula
    Rat crepant_term_printed;        // Γ-term plus the two ℓ-terms written out
    Rat ky_dot_fEi_plus;             // K_Y·f(E_i^+)
    Rat ky_dot_fEi_minus;            // K_Y·f(E_i^−)
    Rat ey_i_dot_fEj;                // E_i^Y·f(E_j^±), from ψ*E_i^T·E_j
    Rat expected_ey_dot;             // 1/(2d−4)
    bool consistent = false;         // every overdetermined entry agrees
};

struct PltCoefficient {
    int i = 0;
    Rat psiA_dot_Ei;
    Rat b;                           // (ψ*A·E_i − 1/(2d−4)) / ψ*A·E_i
    Rat b_from_ledger;               // solved from K_Y, E_i^Y and T^− on f(E_i^−)
    SingularityKind psi_kind = SingularityKind::NotLc;
    bool plt = false;                // b < 1 and T klt
};

struct ResolutionRecord {
    std::string curve;
    int m = 0;
    /// c in K_X̃ + c·F^+ = μ*K_X, i.e. (m−2)/m.
    Rat fplus_coefficient;
    /// a(F^+, X) = −c.
    Rat fplus_discrepancy;
    Rat s_plus_on_fplus;                  // coefficient of F^+ in μ*S^+
    std::vector<Rat> s_minus_chain;       // coefficients of F_1^−, …, F_{m−1}^− in μ*S^−
    Rat r_on_fplus;                       // coefficient of F^+ in μ*R_C
    std::vector<Rat> r_chain;             // coefficients of F_1^−, …, F_{m−1}^− in μ*R_C
    std::string dual_graph;
};

struct AdjunctionCheck {
    std::string label;
    Rat lhs;
    Rat rhs;
    bool pass = false;
};

struct AdjunctionReport {
    std::vector<AdjunctionCheck> checks;
    bool all_pass() const;
};

struct PicardChain {
    int rho_S = 0;
    int rho_T = 0;
    int rho_X = 0;
    int rho_Y = 0;
    int rho_Z = 0;
    bool consistent = false;
};

class ConeModel {
public:
    /// Requires A integral on T, ample, and satisfying the unit-fraction assumption.
    static ConeModel build(KmTarget target, NamedDivisor a);

    const KmTarget& target() const { return target_; }
    int d() const { return target_.d(); }
    const NamedDivisor& A() const { return a_; }
    const NamedDivisor& pullback_A() const { return pullback_a_; }
    const std::vector<std::pair<std::string, int>>& m_table() const { return m_; }
    int m(const std::string& curve) const;

    CurveNumbers cone_curve_numbers(const std::string& curve) const;
    /// c_C = (−C² − 2m_C)/(−C²) with K_X + Σ c_C R_C = f*K_Y.
    std::vector<std::pair<std::string, Rat>> crepant_pullback_fY() const;
    SectionNumbers section_numbers(int i, int j) const;
    PltCoefficient plt_coefficient_b(int i) const;
    /// Records for the curves with m_C ≥ 2.
    std::vector<ResolutionRecord> resolution_ledger() const;
    AdjunctionReport adjunction_consistency() const;
    PicardChain picard_chain() const;

private:
    ConeModel(KmTarget target, NamedDivisor a, NamedDivisor pullback_a, std::vector<std::pair<std::string, int>> m);

    Rat curve_dot(const std::string& a, const std::string& b) const;
    /// (K_S + Σ (m_C−1)/m_C·C)·X for a source curve X.
    Rat different_dot(const std::string& curve) const;

    KmTarget target_;
    NamedDivisor a_;
    NamedDivisor pullback_a_;
    std::vector<std::pair<std::string, int>> m_;
    std::vector<std::pair<std::string, Rat>> crepant_;
    std::vector<Rat> psiA_dot_e_;           // ψ*A·E_j, index j−1
    std::vector<std::vector<Rat>> ey_dot_;  // ψ*E_i^T·E_j
    std::vector<Rat> crepant_dot_e_;        // (Σ c_C R_C)·E_i^±
};

struct KvvStep {
    int j = 0;              // step index, from 0
    Rat mu;                 // μ_j
    int chosen = 0;         // i_j, 1-based
    Rat lambda;             // λ_{j+1} = λ_j + μ_j
    std::vector<Rat> delta; // Δ_{j+1} coefficients
};

/// Coefficient-reduction schedule: μ_j = min_i (1−δ_i)/e_i (ties to the
/// lowest index), δ ← δ + μ_j·e − 1_{i_j}, λ ← λ + μ_j, until λ ≥ target.
std::vector<KvvStep> kvv_schedule(const std::vector<int>& e, const std::vector<Rat>& delta0,
                                  const Rat& lambda_target);

}  // namespace conekit
