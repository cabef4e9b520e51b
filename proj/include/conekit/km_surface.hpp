#pragma once

// Iterated blow-ups of P² as explicit Picard lattices, and the rank one
// del Pezzo construction of Keel–McKernan in characteristic two.

#include <string>
#include <utility>
#include <vector>

#include "conekit/lattice.hpp"

namespace conekit {

/// One point blow-up. `through` lists the named curves whose current proper
/// transforms pass through the centre, with their multiplicities there.
struct BlowupStep {
    std::string exceptional;                         // new basis element, square -1
    std::vector<std::pair<std::string, int>> through;
    std::string register_as;                         // optional: name the new exceptional curve
};

/// Replays blow-ups starting from P² with hyperplane class "H".
struct BlowupPlan {
    std::vector<std::pair<std::string, int>> plane_curves;  // curve name, degree in P²
    std::vector<BlowupStep> steps;
    std::vector<std::string> basis_order;                   // optional final basis permutation
};

/// Lattice plus registry obtained by replaying a plan. The registry gains a
/// non-prime entry "K" holding the canonical class.
Surface replay_blowups(const BlowupPlan& plan);

struct KMSurface {
    int d = 0;
    Surface surface;

    const IntersectionLattice& lattice() const { return surface.lattice; }
    const CurveRegistry& registry() const { return surface.registry; }

    /// Names of the 2d+1 curves Γ, ℓ_i, ℓ'_i contracted to T.
    std::vector<std::string> exceptional_curves() const;
};

namespace curve {
inline const std::string kGamma = "Gamma";
inline const std::string kFibre = "F";
inline const std::string kCanonical = "K";
inline std::string l(int i) { return "l_" + std::to_string(i); }
inline std::string lp(int i) { return "lp_" + std::to_string(i); }
inline std::string E(int i) { return "E_" + std::to_string(i); }
}  // namespace curve

/// The plan P² → S₁ → S₂ → S: blow up the strange point Q, then the points
/// P_i on the conic, then the tangency points Q'_i of fibre and conic.
BlowupPlan km_blowup_plan(int d);

/// Requires d ≥ 3 (so that Γ² = 4 − 2d < 0); throws std::invalid_argument otherwise.
KMSurface build_km_surface(int d);

struct SanityItem {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct SanityReport {
    std::vector<SanityItem> items;
    bool all_pass() const;
};

SanityReport km_sanity(const KMSurface& s);

}  // namespace conekit
