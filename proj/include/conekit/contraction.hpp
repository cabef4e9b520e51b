#pragma once

// Birational contractions of negative-definite curve configurations on a
// lattice surface. Divisors on the target are written through the names of
// their proper transforms on the source; "K" stands for the canonical class.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conekit/lattice.hpp"

namespace conekit {

/// Discrepancies a_C with K_source = ψ*K_target + Σ a_C C, in contraction order.
struct DiscrepancyTable {
    std::vector<std::pair<std::string, Rat>> entries;
    Rat at(const std::string& curve) const;
    Rat min() const;
};

enum class SingularityKind { Terminal, Canonical, Klt, Plt, Lc, NotLc };

const char* to_string(SingularityKind kind);

struct SingularityClassification {
    SingularityKind kind = SingularityKind::NotLc;
    DiscrepancyTable discrepancies;  // of the pair (target, boundary)
    std::optional<Rat> min_discrepancy;  // empty when nothing is contracted
    std::string certificate;         // always "minimal-resolution criterion"
};

class Contraction {
public:
    /// Throws if a name is unknown, classes repeat, or the Gram block is not
    /// negative definite.
    Contraction(Surface source, std::vector<std::string> contracted);

    const Surface& source() const { return source_; }
    const std::vector<std::string>& contracted() const { return contracted_; }
    bool contracts(const std::string& name) const;

    /// Numerical pullback D + Σ x_C C, orthogonal to every contracted curve.
    NamedDivisor pullback(const NamedDivisor& target_divisor) const;
    NamedDivisor pushforward(const NamedDivisor& source_divisor) const;

    DiscrepancyTable relative_canonical() const;

    /// Boundary on the target, coefficients in [0, 1].
    SingularityClassification classify_singularities(const NamedDivisor& boundary) const;

    Rat target_intersect(const NamedDivisor& a, const NamedDivisor& b) const;

    /// ρ(source) − number of contracted curves.
    int picard_rank_after() const;

    /// Whether ρ(target) = 1 and −K_target is ample, established at
    /// construction from the lattice: the rank drops to one and −K_target has
    /// positive degree on the image of some non-contracted prime curve.
    bool target_rho1_anti_ample() const { return rho1_anti_ample_; }

    /// D·(−K_target) > 0. Throws std::logic_error unless target_rho1_anti_ample().
    bool is_ample_rho1(const NamedDivisor& d) const;

    /// D·(−K_target).
    Rat anticanonical_degree(const NamedDivisor& d) const;

private:
    void require_target_divisor(const NamedDivisor& d) const;

    Surface source_;
    std::vector<std::string> contracted_;
    std::vector<ClassVector> contracted_classes_;
    std::vector<ClassVector> contracted_duals_;  // G·c for each contracted class c
    RatMatrix block_inverse_;
    bool rho1_anti_ample_ = false;
};

}  // namespace conekit
