#pragma once

// End-to-end verifiers: the non-normal plt centre family, the Fano cone
// family with H²(Z, 𝒪_Z) ≠ 0, and the Kawamata–Viehweg violation sweep.

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conekit/cone.hpp"
#include "conekit/report.hpp"

namespace conekit {

/// A violated precondition; `condition` names it, e.g. "d>=q+2".
struct PreconditionError : std::invalid_argument {
    PreconditionError(std::string condition_name, const std::string& detail);
    std::string condition;
};

enum class Verdict { True, False, Unknown };

const char* to_string(Verdict v);

struct ChainEntry {
    int n = 0;
    CohomReport report;
};

struct PltReport {
    int d = 0;
    int q = 0;
    NamedDivisor A;
    bool ample = false;
    std::vector<std::pair<std::string, int>> m_table;
    std::vector<ChainEntry> h1_chain;           // h¹(T, nA), n = 0..N
    bool h1_uniform_zero = false;               // one rule application for all n ≥ 2
    std::vector<Certificate> h1_uniform_certificates;
    CohomReport h0_minus_e;                     // −E_{q+2}
    CohomReport a_minus_e;                      // A − E_{q+2}
    std::vector<ChainEntry> h2_chain;           // h²(T, nA − E_{q+2}), n = 2..N
    bool h2_uniform_zero = false;
    PltCoefficient plt;
    DiscrepancyTable discrepancies;
    Rat extension_coefficient;                  // (q−2)/(q−1)
    bool ledger_consistent = false;
    PicardChain picard;
    Verdict non_normal = Verdict::Unknown;

    /// Certified entries of the chain that came out Unknown.
    int unknown_count() const;
};

/// Pre: q ≥ 2, d ≥ q+2, (q−1) | (2d−4). `chain_length` is N.
PltReport verify_plt_nonnormal(int d, int q, int chain_length = 6);

struct FanoReport {
    int q = 0;
    int d = 0;
    NamedDivisor A;
    bool ample = false;
    std::vector<std::pair<std::string, int>> m_table;
    CohomReport h1_A;
    std::vector<ChainEntry> h1_chain;           // h¹(T, nA), n = 2..N
    bool h1_uniform_zero = false;
    std::vector<Certificate> h1_uniform_certificates;
    std::optional<long> h2_Z;
    bool not_cohen_macaulay = false;
    PicardChain picard;
    bool anticanonical_ample = true;            // cited, not recomputed
    bool as_expected = false;
};

/// Pre: q ≥ 1.
FanoReport verify_bad_fano(int q, int chain_length = 6);

struct SweepRow {
    int d = 0;
    int q1 = 0;
    int q2 = 0;
    bool ample = false;
    long h1 = 0;
    bool kvv_violation = false;
};

/// Rows over 3 ≤ d_min ≤ d ≤ d_max, q1, q2 ≥ 0, q1+q2 ≤ d, in lexicographic
/// (d, q1, q2) order. Each d runs on its own task.
std::vector<SweepRow> sweep_kvv(int d_min, int d_max);

Report to_report(const PltReport& r);
Report to_report(const FanoReport& r);
Report sweep_report(int d_min, int d_max, const std::vector<SweepRow>& rows);

}  // namespace conekit
