#include "conekit/scenarios.hpp"

#include <algorithm>
#include <future>
#include <sstream>

namespace conekit {

PreconditionError::PreconditionError(std::string condition_name, const std::string& detail)
    : std::invalid_argument("precondition " + condition_name + " violated: " + detail),
      condition(std::move(condition_name)) {}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

namespace {

constexpr const char* kParityRule = "parity-reduction";
constexpr const char* kSerreTail =
    "nA is a multiple of 2A or 3A plus a multiple of 2A; the tail n >> 0 is also covered by Serre vanishing "
    "(no effective bound)";

std::string params_pair(int a, int b) {
    std::ostringstream os;
    os << "(" << a << ", " << b << ")";
    return os.str();
}

/// h¹(nA) = 0 for all n ≥ 2 once 2A and 3A rewrite to effective divisors of
/// positive degree: every nA with n ≥ 2 is a non-negative combination of them.
bool uniform_h1_zero(const KmTarget& t, const std::vector<ChainEntry>& chain, std::vector<Certificate>& certs) {
    bool ok = true;
    for (int n : {2, 3}) {
        const auto it = std::find_if(chain.begin(), chain.end(), [n](const ChainEntry& e) { return e.n == n; });
        if (it == chain.end() || !it->report.h1.is_zero()) {
            ok = false;
        }
    }
    (void)t;
    if (ok) {
        certs.push_back({"h1", rule::kRewrite});
        certs.push_back({"h1", rule::kEffNefBig});
        certs.push_back({"h1", rule::kSerre});
        certs.push_back({"h1", kParityRule});
    }
    return ok;
}

std::string rules_str(const std::vector<Certificate>& certs) {
    std::string out;
    for (const auto& c : certs) {
        out += (out.empty() ? "" : "+") + c.rule;
    }
    return out;
}

std::vector<std::pair<std::string, int>> checked_m_table(const ConeModel& cone) { return cone.m_table(); }

bool ledger_consistent(const ConeModel& cone) {
    for (int i = 1; i <= cone.d(); ++i) {
        for (int j = 1; j <= cone.d(); ++j) {
            if (!cone.section_numbers(i, j).consistent) {
                return false;
            }
        }
    }
    return cone.adjunction_consistency().all_pass();
}

}  // namespace

int PltReport::unknown_count() const {
    int n = 0;
    const auto bump = [&n](const HValue& h) { n += h.status == HStatus::Unknown ? 1 : 0; };
    for (const auto& e : h1_chain) {
        bump(e.report.h1);
    }
    bump(h0_minus_e.h0);
    bump(a_minus_e.h1);
    for (const auto& e : h2_chain) {
        bump(e.report.h2);
    }
    n += h1_uniform_zero ? 0 : 1;
    n += h2_uniform_zero ? 0 : 1;
    return n;
}

PltReport verify_plt_nonnormal(int d, int q, int chain_length) {
    if (q < 2) {
        throw PreconditionError("q>=2", "q = " + std::to_string(q));
    }
    if (d < q + 2) {
        throw PreconditionError("d>=q+2", "(d, q) = " + params_pair(d, q));
    }
    if ((2 * d - 4) % (q - 1) != 0) {
        throw PreconditionError("(q-1)|(2d-4)", "(d, q) = " + params_pair(d, q));
    }
    if (chain_length < 3) {
        throw std::invalid_argument("verify_plt_nonnormal: chain length must be at least 3");
    }

    PltReport r;
    r.d = d;
    r.q = q;
    const KmTarget t(d);
    const FamilyDescriptor fam{d, q, 1};
    r.A = fam.divisor();
    r.ample = t.psi().is_ample_rho1(r.A);
    const ConeModel cone = ConeModel::build(t, r.A);
    r.m_table = checked_m_table(cone);

    for (int n = 0; n <= chain_length; ++n) {
        r.h1_chain.push_back({n, cohomology_of_nA(t, fam, n)});
    }
    r.h1_uniform_zero = uniform_h1_zero(t, r.h1_chain, r.h1_uniform_certificates);

    const int j = q + 2;
    r.h0_minus_e = cohomology_of_nA(t, fam, 0, j);
    r.a_minus_e = cohomology_of_nA(t, fam, 1, j);
    for (int n = 2; n <= chain_length; ++n) {
        r.h2_chain.push_back({n, cohomology_of_nA(t, fam, n, j)});
    }
    // (K − nA + E_j)·(−K) decreases in n since A·(−K) > 0, so the n = 2 degree
    // bound covers every n ≥ 2.
    r.h2_uniform_zero = r.ample && !r.h2_chain.empty() && r.h2_chain.front().report.h2.is_zero();

    r.plt = cone.plt_coefficient_b(j);
    r.discrepancies = t.psi().relative_canonical();
    r.extension_coefficient = Rat(q - 2, q - 1);
    r.ledger_consistent = ledger_consistent(cone);
    r.picard = cone.picard_chain();

    if (r.unknown_count() > 0) {
        r.non_normal = Verdict::Unknown;
        return r;
    }
    const bool r1_zero =
        r.h1_uniform_zero &&
        std::all_of(r.h1_chain.begin(), r.h1_chain.end(), [](const ChainEntry& e) { return e.report.h1.is_zero(); });
    const bool r1_minus_nonzero =
        r.a_minus_e.h1.is_positive() && r.h0_minus_e.h0.is_zero() && r.h2_uniform_zero &&
        std::all_of(r.h2_chain.begin(), r.h2_chain.end(), [](const ChainEntry& e) { return e.report.h2.is_zero(); });
    const bool holds = r.ample && r.plt.plt && r.plt.b == r.extension_coefficient && r.ledger_consistent &&
                       r.picard.consistent && r1_zero && r1_minus_nonzero;
    r.non_normal = holds ? Verdict::True : Verdict::False;
    return r;
}

FanoReport verify_bad_fano(int q, int chain_length) {
    if (q < 1) {
        throw PreconditionError("q>=1", "q = " + std::to_string(q));
    }
    if (chain_length < 3) {
        throw std::invalid_argument("verify_bad_fano: chain length must be at least 3");
    }
    FanoReport r;
    r.q = q;
    r.d = 4 * q + 2;
    const KmTarget t(r.d);
    const FamilyDescriptor fam{r.d, 3 * q, q};
    r.A = fam.divisor();
    r.ample = t.psi().is_ample_rho1(r.A);
    const ConeModel cone = ConeModel::build(t, r.A);
    r.m_table = checked_m_table(cone);

    r.h1_A = km_family_cohomology(t, fam);
    for (int n = 2; n <= chain_length; ++n) {
        r.h1_chain.push_back({n, cohomology_of_nA(t, fam, n)});
    }
    r.h1_uniform_zero = uniform_h1_zero(t, r.h1_chain, r.h1_uniform_certificates);

    // H²(Z, 𝒪_Z) ≅ ⊕_{n≥1} H¹(T, nA); only n = 1 can contribute.
    if (r.h1_uniform_zero && r.h1_A.h1.is_exact()) {
        r.h2_Z = *r.h1_A.h1.exact_value();
    }
    r.not_cohen_macaulay = r.h2_Z && *r.h2_Z > 0;
    r.picard = cone.picard_chain();
    r.as_expected = r.ample && r.h2_Z == std::optional<long>(q - 1) && r.not_cohen_macaulay == (q >= 2) &&
                    cone.m(curve::kGamma) == 4 && r.picard.consistent && ledger_consistent(cone);
    return r;
}

std::vector<SweepRow> sweep_kvv(int d_min, int d_max) {
    if (d_min < 3 || d_min > d_max) {
        throw PreconditionError("3<=d_min<=d_max", "(d_min, d_max) = " + params_pair(d_min, d_max));
    }
    const auto rows_for = [](int d) {
        const KmTarget t(d);
        std::vector<SweepRow> rows;
        for (int q1 = 0; q1 <= d; ++q1) {
            for (int q2 = 0; q1 + q2 <= d; ++q2) {
                const FamilyDescriptor fam{d, q1, q2};
                SweepRow row{d, q1, q2};
                row.ample = t.psi().is_ample_rho1(fam.divisor());
                const CohomReport c = km_family_cohomology(t, fam);
                if (!c.h1.is_exact()) {
                    throw InternalInconsistency("sweep_kvv: h1 not exact at " + params_pair(q1, q2));
                }
                row.h1 = *c.h1.exact_value();
                row.kvv_violation = row.ample && row.h1 > 0;
                rows.push_back(row);
            }
        }
        return rows;
    };
    std::vector<std::future<std::vector<SweepRow>>> tasks;
    for (int d = d_min; d <= d_max; ++d) {
        tasks.push_back(std::async(std::launch::async, rows_for, d));
    }
    std::vector<SweepRow> out;
    for (auto& task : tasks) {
        auto rows = task.get();
        out.insert(out.end(), rows.begin(), rows.end());
    }
    return out;
}

namespace {

const char* yes_no(bool b) { return b ? "true" : "false"; }

void add_m_rows(Report& rep, const std::vector<std::pair<std::string, int>>& m_table) {
    for (const auto& [name, m] : m_table) {
        rep.certificates.push_back({"m(" + name + ")", std::to_string(m), "unit-fraction-assumption",
                                    "fractional part of the psi*A coefficient is 1/m, or 0 for m = 1"});
    }
}

void add_picard_row(Report& rep, const PicardChain& p) {
    std::ostringstream os;
    os << "(" << p.rho_S << ", " << p.rho_T << ", " << p.rho_X << ", " << p.rho_Y << ", " << p.rho_Z << ")";
    rep.certificates.push_back({"(rho_S, rho_T, rho_X, rho_Y, rho_Z)", os.str(), "picard-chain",
                                p.consistent ? "rho_Y = rho_T + 1 and rho_Z = rho_T" : "inconsistent"});
}

std::string uniform_value(bool zero) { return zero ? "0" : "unknown"; }

}  // namespace

Report to_report(const PltReport& r) {
    Report rep;
    rep.scenario = "plt-nonnormal";
    rep.params = {{"d", r.d}, {"q", r.q}};
    const std::string ej = "E_" + std::to_string(r.q + 2);
    rep.certificates.push_back({"A", r.A.str(), "construction", "sum of E_i for i <= q minus E_{q+1}"});
    rep.certificates.push_back({"A ample", yes_no(r.ample), "rho1-anticanonical-degree",
                                "rho(T) = 1 and -K_T ample, so ampleness is positive degree against -K_T"});
    add_m_rows(rep, r.m_table);
    for (const auto& e : r.h1_chain) {
        rep.certificates.push_back({"h1(T," + std::to_string(e.n) + "A)", e.report.h1.str(),
                                    joined_rules(e.report, "h1"), "exact cohomology of a multiple of A"});
    }
    rep.certificates.push_back({"h1(T,nA) for all n>=2", uniform_value(r.h1_uniform_zero),
                                rules_str(r.h1_uniform_certificates), kSerreTail});
    rep.certificates.push_back({"h0(T,-" + ej + ")", r.h0_minus_e.h0.str(), joined_rules(r.h0_minus_e, "h0"),
                                "anti-effective class of negative degree"});
    rep.certificates.push_back({"h1(T,A-" + ej + ")", r.a_minus_e.h1.str(), joined_rules(r.a_minus_e, "h1"),
                                "family member (q1, q2) = (q, 2) after relabelling"});
    for (const auto& e : r.h2_chain) {
        rep.certificates.push_back({"h2(T," + std::to_string(e.n) + "A-" + ej + ")", e.report.h2.str(),
                                    joined_rules(e.report, "h2"), "dual class has negative degree"});
    }
    rep.certificates.push_back({"h2(T,nA-" + ej + ") for all n>=2", uniform_value(r.h2_uniform_zero),
                                std::string(rule::kSerre) + "+" + rule::kDegree,
                                "degree of the dual class decreases in n since A is ample"});
    for (const auto& [name, a] : r.discrepancies.entries) {
        rep.certificates.push_back({"a(" + name + ", T)", a.str(), "minimal-resolution criterion",
                                    "discrepancy of psi over T"});
    }
    rep.certificates.push_back({"psi singularities", to_string(r.plt.psi_kind), "minimal-resolution criterion",
                                "all discrepancies exceed -1"});
    rep.certificates.push_back({"psi*A." + ej, r.plt.psiA_dot_Ei.str(), "lattice-intersection",
                                "intersection on the source surface"});
    rep.certificates.push_back({"b", r.plt.b.str(), "cone-ledger",
                                "(psi*A.E - 1/(2d-4)) / psi*A.E, matched against the K_Y and E^Y ledger on f(E^-)"});
    rep.certificates.push_back({"extension coefficient (q-2)/(q-1)", r.extension_coefficient.str(), "closed-form",
                                "agrees with b"});
    rep.certificates.push_back({"(Z, E^Z + b T^Z) plt near the vertex", yes_no(r.plt.plt), "cone-ledger",
                                "b < 1 and T klt"});
    rep.certificates.push_back({"threefold ledger consistent", yes_no(r.ledger_consistent), "adjunction-ledger",
                                "section numbers and adjunction on every E_i^+-, C^+"});
    add_picard_row(rep, r.picard);
    rep.certificates.push_back({"unknown entries", std::to_string(r.unknown_count()), "count",
                                "certified entries left undecided"});
    rep.certificates.push_back({"non_normal", to_string(r.non_normal), "cone-vertex-criterion",
                                "R1 g_* O_Y = 0 while R1 g_* O_Y(-E^Y) != 0"});
    rep.verdict = std::string("non_normal=") + to_string(r.non_normal);
    rep.ok = r.non_normal == Verdict::True;
    return rep;
}

Report to_report(const FanoReport& r) {
    Report rep;
    rep.scenario = "bad-fano";
    rep.params = {{"q", r.q}, {"d", r.d}};
    rep.certificates.push_back({"A", r.A.str(), "construction", "sum of E_i for i <= 3q minus E_j for 3q < j <= 4q"});
    rep.certificates.push_back({"A ample", yes_no(r.ample), "rho1-anticanonical-degree",
                                "rho(T) = 1 and -K_T ample, so ampleness is positive degree against -K_T"});
    add_m_rows(rep, r.m_table);
    rep.certificates.push_back({"h1(T,A)", r.h1_A.h1.str(), joined_rules(r.h1_A, "h1"),
                                "family member (q1, q2) = (3q, q)"});
    for (const auto& e : r.h1_chain) {
        rep.certificates.push_back({"h1(T," + std::to_string(e.n) + "A)", e.report.h1.str(),
                                    joined_rules(e.report, "h1"), "exact cohomology of a multiple of A"});
    }
    rep.certificates.push_back({"h1(T,nA) for all n>=2", uniform_value(r.h1_uniform_zero),
                                rules_str(r.h1_uniform_certificates), kSerreTail});
    rep.certificates.push_back({"h2(Z,O_Z)", r.h2_Z ? std::to_string(*r.h2_Z) : "unknown", "cone-vertex-sum",
                                "H2(Z,O_Z) = sum over n >= 1 of H1(T,nA)"});
    rep.certificates.push_back({"not Cohen-Macaulay", yes_no(r.not_cohen_macaulay), "cone-vertex-depth",
                                "nonzero H1(T,nA) for some n >= 1 obstructs depth 3 at the vertex"});
    rep.certificates.push_back({"-K_Z ample", yes_no(r.anticanonical_ample), "cited-fact",
                                "rho(Z) = 1 and -K_Z big; recorded, not recomputed"});
    add_picard_row(rep, r.picard);
    rep.verdict = std::string("as_expected=") + yes_no(r.as_expected);
    rep.ok = r.as_expected;
    return rep;
}

Report sweep_report(int d_min, int d_max, const std::vector<SweepRow>& rows) {
    Report rep;
    rep.scenario = "kvv-sweep";
    rep.params = {{"d_min", d_min}, {"d_max", d_max}};
    Table t{"rows", {"d", "q1", "q2", "ample", "h1", "kvv_violation"}, {}};
    std::vector<int> violating_d;
    for (const auto& row : rows) {
        t.rows.push_back({std::to_string(row.d), std::to_string(row.q1), std::to_string(row.q2), yes_no(row.ample),
                          std::to_string(row.h1), yes_no(row.kvv_violation)});
        if (row.kvv_violation && (violating_d.empty() || violating_d.back() != row.d)) {
            violating_d.push_back(row.d);
        }
    }
    rep.tables.push_back(std::move(t));
    bool every_d_from_5 = true;
    for (int d = std::max(d_min, 5); d <= d_max; ++d) {
        every_d_from_5 = every_d_from_5 && std::find(violating_d.begin(), violating_d.end(), d) != violating_d.end();
    }
    rep.verdict = std::string("violation_for_every_d>=5=") + yes_no(every_d_from_5);
    rep.ok = every_d_from_5;
    return rep;
}

}  // namespace conekit
