#include "conekit/cone.hpp"

#include <algorithm>
#include <sstream>

namespace conekit {

AssumptionViolation::AssumptionViolation(std::string curve_name, Rat fractional_part)
    : std::invalid_argument("unit-fraction assumption fails on '" + curve_name + "': fractional part " +
                            fractional_part.str() + " is not 1/m"),
      curve(std::move(curve_name)),
      fractional(std::move(fractional_part)) {}

std::vector<std::pair<std::string, int>> validate_assumption_A(const KmTarget& t, const NamedDivisor& a) {
    if (!a.is_integral()) {
        throw std::invalid_argument("validate_assumption_A: A = " + a.str() + " is not integral");
    }
    const NamedDivisor pulled = t.psi().pullback(a);
    std::vector<std::pair<std::string, int>> out;
    for (const auto& name : t.psi().contracted()) {
        const Rat f = pulled.coeff(name).frac();
        if (f.is_zero()) {
            out.emplace_back(name, 1);
            continue;
        }
        if (f.numerator() != 1) {
            throw AssumptionViolation(name, f);
        }
        const Rat m(mpq_class(f.denominator()));
        out.emplace_back(name, static_cast<int>(m.to_long()));
    }
    return out;
}

bool AdjunctionReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const AdjunctionCheck& c) { return c.pass; });
}

ConeModel::ConeModel(KmTarget target, NamedDivisor a, NamedDivisor pullback_a,
                     std::vector<std::pair<std::string, int>> m)
    : target_(std::move(target)), a_(std::move(a)), pullback_a_(std::move(pullback_a)), m_(std::move(m)) {
    for (const auto& [name, mc] : m_) {
        const Rat neg_sq = -curve_dot(name, name);
        crepant_.emplace_back(name, (neg_sq - Rat(2 * mc)) / neg_sq);
    }
    const Surface& s = target_.surface().surface;
    std::vector<ClassVector> e_cls;
    for (int j = 1; j <= d(); ++j) {
        e_cls.push_back(s.registry.at(curve::E(j)).cls);
    }
    const ClassVector a_cls = s.class_of(pullback_a_);
    for (int i = 1; i <= d(); ++i) {
        psiA_dot_e_.push_back(intersect(s.lattice, a_cls, e_cls[i - 1]));
        const ClassVector pe = s.class_of(target_.psi().pullback(NamedDivisor::curve(curve::E(i))));
        std::vector<Rat> row;
        for (int j = 1; j <= d(); ++j) {
            row.push_back(intersect(s.lattice, pe, e_cls[j - 1]));
        }
        ey_dot_.push_back(std::move(row));
        Rat term;
        for (const auto& [name, c] : crepant_) {
            term += c * curve_dot(name, curve::E(i)) / Rat(ConeModel::m(name));
        }
        crepant_dot_e_.push_back(term);
    }
}

ConeModel ConeModel::build(KmTarget target, NamedDivisor a) {
    if (!a.is_integral()) {
        throw std::invalid_argument("ConeModel: A = " + a.str() + " is not integral");
    }
    if (!target.psi().is_ample_rho1(a)) {
        throw std::invalid_argument("ConeModel: A = " + a.str() + " is not ample");
    }
    auto m = validate_assumption_A(target, a);
    NamedDivisor pulled = target.psi().pullback(a);
    return ConeModel(std::move(target), std::move(a), std::move(pulled), std::move(m));
}

int ConeModel::m(const std::string& curve) const {
    for (const auto& [name, value] : m_) {
        if (name == curve) {
            return value;
        }
    }
    throw std::invalid_argument("ConeModel: '" + curve + "' is not contracted by psi");
}

Rat ConeModel::curve_dot(const std::string& a, const std::string& b) const {
    const Surface& s = target_.surface().surface;
    return intersect(s.lattice, s.registry.at(a).cls, s.registry.at(b).cls);
}

Rat ConeModel::different_dot(const std::string& curve) const {
    Rat total = curve_dot("K", curve);
    for (const auto& [name, mc] : m_) {
        total += Rat(mc - 1, mc) * curve_dot(name, curve);
    }
    return total;
}

CurveNumbers ConeModel::cone_curve_numbers(const std::string& curve) const {
    CurveNumbers out;
    out.curve = curve;
    out.m = m(curve);
    out.self_intersection = curve_dot(curve, curve);
    out.pullback_multiplicity = out.m;
    out.section_square_in_R = Rat(0);
    out.section_dot_curve = Rat(0);
    out.canonical_dot_curve = (-out.self_intersection - Rat(2 * out.m)) / Rat(out.m);
    return out;
}

std::vector<std::pair<std::string, Rat>> ConeModel::crepant_pullback_fY() const { return crepant_; }

SectionNumbers ConeModel::section_numbers(int i, int j) const {
    if (i < 1 || i > d() || j < 1 || j > d()) {
        std::ostringstream os;
        os << "section_numbers: indices (" << i << ", " << j << ") outside 1.." << d();
        throw std::out_of_range(os.str());
    }
    const auto psiA_dot = [&](int k) { return psiA_dot_e_[k - 1]; };

    SectionNumbers out;
    out.i = i;
    out.j = j;
    out.psiA_dot_Ej = psiA_dot(j);
    out.s_plus_dot_Ej_plus = out.psiA_dot_Ej;
    out.s_minus_dot_Ej_minus = -out.psiA_dot_Ej;

    const Rat p_i = psiA_dot(i);
    const int m_gamma = m(curve::kGamma);
    const int m_l = m(curve::l(i));
    const int m_lp = m(curve::lp(i));
    const auto unit = [](int mc) { return Rat(mc - 1, mc); };
    const Rat base = unit(m_gamma) + unit(m_l) + unit(m_lp) - Rat(1);
    out.canonical_dot_Ei_plus = base - p_i;
    out.canonical_dot_Ei_minus = base + p_i;

    out.crepant_term = crepant_dot_e_[i - 1];

    const Rat neg_gamma_sq = -curve_dot(curve::kGamma, curve::kGamma);
    const Rat gamma_term = (neg_gamma_sq - Rat(2 * m_gamma)) / (neg_gamma_sq * Rat(m_gamma));
    out.crepant_term_printed = gamma_term + Rat(1 - m_l, m_l) + Rat(1 - m_lp, m_lp);

    out.ky_dot_fEi_plus = unit(m_gamma) - Rat(1) - p_i + gamma_term;
    out.ky_dot_fEi_minus = unit(m_gamma) - Rat(1) + p_i + gamma_term;

    out.ey_i_dot_fEj = ey_dot_[i - 1][j - 1];
    out.expected_ey_dot = Rat(1, 2L * d() - 4);

    out.consistent = out.ky_dot_fEi_plus == out.canonical_dot_Ei_plus + out.crepant_term &&
                     out.ky_dot_fEi_minus == out.canonical_dot_Ei_minus + out.crepant_term &&
                     out.crepant_term == out.crepant_term_printed && out.ey_i_dot_fEj == out.expected_ey_dot;
    return out;
}

PltCoefficient ConeModel::plt_coefficient_b(int i) const {
    const SectionNumbers sn = section_numbers(i, i);
    PltCoefficient out;
    out.i = i;
    out.psiA_dot_Ei = sn.psiA_dot_Ej;
    if (out.psiA_dot_Ei.is_zero()) {
        throw std::domain_error("plt_coefficient_b: psi*A.E_" + std::to_string(i) + " = 0");
    }
    const Rat e = Rat(1, 2L * d() - 4);
    out.b = (out.psiA_dot_Ei - e) / out.psiA_dot_Ei;
    // g contracts T^− ⊃ f(E_i^−): (K_Y + E_i^Y + b T^−)·f(E_i^−) = 0 with T^−·f(E_i^−) = S^−·E_i^−.
    out.b_from_ledger = -(sn.ky_dot_fEi_minus + sn.ey_i_dot_fEj) / sn.s_minus_dot_Ej_minus;
    if (out.b != out.b_from_ledger) {
        throw InternalInconsistency("plt_coefficient_b: closed form " + out.b.str() + " != ledger value " +
                                    out.b_from_ledger.str());
    }
    out.psi_kind = target_.psi().classify_singularities(NamedDivisor{}).kind;
    const bool psi_klt = out.psi_kind == SingularityKind::Terminal || out.psi_kind == SingularityKind::Canonical ||
                         out.psi_kind == SingularityKind::Klt;
    out.plt = psi_klt && out.b < Rat(1);
    return out;
}

std::vector<ResolutionRecord> ConeModel::resolution_ledger() const {
    std::vector<ResolutionRecord> out;
    for (const auto& [name, mc] : m_) {
        if (mc < 2) {
            continue;
        }
        ResolutionRecord r;
        r.curve = name;
        r.m = mc;
        r.fplus_coefficient = Rat(mc - 2, mc);
        r.fplus_discrepancy = -r.fplus_coefficient;
        r.s_plus_on_fplus = Rat(1, mc);
        r.r_on_fplus = Rat(1, mc);
        std::ostringstream graph;
        graph << "~S^-";
        for (int k = 1; k <= mc - 1; ++k) {
            r.s_minus_chain.emplace_back(mc - k, mc);
            r.r_chain.emplace_back(k, mc);
            graph << " -- F_" << k << "^-";
        }
        graph << " -- ~R_" << name;
        r.dual_graph = graph.str();
        out.push_back(std::move(r));
    }
    return out;
}

AdjunctionReport ConeModel::adjunction_consistency() const {
    AdjunctionReport report;
    const Surface& s = target_.surface().surface;
    for (int i = 1; i <= d(); ++i) {
        const SectionNumbers sn = section_numbers(i, i);
        const Rat rhs = different_dot(curve::E(i));
        const Rat normal = s.dot(pullback_a_, NamedDivisor::curve(curve::E(i)));
        // S^∓ is disjoint from E_i^±.
        const Rat lhs_plus = sn.canonical_dot_Ei_plus + sn.s_plus_dot_Ej_plus + Rat(0);
        const Rat lhs_minus = sn.canonical_dot_Ei_minus + Rat(0) + sn.s_minus_dot_Ej_minus;
        const Rat normal_plus = sn.s_plus_dot_Ej_plus - Rat(0);
        const Rat normal_minus = Rat(0) - sn.s_minus_dot_Ej_minus;
        const std::string e = "E_" + std::to_string(i);
        report.checks.push_back({"(K_X+S^++S^-)." + e + "^+ and (S^+-S^-)." + e + "^+", lhs_plus, rhs,
                                 lhs_plus == rhs && normal_plus == normal});
        report.checks.push_back({"(K_X+S^++S^-)." + e + "^- and (S^+-S^-)." + e + "^-", lhs_minus, rhs,
                                 lhs_minus == rhs && normal_minus == normal});
    }
    for (const auto& [name, mc] : m_) {
        const CurveNumbers cn = cone_curve_numbers(name);
        const Rat lhs = cn.canonical_dot_curve + cn.section_dot_curve + Rat(0);
        const Rat rhs = different_dot(name);
        report.checks.push_back({"(K_X+S^++S^-)." + name + "^+", lhs, rhs, lhs == rhs});
    }
    return report;
}

PicardChain ConeModel::picard_chain() const {
    PicardChain p;
    const Contraction& psi = target_.psi();
    p.rho_S = static_cast<int>(psi.source().lattice.rank());
    p.rho_T = psi.picard_rank_after();
    p.rho_X = p.rho_S + 1;
    // f contracts one ruling class for each R_C; g contracts the divisor T^−.
    p.rho_Y = p.rho_X - static_cast<int>(psi.contracted().size());
    p.rho_Z = p.rho_Y - 1;
    p.consistent = p.rho_Y == p.rho_T + 1 && p.rho_Z == p.rho_T;
    return p;
}

std::vector<KvvStep> kvv_schedule(const std::vector<int>& e, const std::vector<Rat>& delta0,
                                  const Rat& lambda_target) {
    if (e.empty() || e.size() != delta0.size()) {
        throw std::invalid_argument("kvv_schedule: e and delta must be nonempty and of equal length");
    }
    for (int ei : e) {
        if (ei < 1) {
            throw std::invalid_argument("kvv_schedule: multiplicities must be positive");
        }
    }
    for (const Rat& di : delta0) {
        if (di.sign() < 0 || di >= Rat(1)) {
            throw std::invalid_argument("kvv_schedule: initial coefficients must lie in [0,1)");
        }
    }
    if (lambda_target.sign() < 0) {
        throw std::invalid_argument("kvv_schedule: target must be non-negative");
    }
    // Each index is chosen at least once per unit of λ·max(e); this bounds the
    // run far beyond any trace a caller can use.
    constexpr int kMaxSteps = 1'000'000;

    std::vector<KvvStep> trace;
    std::vector<Rat> delta = delta0;
    Rat lambda;
    for (int j = 0; lambda < lambda_target; ++j) {
        if (j >= kMaxSteps) {
            throw std::runtime_error("kvv_schedule: step limit exceeded");
        }
        std::size_t best = 0;
        Rat mu = (Rat(1) - delta[0]) / Rat(e[0]);
        for (std::size_t i = 1; i < e.size(); ++i) {
            const Rat cand = (Rat(1) - delta[i]) / Rat(e[i]);
            if (cand < mu) {
                mu = cand;
                best = i;
            }
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            delta[i] += mu * Rat(e[i]);
        }
        delta[best] -= Rat(1);
        lambda += mu;
        trace.push_back(KvvStep{j, mu, static_cast<int>(best) + 1, lambda, delta});
    }
    return trace;
}

}  // namespace conekit
