#include "conekit/contraction.hpp"

#include <algorithm>
#include <stdexcept>

namespace conekit {

Rat DiscrepancyTable::at(const std::string& curve) const {
    for (const auto& [name, a] : entries) {
        if (name == curve) {
            return a;
        }
    }
    throw UnknownCurve(curve);
}

Rat DiscrepancyTable::min() const {
    if (entries.empty()) {
        throw std::logic_error("DiscrepancyTable::min on an empty table");
    }
    Rat m = entries.front().second;
    for (const auto& [name, a] : entries) {
        m = std::min(m, a);
    }
    return m;
}

const char* to_string(SingularityKind kind) {
    switch (kind) {
        case SingularityKind::Terminal: return "terminal";
        case SingularityKind::Canonical: return "canonical";
        case SingularityKind::Klt: return "klt";
        case SingularityKind::Plt: return "plt";
        case SingularityKind::Lc: return "lc";
        case SingularityKind::NotLc: return "not-lc";
    }
    return "?";
}

Contraction::Contraction(Surface source, std::vector<std::string> contracted)
    : source_(std::move(source)), contracted_(std::move(contracted)) {
    for (const auto& name : contracted_) {
        contracted_classes_.push_back(source_.registry.at(name).cls);
    }
    for (std::size_t i = 0; i < contracted_classes_.size(); ++i) {
        for (std::size_t j = i + 1; j < contracted_classes_.size(); ++j) {
            if (contracted_classes_[i] == contracted_classes_[j]) {
                throw std::invalid_argument("Contraction: curves '" + contracted_[i] + "' and '" + contracted_[j] +
                                            "' have the same class");
            }
        }
    }
    if (!contracted_classes_.empty()) {
        if (!is_negative_definite(source_.lattice, contracted_classes_)) {
            throw std::invalid_argument("Contraction: contracted configuration is not negative definite");
        }
        block_inverse_ = inverse(restricted_gram(source_.lattice, contracted_classes_));
        const std::size_t n = source_.lattice.rank();
        for (const auto& c : contracted_classes_) {
            ClassVector dual(n);
            const RatMatrix& g = source_.lattice.gram();
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (!c[j].is_zero() && !g(i, j).is_zero()) {
                        dual[i] += g(i, j) * c[j];
                    }
                }
            }
            contracted_duals_.push_back(std::move(dual));
        }
    }

    if (picard_rank_after() == 1) {
        const NamedDivisor minus_k = NamedDivisor::curve("K", Rat(-1));
        for (const auto& entry : source_.registry.entries()) {
            if (!entry.is_prime || contracts(entry.name)) {
                continue;
            }
            if (target_intersect(NamedDivisor::curve(entry.name), minus_k).sign() > 0) {
                rho1_anti_ample_ = true;
                break;
            }
        }
    }
}

bool Contraction::contracts(const std::string& name) const {
    return std::find(contracted_.begin(), contracted_.end(), name) != contracted_.end();
}

void Contraction::require_target_divisor(const NamedDivisor& d) const {
    for (const auto& [name, c] : d.terms()) {
        if (contracts(name)) {
            throw std::invalid_argument("divisor on the target mentions contracted curve '" + name + "'");
        }
        (void)source_.registry.at(name);
    }
}

NamedDivisor Contraction::pullback(const NamedDivisor& target_divisor) const {
    require_target_divisor(target_divisor);
    NamedDivisor out = target_divisor;
    if (contracted_.empty() || target_divisor.empty()) {
        return out;
    }
    const ClassVector cls = source_.class_of(target_divisor);
    const std::size_t k = contracted_.size();
    std::vector<Rat> b(k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (!cls[i].is_zero() && !contracted_duals_[j][i].is_zero()) {
                b[j] += cls[i] * contracted_duals_[j][i];
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        Rat x;
        for (std::size_t j = 0; j < k; ++j) {
            x -= block_inverse_(i, j) * b[j];
        }
        out.add(contracted_[i], x);
    }
    return out;
}

NamedDivisor Contraction::pushforward(const NamedDivisor& source_divisor) const {
    NamedDivisor out;
    for (const auto& [name, c] : source_divisor.terms()) {
        if (!contracts(name)) {
            out.add(name, c);
        }
    }
    return out;
}

DiscrepancyTable Contraction::relative_canonical() const {
    // ψ*K_T = K_S + Σ x_C C, hence a_C = −x_C.
    const NamedDivisor pulled = pullback(NamedDivisor::curve("K"));
    DiscrepancyTable table;
    for (const auto& name : contracted_) {
        table.entries.emplace_back(name, -pulled.coeff(name));
    }
    return table;
}

SingularityClassification Contraction::classify_singularities(const NamedDivisor& boundary) const {
    bool reduced_part = false;
    for (const auto& [name, c] : boundary.terms()) {
        if (c.sign() < 0 || c > Rat(1)) {
            throw std::invalid_argument("classify_singularities: boundary coefficient of '" + name + "' is " +
                                        c.str() + ", outside [0,1]");
        }
        if (!source_.registry.at(name).is_prime) {
            throw std::invalid_argument("classify_singularities: boundary component '" + name + "' is not prime");
        }
        reduced_part = reduced_part || c == Rat(1);
    }
    const DiscrepancyTable base = relative_canonical();
    const NamedDivisor pulled = pullback(boundary);

    SingularityClassification out;
    out.certificate = "minimal-resolution criterion";
    for (const auto& [name, a] : base.entries) {
        out.discrepancies.entries.emplace_back(name, a - pulled.coeff(name));
    }
    if (out.discrepancies.entries.empty()) {
        out.kind = reduced_part ? SingularityKind::Plt : SingularityKind::Terminal;
        return out;
    }
    const Rat m = out.discrepancies.min();
    out.min_discrepancy = m;
    if (reduced_part) {
        out.kind = m > Rat(-1) ? SingularityKind::Plt : (m == Rat(-1) ? SingularityKind::Lc : SingularityKind::NotLc);
    } else if (m.sign() > 0) {
        out.kind = SingularityKind::Terminal;
    } else if (m.sign() == 0) {
        out.kind = SingularityKind::Canonical;
    } else if (m > Rat(-1)) {
        out.kind = SingularityKind::Klt;
    } else if (m == Rat(-1)) {
        out.kind = SingularityKind::Lc;
    } else {
        out.kind = SingularityKind::NotLc;
    }
    return out;
}

Rat Contraction::target_intersect(const NamedDivisor& a, const NamedDivisor& b) const {
    // ψ*a is orthogonal to every contracted curve, so ψ*a·ψ*b = ψ*a·b.
    require_target_divisor(b);
    return source_.dot(pullback(a), b);
}

int Contraction::picard_rank_after() const {
    return static_cast<int>(source_.lattice.rank()) - static_cast<int>(contracted_.size());
}

Rat Contraction::anticanonical_degree(const NamedDivisor& d) const {
    return target_intersect(d, NamedDivisor::curve("K", Rat(-1)));
}

bool Contraction::is_ample_rho1(const NamedDivisor& d) const {
    if (!rho1_anti_ample_) {
        throw std::logic_error("is_ample_rho1: target is not known to have rho = 1 with -K ample");
    }
    return anticanonical_degree(d).sign() > 0;
}

}  // namespace conekit
