#include "conekit/km_surface.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace conekit {

namespace {

ClassVector extended(const ClassVector& v, std::size_t new_rank) {
    std::vector<Rat> c(v.coeffs().begin(), v.coeffs().end());
    c.resize(new_rank);
    return ClassVector(std::move(c));
}

}  // namespace

Surface replay_blowups(const BlowupPlan& plan) {
    std::vector<std::string> basis{"H"};
    std::vector<Rat> diag{Rat(1)};
    ClassVector canonical(std::vector<Rat>{Rat(-3)});

    std::vector<std::string> order;
    std::map<std::string, ClassVector> classes;
    for (const auto& [name, degree] : plan.plane_curves) {
        if (classes.count(name) != 0) {
            throw std::invalid_argument("replay_blowups: duplicate curve '" + name + "'");
        }
        classes.emplace(name, ClassVector(std::vector<Rat>{Rat(degree)}));
        order.push_back(name);
    }

    for (const auto& step : plan.steps) {
        if (std::find(basis.begin(), basis.end(), step.exceptional) != basis.end()) {
            throw std::invalid_argument("replay_blowups: duplicate basis element '" + step.exceptional + "'");
        }
        basis.push_back(step.exceptional);
        diag.emplace_back(-1);
        const std::size_t r = basis.size();
        for (auto& [name, cls] : classes) {
            cls = extended(cls, r);
        }
        canonical = extended(canonical, r);
        canonical[r - 1] = Rat(1);
        for (const auto& [name, mult] : step.through) {
            auto it = classes.find(name);
            if (it == classes.end()) {
                throw UnknownCurve(name);
            }
            it->second[r - 1] -= Rat(mult);
        }
        if (!step.register_as.empty()) {
            if (classes.count(step.register_as) != 0) {
                throw std::invalid_argument("replay_blowups: duplicate curve '" + step.register_as + "'");
            }
            ClassVector e(r);
            e[r - 1] = Rat(1);
            classes.emplace(step.register_as, std::move(e));
            order.push_back(step.register_as);
        }
    }

    // Permute to the requested basis order.
    std::vector<std::size_t> perm(basis.size());
    if (plan.basis_order.empty()) {
        for (std::size_t i = 0; i < perm.size(); ++i) {
            perm[i] = i;
        }
    } else {
        if (plan.basis_order.size() != basis.size()) {
            throw std::invalid_argument("replay_blowups: basis_order has the wrong length");
        }
        for (std::size_t i = 0; i < perm.size(); ++i) {
            const auto it = std::find(basis.begin(), basis.end(), plan.basis_order[i]);
            if (it == basis.end()) {
                throw UnknownCurve(plan.basis_order[i]);
            }
            perm[i] = static_cast<std::size_t>(it - basis.begin());
        }
    }
    const auto permuted = [&](const ClassVector& v) {
        ClassVector out(v.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            out[i] = v[perm[i]];
        }
        return out;
    };

    const std::size_t rank = basis.size();
    RatMatrix gram(rank, rank);
    std::vector<std::string> names(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        gram(i, i) = diag[perm[i]];
        names[i] = basis[perm[i]];
    }
    const ClassVector k = permuted(canonical);

    CurveRegistry registry;
    for (const auto& name : order) {
        registry.add(name, permuted(classes.at(name)), true);
    }
    registry.add(curve::kCanonical, k, false);
    return Surface{IntersectionLattice(std::move(names), std::move(gram), k, Rat(1)), std::move(registry)};
}

BlowupPlan km_blowup_plan(int d) {
    BlowupPlan plan;
    // Γ₀ is the strange conic, F_i the line through Q tangent to Γ₀ at P_i,
    // F a general line through Q.
    plan.plane_curves.emplace_back(curve::kGamma, 2);
    for (int i = 1; i <= d; ++i) {
        plan.plane_curves.emplace_back(curve::l(i), 1);
    }
    plan.plane_curves.emplace_back(curve::kFibre, 1);

    BlowupStep q{"e0", {}, ""};
    for (int i = 1; i <= d; ++i) {
        q.through.emplace_back(curve::l(i), 1);
    }
    q.through.emplace_back(curve::kFibre, 1);
    plan.steps.push_back(std::move(q));

    for (int i = 1; i <= d; ++i) {
        const std::string e = "e_" + std::to_string(i) + "_1";
        plan.steps.push_back(BlowupStep{e, {{curve::kGamma, 1}, {curve::l(i), 1}}, curve::lp(i)});
    }
    // F'_i and Γ₂ still meet at Q'_i on the first exceptional curve (tangency).
    for (int i = 1; i <= d; ++i) {
        const std::string e = "e_" + std::to_string(i) + "_2";
        plan.steps.push_back(
            BlowupStep{e, {{curve::kGamma, 1}, {curve::l(i), 1}, {curve::lp(i), 1}}, curve::E(i)});
    }

    plan.basis_order = {"H", "e0"};
    for (int i = 1; i <= d; ++i) {
        plan.basis_order.push_back("e_" + std::to_string(i) + "_1");
        plan.basis_order.push_back("e_" + std::to_string(i) + "_2");
    }
    return plan;
}

std::vector<std::string> KMSurface::exceptional_curves() const {
    std::vector<std::string> out{curve::kGamma};
    for (int i = 1; i <= d; ++i) {
        out.push_back(curve::l(i));
        out.push_back(curve::lp(i));
    }
    return out;
}

KMSurface build_km_surface(int d) {
    if (d < 3) {
        throw std::invalid_argument("build_km_surface: d must be at least 3 (got " + std::to_string(d) + ")");
    }
    return KMSurface{d, replay_blowups(km_blowup_plan(d))};
}

bool SanityReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const SanityItem& i) { return i.pass; });
}

SanityReport km_sanity(const KMSurface& s) {
    SanityReport report;
    const Surface& surf = s.surface;
    const auto cls = [&](const std::string& n) { return surf.registry.at(n).cls; };
    const auto dot = [&](const std::string& a, const std::string& b) {
        return intersect(surf.lattice, cls(a), cls(b));
    };
    const auto push = [&](std::string label, bool pass, std::string detail) {
        report.items.push_back(SanityItem{std::move(label), pass, std::move(detail)});
    };

    for (int i = 1; i <= s.d; ++i) {
        const ClassVector fibre = Rat(2) * cls(curve::E(i)) + cls(curve::l(i)) + cls(curve::lp(i));
        push("F = 2E_" + std::to_string(i) + " + l_" + std::to_string(i) + " + lp_" + std::to_string(i),
             fibre == cls(curve::kFibre), "class equality");
    }

    const auto ex = s.exceptional_curves();
    std::string first_bad;
    for (std::size_t a = 0; a < ex.size() && first_bad.empty(); ++a) {
        for (std::size_t b = a + 1; b < ex.size(); ++b) {
            if (!dot(ex[a], ex[b]).is_zero()) {
                first_bad = ex[a] + "." + ex[b] + " = " + dot(ex[a], ex[b]).str();
                break;
            }
        }
    }
    push("Gamma, l_i, lp_i pairwise orthogonal", first_bad.empty(),
         first_bad.empty() ? std::to_string(ex.size()) + " curves" : first_bad);

    for (int i = 1; i <= s.d; ++i) {
        const std::string e = curve::E(i);
        const Rat a = dot(e, curve::kGamma);
        const Rat b = dot(e, curve::l(i));
        const Rat c = dot(e, curve::lp(i));
        std::ostringstream os;
        os << a << ", " << b << ", " << c;
        push(e + ".Gamma = " + e + ".l_" + std::to_string(i) + " = " + e + ".lp_" + std::to_string(i) + " = 1",
             a == Rat(1) && b == Rat(1) && c == Rat(1), os.str());
    }

    const ClassVector minus_k = -surf.lattice.canonical();
    push("-K_S = Gamma + F", minus_k == cls(curve::kGamma) + cls(curve::kFibre), "class equality");

    const Rat gf = dot(curve::kGamma, curve::kFibre);
    push("Gamma.F = 2", gf == Rat(2), gf.str());
    return report;
}

}  // namespace conekit
