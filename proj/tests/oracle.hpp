#pragma once

// Independent reference computations for the KM surface. Classes are written
// straight from their closed forms in the basis (H, e0, e_{i,1}, e_{i,2}) and
// pullbacks use the fact that Γ, ℓ_i, ℓ'_i are pairwise disjoint, so no
// matrix inversion is involved.

#include <gmpxx.h>

#include <map>
#include <random>
#include <string>
#include <vector>

namespace oracle {

using Vec = std::vector<mpq_class>;

struct Km {
    int d;
    int rank() const { return 2 + 2 * d; }
    int e1(int i) const { return 2 * i; }      // e_{i,1}
    int e2(int i) const { return 2 * i + 1; }  // e_{i,2}

    Vec zero() const { return Vec(rank(), 0); }

    mpq_class dot(const Vec& a, const Vec& b) const {
        mpq_class s = a[0] * b[0];
        for (int k = 1; k < rank(); ++k) {
            s -= a[k] * b[k];
        }
        return s;
    }

    Vec H() const { Vec v = zero(); v[0] = 1; return v; }
    Vec gamma() const {
        Vec v = zero();
        v[0] = 2;
        for (int i = 1; i <= d; ++i) { v[e1(i)] = -1; v[e2(i)] = -1; }
        return v;
    }
    Vec l(int i) const { Vec v = zero(); v[0] = 1; v[1] = -1; v[e1(i)] = -1; v[e2(i)] = -1; return v; }
    Vec lp(int i) const { Vec v = zero(); v[e1(i)] = 1; v[e2(i)] = -1; return v; }
    Vec E(int i) const { Vec v = zero(); v[e2(i)] = 1; return v; }
    Vec F() const { Vec v = zero(); v[0] = 1; v[1] = -1; return v; }
    Vec K() const {
        Vec v = zero();
        v[0] = -3;
        v[1] = 1;
        for (int i = 1; i <= d; ++i) { v[e1(i)] = 1; v[e2(i)] = 1; }
        return v;
    }

    Vec named(const std::string& name) const {
        if (name == "Gamma") return gamma();
        if (name == "F") return F();
        if (name == "K") return K();
        const auto us = name.rfind('_');
        const int i = std::stoi(name.substr(us + 1));
        const std::string head = name.substr(0, us);
        if (head == "l") return l(i);
        if (head == "lp") return lp(i);
        if (head == "E") return E(i);
        throw std::invalid_argument("oracle: unknown curve " + name);
    }

    std::vector<std::string> contracted() const {
        std::vector<std::string> out{"Gamma"};
        for (int i = 1; i <= d; ++i) { out.push_back("l_" + std::to_string(i)); out.push_back("lp_" + std::to_string(i)); }
        return out;
    }
};

inline Vec add(Vec a, const Vec& b, const mpq_class& s = 1) {
    for (std::size_t k = 0; k < a.size(); ++k) a[k] += s * b[k];
    return a;
}

/// Divisor on T given by E-coefficients, pulled back: coefficients on every
/// named curve (E_i and the contracted ones).
inline std::map<std::string, mpq_class> pullback(const Km& s, const std::map<std::string, mpq_class>& target) {
    Vec cls = s.zero();
    for (const auto& [name, c] : target) cls = add(cls, s.named(name), c);
    std::map<std::string, mpq_class> out = target;
    for (const auto& c : s.contracted()) {
        const Vec cv = s.named(c);
        const mpq_class x = -s.dot(cls, cv) / s.dot(cv, cv);
        if (x != 0) out[c] += x;
    }
    return out;
}

inline Vec class_of(const Km& s, const std::map<std::string, mpq_class>& d) {
    Vec v = s.zero();
    for (const auto& [name, c] : d) v = add(v, s.named(name), c);
    return v;
}

inline mpz_class floor_q(const mpq_class& x) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

/// A = Σ_{i≤q1} E_i − Σ_{q1<j≤q1+q2} E_j as a map.
inline std::map<std::string, mpq_class> family(int q1, int q2) {
    std::map<std::string, mpq_class> a;
    for (int i = 1; i <= q1; ++i) a["E_" + std::to_string(i)] = 1;
    for (int j = q1 + 1; j <= q1 + q2; ++j) a["E_" + std::to_string(j)] = -1;
    return a;
}

/// χ(S, ⌊ψ*A⌋) by Riemann–Roch on the oracle lattice.
inline mpq_class chi_floor_pullback(int d, int q1, int q2) {
    const Km s{d};
    auto pulled = pullback(s, family(q1, q2));
    for (auto& [name, c] : pulled) c = mpq_class(floor_q(c));
    const Vec D = class_of(s, pulled);
    return 1 + s.dot(D, add(D, s.K(), -1)) / 2;
}

/// Fixed-seed generator for property tests.
inline std::mt19937& rng() {
    static std::mt19937 gen(20261016u);
    return gen;
}

inline long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

}  // namespace oracle
