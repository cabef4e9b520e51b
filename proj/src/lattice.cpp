#include "conekit/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <utility>

namespace conekit {

namespace {

void require_same_rank(std::size_t expected, std::size_t got, const char* what) {
    if (expected != got) {
        std::ostringstream os;
        os << what << ": expected rank " << expected << ", got " << got;
        throw RankMismatch(os.str());
    }
}

// Row-echelon reduction in place; returns the rank and the sign/scale data
// needed for the determinant.
struct Echelon {
    std::size_t rank = 0;
    Rat det_factor{1};
};

Echelon row_reduce(RatMatrix& m) {
    Echelon out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col).is_zero()) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            out.det_factor = Rat(0);
            continue;
        }
        if (pivot != row) {
            for (std::size_t c = 0; c < m.cols(); ++c) {
                std::swap(m(pivot, c), m(row, c));
            }
            out.det_factor = -out.det_factor;
        }
        const Rat p = m(row, col);
        out.det_factor *= p;
        for (std::size_t r = row + 1; r < m.rows(); ++r) {
            if (m(r, col).is_zero()) {
                continue;
            }
            const Rat f = m(r, col) / p;
            for (std::size_t c = col; c < m.cols(); ++c) {
                m(r, c) -= f * m(row, c);
            }
        }
        ++row;
    }
    out.rank = row;
    return out;
}

}  // namespace

bool RatMatrix::is_symmetric() const {
    if (rows_ != cols_) {
        return false;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = i + 1; j < cols_; ++j) {
            if ((*this)(i, j) != (*this)(j, i)) {
                return false;
            }
        }
    }
    return true;
}

Rat determinant(const RatMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("determinant of a non-square matrix");
    }
    if (m.rows() == 0) {
        return Rat(1);
    }
    RatMatrix work = m;
    const Echelon e = row_reduce(work);
    return e.rank == m.rows() ? e.det_factor : Rat(0);
}

std::size_t matrix_rank(const RatMatrix& m) {
    RatMatrix work = m;
    return row_reduce(work).rank;
}

std::vector<Rat> solve_linear(const RatMatrix& m, std::span<const Rat> rhs) {
    const std::size_t n = m.rows();
    if (m.cols() != n || rhs.size() != n) {
        throw RankMismatch("solve_linear: shape mismatch");
    }
    RatMatrix aug(n, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            aug(i, j) = m(i, j);
        }
        aug(i, n) = rhs[i];
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && aug(pivot, col).is_zero()) {
            ++pivot;
        }
        if (pivot == n) {
            throw SingularBlock("solve_linear: singular matrix");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c <= n; ++c) {
                std::swap(aug(pivot, c), aug(col, c));
            }
        }
        const Rat p = aug(col, col);
        for (std::size_t c = col; c <= n; ++c) {
            aug(col, c) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || aug(r, col).is_zero()) {
                continue;
            }
            const Rat f = aug(r, col);
            for (std::size_t c = col; c <= n; ++c) {
                aug(r, c) -= f * aug(col, c);
            }
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = aug(i, n);
    }
    return x;
}

RatMatrix inverse(const RatMatrix& m) {
    const std::size_t n = m.rows();
    RatMatrix inv(n, n);
    std::vector<Rat> unit(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(unit.begin(), unit.end(), Rat(0));
        unit[j] = Rat(1);
        const auto col = solve_linear(m, unit);
        for (std::size_t i = 0; i < n; ++i) {
            inv(i, j) = col[i];
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------

bool ClassVector::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& r) { return r.is_zero(); });
}

ClassVector& ClassVector::operator+=(const ClassVector& o) {
    require_same_rank(size(), o.size(), "ClassVector +");
    for (std::size_t i = 0; i < size(); ++i) {
        coeffs_[i] += o.coeffs_[i];
    }
    return *this;
}

ClassVector& ClassVector::operator-=(const ClassVector& o) {
    require_same_rank(size(), o.size(), "ClassVector -");
    for (std::size_t i = 0; i < size(); ++i) {
        coeffs_[i] -= o.coeffs_[i];
    }
    return *this;
}

ClassVector& ClassVector::operator*=(const Rat& s) {
    for (auto& c : coeffs_) {
        c *= s;
    }
    return *this;
}

ClassVector ClassVector::operator-() const {
    ClassVector out = *this;
    out *= Rat(-1);
    return out;
}

// ---------------------------------------------------------------------------

IntersectionLattice::IntersectionLattice(std::vector<std::string> basis_names, RatMatrix gram,
                                         ClassVector canonical, Rat chi_structure_sheaf)
    : basis_names_(std::move(basis_names)),
      gram_(std::move(gram)),
      canonical_(std::move(canonical)),
      chi_(std::move(chi_structure_sheaf)) {
    require_same_rank(basis_names_.size(), gram_.rows(), "IntersectionLattice gram rows");
    require_same_rank(basis_names_.size(), gram_.cols(), "IntersectionLattice gram cols");
    require_same_rank(basis_names_.size(), canonical_.size(), "IntersectionLattice canonical");
    if (!gram_.is_symmetric()) {
        throw std::invalid_argument("IntersectionLattice: Gram matrix is not symmetric");
    }
}

std::size_t IntersectionLattice::index_of(std::string_view basis_name) const {
    const auto it = std::find(basis_names_.begin(), basis_names_.end(), basis_name);
    if (it == basis_names_.end()) {
        throw UnknownCurve(std::string(basis_name));
    }
    return static_cast<std::size_t>(it - basis_names_.begin());
}

ClassVector IntersectionLattice::basis_vector(std::string_view basis_name) const {
    ClassVector v(rank());
    v[index_of(basis_name)] = Rat(1);
    return v;
}

Rat intersect(const IntersectionLattice& lattice, const ClassVector& v, const ClassVector& w) {
    require_same_rank(lattice.rank(), v.size(), "intersect lhs");
    require_same_rank(lattice.rank(), w.size(), "intersect rhs");
    const RatMatrix& g = lattice.gram();
    Rat total;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].is_zero()) {
            continue;
        }
        Rat row;
        for (std::size_t j = 0; j < w.size(); ++j) {
            if (!w[j].is_zero() && !g(i, j).is_zero()) {
                row += g(i, j) * w[j];
            }
        }
        total += v[i] * row;
    }
    return total;
}

RatMatrix restricted_gram(const IntersectionLattice& lattice, std::span<const ClassVector> subset) {
    RatMatrix g(subset.size(), subset.size());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        for (std::size_t j = i; j < subset.size(); ++j) {
            g(i, j) = intersect(lattice, subset[i], subset[j]);
            g(j, i) = g(i, j);
        }
    }
    return g;
}

bool is_negative_definite(const IntersectionLattice& lattice, std::span<const ClassVector> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("is_negative_definite: empty subset");
    }
    RatMatrix coords(subset.size(), lattice.rank());
    for (std::size_t i = 0; i < subset.size(); ++i) {
        require_same_rank(lattice.rank(), subset[i].size(), "is_negative_definite");
        for (std::size_t j = 0; j < lattice.rank(); ++j) {
            coords(i, j) = subset[i][j];
        }
    }
    if (matrix_rank(coords) != subset.size()) {
        throw DependentSubset("is_negative_definite: subset is linearly dependent");
    }
    const RatMatrix g = restricted_gram(lattice, subset);
    for (std::size_t k = 1; k <= subset.size(); ++k) {
        RatMatrix lead(k, k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                lead(i, j) = g(i, j);
            }
        }
        const Rat det = determinant(lead);
        const int expected = (k % 2 == 1) ? -1 : 1;
        if (det.sign() != expected) {
            return false;
        }
    }
    return true;
}

std::vector<Rat> solve_against(const IntersectionLattice& lattice, std::span<const ClassVector> subset,
                               const ClassVector& target) {
    const RatMatrix g = restricted_gram(lattice, subset);
    std::vector<Rat> rhs(subset.size());
    for (std::size_t j = 0; j < subset.size(); ++j) {
        rhs[j] = -intersect(lattice, target, subset[j]);
    }
    try {
        return solve_linear(g, rhs);
    } catch (const SingularBlock&) {
        throw SingularBlock("solve_against: Gram block of the subset is singular");
    }
}

// ---------------------------------------------------------------------------

bool CurveNameLess::operator()(std::string_view a, std::string_view b) const {
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t ie = i;
            std::size_t je = j;
            while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie])) != 0) {
                ++ie;
            }
            while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je])) != 0) {
                ++je;
            }
            std::string_view na = a.substr(i, ie - i);
            std::string_view nb = b.substr(j, je - j);
            while (na.size() > 1 && na.front() == '0') {
                na.remove_prefix(1);
            }
            while (nb.size() > 1 && nb.front() == '0') {
                nb.remove_prefix(1);
            }
            if (na.size() != nb.size()) {
                return na.size() < nb.size();
            }
            if (na != nb) {
                return na < nb;
            }
            i = ie;
            j = je;
            continue;
        }
        if (a[i] != b[j]) {
            return a[i] < b[j];
        }
        ++i;
        ++j;
    }
    if (a.size() - i != b.size() - j) {
        return a.size() - i < b.size() - j;
    }
    return a < b;
}

NamedDivisor::NamedDivisor(std::initializer_list<std::pair<const std::string, Rat>> terms) {
    for (const auto& [name, c] : terms) {
        add(name, c);
    }
}

NamedDivisor NamedDivisor::curve(std::string name, Rat coeff) {
    NamedDivisor d;
    d.add(name, coeff);
    return d;
}

Rat NamedDivisor::coeff(std::string_view name) const {
    const auto it = terms_.find(name);
    return it == terms_.end() ? Rat(0) : it->second;
}

void NamedDivisor::add(const std::string& name, const Rat& coeff) {
    if (coeff.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(name, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

bool NamedDivisor::is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_integer(); });
}

NamedDivisor& NamedDivisor::operator+=(const NamedDivisor& o) {
    for (const auto& [name, c] : o.terms_) {
        add(name, c);
    }
    return *this;
}

NamedDivisor& NamedDivisor::operator-=(const NamedDivisor& o) {
    for (const auto& [name, c] : o.terms_) {
        add(name, -c);
    }
    return *this;
}

NamedDivisor& NamedDivisor::operator*=(const Rat& s) {
    if (s.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [name, c] : terms_) {
        c *= s;
    }
    return *this;
}

NamedDivisor NamedDivisor::operator-() const {
    NamedDivisor out = *this;
    out *= Rat(-1);
    return out;
}

std::string NamedDivisor::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    for (const auto& [name, c] : terms_) {
        const Rat mag = c.abs();
        if (first) {
            if (c.sign() < 0) {
                os << "-";
            }
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        if (mag != Rat(1)) {
            os << mag << " ";
        }
        os << name;
        first = false;
    }
    return os.str();
}

NamedDivisor floor_divisor(const NamedDivisor& d) {
    NamedDivisor out;
    for (const auto& [name, c] : d.terms()) {
        out.add(name, c.floor());
    }
    return out;
}

NamedDivisor frac_divisor(const NamedDivisor& d) {
    NamedDivisor out;
    for (const auto& [name, c] : d.terms()) {
        out.add(name, c.frac());
    }
    return out;
}

NamedDivisor ceil_divisor(const NamedDivisor& d) {
    NamedDivisor out;
    for (const auto& [name, c] : d.terms()) {
        out.add(name, c.ceil());
    }
    return out;
}

NamedDivisor parse_divisor(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) == 0) {
            s.push_back(c);
        }
    }
    if (s.empty()) {
        throw std::invalid_argument("parse_divisor: empty input");
    }
    NamedDivisor out;
    if (s == "0") {
        return out;
    }
    std::size_t pos = 0;
    const auto fail = [&](const std::string& why) {
        throw std::invalid_argument("parse_divisor: " + why + " in '" + std::string(text) + "'");
    };
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        std::size_t start = pos;
        while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) != 0 || s[pos] == '/')) {
            ++pos;
        }
        Rat coeff(1);
        if (pos > start) {
            coeff = Rat::parse(std::string_view(s).substr(start, pos - start));
        }
        if (pos < s.size() && s[pos] == '*') {
            ++pos;
        }
        start = pos;
        if (pos >= s.size() || std::isalpha(static_cast<unsigned char>(s[pos])) == 0) {
            fail("expected a curve name");
        }
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) != 0 || s[pos] == '_' || s[pos] == '\'')) {
            ++pos;
        }
        std::string name = s.substr(start, pos - start);
        if (pos + 1 < s.size() && s[pos] == '^' && (s[pos + 1] == 'T' || s[pos + 1] == 'S')) {
            pos += 2;
        }
        if (name == "K_T" || name == "K_S") {
            name = "K";
        }
        out.add(name, sign == 1 ? coeff : -coeff);
    }
    return out;
}

// ---------------------------------------------------------------------------

void CurveRegistry::add(std::string name, ClassVector cls, bool is_prime) {
    if (index_.count(name) != 0) {
        throw std::invalid_argument("CurveRegistry: duplicate curve '" + name + "'");
    }
    if (!entries_.empty()) {
        require_same_rank(entries_.front().cls.size(), cls.size(), "CurveRegistry::add");
    }
    index_.emplace(name, entries_.size());
    entries_.push_back(Entry{std::move(name), std::move(cls), is_prime});
}

bool CurveRegistry::contains(std::string_view name) const { return index_.count(std::string(name)) != 0; }

const CurveRegistry::Entry& CurveRegistry::at(std::string_view name) const {
    const auto it = index_.find(std::string(name));
    if (it == index_.end()) {
        throw UnknownCurve(std::string(name));
    }
    return entries_[it->second];
}

ClassVector class_of(const CurveRegistry& registry, const NamedDivisor& d, std::size_t rank) {
    ClassVector out(rank);
    for (const auto& [name, c] : d.terms()) {
        const auto& entry = registry.at(name);
        require_same_rank(rank, entry.cls.size(), "class_of");
        for (std::size_t k = 0; k < rank; ++k) {
            if (!entry.cls[k].is_zero()) {
                out[k] += c * entry.cls[k];
            }
        }
    }
    return out;
}

NamedDivisor floor_divisor(const CurveRegistry& registry, const NamedDivisor& d) {
    for (const auto& [name, c] : d.terms()) {
        if (!registry.at(name).is_prime && !c.is_integer()) {
            throw std::invalid_argument("floor_divisor: non-integral coefficient on non-prime entry '" + name + "'");
        }
    }
    return floor_divisor(d);
}

}  // namespace conekit
