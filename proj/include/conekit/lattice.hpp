#pragma once

// Exact intersection lattices, divisor classes and curve-supported divisors.

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conekit/rat.hpp"

namespace conekit {

struct RankMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A subset handed to a definiteness test or solver is linearly dependent.
struct DependentSubset : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularBlock : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownCurve : std::out_of_range {
    explicit UnknownCurve(const std::string& name)
        : std::out_of_range("unknown curve '" + name + "'"), curve(name) {}
    std::string curve;
};

/// Dense square/rectangular matrix of rationals, row-major.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_symmetric() const;
    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Exact determinant by fraction-carrying Gaussian elimination.
Rat determinant(const RatMatrix& m);

/// Rank of an arbitrary matrix.
std::size_t matrix_rank(const RatMatrix& m);

/// Solves m·x = rhs for square nonsingular m; throws SingularBlock otherwise.
std::vector<Rat> solve_linear(const RatMatrix& m, std::span<const Rat> rhs);

/// Inverse of a square nonsingular matrix.
RatMatrix inverse(const RatMatrix& m);

/// Coefficients of a divisor class in a lattice basis.
class ClassVector {
public:
    ClassVector() = default;
    explicit ClassVector(std::size_t rank) : coeffs_(rank) {}
    explicit ClassVector(std::vector<Rat> coeffs) : coeffs_(std::move(coeffs)) {}

    std::size_t size() const { return coeffs_.size(); }
    const Rat& operator[](std::size_t i) const { return coeffs_[i]; }
    Rat& operator[](std::size_t i) { return coeffs_[i]; }
    std::span<const Rat> coeffs() const { return coeffs_; }
    bool is_zero() const;

    ClassVector& operator+=(const ClassVector& o);
    ClassVector& operator-=(const ClassVector& o);
    ClassVector& operator*=(const Rat& s);
    friend ClassVector operator+(ClassVector a, const ClassVector& b) { return a += b; }
    friend ClassVector operator-(ClassVector a, const ClassVector& b) { return a -= b; }
    friend ClassVector operator*(const Rat& s, ClassVector v) { return v *= s; }
    ClassVector operator-() const;
    friend bool operator==(const ClassVector&, const ClassVector&) = default;

private:
    std::vector<Rat> coeffs_;
};

class IntersectionLattice {
public:
    IntersectionLattice(std::vector<std::string> basis_names, RatMatrix gram, ClassVector canonical,
                        Rat chi_structure_sheaf = Rat(1));

    std::size_t rank() const { return basis_names_.size(); }
    const std::vector<std::string>& basis_names() const { return basis_names_; }
    const RatMatrix& gram() const { return gram_; }
    const ClassVector& canonical() const { return canonical_; }
    const Rat& chi_structure_sheaf() const { return chi_; }

    std::size_t index_of(std::string_view basis_name) const;
    ClassVector basis_vector(std::string_view basis_name) const;
    ClassVector zero() const { return ClassVector(rank()); }

private:
    std::vector<std::string> basis_names_;
    RatMatrix gram_;
    ClassVector canonical_;
    Rat chi_;
};

/// vᵀ·G·w.
Rat intersect(const IntersectionLattice& lattice, const ClassVector& v, const ClassVector& w);

/// Gram matrix of the given classes.
RatMatrix restricted_gram(const IntersectionLattice& lattice, std::span<const ClassVector> subset);

/// True iff the restricted Gram matrix is negative definite, decided by the
/// signs of its leading principal minors ((-1)^k det_k > 0 for every k).
/// Throws DependentSubset when the classes are linearly dependent.
bool is_negative_definite(const IntersectionLattice& lattice, std::span<const ClassVector> subset);

/// The unique x with (target + Σ x_k subset_k)·subset_j = 0 for every j.
std::vector<Rat> solve_against(const IntersectionLattice& lattice, std::span<const ClassVector> subset,
                               const ClassVector& target);

/// Orders curve names so that embedded integers compare numerically
/// ("E_2" < "E_10").
struct CurveNameLess {
    bool operator()(std::string_view a, std::string_view b) const;
    using is_transparent = void;
};

/// Finite formal Q-combination of named curves. Zero coefficients are never stored.
class NamedDivisor {
public:
    using Terms = std::map<std::string, Rat, CurveNameLess>;

    NamedDivisor() = default;
    NamedDivisor(std::initializer_list<std::pair<const std::string, Rat>> terms);

    static NamedDivisor curve(std::string name, Rat coeff = Rat(1));

    const Terms& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Rat coeff(std::string_view name) const;
    void add(const std::string& name, const Rat& coeff);
    bool is_integral() const;

    NamedDivisor& operator+=(const NamedDivisor& o);
    NamedDivisor& operator-=(const NamedDivisor& o);
    NamedDivisor& operator*=(const Rat& s);
    friend NamedDivisor operator+(NamedDivisor a, const NamedDivisor& b) { return a += b; }
    friend NamedDivisor operator-(NamedDivisor a, const NamedDivisor& b) { return a -= b; }
    friend NamedDivisor operator*(const Rat& s, NamedDivisor d) { return d *= s; }
    NamedDivisor operator-() const;
    friend bool operator==(const NamedDivisor&, const NamedDivisor&) = default;

    /// Human form such as "E_1 + 1/2 l_1 - Gamma"; "0" when empty.
    std::string str() const;

private:
    Terms terms_;
};

NamedDivisor floor_divisor(const NamedDivisor& d);
NamedDivisor frac_divisor(const NamedDivisor& d);
NamedDivisor ceil_divisor(const NamedDivisor& d);

/// Parses "E_1+E_2-1/2l_3", "2*E_1 - K", "0". A trailing "^T" on a name is dropped.
NamedDivisor parse_divisor(std::string_view text);

class CurveRegistry {
public:
    struct Entry {
        std::string name;
        ClassVector cls;
        bool is_prime = true;
    };

    void add(std::string name, ClassVector cls, bool is_prime = true);
    bool contains(std::string_view name) const;
    const Entry& at(std::string_view name) const;
    /// Entries in registration order.
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
    std::unordered_map<std::string, std::size_t> index_;
};

ClassVector class_of(const CurveRegistry& registry, const NamedDivisor& d, std::size_t rank);

/// Floor that refuses to round a non-integral coefficient on a non-prime entry.
NamedDivisor floor_divisor(const CurveRegistry& registry, const NamedDivisor& d);

/// A lattice together with the named curves living on it.
struct Surface {
    IntersectionLattice lattice;
    CurveRegistry registry;

    ClassVector class_of(const NamedDivisor& d) const { return conekit::class_of(registry, d, lattice.rank()); }
    Rat dot(const NamedDivisor& a, const NamedDivisor& b) const {
        return intersect(lattice, class_of(a), class_of(b));
    }
};

}  // namespace conekit
