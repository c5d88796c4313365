#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fident {

using Rational = mpq_class;

/// Parse "p/q" or "p" into a canonical rational. Throws std::invalid_argument.
Rational parse_rational(const std::string& s);
std::string to_string(const Rational& q);

/// Variable x_{ij}^{(k)}; k is the generic-matrix index, (i, j) the entry.
struct VarId {
    int k = 1;
    int i = 1;
    int j = 1;

    static constexpr int kMaxK = 255;
    static constexpr int kMaxIJ = 15;

    /// Packed id; ascending id order is ascending (k, i, j).
    std::uint32_t id() const {
        return (static_cast<std::uint32_t>(k) << 8) | (static_cast<std::uint32_t>(i) << 4) |
               static_cast<std::uint32_t>(j);
    }
    static VarId from_id(std::uint32_t id) {
        return VarId{static_cast<int>(id >> 8), static_cast<int>((id >> 4) & 15u),
                     static_cast<int>(id & 15u)};
    }
    bool operator==(const VarId&) const = default;
};

/// Variable order: a > b iff (k,i,j) of a is lexicographically smaller.
std::strong_ordering var_cmp(const VarId& a, const VarId& b);

/// Bitmask of variable groups (bit k set for group k, k <= 31).
using GroupMask = std::uint32_t;
inline GroupMask group_bit(int k) { return GroupMask{1} << k; }
GroupMask mask_of(const std::vector<int>& groups);
std::vector<int> groups_of(GroupMask mask);

/// Monomial stored as sorted (var id, exponent) pairs packed as id << 8 | exp.
class Monomial {
public:
    Monomial() = default;
    static Monomial var(const VarId& v, int exp = 1);

    bool is_one() const { return e_.empty(); }
    int degree() const;
    int exponent(const VarId& v) const;
    const std::vector<std::uint32_t>& packed() const { return e_; }
    std::vector<std::pair<VarId, int>> factors() const;

    Monomial operator*(const Monomial& o) const;
    bool divides(const Monomial& o) const;
    /// this / o; requires o.divides(*this).
    Monomial operator/(const Monomial& o) const;
    static Monomial lcm(const Monomial& a, const Monomial& b);
    static Monomial gcd(const Monomial& a, const Monomial& b);

    /// Groups that occur, and whether every group occurs exactly once with exponent 1.
    GroupMask groups() const;
    bool is_multilinear_in(GroupMask groups) const;
    bool coprime(const Monomial& o) const;

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    std::size_t hash() const;

private:
    std::vector<std::uint32_t> e_;
    friend class Poly;
};

/// Lexicographic extension of var_cmp. 1 is minimal.
std::strong_ordering mono_cmp(const Monomial& a, const Monomial& b);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
    Monomial m;
    Rational c;
};

/// Sparse polynomial over Q in the variables x_{ij}^{(k)}.
/// Terms are kept sorted in descending mono_cmp order with nonzero coefficients.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);  // NOLINT: implicit constant
    Poly(int c) : Poly(Rational(c)) {}  // NOLINT
    static Poly var(const VarId& v);
    static Poly var(int k, int i, int j) { return var(VarId{k, i, j}); }
    static Poly term(const Monomial& m, const Rational& c);
    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    static Poly from_terms(std::vector<Term> terms);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].m.is_one()); }
    Rational constant_value() const;
    std::size_t size() const { return t_.size(); }
    const std::vector<Term>& terms() const { return t_; }
    const Term& lead() const { return t_.front(); }
    int degree() const;
    Rational coeff(const Monomial& m) const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly scaled(const Rational& c) const;
    Poly times_term(const Monomial& m, const Rational& c) const;
    /// this += c * m * o
    void add_scaled(const Poly& o, const Monomial& m, const Rational& c);

    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    /// Substitution: variables for which f returns a value are replaced.
    Poly substitute(const std::function<const Poly*(const VarId&)>& f) const;
    Poly substitute(const std::map<std::uint32_t, Poly>& by_id) const;
    /// Renames variables group-wise (k -> map(k)); products may merge variables.
    Poly relabel(const std::function<VarId(const VarId&)>& f) const;

    /// Union of groups over all terms.
    GroupMask groups() const;

    std::string str() const;

private:
    std::vector<Term> t_;
    void normalize_sorted();
};

/// True iff p is nonzero and every term has, for each group in `groups`, exactly one
/// variable to the first power, and no variables outside `groups`.
bool is_multilinear(const Poly& p, GroupMask groups);

/// All multilinear monomials that use exactly one variable from each listed group.
std::vector<Monomial> multilinear_monomials(const std::vector<int>& groups, int n);

std::string var_name(const VarId& v);

/// Exact quotient a / b. Throws std::domain_error if b is zero or does not divide a.
Poly divide_exact(const Poly& a, const Poly& b);

}  // namespace fident

template <>
struct std::hash<fident::Monomial> {
    std::size_t operator()(const fident::Monomial& m) const noexcept { return m.hash(); }
};
