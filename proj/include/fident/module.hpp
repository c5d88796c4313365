#pragma once

#include "fident/poly.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace fident {

/// Term p*u_pos of a free module C^r; positions are 0-based flat indices.
struct ModuleTerm {
    int pos = 0;
    Monomial m;
    Rational c;
};

/// Position-first order: smaller position is greater; equal positions compare monomials.
std::strong_ordering module_term_cmp(int pos_a, const Monomial& a, int pos_b, const Monomial& b);
inline std::strong_ordering module_term_cmp(const ModuleTerm& a, const ModuleTerm& b) {
    return module_term_cmp(a.pos, a.m, b.pos, b.m);
}

/// Flat 0-based position of u_{gamma,delta} in C^{n^2} (gamma, delta 1-based).
inline int flat_position(int n, int gamma, int delta) { return n * (gamma - 1) + (delta - 1); }

/// Element of C^r.
struct ModuleElement {
    std::vector<Poly> c;

    ModuleElement() = default;
    explicit ModuleElement(std::size_t rank) : c(rank) {}

    std::size_t rank() const { return c.size(); }
    bool is_zero() const;
    /// First nonzero position, or -1.
    int lead_pos() const;
    std::optional<ModuleTerm> lead() const;
    GroupMask groups() const;

    ModuleElement operator+(const ModuleElement& o) const;
    ModuleElement operator-(const ModuleElement& o) const;
    ModuleElement& operator+=(const ModuleElement& o);
    ModuleElement& operator-=(const ModuleElement& o);
    ModuleElement operator*(const Poly& p) const;
    /// this += c * m * o
    void add_scaled(const ModuleElement& o, const Monomial& m, const Rational& c);
    bool operator==(const ModuleElement& o) const { return c == o.c; }

    /// Sum over positions of c[pos] * rows[pos] for a list of row vectors.
    static std::vector<Poly> combine(const std::vector<Poly>& coeffs, const std::vector<ModuleElement>& rows);
};

/// True iff every component is multilinear in one common nonempty group set, or zero.
bool element_multilinear(const ModuleElement& v, GroupMask* groups_out = nullptr);

}  // namespace fident
