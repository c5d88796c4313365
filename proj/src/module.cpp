#include "fident/module.hpp"

#include <stdexcept>

namespace fident {

std::strong_ordering module_term_cmp(int pos_a, const Monomial& a, int pos_b, const Monomial& b) {
    if (pos_a != pos_b) return pos_a < pos_b ? std::strong_ordering::greater : std::strong_ordering::less;
    return mono_cmp(a, b);
}

bool ModuleElement::is_zero() const {
    for (const auto& p : c)
        if (!p.is_zero()) return false;
    return true;
}

int ModuleElement::lead_pos() const {
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!c[i].is_zero()) return static_cast<int>(i);
    return -1;
}

std::optional<ModuleTerm> ModuleElement::lead() const {
    const int p = lead_pos();
    if (p < 0) return std::nullopt;
    const auto& t = c[static_cast<std::size_t>(p)].lead();
    return ModuleTerm{p, t.m, t.c};
}

GroupMask ModuleElement::groups() const {
    GroupMask g = 0;
    for (const auto& p : c) g |= p.groups();
    return g;
}

ModuleElement ModuleElement::operator+(const ModuleElement& o) const {
    ModuleElement r = *this;
    r += o;
    return r;
}

ModuleElement ModuleElement::operator-(const ModuleElement& o) const {
    ModuleElement r = *this;
    r -= o;
    return r;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& o) {
    if (o.rank() != rank()) throw std::invalid_argument("module rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& o) {
    if (o.rank() != rank()) throw std::invalid_argument("module rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
}

ModuleElement ModuleElement::operator*(const Poly& p) const {
    ModuleElement r(rank());
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] * p;
    return r;
}

void ModuleElement::add_scaled(const ModuleElement& o, const Monomial& m, const Rational& s) {
    if (o.rank() != rank()) throw std::invalid_argument("module rank mismatch");
    for (std::size_t i = 0; i < c.size(); ++i) c[i].add_scaled(o.c[i], m, s);
}

std::vector<Poly> ModuleElement::combine(const std::vector<Poly>& coeffs, const std::vector<ModuleElement>& rows) {
    if (coeffs.size() != rows.size()) throw std::invalid_argument("combine: size mismatch");
    std::vector<Poly> out(rows.empty() ? 0 : rows.front().rank());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (coeffs[r].is_zero()) continue;
        for (std::size_t j = 0; j < out.size(); ++j) out[j] += coeffs[r] * rows[r].c[j];
    }
    return out;
}

bool element_multilinear(const ModuleElement& v, GroupMask* groups_out) {
    GroupMask g = 0;
    bool have = false;
    for (const auto& p : v.c) {
        if (p.is_zero()) continue;
        if (!have) {
            g = p.lead().m.groups();
            have = true;
        }
        if (!is_multilinear(p, g)) return false;
    }
    if (groups_out != nullptr) *groups_out = g;
    return true;
}

}  // namespace fident
