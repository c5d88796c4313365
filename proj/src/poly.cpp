#include "fident/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fident {

namespace {

constexpr std::uint32_t id_of(std::uint32_t packed) { return packed >> 8; }
constexpr std::uint32_t exp_of(std::uint32_t packed) { return packed & 0xffu; }
constexpr std::uint32_t pack(std::uint32_t id, std::uint32_t exp) { return (id << 8) | exp; }

bool term_desc(const Term& a, const Term& b) { return mono_cmp(a.m, b.m) == std::strong_ordering::greater; }

}  // namespace

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    for (char ch : s) {
        if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+'))
            throw std::invalid_argument("bad rational: " + s);
    }
    Rational q;
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) {
    Rational c(q);
    c.canonicalize();
    return c.get_str(10);
}

std::strong_ordering var_cmp(const VarId& a, const VarId& b) {
    const auto ia = a.id();
    const auto ib = b.id();
    if (ia == ib) return std::strong_ordering::equal;
    return ia < ib ? std::strong_ordering::greater : std::strong_ordering::less;
}

GroupMask mask_of(const std::vector<int>& groups) {
    GroupMask m = 0;
    for (int g : groups) m |= group_bit(g);
    return m;
}

std::vector<int> groups_of(GroupMask mask) {
    std::vector<int> out;
    for (int k = 0; k < 32; ++k)
        if (mask & group_bit(k)) out.push_back(k);
    return out;
}

std::string var_name(const VarId& v) {
    std::ostringstream os;
    os << 'x' << v.k << '[' << v.i << ',' << v.j << ']';
    return os.str();
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(const VarId& v, int exp) {
    if (v.k < 0 || v.k > VarId::kMaxK || v.i < 1 || v.i > VarId::kMaxIJ || v.j < 1 || v.j > VarId::kMaxIJ)
        throw std::out_of_range("variable index out of range");
    Monomial m;
    if (exp > 0) m.e_.push_back(pack(v.id(), static_cast<std::uint32_t>(exp)));
    return m;
}

int Monomial::degree() const {
    int d = 0;
    for (auto p : e_) d += static_cast<int>(exp_of(p));
    return d;
}

int Monomial::exponent(const VarId& v) const {
    const auto id = v.id();
    for (auto p : e_)
        if (id_of(p) == id) return static_cast<int>(exp_of(p));
    return 0;
}

std::vector<std::pair<VarId, int>> Monomial::factors() const {
    std::vector<std::pair<VarId, int>> out;
    out.reserve(e_.size());
    for (auto p : e_) out.emplace_back(VarId::from_id(id_of(p)), static_cast<int>(exp_of(p)));
    return out;
}

Monomial Monomial::operator*(const Monomial& o) const {
    Monomial r;
    r.e_.reserve(e_.size() + o.e_.size());
    std::size_t a = 0, b = 0;
    while (a < e_.size() && b < o.e_.size()) {
        const auto ia = id_of(e_[a]), ib = id_of(o.e_[b]);
        if (ia == ib) {
            const auto ex = exp_of(e_[a]) + exp_of(o.e_[b]);
            if (ex > 0xffu) throw std::overflow_error("exponent overflow");
            r.e_.push_back(pack(ia, ex));
            ++a;
            ++b;
        } else if (ia < ib) {
            r.e_.push_back(e_[a++]);
        } else {
            r.e_.push_back(o.e_[b++]);
        }
    }
    while (a < e_.size()) r.e_.push_back(e_[a++]);
    while (b < o.e_.size()) r.e_.push_back(o.e_[b++]);
    return r;
}

bool Monomial::divides(const Monomial& o) const {
    std::size_t b = 0;
    for (auto p : e_) {
        const auto id = id_of(p);
        while (b < o.e_.size() && id_of(o.e_[b]) < id) ++b;
        if (b == o.e_.size() || id_of(o.e_[b]) != id || exp_of(o.e_[b]) < exp_of(p)) return false;
        ++b;
    }
    return true;
}

Monomial Monomial::operator/(const Monomial& o) const {
    Monomial r;
    std::size_t b = 0;
    for (auto p : e_) {
        const auto id = id_of(p);
        std::uint32_t ex = exp_of(p);
        if (b < o.e_.size() && id_of(o.e_[b]) == id) {
            if (exp_of(o.e_[b]) > ex) throw std::invalid_argument("monomial division not exact");
            ex -= exp_of(o.e_[b]);
            ++b;
        } else if (b < o.e_.size() && id_of(o.e_[b]) < id) {
            throw std::invalid_argument("monomial division not exact");
        }
        if (ex > 0) r.e_.push_back(pack(id, ex));
    }
    if (b != o.e_.size()) throw std::invalid_argument("monomial division not exact");
    return r;
}

Monomial Monomial::lcm(const Monomial& x, const Monomial& y) {
    Monomial r;
    std::size_t a = 0, b = 0;
    while (a < x.e_.size() && b < y.e_.size()) {
        const auto ia = id_of(x.e_[a]), ib = id_of(y.e_[b]);
        if (ia == ib) {
            r.e_.push_back(pack(ia, std::max(exp_of(x.e_[a]), exp_of(y.e_[b]))));
            ++a;
            ++b;
        } else if (ia < ib) {
            r.e_.push_back(x.e_[a++]);
        } else {
            r.e_.push_back(y.e_[b++]);
        }
    }
    while (a < x.e_.size()) r.e_.push_back(x.e_[a++]);
    while (b < y.e_.size()) r.e_.push_back(y.e_[b++]);
    return r;
}

Monomial Monomial::gcd(const Monomial& x, const Monomial& y) {
    Monomial r;
    std::size_t a = 0, b = 0;
    while (a < x.e_.size() && b < y.e_.size()) {
        const auto ia = id_of(x.e_[a]), ib = id_of(y.e_[b]);
        if (ia == ib) {
            r.e_.push_back(pack(ia, std::min(exp_of(x.e_[a]), exp_of(y.e_[b]))));
            ++a;
            ++b;
        } else if (ia < ib) {
            ++a;
        } else {
            ++b;
        }
    }
    return r;
}

bool Monomial::coprime(const Monomial& o) const {
    std::size_t a = 0, b = 0;
    while (a < e_.size() && b < o.e_.size()) {
        const auto ia = id_of(e_[a]), ib = id_of(o.e_[b]);
        if (ia == ib) return false;
        if (ia < ib)
            ++a;
        else
            ++b;
    }
    return true;
}

GroupMask Monomial::groups() const {
    GroupMask g = 0;
    for (auto p : e_) g |= group_bit(static_cast<int>(id_of(p) >> 8));
    return g;
}

bool Monomial::is_multilinear_in(GroupMask groups) const {
    GroupMask seen = 0;
    for (auto p : e_) {
        if (exp_of(p) != 1) return false;
        const GroupMask bit = group_bit(static_cast<int>(id_of(p) >> 8));
        if ((seen & bit) || !(groups & bit)) return false;
        seen |= bit;
    }
    return seen == groups;
}

std::size_t Monomial::hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto p : e_) {
        h ^= p;
        h *= 1099511628211ull;
    }
    return h;
}

std::strong_ordering mono_cmp(const Monomial& a, const Monomial& b) {
    const auto& x = a.packed();
    const auto& y = b.packed();
    const std::size_t n = std::min(x.size(), y.size());
    for (std::size_t p = 0; p < n; ++p) {
        const auto ia = id_of(x[p]), ib = id_of(y[p]);
        if (ia != ib) return ia < ib ? std::strong_ordering::greater : std::strong_ordering::less;
        const auto ea = exp_of(x[p]), eb = exp_of(y[p]);
        if (ea != eb) return ea > eb ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    if (x.size() == y.size()) return std::strong_ordering::equal;
    return x.size() > y.size() ? std::strong_ordering::greater : std::strong_ordering::less;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
    if (c != 0) {
        t_.push_back(Term{Monomial{}, c});
        t_.back().c.canonicalize();
    }
}

Poly Poly::var(const VarId& v) { return term(Monomial::var(v), Rational(1)); }

Poly Poly::term(const Monomial& m, const Rational& c) {
    Poly p;
    if (c != 0) {
        p.t_.push_back(Term{m, c});
        p.t_.back().c.canonicalize();
    }
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    Poly p;
    std::sort(terms.begin(), terms.end(), term_desc);
    for (auto& t : terms) {
        t.c.canonicalize();
        if (!p.t_.empty() && p.t_.back().m == t.m) {
            p.t_.back().c += t.c;
        } else {
            if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
            p.t_.push_back(std::move(t));
        }
    }
    if (!p.t_.empty() && p.t_.back().c == 0) p.t_.pop_back();
    return p;
}

void Poly::normalize_sorted() {
    std::erase_if(t_, [](const Term& t) { return t.c == 0; });
}

Rational Poly::constant_value() const {
    if (t_.empty()) return Rational(0);
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return t_[0].c;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& t : t_) d = std::max(d, t.m.degree());
    return d;
}

Rational Poly::coeff(const Monomial& m) const {
    auto it = std::lower_bound(t_.begin(), t_.end(), m, [](const Term& t, const Monomial& x) {
        return mono_cmp(t.m, x) == std::strong_ordering::greater;
    });
    if (it != t_.end() && it->m == m) return it->c;
    return Rational(0);
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.t_) t.c = -t.c;
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    add_scaled(o, Monomial{}, Rational(1));
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    add_scaled(o, Monomial{}, Rational(-1));
    return *this;
}

void Poly::add_scaled(const Poly& o, const Monomial& m, const Rational& c) {
    if (o.t_.empty() || c == 0) return;
    const bool unit_m = m.is_one();
    std::vector<Term> out;
    out.reserve(t_.size() + o.t_.size());
    std::size_t a = 0, b = 0;
    while (a < t_.size() || b < o.t_.size()) {
        if (b == o.t_.size()) {
            out.push_back(std::move(t_[a++]));
            continue;
        }
        Monomial mb = unit_m ? o.t_[b].m : o.t_[b].m * m;
        if (a == t_.size()) {
            out.push_back(Term{std::move(mb), o.t_[b].c * c});
            ++b;
            continue;
        }
        const auto cmp = mono_cmp(t_[a].m, mb);
        if (cmp == std::strong_ordering::greater) {
            out.push_back(std::move(t_[a++]));
        } else if (cmp == std::strong_ordering::less) {
            out.push_back(Term{std::move(mb), o.t_[b].c * c});
            ++b;
        } else {
            Rational s = t_[a].c + o.t_[b].c * c;
            if (s != 0) out.push_back(Term{std::move(mb), std::move(s)});
            ++a;
            ++b;
        }
    }
    t_ = std::move(out);
}

Poly Poly::operator*(const Poly& o) const {
    if (t_.empty() || o.t_.empty()) return Poly{};
    if (o.t_.size() == 1) return times_term(o.t_[0].m, o.t_[0].c);
    if (t_.size() == 1) return o.times_term(t_[0].m, t_[0].c);
    std::unordered_map<Monomial, Rational, MonomialHash> acc;
    acc.reserve(t_.size() * o.t_.size());
    for (const auto& x : t_)
        for (const auto& y : o.t_) acc[x.m * y.m] += x.c * y.c;
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) terms.push_back(Term{m, c});
    Poly r;
    std::sort(terms.begin(), terms.end(), term_desc);
    r.t_ = std::move(terms);
    return r;
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return Poly{};
    Poly r = *this;
    for (auto& t : r.t_) t.c *= c;
    return r;
}

Poly Poly::times_term(const Monomial& m, const Rational& c) const {
    if (c == 0) return Poly{};
    Poly r;
    r.t_.reserve(t_.size());
    for (const auto& t : t_) r.t_.push_back(Term{t.m * m, t.c * c});
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (!(t_[i].m == o.t_[i].m) || t_[i].c != o.t_[i].c) return false;
    return true;
}

Poly Poly::substitute(const std::function<const Poly*(const VarId&)>& f) const {
    Poly out;
    for (const auto& t : t_) {
        Poly prod(t.c);
        Monomial kept;
        for (const auto& [v, e] : t.m.factors()) {
            const Poly* s = f(v);
            if (s == nullptr) {
                kept = kept * Monomial::var(v, e);
            } else {
                for (int r = 0; r < e; ++r) prod = prod * *s;
            }
        }
        out.add_scaled(prod, kept, Rational(1));
    }
    return out;
}

Poly Poly::substitute(const std::map<std::uint32_t, Poly>& by_id) const {
    return substitute([&](const VarId& v) -> const Poly* {
        auto it = by_id.find(v.id());
        return it == by_id.end() ? nullptr : &it->second;
    });
}

Poly Poly::relabel(const std::function<VarId(const VarId&)>& f) const {
    std::vector<Term> terms;
    terms.reserve(t_.size());
    for (const auto& t : t_) {
        Monomial m;
        for (const auto& [v, e] : t.m.factors()) m = m * Monomial::var(f(v), e);
        terms.push_back(Term{std::move(m), t.c});
    }
    return from_terms(std::move(terms));
}

GroupMask Poly::groups() const {
    GroupMask g = 0;
    for (const auto& t : t_) g |= t.m.groups();
    return g;
}

std::string Poly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        Rational c = t.c;
        if (first) {
            if (c < 0) {
                os << '-';
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            if (c < 0) c = -c;
        }
        first = false;
        const bool unit = (c == 1);
        if (!unit || t.m.is_one()) os << c.get_str();
        bool need_star = !unit;
        for (const auto& [v, e] : t.m.factors()) {
            if (need_star) os << '*';
            os << var_name(v);
            if (e > 1) os << '^' << e;
            need_star = true;
        }
    }
    return os.str();
}

bool is_multilinear(const Poly& p, GroupMask groups) {
    if (p.is_zero()) return false;
    for (const auto& t : p.terms())
        if (!t.m.is_multilinear_in(groups)) return false;
    return true;
}

std::vector<Monomial> multilinear_monomials(const std::vector<int>& groups, int n) {
    std::vector<Monomial> out{Monomial{}};
    for (int g : groups) {
        std::vector<Monomial> next;
        next.reserve(out.size() * static_cast<std::size_t>(n * n));
        for (const auto& m : out)
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j) next.push_back(m * Monomial::var(VarId{g, i, j}));
        out = std::move(next);
    }
    return out;
}

Poly divide_exact(const Poly& a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    const Term& lb = b.lead();
    Poly q;
    Poly r = a;
    while (!r.is_zero()) {
        const Term& lr = r.lead();
        if (!lb.m.divides(lr.m)) throw std::domain_error("polynomial division is not exact");
        const Monomial t = lr.m / lb.m;
        const Rational c = lr.c / lb.c;
        q.add_scaled(Poly(1), t, c);
        r.add_scaled(b, t, -c);
    }
    return q;
}

}  // namespace fident
