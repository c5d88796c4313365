#include "fident/modgb.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <thread>

namespace fident {

namespace {

std::vector<std::vector<int>> combinations(int size, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > size) return out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= size; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

std::vector<std::vector<int>> tuples(int n, int len) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(len), 1);
    if (len == 0) return {cur};
    while (true) {
        out.push_back(cur);
        int p = len - 1;
        while (p >= 0 && cur[static_cast<std::size_t>(p)] == n) cur[static_cast<std::size_t>(p--)] = 1;
        if (p < 0) break;
        ++cur[static_cast<std::size_t>(p)];
    }
    return out;
}

std::vector<int> complement_in(const std::vector<int>& sub, int size) {
    std::vector<int> out;
    for (int i = 1; i <= size; ++i)
        if (std::find(sub.begin(), sub.end(), i) == sub.end()) out.push_back(i);
    return out;
}

/// U_alpha: replaces a by alpha when a is present.
std::vector<int> shift_top(std::vector<int> u, int a, int alpha) {
    for (int& x : u)
        if (x == a) x = alpha;
    std::sort(u.begin(), u.end());
    return u;
}

int parity_sign(int s) { return s % 2 == 0 ? 1 : -1; }

int sum_of(const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); }

bool lcm_multilinear(const Monomial& m) { return m.is_multilinear_in(m.groups()); }

/// Leading data of one basis element.
struct LeadInfo {
    int pos = -1;
    Monomial m;
    Rational c;
};

LeadInfo lead_info(const ModuleElement& g) {
    LeadInfo li;
    auto t = g.lead();
    if (t) {
        li.pos = t->pos;
        li.m = t->m;
        li.c = t->c;
    }
    return li;
}

DivisionResult divide(const ModuleElement& v, const std::vector<ModuleElement>& basis,
                      const std::vector<LeadInfo>& leads) {
    DivisionResult r;
    r.remainder = ModuleElement(v.rank());
    r.quotients.assign(basis.size(), Poly{});
    std::vector<std::vector<std::size_t>> by_pos(v.rank());
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (leads[i].pos >= 0) by_pos[static_cast<std::size_t>(leads[i].pos)].push_back(i);
    ModuleElement p = v;
    for (std::size_t pos = 0; pos < p.rank(); ++pos) {
        std::vector<Term> rest;
        while (!p.c[pos].is_zero()) {
            const Term t = p.c[pos].lead();
            bool reduced = false;
            for (std::size_t i : by_pos[pos]) {
                if (!leads[i].m.divides(t.m)) continue;
                const Monomial q = t.m / leads[i].m;
                const Rational coef = t.c / leads[i].c;
                r.quotients[i].add_scaled(Poly(1), q, coef);
                p.add_scaled(basis[i], q, -coef);
                reduced = true;
                break;
            }
            if (!reduced) {
                rest.push_back(t);
                p.c[pos].add_scaled(Poly(1), t.m, -t.c);
            }
        }
        r.remainder.c[pos] = Poly::from_terms(std::move(rest));
    }
    return r;
}

struct SPair {
    Monomial lcm;
    int pos;
    std::size_t i, j;
};

struct SPairLess {
    bool operator()(const SPair& a, const SPair& b) const {
        const auto c = mono_cmp(a.lcm, b.lcm);
        if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
        if (a.pos != b.pos) return a.pos < b.pos;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

/// sigma_ij with its leading terms cancelled, plus the scaling data.
struct SPoly {
    ModuleElement s;
    Monomial m_ji, m_ij;
    Rational c_i, c_j;
};

SPoly s_poly(const ModuleElement& gi, const LeadInfo& li, const ModuleElement& gj, const LeadInfo& lj) {
    SPoly out;
    const Monomial l = Monomial::lcm(li.m, lj.m);
    out.m_ji = l / li.m;
    out.m_ij = l / lj.m;
    out.c_i = 1 / li.c;
    out.c_j = 1 / lj.c;
    out.s = ModuleElement(gi.rank());
    out.s.add_scaled(gi, out.m_ji, out.c_i);
    out.s.add_scaled(gj, out.m_ij, -out.c_j);
    return out;
}

void add_scaled_vec(std::vector<Poly>& acc, const std::vector<Poly>& v, const Poly& f) {
    if (f.is_zero()) return;
    for (std::size_t g = 0; g < acc.size(); ++g)
        if (!v[g].is_zero()) acc[g] += v[g] * f;
}

bool pair_wanted(const LeadInfo& a, const LeadInfo& b, bool multilinear_only) {
    if (a.pos < 0 || a.pos != b.pos) return false;
    return !multilinear_only || lcm_multilinear(Monomial::lcm(a.m, b.m));
}

}  // namespace

std::vector<DeterminantalGenerator> determinantal_generators(const PolyMatrix& Y) {
    const int r = Y.rows();
    const int c = Y.cols();
    if (c < 1 || r <= c) throw std::invalid_argument("determinantal_generators: need more rows than columns");
    std::vector<int> all_cols(static_cast<std::size_t>(c));
    std::iota(all_cols.begin(), all_cols.end(), 0);
    std::vector<DeterminantalGenerator> out;
    for (const auto& chain1 : combinations(r, c + 1)) {
        DeterminantalGenerator g;
        for (int x : chain1) g.rows.push_back(x - 1);
        g.g = ModuleElement(static_cast<std::size_t>(r));
        for (int l = 0; l <= c; ++l) {
            std::vector<int> rest;
            for (int t = 0; t <= c; ++t)
                if (t != l) rest.push_back(g.rows[static_cast<std::size_t>(t)]);
            const Poly d = det(Y.submatrix(rest, all_cols));
            g.g.c[static_cast<std::size_t>(g.rows[static_cast<std::size_t>(l)])] = l % 2 == 0 ? d : -d;
        }
        out.push_back(std::move(g));
    }
    return out;
}

PolyMatrix stacked_generic(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("stacked_generic: n, m must be positive");
    PolyMatrix y(n * m, n);
    for (int k = 1; k <= m; ++k)
        for (int j = 1; j <= n; ++j)
            for (int col = 1; col <= n; ++col) y((k - 1) * n + j - 1, col - 1) = Poly::var(k, j, col);
    return y;
}

std::vector<Poly> row_combination(const ModuleElement& v, const PolyMatrix& Y) {
    if (static_cast<int>(v.rank()) != Y.rows()) throw std::invalid_argument("row_combination: size mismatch");
    std::vector<Poly> out(static_cast<std::size_t>(Y.cols()));
    for (int r = 0; r < Y.rows(); ++r) {
        const Poly& f = v.c[static_cast<std::size_t>(r)];
        if (f.is_zero()) continue;
        for (int col = 0; col < Y.cols(); ++col) out[static_cast<std::size_t>(col)] += f * Y(r, col);
    }
    return out;
}

DivisionResult normal_form(const ModuleElement& v, const std::vector<ModuleElement>& basis) {
    std::vector<LeadInfo> leads;
    leads.reserve(basis.size());
    for (const auto& g : basis) {
        if (g.rank() != v.rank()) throw std::invalid_argument("normal_form: rank mismatch");
        leads.push_back(lead_info(g));
    }
    return divide(v, basis, leads);
}

ModuleElement GroebnerBasis::expand(std::size_t i, const std::vector<ModuleElement>& gens) const {
    ModuleElement out(rank);
    const auto& e = expressions.at(i);
    for (std::size_t g = 0; g < e.size(); ++g)
        if (!e[g].is_zero()) out += gens.at(g) * e[g];
    return out;
}

GroebnerBasis buchberger(const std::vector<ModuleElement>& gens, const BuchbergerOptions& opt) {
    GroebnerBasis B;
    B.num_generators = gens.size();
    B.rank = gens.empty() ? 0 : gens.front().rank();
    std::vector<LeadInfo> leads;
    std::set<SPair, SPairLess> queue;

    auto insert = [&](ModuleElement g, std::vector<Poly> expr) {
        if (opt.max_elements != 0 && B.elements.size() >= opt.max_elements)
            throw ResourceLimit("buchberger: basis exceeded " + std::to_string(opt.max_elements) + " elements");
        const LeadInfo li = lead_info(g);
        const std::size_t idx = B.elements.size();
        for (std::size_t i = 0; i < idx; ++i) {
            if (!pair_wanted(leads[i], li, opt.multilinear_only)) continue;
            queue.insert(SPair{Monomial::lcm(leads[i].m, li.m), li.pos, i, idx});
        }
        B.support.push_back(g.groups());
        B.elements.push_back(std::move(g));
        B.expressions.push_back(std::move(expr));
        leads.push_back(li);
    };

    for (std::size_t g = 0; g < gens.size(); ++g) {
        if (gens[g].rank() != B.rank) throw std::invalid_argument("buchberger: rank mismatch");
        if (gens[g].is_zero()) continue;
        if (opt.multilinear_only && !element_multilinear(gens[g]))
            throw std::invalid_argument("buchberger: generator is not multilinear");
        std::vector<Poly> e(gens.size());
        e[g] = Poly(1);
        insert(gens[g], std::move(e));
    }

    const int threads = std::max(1, opt.threads);
    const std::size_t batch = std::max<std::size_t>(1, opt.batch);
    while (!queue.empty()) {
        std::vector<SPair> work;
        while (!queue.empty() && work.size() < batch) {
            work.push_back(*queue.begin());
            queue.erase(queue.begin());
        }
        std::vector<SPoly> sp(work.size());
        std::vector<DivisionResult> red(work.size());
        auto run = [&](std::size_t from, std::size_t step) {
            for (std::size_t w = from; w < work.size(); w += step) {
                const auto& p = work[w];
                sp[w] = s_poly(B.elements[p.i], leads[p.i], B.elements[p.j], leads[p.j]);
                red[w] = divide(sp[w].s, B.elements, leads);
            }
        };
        if (threads == 1 || work.size() == 1) {
            run(0, 1);
        } else {
            std::vector<std::thread> pool;
            const std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), work.size());
            for (std::size_t k = 0; k < t; ++k) pool.emplace_back(run, k, t);
            for (auto& th : pool) th.join();
        }
        for (std::size_t w = 0; w < work.size(); ++w) {
            if (red[w].remainder.is_zero()) continue;
            // The basis may have grown inside this batch; finish the reduction against it.
            red[w].quotients.resize(B.elements.size());
            DivisionResult again = divide(red[w].remainder, B.elements, leads);
            if (again.remainder.is_zero()) continue;
            const auto& p = work[w];
            std::vector<Poly> expr(B.num_generators);
            add_scaled_vec(expr, B.expressions[p.i], Poly::term(sp[w].m_ji, sp[w].c_i));
            add_scaled_vec(expr, B.expressions[p.j], Poly::term(sp[w].m_ij, -sp[w].c_j));
            for (std::size_t l = 0; l < B.elements.size(); ++l) {
                Poly q = red[w].quotients[l] + again.quotients[l];
                add_scaled_vec(expr, B.expressions[l], -q);
            }
            const Rational inv = 1 / again.remainder.lead()->c;
            ModuleElement g = again.remainder * Poly(inv);
            for (auto& e : expr) e = e.scaled(inv);
            insert(std::move(g), std::move(expr));
            ++B.added;
        }
    }
    return B;
}

bool satisfies_buchberger_criterion(const std::vector<ModuleElement>& basis, bool multilinear_only) {
    std::vector<LeadInfo> leads;
    for (const auto& g : basis) leads.push_back(lead_info(g));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (!pair_wanted(leads[i], leads[j], multilinear_only)) continue;
            const SPoly s = s_poly(basis[i], leads[i], basis[j], leads[j]);
            if (!divide(s.s, basis, leads).remainder.is_zero()) return false;
        }
    return true;
}

std::vector<Poly> SchreyerSyzygy::tau(std::size_t t) const {
    std::vector<Poly> out(t);
    for (std::size_t l = 0; l < t && l < h.size(); ++l) out[l] = -h[l];
    out[i] += Poly::term(m_ji, c_i);
    out[j] -= Poly::term(m_ij, c_j);
    return out;
}

std::vector<SchreyerSyzygy> schreyer_syzygies(const std::vector<ModuleElement>& basis, bool multilinear_only) {
    std::vector<LeadInfo> leads;
    for (const auto& g : basis) leads.push_back(lead_info(g));
    std::vector<SchreyerSyzygy> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (!pair_wanted(leads[i], leads[j], multilinear_only)) continue;
            const SPoly s = s_poly(basis[i], leads[i], basis[j], leads[j]);
            DivisionResult d = divide(s.s, basis, leads);
            if (!d.remainder.is_zero())
                throw std::logic_error("schreyer_syzygies: S-pair does not reduce to zero; input is not a Groebner basis");
            SchreyerSyzygy z;
            z.i = i;
            z.j = j;
            z.m_ji = s.m_ji;
            z.m_ij = s.m_ij;
            z.c_i = s.c_i;
            z.c_j = s.c_j;
            z.h = std::move(d.quotients);
            if (auto t = s.s.lead()) {
                z.init_pos = t->pos;
                z.init_mono = t->m;
            }
            out.push_back(std::move(z));
        }
    return out;
}

bool init_dominant(const SchreyerSyzygy& s, const std::vector<ModuleElement>& basis) {
    for (std::size_t l = 0; l < s.h.size(); ++l) {
        if (s.h[l].is_zero()) continue;
        if (s.init_pos < 0) return false;
        const auto lg = basis.at(l).lead();
        const Monomial m = s.h[l].lead().m * lg->m;
        if (module_term_cmp(lg->pos, m, s.init_pos, s.init_mono) == std::strong_ordering::greater) return false;
    }
    return true;
}

std::size_t xi_row_prime(int n, int k, int gamma, int v) {
    return static_cast<std::size_t>((k - 1) * n * n + (gamma - 1) * n + (v - 1));
}

std::size_t xi_row_dprime(int n, int m, int l, int s, int delta) {
    return static_cast<std::size_t>(m * n * n + (l - 1) * n * n + (s - 1) * n + (delta - 1));
}

std::vector<ModuleElement> xi_rows(int n, const std::vector<int>& K, const std::vector<int>& L) {
    std::vector<ModuleElement> out;
    for (int k : K)
        for (int g = 1; g <= n; ++g)
            for (int v = 1; v <= n; ++v) out.push_back(xprime_row(n, k, g, v));
    for (int l : L)
        for (int s = 1; s <= n; ++s)
            for (int d = 1; d <= n; ++d) out.push_back(xdprime_row(n, l, s, d));
    return out;
}

std::vector<ModuleElement> xi_rows(int n, int m) {
    std::vector<int> all(static_cast<std::size_t>(m));
    std::iota(all.begin(), all.end(), 1);
    return xi_rows(n, all, all);
}

GFamilies build_G_families(int n, int m) {
    if (n < 1 || m < 1) throw std::invalid_argument("build_G_families: n, m must be positive");
    GFamilies out;
    const std::size_t rank = static_cast<std::size_t>(n * n);
    const std::size_t nrows = static_cast<std::size_t>(2 * m * n * n);
    for (int a = 1; a <= std::min(n, m); ++a) {
        for (const auto& K : combinations(m, a)) {
            for (const auto& V : tuples(n, a)) {
                std::vector<std::pair<int, int>> rows;
                for (int l = 0; l < a; ++l) rows.emplace_back(K[static_cast<std::size_t>(l)], V[static_cast<std::size_t>(l)]);
                std::vector<int> cols;
                for (int j = 1; j < a; ++j) cols.push_back(j);
                cols.push_back(a);
                PolyMatrix z = row_grid(rows, cols);
                std::vector<Poly> dets;
                for (int alpha = a; alpha <= n; ++alpha) {
                    cols.back() = alpha;
                    dets.push_back(det(row_grid(rows, cols)));
                }
                std::vector<int> keep_cols(static_cast<std::size_t>(a - 1));
                std::iota(keep_cols.begin(), keep_cols.end(), 0);
                std::vector<Poly> minors;
                for (int l = 0; l < a; ++l) {
                    std::vector<int> keep_rows;
                    for (int t = 0; t < a; ++t)
                        if (t != l) keep_rows.push_back(t);
                    minors.push_back(det(z.submatrix(keep_rows, keep_cols)));
                }
                for (int gamma = 1; gamma <= n; ++gamma) {
                    GFamilyElement e;
                    e.prime = true;
                    e.index = gamma;
                    e.groups = K;
                    e.tuple = V;
                    e.g = ModuleElement(rank);
                    for (int alpha = a; alpha <= n; ++alpha)
                        e.g.c[static_cast<std::size_t>(flat_position(n, gamma, alpha))] = dets[static_cast<std::size_t>(alpha - a)];
                    if (e.g.is_zero()) continue;
                    e.rows = ModuleElement(nrows);
                    for (int l = 1; l <= a; ++l) {
                        const Poly& mnr = minors[static_cast<std::size_t>(l - 1)];
                        e.rows.c[xi_row_prime(n, K[static_cast<std::size_t>(l - 1)], gamma, V[static_cast<std::size_t>(l - 1)])] +=
                            parity_sign(l + a) > 0 ? mnr : -mnr;
                    }
                    out.prime.push_back(std::move(e));
                }
            }
        }
    }
    for (int b = 1; b <= std::min(n, m); ++b) {
        for (const auto& L : combinations(m, b)) {
            for (const auto& S : tuples(n, b)) {
                std::vector<std::pair<int, int>> cols;
                for (int l = 0; l < b; ++l) cols.emplace_back(L[static_cast<std::size_t>(l)], S[static_cast<std::size_t>(l)]);
                std::vector<int> rowidx;
                for (int i = 1; i < b; ++i) rowidx.push_back(i);
                rowidx.push_back(b);
                PolyMatrix y = column_grid(rowidx, cols);
                std::vector<Poly> dets;
                for (int beta = b; beta <= n; ++beta) {
                    rowidx.back() = beta;
                    dets.push_back(det(column_grid(rowidx, cols)));
                }
                std::vector<int> keep_rows(static_cast<std::size_t>(b - 1));
                std::iota(keep_rows.begin(), keep_rows.end(), 0);
                std::vector<Poly> minors;
                for (int l = 0; l < b; ++l) {
                    std::vector<int> keep_cols;
                    for (int t = 0; t < b; ++t)
                        if (t != l) keep_cols.push_back(t);
                    minors.push_back(det(y.submatrix(keep_rows, keep_cols)));
                }
                for (int delta = 1; delta <= n; ++delta) {
                    GFamilyElement e;
                    e.prime = false;
                    e.index = delta;
                    e.groups = L;
                    e.tuple = S;
                    e.g = ModuleElement(rank);
                    for (int beta = b; beta <= n; ++beta)
                        e.g.c[static_cast<std::size_t>(flat_position(n, beta, delta))] = dets[static_cast<std::size_t>(beta - b)];
                    if (e.g.is_zero()) continue;
                    e.rows = ModuleElement(nrows);
                    for (int l = 1; l <= b; ++l) {
                        const Poly& mnr = minors[static_cast<std::size_t>(l - 1)];
                        e.rows.c[xi_row_dprime(n, m, L[static_cast<std::size_t>(l - 1)], S[static_cast<std::size_t>(l - 1)], delta)] +=
                            parity_sign(l + b) > 0 ? mnr : -mnr;
                    }
                    out.dprime.push_back(std::move(e));
                }
            }
        }
    }
    return out;
}

std::vector<ModuleElement> multilinear_filter(const std::vector<ModuleElement>& v) {
    std::vector<ModuleElement> out;
    for (const auto& e : v)
        if (!e.is_zero() && element_multilinear(e)) out.push_back(e);
    return out;
}

std::vector<std::pair<std::vector<int>, int>> signed_permutations(const std::vector<int>& set) {
    std::vector<std::pair<std::vector<int>, int>> out;
    std::vector<int> p = set;
    std::sort(p.begin(), p.end());
    const std::vector<int> dom = p;
    do {
        out.emplace_back(p, perm_sign(dom, p));
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace {

std::map<int, int> as_map(const std::vector<int>& dom, const std::vector<int>& img) {
    std::map<int, int> m;
    for (std::size_t i = 0; i < dom.size(); ++i) m[dom[i]] = img[i];
    return m;
}

std::map<int, int> identity_map(int c) {
    std::map<int, int> m;
    for (int i = 1; i <= c; ++i) m[i] = i;
    return m;
}

std::pair<Poly, Poly> symmetrized(const DetFamilySpec& s, int alpha, int beta) {
    const auto q = s.Q();
    const int c = static_cast<int>(q.size());
    const int a = static_cast<int>(s.K.size());
    const int b = static_cast<int>(s.L.size());
    if (static_cast<int>(s.U.size()) != c || static_cast<int>(s.W.size()) != c)
        throw std::invalid_argument("polarized_laplace_check: U and W must have |Q| elements");
    for (int u : s.U)
        if (u < 1 || u > a) throw std::invalid_argument("polarized_laplace_check: U outside 1..a");
    for (int w : s.W)
        if (w < 1 || w > b) throw std::invalid_argument("polarized_laplace_check: W outside 1..b");
    const auto ua = shift_top(s.U, a, alpha);
    const auto wb = shift_top(s.W, b, beta);
    Poly lhs, rhs;
    for (const auto& [sig, sign] : signed_permutations(ua)) {
        PolyMatrix d(c, c);
        for (int i = 0; i < c; ++i)
            for (int l = 0; l < c; ++l)
                d(i, l) = Poly::var(q[static_cast<std::size_t>(l)], wb[static_cast<std::size_t>(i)], sig[static_cast<std::size_t>(l)]);
        lhs += sign > 0 ? det(d) : -det(d);
    }
    for (const auto& [tau, sign] : signed_permutations(wb)) {
        PolyMatrix d(c, c);
        for (int l = 0; l < c; ++l)
            for (int j = 0; j < c; ++j)
                d(l, j) = Poly::var(q[static_cast<std::size_t>(l)], tau[static_cast<std::size_t>(l)], ua[static_cast<std::size_t>(j)]);
        rhs += sign > 0 ? det(d) : -det(d);
    }
    return {lhs, rhs};
}

std::pair<Poly, Poly> full(const DetFamilySpec& spec, int alpha, int beta) {
    const int a = static_cast<int>(spec.K.size());
    const int b = static_cast<int>(spec.L.size());
    const int c = static_cast<int>(spec.Q().size());
    DetFamilySpec base = spec;
    base.U.clear();
    base.W.clear();
    base.sigma = identity_map(c);
    base.tau = identity_map(c);
    base.validate();

    Poly lhs;
    for (const auto& U : combinations(a, a - c)) {
        const auto uc = complement_in(U, a);
        DetFamilySpec z = base;
        z.lambda = alpha;
        const Poly dr = det_family(z, DetKind::dr_rest, U);
        if (dr.is_zero()) continue;
        Poly inner;
        const auto uca = shift_top(uc, a, alpha);
        for (const auto& [sig, sign] : signed_permutations(uca)) {
            DetFamilySpec y = base;
            y.lambda = beta;
            y.sigma = as_map(uca, sig);
            const Poly d = det_family(y, DetKind::Dc);
            inner += sign > 0 ? d : -d;
        }
        lhs += (dr * inner).scaled(parity_sign(sum_of(uc)));
    }
    lhs = lhs.scaled(parity_sign(sum_of(spec.d())));

    Poly rhs;
    for (const auto& W : combinations(b, b - c)) {
        const auto wc = complement_in(W, b);
        DetFamilySpec y = base;
        y.lambda = beta;
        const Poly dc = det_family(y, DetKind::dc_rest, W);
        if (dc.is_zero()) continue;
        Poly inner;
        const auto wcb = shift_top(wc, b, beta);
        for (const auto& [tau, sign] : signed_permutations(wcb)) {
            DetFamilySpec z = base;
            z.lambda = alpha;
            z.tau = as_map(wcb, tau);
            const Poly d = det_family(z, DetKind::Dr);
            inner += sign > 0 ? d : -d;
        }
        rhs += (dc * inner).scaled(parity_sign(sum_of(wc)));
    }
    rhs = rhs.scaled(parity_sign(sum_of(spec.f())));
    return {lhs, rhs};
}

}  // namespace

std::pair<Poly, Poly> polarized_laplace_check(const DetFamilySpec& spec, int alpha, int beta, LaplaceVariant variant) {
    const int a = static_cast<int>(spec.K.size());
    const int b = static_cast<int>(spec.L.size());
    if (alpha < a || alpha > spec.n || beta < b || beta > spec.n)
        throw std::invalid_argument("polarized_laplace_check: need a <= alpha <= n and b <= beta <= n");
    if (variant == LaplaceVariant::Symmetrized) return symmetrized(spec, alpha, beta);
    return full(spec, alpha, beta);
}

}  // namespace fident
