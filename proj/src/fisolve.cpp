#include "fident/fisolve.hpp"

#include "fident/linalg.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>
#include <tuple>

namespace fident {

namespace {

std::vector<int> range1(int m) {
    std::vector<int> v(static_cast<std::size_t>(std::max(m, 0)));
    std::iota(v.begin(), v.end(), 1);
    return v;
}

std::vector<int> without(const std::vector<int>& all, const std::vector<int>& drop) {
    std::vector<int> out;
    for (int x : all)
        if (std::find(drop.begin(), drop.end(), x) == drop.end()) out.push_back(x);
    return out;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::all_of(a.begin(), a.end(), [&](int x) { return contains(b, x); });
}

std::vector<std::vector<int>> combinations(const std::vector<int>& set, int r) {
    std::vector<std::vector<int>> out;
    const int n = static_cast<int>(set.size());
    if (r < 0 || r > n) return out;
    std::vector<int> idx(static_cast<std::size_t>(r));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        std::vector<int> c;
        for (int i : idx) c.push_back(set[static_cast<std::size_t>(i)]);
        out.push_back(std::move(c));
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::vector<std::vector<int>> tuples(int n, int len) {
    std::vector<std::vector<int>> out{{}};
    for (int t = 0; t < len; ++t) {
        std::vector<std::vector<int>> next;
        for (const auto& p : out)
            for (int v = 1; v <= n; ++v) {
                auto q = p;
                q.push_back(v);
                next.push_back(std::move(q));
            }
        out = std::move(next);
    }
    return out;
}

Rational factorial(int r) {
    Rational f = 1;
    for (int i = 2; i <= r; ++i) f *= i;
    return f;
}

int sign_pow(int s) { return s % 2 == 0 ? 1 : -1; }

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    const std::size_t t = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(threads, 1)));
    if (t <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex mu;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < t; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

/// Coordinate of a linear system: a tag (equation family, indices) plus a monomial.
using CoordKey = std::pair<std::vector<int>, std::vector<std::uint32_t>>;

void bump(SparseVec& v, std::size_t i, const Rational& c) {
    auto [it, inserted] = v.try_emplace(i, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) v.erase(it);
    }
}

void add_poly(Indexer<CoordKey>& ix, SparseVec& v, const std::vector<int>& tag, const Poly& p,
              const Rational& scale = 1) {
    for (const auto& t : p.terms()) bump(v, ix(CoordKey{tag, t.m.packed()}), t.c * scale);
}

/// Like add_poly but without growing the index; false when some coordinate is unknown.
bool add_poly_known(const Indexer<CoordKey>& ix, SparseVec& v, const std::vector<int>& tag, const Poly& p) {
    for (const auto& t : p.terms()) {
        auto i = ix.find(CoordKey{tag, t.m.packed()});
        if (!i) return false;
        bump(v, *i, t.c);
    }
    return true;
}

bool matrix_multilinear(const PolyMatrix& a, GroupMask groups) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (!a(i, j).is_zero() && !is_multilinear(a(i, j), groups)) return false;
    return true;
}

bool entries_in_range(const PolyMatrix& a, int n, int m) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (const auto& t : a(i, j).terms())
                for (const auto& [v, e] : t.m.factors())
                    if (v.k < 1 || v.k > m || v.i > n || v.j > n) return false;
    return true;
}

void check_index_set(const std::vector<int>& s, int m, const char* name) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > m) throw std::invalid_argument(std::string(name) + " contains an index outside 1..m");
        if (i > 0 && s[i] <= s[i - 1]) throw std::invalid_argument(std::string(name) + " must be strictly increasing");
    }
}

void check_coordinates(const std::map<int, PolyMatrix>& maps, const std::vector<int>& idx, int n, int m,
                       const char* name) {
    for (const auto& [k, a] : maps) {
        if (!contains(idx, k)) {
            if (a.is_zero()) continue;
            throw std::invalid_argument(std::string(name) + "_" + std::to_string(k) + " given for an index outside the set");
        }
        if (a.rows() != n || a.cols() != n)
            throw std::invalid_argument(std::string(name) + "_" + std::to_string(k) + " is not " + std::to_string(n) + "x" +
                                        std::to_string(n));
        if (!entries_in_range(a, n, m))
            throw std::invalid_argument(std::string(name) + "_" + std::to_string(k) + " uses a variable outside the problem size");
        if (!matrix_multilinear(a, mask_of(without(range1(m), {k}))))
            throw std::invalid_argument(std::string(name) + "_" + std::to_string(k) +
                                        " is not multilinear in the groups other than " + std::to_string(k));
    }
}

PolyMatrix matrix_from_vec(const ModuleElement& v, int n, const std::function<std::size_t(int, int)>& row,
                           const Rational& scale) {
    PolyMatrix a(n, n);
    for (int g = 1; g <= n; ++g)
        for (int h = 1; h <= n; ++h) a(g - 1, h - 1) = v.c[row(g, h)].scaled(scale);
    return a;
}

void put_nonzero(std::map<int, PolyMatrix>& out, int k, const PolyMatrix& a) {
    if (!a.is_zero()) out[k] = a;
}

Poly bracket_without(int n, const std::vector<int>& I, const std::vector<int>& J, std::size_t s) {
    IndexedRowSpec spec;
    for (std::size_t t = 0; t < I.size(); ++t)
        if (t != s) spec.emplace_back(I[t], J[t]);
    return bracket_det(n, spec);
}

}  // namespace

void validate_fi(const FISpec& s) {
    if (s.n < 1 || s.n > VarId::kMaxIJ) throw std::invalid_argument("n must be between 1 and 15");
    if (s.m < 1 || s.m > 31) throw std::invalid_argument("m must be between 1 and 31");
    check_index_set(s.K, s.m, "K");
    check_index_set(s.L, s.m, "L");
    check_coordinates(s.F, s.K, s.n, s.m, "F");
    check_coordinates(s.G, s.L, s.n, s.m, "G");
}

CheckResult check_fi(const FISpec& s) {
    validate_fi(s);
    PolyMatrix r(s.n, s.n);
    for (int k : s.K) r += s.f(k) * generic_matrix(k, s.n);
    for (int l : s.L) r -= generic_matrix(l, s.n) * s.g(l);
    return CheckResult{r.is_zero(), r};
}

ModuleElement one_sided_generator(int n, int m, const std::vector<int>& I, const std::vector<int>& J) {
    if (I.size() != static_cast<std::size_t>(n + 1) || J.size() != I.size())
        throw std::invalid_argument("one_sided_generator: I and J need n+1 entries");
    ModuleElement g(static_cast<std::size_t>(m * n));
    for (std::size_t s = 0; s < I.size(); ++s) {
        const auto pos = static_cast<std::size_t>((I[s] - 1) * n + J[s] - 1);
        g.c[pos] += bracket_without(n, I, J, s).scaled(sign_pow(static_cast<int>(s) + 1));
    }
    return g;
}

std::map<int, PolyMatrix> reconstruct_one_sided(const OneSidedSolution& sol, int n, int m) {
    std::map<int, PolyMatrix> out;
    for (int k = 1; k <= m; ++k) out[k] = PolyMatrix(n, n);
    for (const auto& [key, lam] : sol) {
        for (std::size_t s = 0; s < key.I.size(); ++s) {
            const Poly c = (lam * bracket_without(n, key.I, key.J, s)).scaled(sign_pow(static_cast<int>(s) + 1));
            out.at(key.I[s])(key.ell - 1, key.J[s] - 1) += c;
        }
    }
    return out;
}

namespace {

void require_left_sided(const FISpec& spec) {
    for (int l : spec.L)
        if (!spec.g(l).is_zero()) throw std::invalid_argument("left-sided solver: right coordinates must be zero");
}

void require_reconstruction(const OneSidedSolution& sol, const FISpec& spec) {
    const auto rec = reconstruct_one_sided(sol, spec.n, spec.m);
    for (int k = 1; k <= spec.m; ++k) {
        const PolyMatrix want = contains(spec.K, k) ? spec.f(k) : PolyMatrix(spec.n, spec.n);
        if (!(rec.at(k) == want))
            throw InternalMismatch("one-sided solution does not reconstruct F_" + std::to_string(k));
    }
}

}  // namespace

OneSidedSolution solve_one_sided(const FISpec& spec, int threads) {
    const CheckResult chk = check_fi(spec);
    require_left_sided(spec);
    if (!chk.holds) throw IdentityFails("functional identity does not hold", chk.residual);
    const int n = spec.n, m = spec.m;

    std::vector<OneSidedKey> labels;
    std::vector<ModuleElement> gens;
    for (const auto& I : combinations(spec.K, n + 1))
        for (const auto& J : tuples(n, n + 1)) {
            labels.push_back(OneSidedKey{0, I, J});
            gens.push_back(one_sided_generator(n, m, I, J));
        }

    std::vector<OneSidedSolution> per_row(static_cast<std::size_t>(n));
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t r) {
        const int ell = static_cast<int>(r) + 1;
        ModuleElement h(static_cast<std::size_t>(m * n));
        for (int k : spec.K) {
            const PolyMatrix f = spec.f(k);
            for (int j = 1; j <= n; ++j) h.c[static_cast<std::size_t>((k - 1) * n + j - 1)] = f(ell - 1, j - 1);
        }
        if (h.is_zero()) return;
        const DivisionResult d = normal_form(h, gens);
        if (!d.remainder.is_zero())
            throw InternalMismatch("row " + std::to_string(ell) + " leaves a nonzero remainder");
        for (std::size_t g = 0; g < gens.size(); ++g) {
            if (d.quotients[g].is_zero()) continue;
            OneSidedKey key = labels[g];
            key.ell = ell;
            per_row[r][key] = d.quotients[g];
        }
    });

    OneSidedSolution sol;
    for (auto& part : per_row) sol.merge(part);
    require_reconstruction(sol, spec);
    return sol;
}

std::optional<OneSidedSolution> solve_one_sided_oracle(const FISpec& spec) {
    validate_fi(spec);
    require_left_sided(spec);
    const int n = spec.n, m = spec.m;
    OneSidedSolution sol;
    for (int ell = 1; ell <= n; ++ell) {
        Indexer<CoordKey> ix;
        SpanBasis span;
        std::vector<std::tuple<std::vector<int>, std::vector<int>, Monomial>> labels;
        for (const auto& I : combinations(spec.K, n + 1)) {
            const auto mus = multilinear_monomials(without(range1(m), I), n);
            for (const auto& J : tuples(n, n + 1)) {
                std::vector<Poly> br;
                for (std::size_t s = 0; s < I.size(); ++s) br.push_back(bracket_without(n, I, J, s));
                for (const auto& mu : mus) {
                    SparseVec col;
                    for (std::size_t s = 0; s < I.size(); ++s)
                        add_poly(ix, col, {I[s], J[s]}, br[s].times_term(mu, sign_pow(static_cast<int>(s) + 1)));
                    span.add(col, labels.size());
                    labels.emplace_back(I, J, mu);
                }
            }
        }
        SparseVec target;
        for (int k : spec.K) {
            const PolyMatrix f = spec.f(k);
            for (int j = 1; j <= n; ++j)
                if (!add_poly_known(ix, target, {k, j}, f(ell - 1, j - 1))) return std::nullopt;
        }
        if (target.empty()) continue;
        const auto coeffs = span.express(target);
        if (!coeffs) return std::nullopt;
        for (const auto& [label, c] : *coeffs) {
            const auto& [I, J, mu] = labels[label];
            Poly& lam = sol[OneSidedKey{ell, I, J}];
            lam += Poly::term(mu, c);
        }
    }
    for (auto it = sol.begin(); it != sol.end();) it = it->second.is_zero() ? sol.erase(it) : std::next(it);
    return sol;
}

std::vector<GpiTerm> to_gpi_sum(const OneSidedSolution& sol, int n) {
    std::vector<GpiTerm> out;
    for (const auto& [key, lam] : sol) {
        GpiTerm t;
        t.g = lam.scaled(sign_pow(n));
        t.slots = key.I;
        for (int s = 1; s <= n; ++s) t.a.push_back(PolyMatrix::unit(n, s, key.J[static_cast<std::size_t>(s - 1)]));
        t.a.push_back(PolyMatrix::unit(n, key.ell, key.J[static_cast<std::size_t>(n)]));
        out.push_back(std::move(t));
    }
    return out;
}

std::map<int, PolyMatrix> expand_gpi_sum(const std::vector<GpiTerm>& terms, int n) {
    std::map<int, PolyMatrix> out;
    if (terms.empty()) return out;
    const GenPoly c = nonstandard_commutator(n);
    for (const auto& t : terms) {
        std::vector<MatrixArg> args;
        for (std::size_t s = 0; s < t.slots.size(); ++s) args.push_back(MatrixArg::scaled(t.a[s], t.slots[s]));
        for (const auto& [k, h] : coordinate_form(c, args, n)) {
            auto [it, inserted] = out.try_emplace(k, PolyMatrix(n, n));
            it->second += h.times(t.g);
        }
    }
    return out;
}

std::string verify_decomposition(const FISpec& s, const TwoSidedDecomposition& d) {
    const int n = s.n, m = s.m;
    const auto all = range1(m);
    for (const auto& [kl, p] : d.p) {
        const auto [k, l] = kl;
        if (!contains(s.K, k) || !contains(s.L, l) || k == l)
            return "p_" + std::to_string(k) + std::to_string(l) + " outside K x L";
        if (!matrix_multilinear(p, mask_of(without(all, {k, l}))))
            return "p_" + std::to_string(k) + std::to_string(l) + " is not multilinear in its groups";
    }
    for (const auto& [i, lam] : d.lambda) {
        if (lam.is_zero()) continue;
        if (!contains(s.K, i) || !contains(s.L, i)) return "lambda_" + std::to_string(i) + " nonzero outside K and L";
        if (!is_multilinear(lam, mask_of(without(all, {i})))) return "lambda_" + std::to_string(i) + " is not multilinear";
    }
    for (const auto& [k, a] : d.phi)
        if (!a.is_zero() && !contains(s.K, k)) return "phi_" + std::to_string(k) + " outside K";
    for (const auto& [l, a] : d.psi)
        if (!a.is_zero() && !contains(s.L, l)) return "psi_" + std::to_string(l) + " outside L";

    auto get = [&](const std::map<int, PolyMatrix>& mp, int k) {
        auto it = mp.find(k);
        return it == mp.end() ? PolyMatrix(n, n) : it->second;
    };
    auto lam = [&](int i) {
        auto it = d.lambda.find(i);
        return it == d.lambda.end() ? Poly() : it->second;
    };
    auto pk = [&](int k, int l) {
        auto it = d.p.find({k, l});
        return it == d.p.end() ? PolyMatrix(n, n) : it->second;
    };
    PolyMatrix phi_sum(n, n), psi_sum(n, n);
    for (int k : s.K) {
        PolyMatrix lhs = PolyMatrix::scalar(n, lam(k)) + get(d.phi, k);
        for (int l : s.L)
            if (l != k) lhs += generic_matrix(l, n) * pk(k, l);
        if (!(lhs == s.f(k))) return "F_" + std::to_string(k) + " is not reproduced";
        phi_sum += get(d.phi, k) * generic_matrix(k, n);
    }
    for (int l : s.L) {
        PolyMatrix rhs = PolyMatrix::scalar(n, lam(l)) + get(d.psi, l);
        for (int k : s.K)
            if (k != l) rhs += pk(k, l) * generic_matrix(k, n);
        if (!(rhs == s.g(l))) return "G_" + std::to_string(l) + " is not reproduced";
        psi_sum += generic_matrix(l, n) * get(d.psi, l);
    }
    if (!phi_sum.is_zero()) return "sum phi_k X_k is not zero";
    if (!psi_sum.is_zero()) return "sum X_l psi_l is not zero";
    return {};
}

namespace {

struct StandardLabel {
    bool is_p = true;
    int k = 0, l = 0, a = 0, b = 0;
    Monomial mu;
};

/// Columns of the standard unknowns (p before lambda) against the F and G equations.
std::vector<StandardLabel> standard_columns(const FISpec& s, Indexer<CoordKey>& ix, SpanBasis& span) {
    const int n = s.n;
    const auto all = range1(s.m);
    std::vector<StandardLabel> labels;
    for (int k : s.K)
        for (int l : s.L) {
            if (k == l) continue;
            const auto mus = multilinear_monomials(without(all, {k, l}), n);
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b)
                    for (const auto& mu : mus) {
                        SparseVec col;
                        // F_k += X_l E_ab mu, G_l += E_ab mu X_k
                        for (int r = 1; r <= n; ++r)
                            add_poly(ix, col, {0, k, r, b}, Poly::term(mu * Monomial::var(VarId{l, r, a}), 1));
                        for (int c = 1; c <= n; ++c)
                            add_poly(ix, col, {1, l, a, c}, Poly::term(mu * Monomial::var(VarId{k, b, c}), 1));
                        span.add(col, labels.size());
                        labels.push_back(StandardLabel{true, k, l, a, b, mu});
                    }
        }
    for (int i : s.K) {
        if (!contains(s.L, i)) continue;
        for (const auto& mu : multilinear_monomials(without(all, {i}), n)) {
            SparseVec col;
            for (int r = 1; r <= n; ++r) {
                add_poly(ix, col, {0, i, r, r}, Poly::term(mu, 1));
                add_poly(ix, col, {1, i, r, r}, Poly::term(mu, 1));
            }
            span.add(col, labels.size());
            labels.push_back(StandardLabel{false, i, i, 0, 0, mu});
        }
    }
    return labels;
}

}  // namespace

TwoSidedDecomposition standard_solve_small(const FISpec& s) {
    validate_fi(s);
    if (static_cast<int>(s.K.size()) > s.n || static_cast<int>(s.L.size()) > s.n)
        throw std::invalid_argument("standard_solve_small needs |K|, |L| <= n");
    const int n = s.n;
    Indexer<CoordKey> ix;
    SpanBasis span;
    const auto labels = standard_columns(s, ix, span);

    SparseVec target;
    bool known = true;
    for (int k : s.K) {
        const PolyMatrix f = s.f(k);
        for (int r = 1; r <= n && known; ++r)
            for (int c = 1; c <= n && known; ++c) known = add_poly_known(ix, target, {0, k, r, c}, f(r - 1, c - 1));
    }
    for (int l : s.L) {
        const PolyMatrix g = s.g(l);
        for (int r = 1; r <= n && known; ++r)
            for (int c = 1; c <= n && known; ++c) known = add_poly_known(ix, target, {1, l, r, c}, g(r - 1, c - 1));
    }
    std::optional<SparseVec> coeffs;
    if (known) coeffs = target.empty() ? SparseVec{} : span.express(target);
    if (!coeffs) throw NoSolution("no standard solution exists");

    TwoSidedDecomposition d;
    for (const auto& [label, c] : *coeffs) {
        const auto& L = labels[label];
        if (L.is_p) {
            auto [it, inserted] = d.p.try_emplace({L.k, L.l}, PolyMatrix(n, n));
            it->second(L.a - 1, L.b - 1) += Poly::term(L.mu, c);
        } else {
            d.lambda[L.k] += Poly::term(L.mu, c);
        }
    }
    for (auto it = d.p.begin(); it != d.p.end();) it = it->second.is_zero() ? d.p.erase(it) : std::next(it);
    for (auto it = d.lambda.begin(); it != d.lambda.end();) it = it->second.is_zero() ? d.lambda.erase(it) : std::next(it);
    const std::string err = verify_decomposition(s, d);
    if (!err.empty()) throw InternalMismatch("standard_solve_small: " + err);
    return d;
}

namespace {

enum class PairKind { Prime, DPrime, Mixed };

struct PairSyzygy {
    PairKind kind = PairKind::Prime;
    std::vector<int> Kp, Lp;
    ModuleElement tau_hat;
    std::vector<Monomial> mus;
};

/// Lifted Schreyer syzygies on G'^(K) and G''^(L) with the span of their multilinear multiples.
struct SyzygyColumns {
    std::vector<PairSyzygy> pairs;
    std::vector<std::pair<std::size_t, std::size_t>> labels;
    Indexer<CoordKey> coords;
    SpanBasis span;
};

std::shared_ptr<const GFamilies> families(int n, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const GFamilies>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, m}];
    if (!slot) slot = std::make_shared<const GFamilies>(build_G_families(n, m));
    return slot;
}

std::shared_ptr<const SyzygyColumns> build_columns(int n, int m, const std::vector<int>& K, const std::vector<int>& L,
                                                   int threads) {
    const auto fam = families(n, m);
    std::vector<const GFamilyElement*> elems;
    for (const auto& e : fam->prime)
        if (subset_of(e.groups, K)) elems.push_back(&e);
    const std::size_t num_prime = elems.size();
    for (const auto& e : fam->dprime)
        if (subset_of(e.groups, L)) elems.push_back(&e);

    std::vector<ModuleTerm> leads;
    for (const auto* e : elems) leads.push_back(*e->g.lead());

    std::vector<std::pair<std::size_t, std::size_t>> cand;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = i + 1; j < elems.size(); ++j) {
            if (leads[i].pos != leads[j].pos) continue;
            const Monomial l = Monomial::lcm(leads[i].m, leads[j].m);
            if (l.is_multilinear_in(l.groups())) cand.emplace_back(i, j);
        }

    auto out = std::make_shared<SyzygyColumns>();
    out->pairs.resize(cand.size());
    const auto all = range1(m);
    parallel_for(cand.size(), threads, [&](std::size_t c) {
        const auto [i, j] = cand[c];
        PairSyzygy& ps = out->pairs[c];
        const bool pi = i < num_prime, pj = j < num_prime;
        ps.kind = pi && pj ? PairKind::Prime : (!pi && !pj ? PairKind::DPrime : PairKind::Mixed);
        std::vector<std::size_t> sub;
        if (ps.kind == PairKind::Mixed) {
            ps.Kp = elems[i]->groups;
            ps.Lp = elems[j]->groups;
            for (std::size_t b = 0; b < elems.size(); ++b)
                if (subset_of(elems[b]->groups, b < num_prime ? ps.Kp : ps.Lp)) sub.push_back(b);
        } else {
            for (std::size_t b = 0; b < elems.size(); ++b)
                if ((b < num_prime) == pi) sub.push_back(b);
        }
        const Monomial l = Monomial::lcm(leads[i].m, leads[j].m);
        const Monomial m_ji = l / leads[i].m, m_ij = l / leads[j].m;
        const Rational c_i = 1 / leads[i].c, c_j = 1 / leads[j].c;
        ModuleElement sigma(elems[i]->g.rank());
        sigma.add_scaled(elems[i]->g, m_ji, c_i);
        sigma.add_scaled(elems[j]->g, m_ij, -c_j);

        std::vector<ModuleElement> basis;
        for (std::size_t b : sub) basis.push_back(elems[b]->g);
        const DivisionResult d = normal_form(sigma, basis);
        if (!d.remainder.is_zero()) throw InternalMismatch("S-pair of the G families leaves a remainder");

        ModuleElement tau(elems[i]->rows.rank());
        tau.add_scaled(elems[i]->rows, m_ji, c_i);
        tau.add_scaled(elems[j]->rows, m_ij, -c_j);
        for (std::size_t q = 0; q < sub.size(); ++q)
            if (!d.quotients[q].is_zero()) tau -= elems[sub[q]]->rows * d.quotients[q];
        ps.tau_hat = std::move(tau);
        std::vector<int> used = elems[i]->groups;
        for (int g : elems[j]->groups)
            if (!contains(used, g)) used.push_back(g);
        ps.mus = multilinear_monomials(without(all, used), n);
    });

    for (std::size_t p = 0; p < out->pairs.size(); ++p) {
        const auto& ps = out->pairs[p];
        if (ps.tau_hat.is_zero()) continue;
        for (std::size_t u = 0; u < ps.mus.size(); ++u) {
            SparseVec col;
            for (std::size_t r = 0; r < ps.tau_hat.rank(); ++r)
                add_poly(out->coords, col, {static_cast<int>(r)}, ps.tau_hat.c[r].times_term(ps.mus[u], 1));
            out->span.add(col, out->labels.size());
            out->labels.emplace_back(p, u);
        }
    }
    return out;
}

std::shared_ptr<const SyzygyColumns> syzygy_columns(int n, int m, const std::vector<int>& K, const std::vector<int>& L,
                                                    int threads) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, std::vector<int>, std::vector<int>>, std::shared_ptr<const SyzygyColumns>> cache;
    const auto key = std::make_tuple(n, m, K, L);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto built = build_columns(n, m, K, L, threads);
    std::lock_guard<std::mutex> lock(mu);
    return cache.try_emplace(key, std::move(built)).first->second;
}

void add_into(std::map<std::pair<int, int>, PolyMatrix>& dst, const std::map<std::pair<int, int>, PolyMatrix>& src, int n) {
    for (const auto& [k, a] : src) dst.try_emplace(k, PolyMatrix(n, n)).first->second += a;
}

template <class Map>
void drop_zero(Map& mp) {
    for (auto it = mp.begin(); it != mp.end();) it = it->second.is_zero() ? mp.erase(it) : std::next(it);
}

}  // namespace

TwoSidedDecomposition decompose_two_sided(const FISpec& spec, int threads) {
    const CheckResult chk = check_fi(spec);
    if (!chk.holds) throw IdentityFails("functional identity does not hold", chk.residual);
    const int n = spec.n, m = spec.m;
    const std::size_t rank = static_cast<std::size_t>(2 * m * n * n);

    ModuleElement H(rank);
    for (int k : spec.K) {
        const PolyMatrix f = spec.f(k);
        for (int g = 1; g <= n; ++g)
            for (int v = 1; v <= n; ++v) H.c[xi_row_prime(n, k, g, v)] = f(g - 1, v - 1);
    }
    for (int l : spec.L) {
        const PolyMatrix gm = spec.g(l);
        for (int s = 1; s <= n; ++s)
            for (int d = 1; d <= n; ++d) H.c[xi_row_dprime(n, m, l, s, d)] = -gm(s - 1, d - 1);
    }
    {
        const auto rows = xi_rows(n, m);
        ModuleElement hx(static_cast<std::size_t>(n * n));
        for (std::size_t r = 0; r < rank; ++r)
            if (!H.c[r].is_zero()) hx += rows[r] * H.c[r];
        if (!hx.is_zero()) throw InternalMismatch("coordinate vector is not a syzygy on the rows of Xi");
    }

    TwoSidedDecomposition out;
    if (H.is_zero()) return out;

    const auto cols = syzygy_columns(n, m, spec.K, spec.L, threads);
    SparseVec target;
    for (std::size_t r = 0; r < rank; ++r)
        if (!add_poly_known(cols->coords, target, {static_cast<int>(r)}, H.c[r]))
            throw InternalMismatch("coordinate vector leaves the span of the lifted syzygies");
    const auto coeffs = cols->span.express(target);
    if (!coeffs) throw InternalMismatch("coordinate vector leaves the span of the lifted syzygies");

    ModuleElement phi_vec(rank), psi_vec(rank);
    std::map<std::pair<std::vector<int>, std::vector<int>>, ModuleElement> mixed;
    for (const auto& [label, c] : *coeffs) {
        const auto [p, u] = cols->labels[label];
        const auto& ps = cols->pairs[p];
        ModuleElement* dst = nullptr;
        switch (ps.kind) {
            case PairKind::Prime: dst = &phi_vec; break;
            case PairKind::DPrime: dst = &psi_vec; break;
            case PairKind::Mixed: dst = &mixed.try_emplace({ps.Kp, ps.Lp}, ModuleElement(rank)).first->second; break;
        }
        dst->add_scaled(ps.tau_hat, ps.mus[u], c);
    }

    for (int k : spec.K)
        put_nonzero(out.phi, k,
                    matrix_from_vec(phi_vec, n, [&](int g, int v) { return xi_row_prime(n, k, g, v); }, 1));
    for (int l : spec.L)
        put_nonzero(out.psi, l,
                    matrix_from_vec(psi_vec, n, [&](int s, int d) { return xi_row_dprime(n, m, l, s, d); }, -1));

    for (const auto& [kl, vec] : mixed) {
        FISpec sub;
        sub.n = n;
        sub.m = m;
        sub.K = kl.first;
        sub.L = kl.second;
        for (int k : sub.K)
            put_nonzero(sub.F, k, matrix_from_vec(vec, n, [&](int g, int v) { return xi_row_prime(n, k, g, v); }, 1));
        for (int l : sub.L)
            put_nonzero(sub.G, l,
                        matrix_from_vec(vec, n, [&](int s, int d) { return xi_row_dprime(n, m, l, s, d); }, -1));
        if (!check_fi(sub).holds) throw InternalMismatch("mixed syzygy does not give a functional identity");
        TwoSidedDecomposition part;
        try {
            part = standard_solve_small(sub);
        } catch (const NoSolution&) {
            throw InternalMismatch("mixed syzygy identity has no standard solution");
        }
        add_into(out.p, part.p, n);
        for (const auto& [i, lam] : part.lambda) out.lambda[i] += lam;
    }
    drop_zero(out.p);
    drop_zero(out.lambda);

    const std::string err = verify_decomposition(spec, out);
    if (!err.empty()) throw InternalMismatch("decompose_two_sided: " + err);
    return out;
}

std::optional<TwoSidedDecomposition> decompose_two_sided_oracle(const FISpec& spec) {
    validate_fi(spec);
    const int n = spec.n, m = spec.m;
    const auto all = range1(m);
    Indexer<CoordKey> ix;
    SpanBasis span;
    struct Label {
        bool is_p;
        int k, l, a, b;
        Monomial mu;
    };
    std::vector<Label> labels;
    for (int k : spec.K)
        for (int l : spec.L) {
            if (k == l) continue;
            const auto mus = multilinear_monomials(without(all, {k, l}), n);
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b)
                    for (const auto& mu : mus) {
                        // X_l E_ab X_k mu: entry (r, c) is x^l_{ra} x^k_{bc} mu
                        SparseVec col;
                        for (int r = 1; r <= n; ++r)
                            for (int c = 1; c <= n; ++c)
                                add_poly(ix, col, {r, c},
                                         Poly::term(mu * Monomial::var(VarId{l, r, a}) * Monomial::var(VarId{k, b, c}), 1));
                        span.add(col, labels.size());
                        labels.push_back(Label{true, k, l, a, b, mu});
                    }
        }
    for (int i : spec.K) {
        if (!contains(spec.L, i)) continue;
        for (const auto& mu : multilinear_monomials(without(all, {i}), n)) {
            SparseVec col;
            for (int r = 1; r <= n; ++r)
                for (int c = 1; c <= n; ++c) add_poly(ix, col, {r, c}, Poly::term(mu * Monomial::var(VarId{i, r, c}), 1));
            span.add(col, labels.size());
            labels.push_back(Label{false, i, i, 0, 0, mu});
        }
    }
    PolyMatrix rhs(n, n);
    for (int k : spec.K) rhs += spec.f(k) * generic_matrix(k, n);
    SparseVec target;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            if (!add_poly_known(ix, target, {r, c}, rhs(r - 1, c - 1))) return std::nullopt;
    const auto coeffs = target.empty() ? std::optional<SparseVec>(SparseVec{}) : span.express(target);
    if (!coeffs) return std::nullopt;

    TwoSidedDecomposition d;
    for (const auto& [label, c] : *coeffs) {
        const auto& L = labels[label];
        if (L.is_p)
            d.p.try_emplace({L.k, L.l}, PolyMatrix(n, n)).first->second(L.a - 1, L.b - 1) += Poly::term(L.mu, c);
        else
            d.lambda[L.k] += Poly::term(L.mu, c);
    }
    drop_zero(d.p);
    drop_zero(d.lambda);
    auto pk = [&](int k, int l) {
        auto it = d.p.find({k, l});
        return it == d.p.end() ? PolyMatrix(n, n) : it->second;
    };
    auto lam = [&](int i) {
        auto it = d.lambda.find(i);
        return it == d.lambda.end() ? Poly() : it->second;
    };
    for (int k : spec.K) {
        PolyMatrix phi = spec.f(k) - PolyMatrix::scalar(n, lam(k));
        for (int l : spec.L)
            if (l != k) phi -= generic_matrix(l, n) * pk(k, l);
        put_nonzero(d.phi, k, phi);
    }
    for (int l : spec.L) {
        PolyMatrix psi = spec.g(l) - PolyMatrix::scalar(n, lam(l));
        for (int k : spec.K)
            if (k != l) psi -= pk(k, l) * generic_matrix(k, n);
        put_nonzero(d.psi, l, psi);
    }
    // sum X_l psi_l = sum X_l G_l - sum F_k X_k, so this rejects inputs that are not identities.
    PolyMatrix right(n, n);
    for (const auto& [l, psi] : d.psi) right += generic_matrix(l, n) * psi;
    if (!right.is_zero()) return std::nullopt;
    return d;
}

PolyMatrix polarize(const PolyMatrix& T, int r) {
    if (r < 1) return T;
    std::map<std::uint32_t, Poly> sub;
    for (int i = 1; i <= T.rows(); ++i)
        for (int j = 1; j <= T.rows(); ++j) {
            Poly s;
            for (int g = 1; g <= r; ++g) s += Poly::var(g, i, j);
            sub[VarId{1, i, j}.id()] = s;
        }
    const GroupMask mask = mask_of(range1(r));
    PolyMatrix out(T.rows(), T.cols());
    for (int i = 0; i < T.rows(); ++i)
        for (int j = 0; j < T.cols(); ++j) {
            const Poly e = T(i, j).substitute(sub);
            std::vector<Term> keep;
            for (const auto& t : e.terms())
                if (t.m.is_multilinear_in(mask)) keep.push_back(t);
            out(i, j) = Poly::from_terms(std::move(keep));
        }
    return out;
}

Poly collapse_groups(const Poly& a) {
    return a.relabel([](const VarId& v) { return VarId{1, v.i, v.j}; });
}

PolyMatrix collapse_groups(const PolyMatrix& a) {
    return a.relabel([](const VarId& v) { return VarId{1, v.i, v.j}; });
}

PolyMatrix evaluate_trace_form(const TraceForm& f, int n) {
    const PolyMatrix X = generic_matrix(1, n);
    PolyMatrix acc(n, n), pw = PolyMatrix::identity(n);
    for (const auto& mu : f.mu) {
        acc += pw.times(mu);
        pw = pw * X;
    }
    return acc;
}

namespace {

TraceForm trace_form_rec(const PolyMatrix& T, int n, int r, int threads) {
    if (r == 0) {
        Poly s;
        if (!T.is_scalar(&s)) throw InternalMismatch("degree-zero commuting trace is not scalar");
        return TraceForm{0, {s}};
    }
    const int m = r + 1;
    const PolyMatrix F = polarize(T, r);
    FISpec spec;
    spec.n = n;
    spec.m = m;
    spec.K = spec.L = range1(m);
    for (int k = 1; k <= m; ++k) {
        const PolyMatrix Fk = F.relabel([k](const VarId& v) { return VarId{v.k < k ? v.k : v.k + 1, v.i, v.j}; });
        put_nonzero(spec.F, k, Fk);
        put_nonzero(spec.G, k, Fk);
    }
    const TwoSidedDecomposition d = decompose_two_sided(spec, threads);

    const Rational inv = 1 / factorial(r);
    std::vector<PolyMatrix> P(static_cast<std::size_t>(m + 1), PolyMatrix(n, n));
    for (const auto& [kl, p] : d.p) P[static_cast<std::size_t>(kl.first)] += collapse_groups(p).scaled(inv);
    PolyMatrix rest(n, n);
    for (int l = 2; l <= m; ++l) rest += P[static_cast<std::size_t>(l)];
    const PolyMatrix Ptil = (rest - P[1].scaled(m - 1)).scaled(Rational(1, m));
    const PolyMatrix Pm = P[1] + Ptil;

    const PolyMatrix X = generic_matrix(1, n);
    Poly mu0;
    if (!(T - X * Pm).is_scalar(&mu0)) throw InternalMismatch("T - xP is not scalar");
    if (!(Pm * X == X * Pm)) throw InternalMismatch("P does not commute with x");
    const TraceForm lower = trace_form_rec(Pm, n, r - 1, threads);
    TraceForm out{r, {mu0}};
    out.mu.insert(out.mu.end(), lower.mu.begin(), lower.mu.end());
    return out;
}

/// e_j(X_1) as sums of principal j x j minors, j = 0..n.
std::vector<Poly> char_coefficients(int n) {
    const PolyMatrix x = generic_matrix(1, n);
    std::vector<Poly> e{Poly(1)};
    for (int j = 1; j <= n; ++j) {
        Poly s;
        for (const auto& S : combinations(range1(n), j)) {
            std::vector<int> idx;
            for (int v : S) idx.push_back(v - 1);
            s += det(x.submatrix(idx, idx));
        }
        e.push_back(s);
    }
    return e;
}

Poly power(const Poly& p, int k) {
    Poly r(1);
    for (int i = 0; i < k; ++i) r *= p;
    return r;
}

/// Quotient q with mu = e_n q + r(e_1, ..., e_{n-1}) for an invariant mu, read off from the
/// expansion of mu on diagonal matrices in elementary symmetric polynomials.
Poly det_part(const Poly& mu, int n, const std::vector<Poly>& e) {
    std::map<std::uint32_t, Poly> diag;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) diag[VarId{1, i, j}.id()] = Poly();
    std::vector<Poly> ey;
    for (const auto& ej : e) ey.push_back(ej.substitute(diag));
    Poly f = mu.substitute(diag), q;
    while (!f.is_zero()) {
        const Term lead = f.lead();
        std::vector<int> a(static_cast<std::size_t>(n + 1), 0);
        for (int i = 1; i <= n; ++i) a[static_cast<std::size_t>(i - 1)] = lead.m.exponent(VarId{1, i, i});
        Poly prod_y(1), prod_x(1);
        for (int j = 1; j <= n; ++j) {
            const int b = a[static_cast<std::size_t>(j - 1)] - a[static_cast<std::size_t>(j)];
            if (b < 0) throw InternalMismatch("trace coefficient is not invariant");
            prod_y *= power(ey[static_cast<std::size_t>(j)], b);
            prod_x *= power(e[static_cast<std::size_t>(j)], j == n ? b - 1 : b);
        }
        f -= prod_y.scaled(lead.c);
        if (a[static_cast<std::size_t>(n - 1)] >= 1) q += prod_x.scaled(lead.c);
    }
    return q;
}

/// Conjugation invariance: weight zero under the diagonal torus and fixed by every transvection.
bool is_invariant(const Poly& f, int n) {
    for (const auto& t : f.terms()) {
        std::vector<int> w(static_cast<std::size_t>(n + 1), 0);
        for (const auto& [v, e] : t.m.factors()) {
            w[static_cast<std::size_t>(v.i)] += e;
            w[static_cast<std::size_t>(v.j)] -= e;
        }
        if (std::any_of(w.begin(), w.end(), [](int x) { return x != 0; })) return false;
    }
    const PolyMatrix x = generic_matrix(1, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const PolyMatrix y = (PolyMatrix::identity(n) + PolyMatrix::unit(n, i, j)) * x *
                                 (PolyMatrix::identity(n) - PolyMatrix::unit(n, i, j));
            std::map<std::uint32_t, Poly> sub;
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b) sub[VarId{1, a, b}.id()] = y(a - 1, b - 1);
            if (!(f.substitute(sub) == f)) return false;
        }
    return true;
}

/// Standard forms are unique only up to multiples of the characteristic polynomial chi_x(t).
/// The coefficients are first reduced modulo chi_x (unique, since 1, x, ..., x^{n-1} are
/// independent for a generic matrix), then every det factor of an invariant coefficient
/// mu_i, i <= r - n, is moved up with chi_x(t) t^i.
void normalize_trace_form(TraceForm& f, int n) {
    const auto e = char_coefficients(n);
    auto shift = [&](int i, const Poly& q) {
        for (int j = 0; j <= n; ++j)
            f.mu[static_cast<std::size_t>(i + n - j)] -= (q * e[static_cast<std::size_t>(j)]).scaled(sign_pow(j));
    };
    for (int d = f.r; d >= n; --d) {
        const Poly c = f.mu[static_cast<std::size_t>(d)];
        if (!c.is_zero()) shift(d - n, c);
    }
    for (int i = 0; i + n <= f.r; ++i) {
        const Poly& c = f.mu[static_cast<std::size_t>(i)];
        if (c.is_zero() || !is_invariant(c, n)) continue;
        const Poly q = det_part(c, n, e);
        if (!q.is_zero()) shift(i, q.scaled(sign_pow(n)));
    }
}

}  // namespace

TraceForm commuting_trace_form(const PolyMatrix& T, int n, int threads) {
    if (T.rows() != n || T.cols() != n) throw std::invalid_argument("commuting_trace_form: T must be n x n");
    int r = -1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (const auto& t : T(i, j).terms()) {
                for (const auto& [v, e] : t.m.factors())
                    if (v.k != 1 || v.i > n || v.j > n)
                        throw std::invalid_argument("commuting_trace_form: T must use the entries of X_1 only");
                if (r < 0) r = t.m.degree();
                if (t.m.degree() != r) throw std::invalid_argument("commuting_trace_form: T is not homogeneous");
            }
    if (r < 0) return TraceForm{0, {Poly()}};
    const PolyMatrix X = generic_matrix(1, n);
    if (!(T * X == X * T)) throw std::invalid_argument("commuting_trace_form: T does not commute with x");
    TraceForm f = trace_form_rec(T, n, r, threads);
    normalize_trace_form(f, n);
    if (!(evaluate_trace_form(f, n) == T)) throw InternalMismatch("trace form does not reproduce T");
    return f;
}

PolyMatrix det_trace_extract(const OneSidedSolution& sol, int k, int m, int n) {
    PolyMatrix S(n, n);
    const auto domain = range1(n);
    for (const auto& [key, lam] : sol) {
        for (std::size_t s = 0; s < key.I.size(); ++s) {
            if (key.I[s] != k) continue;
            std::vector<int> rest;
            for (std::size_t t = 0; t < key.J.size(); ++t)
                if (t != s) rest.push_back(key.J[t]);
            if (std::set<int>(rest.begin(), rest.end()).size() != rest.size()) continue;
            const int sg = sign_pow(static_cast<int>(s) + 1) * perm_sign(domain, rest);
            S(key.ell - 1, key.J[s] - 1) += collapse_groups(lam).scaled(sg);
        }
    }
    const PolyMatrix Tk = collapse_groups(reconstruct_one_sided(sol, n, m).at(k));
    if (!(Tk == S.times(det(generic_matrix(1, n))))) throw InternalMismatch("T_k differs from det(x) S_k");
    return S;
}

FISpec determinant_fi(int n) {
    FISpec s;
    s.n = n;
    s.m = n + 1;
    s.K = range1(n + 1);
    std::vector<MatrixArg> args;
    for (int k = 1; k <= n + 1; ++k) args.push_back(MatrixArg::generic(k));
    const GenPoly c = nonstandard_commutator(n).scaled(-1 / factorial(n));
    for (const auto& [k, h] : coordinate_form(c, args, n)) put_nonzero(s.F, k, h);
    return s;
}

std::optional<FISpec> complete_left_sided(int n, const PolyMatrix& F) {
    const int m = n + 1;
    if (F.rows() != n || F.cols() != n) throw std::invalid_argument("complete_left_sided: F must be n x n");
    if (!entries_in_range(F, n, n) || !matrix_multilinear(F, mask_of(range1(n))))
        throw std::invalid_argument("complete_left_sided: F must be multilinear in groups 1..n");
    Indexer<CoordKey> ix;
    SpanBasis span;
    std::vector<std::tuple<int, int, int, Monomial>> labels;
    for (int k = 1; k <= n; ++k) {
        const auto mus = multilinear_monomials(without(range1(m), {k}), n);
        for (int a = 1; a <= n; ++a)
            for (int b = 1; b <= n; ++b)
                for (const auto& mu : mus) {
                    // E_ab mu X_k: entry (a, c) is mu x^k_{bc}
                    SparseVec col;
                    for (int c = 1; c <= n; ++c)
                        add_poly(ix, col, {a, c}, Poly::term(mu * Monomial::var(VarId{k, b, c}), 1));
                    span.add(col, labels.size());
                    labels.emplace_back(k, a, b, mu);
                }
    }
    const PolyMatrix rhs = -(F * generic_matrix(m, n));
    SparseVec target;
    for (int r = 1; r <= n; ++r)
        for (int c = 1; c <= n; ++c)
            if (!add_poly_known(ix, target, {r, c}, rhs(r - 1, c - 1))) return std::nullopt;
    const auto coeffs = target.empty() ? std::optional<SparseVec>(SparseVec{}) : span.express(target);
    if (!coeffs) return std::nullopt;
    FISpec s;
    s.n = n;
    s.m = m;
    s.K = range1(m);
    for (const auto& [label, c] : *coeffs) {
        const auto& [k, a, b, mu] = labels[label];
        s.F.try_emplace(k, PolyMatrix(n, n)).first->second(a - 1, b - 1) += Poly::term(mu, c);
    }
    drop_zero(s.F);
    put_nonzero(s.F, m, F);
    if (!check_fi(s).holds) throw InternalMismatch("complete_left_sided: completion fails the identity");
    return s;
}

Poly random_multilinear(std::mt19937_64& rng, const std::vector<int>& groups, int n, int terms) {
    const auto monos = multilinear_monomials(groups, n);
    std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
    std::uniform_int_distribution<int> num(-3, 3), den(1, 2);
    Poly p;
    for (int t = 0; t < terms; ++t) {
        int a = num(rng);
        if (a == 0) a = 1;
        Rational c(a, den(rng));
        c.canonicalize();
        p += Poly::term(monos[pick(rng)], c);
    }
    return p;
}

OneSidedSolution random_one_sided_solution(std::mt19937_64& rng, int n, int m, const std::vector<int>& K, int keys) {
    OneSidedSolution sol;
    const auto subsets = combinations(K, n + 1);
    if (subsets.empty()) return sol;
    std::uniform_int_distribution<std::size_t> pick_I(0, subsets.size() - 1);
    std::uniform_int_distribution<int> pick_j(1, n);
    for (int t = 0; t < keys; ++t) {
        OneSidedKey key;
        key.ell = pick_j(rng);
        key.I = subsets[pick_I(rng)];
        for (int s = 0; s <= n; ++s) key.J.push_back(pick_j(rng));
        sol[key] += random_multilinear(rng, without(range1(m), key.I), n, 1);
    }
    drop_zero(sol);
    return sol;
}

PolyMatrix transpose_relabel(const PolyMatrix& a) {
    return a.relabel([](const VarId& v) { return VarId{v.k, v.j, v.i}; }).transpose();
}

FISpec random_two_sided(std::mt19937_64& rng, int n, int m, const std::vector<int>& K, const std::vector<int>& L) {
    FISpec s;
    s.n = n;
    s.m = m;
    s.K = K;
    s.L = L;
    const auto all = range1(m);
    std::bernoulli_distribution coin(0.5);
    std::map<int, PolyMatrix> F, G;
    for (int k : K) F[k] = PolyMatrix(n, n);
    for (int l : L) G[l] = PolyMatrix(n, n);
    for (int k : K)
        for (int l : L) {
            if (k == l || !coin(rng)) continue;
            PolyMatrix p(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (coin(rng)) p(a, b) = random_multilinear(rng, without(all, {k, l}), n, 1);
            F[k] += generic_matrix(l, n) * p;
            G[l] += p * generic_matrix(k, n);
        }
    for (int i : K) {
        if (!contains(L, i) || !coin(rng)) continue;
        const Poly lam = random_multilinear(rng, without(all, {i}), n, 2);
        F[i] += PolyMatrix::scalar(n, lam);
        G[i] += PolyMatrix::scalar(n, lam);
    }
    const auto left = reconstruct_one_sided(random_one_sided_solution(rng, n, m, K), n, m);
    for (int k : K) F[k] += left.at(k);
    const auto right = reconstruct_one_sided(random_one_sided_solution(rng, n, m, L), n, m);
    for (int l : L) G[l] += transpose_relabel(right.at(l));
    for (auto& [k, a] : F) put_nonzero(s.F, k, a);
    for (auto& [l, a] : G) put_nonzero(s.G, l, a);
    if (!check_fi(s).holds) throw std::logic_error("random_two_sided built a failing identity");
    return s;
}

}  // namespace fident
