// Acceptance suite: one PASS/FAIL line per criterion. argv[1] is the path of the fident binary.

#include "fident/fisolve.hpp"
#include "fident/gpi.hpp"
#include "fident/modgb.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace fident;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

/// Records the first failure and keeps going so every check runs.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (!ok && pass_) {
            pass_ = false;
            first_ = what;
        }
    }
    Outcome done(const std::string& summary) const {
        return {pass_, pass_ ? summary + " (" + std::to_string(checks_) + " checks)" : "first failure: " + first_};
    }

private:
    bool pass_ = true;
    int checks_ = 0;
    std::string first_;
};

std::vector<int> iota1(int m) {
    std::vector<int> v;
    for (int k = 1; k <= m; ++k) v.push_back(k);
    return v;
}

std::vector<PolyMatrix> generics(int n, int count) {
    std::vector<PolyMatrix> v;
    for (int k = 1; k <= count; ++k) v.push_back(generic_matrix(k, n));
    return v;
}

Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Rational small_rational(std::mt19937_64& rng, bool allow_zero = true) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    Rational r;
    do {
        r = Rational(num(rng), den(rng));
        r.canonicalize();
    } while (!allow_zero && r == 0);
    return r;
}

std::vector<int> random_subset(std::mt19937_64& rng, int m, int min_size, int max_size) {
    std::vector<int> all = iota1(m);
    std::shuffle(all.begin(), all.end(), rng);
    std::uniform_int_distribution<int> size(min_size, max_size);
    std::vector<int> out(all.begin(), all.begin() + size(rng));
    std::sort(out.begin(), out.end());
    return out;
}

bool same_coordinates(const std::map<int, PolyMatrix>& got, const FISpec& s) {
    for (const auto& [k, a] : got)
        if (k < 1 || k > s.m) return false;
    for (int k = 1; k <= s.m; ++k) {
        auto it = got.find(k);
        const PolyMatrix g = it == got.end() ? PolyMatrix(s.n, s.n) : it->second;
        if (!(g == s.f(k))) return false;
    }
    return true;
}

bool all_reduce_to_zero(const std::vector<ModuleElement>& v, const std::vector<ModuleElement>& basis) {
    for (const auto& e : v)
        if (!normal_form(e, basis).remainder.is_zero()) return false;
    return true;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::all_of(a.begin(), a.end(), [&](int x) { return std::find(b.begin(), b.end(), x) != b.end(); });
}

// ---------------------------------------------------------------------------

Outcome cayley_hamilton() {
    Checker c;
    for (int n = 1; n <= 3; ++n) c.expect(eval(polarized_ch(n), generics(n, n)).is_zero(), "Q_" + std::to_string(n) + " != 0");
    for (int n = 1; n <= 3; ++n)
        c.expect(eval(ch_poly(n), generics(n, 1)).is_zero(), "q_" + std::to_string(n) + "(X) != 0");
    const std::string display = "x1*x2 + x2*x1 - tr(x1)*x2 - tr(x2)*x1 + tr(x1)*tr(x2) - tr(x1*x2)";
    c.expect(polarized_ch(2).str() == display, "Q_2 prints as " + polarized_ch(2).str());
    c.expect(parse_genpoly(display, 2) == polarized_ch(2),
             "displayed Q_2 does not parse to Q_2");
    return c.done("Q_n(X_1..X_n) = 0 for n = 1..3; Q_2 matches the six-term display");
}

Outcome rank_one() {
    Checker c;
    for (int n = 2; n <= 3; ++n) {
        const Rational want = (n % 2 == 0 ? 1 : -1) * factorial(n - 1);
        const Rational got = rank_one_reduction(polarized_ch(n));
        c.expect(got == want, "n = " + std::to_string(n) + ": coefficient " + to_string(got));
    }
    return c.done("Q_n([ex1e, ex2e], e, .., e) = (-1)^n (n-1)! [ex1e, ex2e] for n = 2, 3");
}

void check_det_form(Checker& c, int n, const std::vector<int>& i, const std::vector<int>& j, int& full, int& vanish) {
    const auto r = ch_det_identity(n, i, j);
    std::ostringstream tag;
    tag << "n = " << n << " i =";
    for (int v : i) tag << ' ' << v;
    tag << " j =";
    for (int v : j) tag << ' ' << v;
    if (r.full_index_set) {
        ++full;
        c.expect(r.lhs == r.mid && r.mid == r.rhs, tag.str());
    } else {
        ++vanish;
        c.expect(r.vanishing.is_zero(), tag.str() + " (vanishing)");
    }
}

Outcome det_form() {
    Checker c;
    int full = 0, vanish = 0;
    for (int code = 0; code < 64; ++code) {
        std::vector<int> i(3), j(3);
        for (int l = 0; l < 3; ++l) {
            i[static_cast<std::size_t>(l)] = ((code >> l) & 1) + 1;
            j[static_cast<std::size_t>(l)] = ((code >> (l + 3)) & 1) + 1;
        }
        check_det_form(c, 2, i, j, full, vanish);
    }
    c.expect(full == 32 && vanish == 32, "n = 2 case split");
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<int> idx(1, 3);
    int full3 = 0, vanish3 = 0;
    for (int t = 0; t < 60; ++t) {
        std::vector<int> i(4), j(4);
        if (t % 2 == 0) {
            std::vector<int> p{1, 2, 3};
            std::shuffle(p.begin(), p.end(), rng);
            std::copy(p.begin(), p.end(), i.begin());
            i[3] = idx(rng);
        } else {
            for (auto& v : i) v = idx(rng);
        }
        for (auto& v : j) v = idx(rng);
        check_det_form(c, 3, i, j, full3, vanish3);
    }
    c.expect(full3 >= 30 && vanish3 >= 1, "n = 3 sample covers both clauses");
    return c.done("n = 2 exhaustive (64 tuples), n = 3 sampled (60 tuples, " + std::to_string(full3) + " full)");
}

Outcome determinantal() {
    Checker c;
    int shapes = 0;
    for (int cols = 1; cols <= 3; ++cols)
        for (int rows = cols + 1; rows <= 6; ++rows) {
            PolyMatrix y(rows, cols);
            for (int i = 0; i < rows; ++i)
                for (int j = 0; j < cols; ++j) y(i, j) = Poly::var(1, i + 1, j + 1);
            std::vector<ModuleElement> gens;
            for (const auto& d : determinantal_generators(y)) {
                bool zero = true;
                for (const auto& p : row_combination(d.g, y)) zero = zero && p.is_zero();
                c.expect(zero, std::to_string(rows) + "x" + std::to_string(cols) + " generator does not annihilate");
                gens.push_back(d.g);
            }
            const auto B = buchberger(gens);
            c.expect(B.added == 0, std::to_string(rows) + "x" + std::to_string(cols) + ": Buchberger added elements");
            ++shapes;
        }
    for (auto [n, m] : {std::pair{1, 3}, std::pair{2, 2}, std::pair{2, 3}}) {
        std::vector<ModuleElement> gens;
        for (const auto& d : determinantal_generators(stacked_generic(n, m))) gens.push_back(d.g);
        c.expect(buchberger(gens).added == 0, "stacked generic n = " + std::to_string(n) + ", m = " + std::to_string(m));
    }
    return c.done(std::to_string(shapes) + " shapes up to 6 rows and 3 columns plus 3 stacked generic matrices");
}

Outcome laplace() {
    Checker c;
    DetFamilySpec ex;
    ex.n = 4;
    ex.K = {1, 2, 3};
    ex.L = {2, 3, 4, 5};
    ex.V = {4, 1, 2};
    ex.S = {3, 4, 2, 1};
    for (int alpha = 3; alpha <= 4; ++alpha) {
        auto [l, r] = polarized_laplace_check(ex, alpha, 4, LaplaceVariant::Full);
        c.expect(!l.is_zero() && l == r, "worked example, expanded form, alpha = " + std::to_string(alpha));
        DetFamilySpec sym = ex;
        sym.U = {1, 3};
        sym.W = {1, 3};
        auto [ls, rs] = polarized_laplace_check(sym, alpha, 4, LaplaceVariant::Symmetrized);
        c.expect(!ls.is_zero() && ls == rs, "worked example, symmetrized form, alpha = " + std::to_string(alpha));
    }
    std::mt19937_64 rng(505);
    int nonzero = 0;
    for (int t = 0; t < 100; ++t) {
        std::uniform_int_distribution<int> pick_n(1, 3);
        DetFamilySpec s;
        s.n = pick_n(rng);
        s.K = random_subset(rng, 4, 1, s.n);
        s.L = random_subset(rng, 4, 1, s.n);
        std::uniform_int_distribution<int> idx(1, s.n);
        for (std::size_t i = 0; i < s.K.size(); ++i) s.V.push_back(idx(rng));
        for (std::size_t i = 0; i < s.L.size(); ++i) s.S.push_back(idx(rng));
        const int a = static_cast<int>(s.K.size()), b = static_cast<int>(s.L.size());
        const int q = static_cast<int>(s.Q().size());
        std::uniform_int_distribution<int> al(a, s.n), be(b, s.n);
        const int alpha = al(rng), beta = be(rng);
        auto [l, r] = polarized_laplace_check(s, alpha, beta, LaplaceVariant::Full);
        c.expect(l == r, "random spec " + std::to_string(t) + ", expanded form");
        DetFamilySpec sym = s;
        sym.U = random_subset(rng, a, q, q);
        sym.W = random_subset(rng, b, q, q);
        auto [ls, rs] = polarized_laplace_check(sym, alpha, beta, LaplaceVariant::Symmetrized);
        c.expect(ls == rs, "random spec " + std::to_string(t) + ", symmetrized form");
        if (!l.is_zero()) ++nonzero;
    }
    c.expect(nonzero >= 30, "too few random specs with nonzero sides");
    return c.done("worked n = 4 example and 100 random specs with n <= 3, both forms (" + std::to_string(nonzero) +
                  " nonzero)");
}

Outcome xi_basis() {
    Checker c;
    const int n = 2, m = 3;
    const auto fam = build_G_families(n, m);
    BuchbergerOptions opt;
    opt.multilinear_only = true;
    auto compare = [&](const std::vector<int>& K, const std::vector<int>& L, const std::string& tag) {
        const auto rows = xi_rows(n, K, L);
        const auto B = buchberger(rows, opt);
        const auto basis = multilinear_filter(B.elements);
        std::vector<ModuleElement> G;
        for (const auto& e : fam.prime)
            if (subset_of(e.groups, K)) G.push_back(e.g);
        for (const auto& e : fam.dprime)
            if (subset_of(e.groups, L)) G.push_back(e.g);
        c.expect(all_reduce_to_zero(G, basis), tag + ": G' and G'' do not reduce to zero by the basis");
        c.expect(all_reduce_to_zero(basis, G), tag + ": the basis does not reduce to zero by G' and G''");
        for (std::size_t i = 0; i < B.elements.size(); ++i)
            c.expect(B.expand(i, rows) == B.elements[i], tag + ": stored expression is wrong");
    };
    compare(iota1(m), iota1(m), "K = L = {1,2,3}");
    std::mt19937_64 rng(606);
    for (int t = 0; t < 3; ++t) {
        const auto K = random_subset(rng, m, 1, m);
        const auto L = random_subset(rng, m, 1, m);
        std::ostringstream tag;
        tag << "K =";
        for (int k : K) tag << ' ' << k;
        tag << ", L =";
        for (int l : L) tag << ' ' << l;
        compare(K, L, tag.str());
    }
    return c.done("n = 2, m = 3 full configuration and 3 random sub-configurations");
}

Outcome one_sided_round_trip() {
    Checker c;
    std::mt19937_64 rng(707);
    for (int t = 0; t < 100; ++t) {
        const int m = t < 50 ? 3 : 4;
        const auto gen = random_one_sided_solution(rng, 2, m, iota1(m), 4);
        FISpec s;
        s.n = 2;
        s.m = m;
        s.K = iota1(m);
        for (const auto& [k, a] : reconstruct_one_sided(gen, 2, m))
            if (!a.is_zero()) s.F[k] = a;
        c.expect(check_fi(s).holds, "instance " + std::to_string(t) + " is not an identity");
        const auto sol = solve_one_sided(s);
        c.expect(same_coordinates(reconstruct_one_sided(sol, 2, m), s), "instance " + std::to_string(t) + ": reconstruction");
        c.expect(same_coordinates(expand_gpi_sum(to_gpi_sum(sol, 2), 2), s), "instance " + std::to_string(t) + ": GPI expansion");
    }
    return c.done("100 random left-sided identities at n = 2, m = 3 and 4");
}

Outcome two_sided() {
    Checker c;
    std::mt19937_64 rng(808);
    int padded = 0;
    for (int t = 0; t < 50; ++t) {
        const bool full = t % 2 == 0;
        const auto K = full ? iota1(3) : random_subset(rng, 3, 1, 3);
        const auto L = full ? iota1(3) : random_subset(rng, 3, 1, 3);
        const auto s = random_two_sided(rng, 2, 3, K, L);
        const std::string tag = "instance " + std::to_string(t);
        const auto d = decompose_two_sided(s);
        c.expect(verify_decomposition(s, d).empty(), tag + ": " + verify_decomposition(s, d));
        c.expect(decompose_two_sided_oracle(s).has_value(), tag + ": oracle finds no solution");
        for (const auto& [kl, a] : d.p)
            c.expect(std::count(K.begin(), K.end(), kl.first) && std::count(L.begin(), L.end(), kl.second), tag + ": p outside K x L");
        for (const auto& [i, v] : d.lambda)
            c.expect(std::count(K.begin(), K.end(), i) && std::count(L.begin(), L.end(), i), tag + ": lambda outside K and L");
        for (const auto& [k, a] : d.phi) c.expect(std::count(K.begin(), K.end(), k) > 0, tag + ": phi outside K");
        for (const auto& [l, a] : d.psi) c.expect(std::count(L.begin(), L.end(), l) > 0, tag + ": psi outside L");
        if (!full) ++padded;
        if (t % 5 == 0) {
            FISpec bad = s;
            const int k = K.front();
            std::vector<int> others;
            for (int g = 1; g <= 3; ++g)
                if (g != k) others.push_back(g);
            bad.F[k] = bad.f(k) + PolyMatrix::scalar(2, random_multilinear(rng, others, 2, 1));
            const bool holds = check_fi(bad).holds;
            bool solver_rejects = false;
            try {
                decompose_two_sided(bad);
            } catch (const IdentityFails&) {
                solver_rejects = true;
            }
            c.expect(solver_rejects == !holds, tag + ": solver and identity check disagree on a perturbed input");
            c.expect(decompose_two_sided_oracle(bad).has_value() == holds, tag + ": oracle disagrees on a perturbed input");
        }
    }
    return c.done("50 random instances at n = 2, m = 3 (" + std::to_string(padded) + " with proper K, L) plus 10 perturbed");
}

Outcome standard_regime() {
    Checker c;
    std::mt19937_64 rng(909);
    for (int t = 0; t < 50; ++t) {
        const int n = t < 25 ? 2 : 3;
        const auto K = random_subset(rng, 3, 1, n);
        const auto L = random_subset(rng, 3, 1, n);
        const auto s = random_two_sided(rng, n, 3, K, L);
        const auto d = decompose_two_sided(s);
        const auto e = standard_solve_small(s);
        const std::string tag = "instance " + std::to_string(t) + " (n = " + std::to_string(n) + ")";
        c.expect(d.phi.empty() && d.psi.empty(), tag + ": nonzero one-sided part");
        c.expect(d.p == e.p && d.lambda == e.lambda, tag + ": differs from the small standard solver");
        c.expect(verify_decomposition(s, d).empty(), tag + ": verification");
    }
    return c.done("25 instances at n = 2 and 25 at n = 3");
}

/// mu(g x g^-1) == mu(x) for the torus element diag(2, 1) and both elementary transvections.
bool conjugation_invariant(const Poly& mu) {
    const int n = 2;
    const PolyMatrix x = generic_matrix(1, n);
    std::vector<std::pair<PolyMatrix, PolyMatrix>> gs;
    PolyMatrix d = PolyMatrix::identity(n), di = PolyMatrix::identity(n);
    d(0, 0) = Poly(2);
    di(0, 0) = Poly(Rational(1, 2));
    gs.push_back({d, di});
    for (auto [i, j] : {std::pair{1, 2}, std::pair{2, 1}})
        gs.push_back({PolyMatrix::identity(n) + PolyMatrix::unit(n, i, j), PolyMatrix::identity(n) - PolyMatrix::unit(n, i, j)});
    for (const auto& [g, gi] : gs) {
        const PolyMatrix y = g * x * gi;
        std::map<std::uint32_t, Poly> sub;
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) sub[VarId{1, i, j}.id()] = y(i - 1, j - 1);
        if (!(mu.substitute(sub) == mu)) return false;
    }
    return true;
}

Outcome commuting_traces() {
    Checker c;
    const int n = 2;
    const PolyMatrix x = generic_matrix(1, n);
    const Poly tr = x.trace(), dt = det(x);

    const auto f = commuting_trace_form(PolyMatrix::scalar(n, dt), n);
    c.expect(f.mu.size() == 3 && f.mu[2] == Poly(-1) && f.mu[1] == tr && f.mu[0].is_zero(), "det(x) * 1");

    std::mt19937_64 rng(1010);
    const std::vector<std::vector<Poly>> invariants = {{Poly(1)}, {tr}, {tr * tr, dt}, {tr * tr * tr, tr * dt}};
    for (int t = 0; t < 20; ++t) {
        const int r = 1 + t % 3;
        PolyMatrix T(n, n), power = PolyMatrix::identity(n);
        for (int i = 0; i <= r; ++i) {
            Poly mu;
            for (const auto& inv : invariants[static_cast<std::size_t>(r - i)]) mu += inv.scaled(small_rational(rng));
            T += power.times(mu);
            power = power * x;
        }
        const std::string tag = "random trace " + std::to_string(t) + " (r = " + std::to_string(r) + ")";
        if (T.is_zero()) continue;
        const auto g = commuting_trace_form(T, n);
        c.expect(evaluate_trace_form(g, n) == T, tag + ": round trip");
        for (int i = 0; i < static_cast<int>(g.mu.size()); ++i) {
            const Poly& mu = g.mu[static_cast<std::size_t>(i)];
            for (const auto& term : mu.terms()) c.expect(term.m.degree() == r - i, tag + ": coefficient degree");
            c.expect(conjugation_invariant(mu), tag + ": coefficient is not a trace polynomial");
        }
    }

    // Completions normalized to F(1, .., 1) = 1 have trace det(x) * 1.
    const auto det_fi = determinant_fi(n);
    std::map<std::uint32_t, Poly> at_one;
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j) at_one[VarId{k, i, j}.id()] = Poly(i == j ? 1 : 0);
    int completions = 0;
    for (int t = 0; t < 40 && completions < 10; ++t) {
        const auto gen = reconstruct_one_sided(random_one_sided_solution(rng, n, n + 1, iota1(n + 1), 3), n, n + 1);
        std::map<int, PolyMatrix> Fk;
        for (int k = 1; k <= n + 1; ++k) Fk[k] = gen.at(k) + det_fi.f(k);
        const PolyMatrix S = Fk[n + 1].substitute(at_one);
        const Rational dS = det(S).constant_value();
        if (dS == 0) continue;
        PolyMatrix Sinv(n, n);
        Sinv(0, 0) = S(1, 1).scaled(1 / dS);
        Sinv(1, 1) = S(0, 0).scaled(1 / dS);
        Sinv(0, 1) = S(0, 1).scaled(-1 / dS);
        Sinv(1, 0) = S(1, 0).scaled(-1 / dS);
        FISpec s;
        s.n = n;
        s.m = n + 1;
        s.K = iota1(n + 1);
        for (auto& [k, a] : Fk) s.F[k] = Sinv * a;
        c.expect(check_fi(s).holds, "normalized completion is not an identity");
        c.expect(s.f(n + 1).substitute(at_one) == PolyMatrix::identity(n), "normalization");
        c.expect(collapse_groups(s.f(n + 1)) == PolyMatrix::scalar(n, dt), "completion whose trace is not det(x) * 1");
        ++completions;
    }
    c.expect(completions >= 5, "too few invertible completions");

    // The symmetric F with trace det(x) * 1 completes; F with another trace does not.
    const PolyMatrix sym = polarize(PolyMatrix::scalar(n, dt), n).scaled(1 / factorial(n));
    c.expect(sym == det_fi.f(n + 1), "polarized det trace");
    c.expect(sym.substitute(at_one) == PolyMatrix::identity(n), "F(1, 1) = 1 for the polarized det trace");
    c.expect(complete_left_sided(n, sym).has_value(), "polarized det trace does not complete");
    const PolyMatrix x1 = generic_matrix(1, n), x2 = generic_matrix(2, n);
    const std::vector<PolyMatrix> controls = {x1 * x2, (x1 * x2 + x2 * x1).scaled(Rational(1, 2)),
                                              PolyMatrix::scalar(n, x1.trace() * x2.trace()).scaled(Rational(1, 4))};
    for (const PolyMatrix& other : controls) {
        c.expect(other.substitute(at_one) == PolyMatrix::identity(n), "control is not normalized");
        c.expect(!(collapse_groups(other) == PolyMatrix::scalar(n, dt)), "control has trace det");
        c.expect(!complete_left_sided(n, other).has_value(), "F with trace " + collapse_groups(other).str() + " completes");
    }
    return c.done("det(x) * 1 form, 20 random standard forms with r <= 3, completion criterion both ways at n = 2");
}

// ---------------------------------------------------------------------------

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism(const std::string& exe) {
    Checker c;
    if (exe.empty() || !fs::exists(exe)) {
        c.expect(false, "fident binary not found: " + exe);
        return c.done("");
    }
    const fs::path dir = fs::temp_directory_path() / ("fident_accept_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name, std::ios::binary) << text;
    };
    write("left.json", R"({"schema": "fident/1", "construct": {"kind": "basic-nonstandard", "n": 2,
        "a": [[["1", "1"], ["1", "1"]], [["1", "0"], ["0", "1"]], [["0", "1"], ["0", "0"]]]}})");
    write("rleft.json", R"({"schema": "fident/1", "construct": {"kind": "random-left-sided", "n": 2, "m": 4, "keys": 5}})");
    write("two.json", R"({"schema": "fident/1", "construct": {"kind": "random-two-sided", "n": 2, "m": 3}})");
    write("trace.json", R"({"schema": "fident/1", "n": 2, "T_genpoly": "x*x*x + tr(x)*tr(x)*x - 1/2*tr(x*x)*x"})");
    const std::vector<std::pair<std::string, std::string>> jobs = {
        {"solve-left", "--input left.json solve --mode left --oracle"},
        {"solve-rleft", "--input rleft.json --seed 11 solve --mode left"},
        {"solve-two", "--input two.json --seed 5 solve --mode two-sided --oracle"},
        {"solve-trace", "--input trace.json solve --mode trace-form"},
        {"groebner", "groebner --rows xi --n 2 --m 3 --multilinear-only"},
        {"syzygy", "syzygy-gens --family g --n 2 --m 3"},
        {"qn", "qn --n 3 --polarized"},
    };
    int compared = 0;
    for (const auto& [name, args] : jobs) {
        std::vector<std::string> outputs;
        for (const char* threads : {"1", "1", "4"}) {
            const std::string out = name + "_" + std::to_string(outputs.size()) + ".json";
            const std::string cmd = "cd \"" + dir.string() + "\" && \"" + fs::absolute(exe).string() + "\" --threads " + threads +
                                    " --output " + out + " " + args + " > /dev/null";
            const int rc = std::system(cmd.c_str());
            c.expect(rc == 0, name + ": exit status " + std::to_string(rc));
            outputs.push_back(slurp(dir / out));
        }
        c.expect(!outputs[0].empty(), name + ": empty output");
        c.expect(outputs[0] == outputs[1], name + ": two runs differ");
        c.expect(outputs[0] == outputs[2], name + ": threads 1 and 4 differ");
        ++compared;
    }
    fs::remove_all(dir);
    return c.done(std::to_string(compared) + " commands, two runs and thread counts 1 and 4");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string exe = argc > 1 ? argv[1] : "";
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Cayley-Hamilton identity", cayley_hamilton},
        {"rank-one reduction", rank_one},
        {"determinant form of the polarized Cayley-Hamilton identity", det_form},
        {"determinantal syzygy generators", determinantal},
        {"polarized Laplace identities", laplace},
        {"multilinear basis of the Xi rows", xi_basis},
        {"left-sided round trip", one_sided_round_trip},
        {"two-sided decomposition", two_sided},
        {"standard regime", standard_regime},
        {"commuting traces and the determinant completion", commuting_traces},
        {"CLI determinism", [&] { return cli_determinism(exe); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " [" << secs << " s] " << criteria[i].first
             << ": " << o.detail;
        std::cout << line.str() << std::endl;
        if (!o.pass) ++failed;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
