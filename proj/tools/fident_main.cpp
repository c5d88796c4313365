// fident: batch front end over JSON files.
//
// Exit codes: 0 success, 1 identity fails or no solution, 2 usage/parse/schema error,
// 3 internal consistency failure, 4 resource cap exceeded.

#include "fident/fisolve.hpp"
#include "fident/gpi.hpp"
#include "fident/modgb.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

using json = nlohmann::json;
using namespace fident;

namespace {

constexpr const char* kSchema = "fident/1";

enum Exit { kOk = 0, kFails = 1, kUsage = 2, kInternal = 3, kResource = 4 };

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Globals {
    std::string input, output;
    std::uint64_t seed = 1;
    int threads = 1;
    bool oracle = false;
    bool allow_large = false;
};

// ---------------------------------------------------------------------------
// serialization

json rational_json(const Rational& q) { return to_string(q); }

Rational rational_from(const json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception&) {
        }
    } else if (j.is_number_integer()) {
        return Rational(j.get<long>());
    }
    throw SchemaError(where + ": expected a rational such as \"-3/4\"");
}

json poly_json(const Poly& p) {
    json out = json::array();
    for (const auto& t : p.terms()) {
        json vars = json::array();
        for (const auto& [v, e] : t.m.factors()) vars.push_back({v.k, v.i, v.j, e});
        out.push_back({{"c", rational_json(t.c)}, {"x", vars}});
    }
    return out;
}

int int_from(const json& j, const std::string& where, int lo, int hi) {
    if (!j.is_number_integer()) throw SchemaError(where + ": expected an integer");
    const long v = j.get<long>();
    if (v < lo || v > hi) throw SchemaError(where + ": value out of range");
    return static_cast<int>(v);
}

Poly poly_from(const json& j, const std::string& where) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array of terms");
    std::vector<Term> terms;
    for (std::size_t t = 0; t < j.size(); ++t) {
        const std::string w = where + "/" + std::to_string(t);
        const json& term = j[t];
        if (!term.is_object() || !term.contains("c") || !term.contains("x") || term.size() != 2)
            throw SchemaError(w + ": expected {\"c\": rational, \"x\": [[k, i, j, e], ...]}");
        Monomial m;
        const json& xs = term["x"];
        if (!xs.is_array()) throw SchemaError(w + "/x: expected an array");
        for (std::size_t v = 0; v < xs.size(); ++v) {
            const std::string wv = w + "/x/" + std::to_string(v);
            if (!xs[v].is_array() || xs[v].size() != 4) throw SchemaError(wv + ": expected [k, i, j, e]");
            const VarId id{int_from(xs[v][0], wv, 1, VarId::kMaxK), int_from(xs[v][1], wv, 1, VarId::kMaxIJ),
                           int_from(xs[v][2], wv, 1, VarId::kMaxIJ)};
            m = m * Monomial::var(id, int_from(xs[v][3], wv, 1, 255));
        }
        terms.push_back(Term{m, rational_from(term["c"], w + "/c")});
    }
    return Poly::from_terms(std::move(terms));
}

json matrix_json(const PolyMatrix& a) {
    json rows = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.cols(); ++j) row.push_back(poly_json(a(i, j)));
        rows.push_back(row);
    }
    return rows;
}

PolyMatrix matrix_from(const json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) throw SchemaError(where + ": expected " + std::to_string(n) + " rows");
    PolyMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        const std::string wr = where + "/" + std::to_string(r);
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SchemaError(wr + ": expected " + std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c) a(r, c) = poly_from(row[static_cast<std::size_t>(c)], wr + "/" + std::to_string(c));
    }
    return a;
}

/// Constant matrix given as rows of rational strings.
PolyMatrix rational_matrix_from(const json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n) throw SchemaError(where + ": expected " + std::to_string(n) + " rows");
    PolyMatrix a(n, n);
    for (int r = 0; r < n; ++r) {
        const json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SchemaError(where + "/" + std::to_string(r) + ": expected " + std::to_string(n) + " entries");
        for (int c = 0; c < n; ++c)
            a(r, c) = Poly(rational_from(row[static_cast<std::size_t>(c)], where + "/" + std::to_string(r) + "/" + std::to_string(c)));
    }
    return a;
}

json rational_matrix_json(const PolyMatrix& a) {
    json rows = json::array();
    for (int i = 0; i < a.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < a.cols(); ++j) row.push_back(rational_json(a(i, j).constant_value()));
        rows.push_back(row);
    }
    return rows;
}

std::vector<int> index_list(const json& j, const std::string& where, int m) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array of indices");
    std::vector<int> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(int_from(j[i], where + "/" + std::to_string(i), 1, m));
    return out;
}

json module_json(const ModuleElement& v) {
    json out = json::array();
    for (const auto& p : v.c) out.push_back(poly_json(p));
    return out;
}

void require_keys(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw SchemaError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw SchemaError(where + "/" + k + ": unknown key");
}

json fi_json(const FISpec& s) {
    json F = json::object(), G = json::object();
    for (const auto& [k, a] : s.F) F[std::to_string(k)] = matrix_json(a);
    for (const auto& [l, a] : s.G) G[std::to_string(l)] = matrix_json(a);
    return {{"schema", kSchema}, {"n", s.n}, {"m", s.m}, {"K", s.K}, {"L", s.L}, {"F", F}, {"G", G}};
}

// ---------------------------------------------------------------------------
// files

json read_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
        throw SchemaError(path + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")");
    }
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error(path + ": cannot write");
        out << text;
        if (!out) throw std::runtime_error(path + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

void write_json(const std::string& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void enforce_caps(int n, int m, const Globals& g) {
    if (g.allow_large) return;
    if (n > 3 || m > 5)
        throw CapExceeded("size cap exceeded (n <= 3, m <= 5); pass --allow-large to override");
}

// ---------------------------------------------------------------------------
// problem payloads

FISpec fi_from_json(const json& j, const Globals& g) {
    if (j.contains("construct")) {
        require_keys(j, {"schema", "construct"}, "");
        const json& c = j["construct"];
        if (!c.is_object() || !c.contains("kind") || !c["kind"].is_string())
            throw SchemaError("/construct: expected an object with a kind");
        const std::string kind = c["kind"];
        std::mt19937_64 rng(g.seed);
        if (kind == "basic-nonstandard") {
            require_keys(c, {"kind", "n", "a"}, "/construct");
            const int n = int_from(c.value("n", json()), "/construct/n", 1, VarId::kMaxIJ);
            enforce_caps(n, n + 1, g);
            std::vector<PolyMatrix> a;
            if (c.contains("a")) {
                if (!c["a"].is_array() || static_cast<int>(c["a"].size()) != n + 1)
                    throw SchemaError("/construct/a: expected n+1 matrices");
                for (int i = 0; i <= n; ++i)
                    a.push_back(rational_matrix_from(c["a"][static_cast<std::size_t>(i)], n, "/construct/a/" + std::to_string(i)));
            } else {
                a.assign(static_cast<std::size_t>(n + 1), PolyMatrix::identity(n));
            }
            return basic_nonstandard_fi(n, a);
        }
        if (kind == "determinant") {
            require_keys(c, {"kind", "n"}, "/construct");
            const int n = int_from(c.value("n", json()), "/construct/n", 1, VarId::kMaxIJ);
            enforce_caps(n, n + 1, g);
            return determinant_fi(n);
        }
        if (kind == "random-left-sided" || kind == "random-two-sided") {
            require_keys(c, {"kind", "n", "m", "K", "L", "keys"}, "/construct");
            const int n = int_from(c.value("n", json()), "/construct/n", 1, VarId::kMaxIJ);
            const int m = int_from(c.value("m", json()), "/construct/m", 1, 31);
            enforce_caps(n, m, g);
            std::vector<int> all(static_cast<std::size_t>(m));
            std::iota(all.begin(), all.end(), 1);
            const auto K = c.contains("K") ? index_list(c["K"], "/construct/K", m) : all;
            if (kind == "random-left-sided") {
                const int keys = c.contains("keys") ? int_from(c["keys"], "/construct/keys", 0, 1000) : 3;
                FISpec s;
                s.n = n;
                s.m = m;
                s.K = K;
                for (const auto& [k, a] : reconstruct_one_sided(random_one_sided_solution(rng, n, m, K, keys), n, m))
                    if (!a.is_zero()) s.F[k] = a;
                return s;
            }
            const auto L = c.contains("L") ? index_list(c["L"], "/construct/L", m) : all;
            return random_two_sided(rng, n, m, K, L);
        }
        throw SchemaError("/construct/kind: unknown kind " + kind);
    }
    require_keys(j, {"schema", "n", "m", "K", "L", "F", "G"}, "");
    FISpec s;
    s.n = int_from(j.value("n", json()), "/n", 1, VarId::kMaxIJ);
    s.m = int_from(j.value("m", json()), "/m", 1, 31);
    enforce_caps(s.n, s.m, g);
    s.K = index_list(j.value("K", json::array()), "/K", s.m);
    s.L = index_list(j.value("L", json::array()), "/L", s.m);
    for (const char* side : {"F", "G"}) {
        if (!j.contains(side)) continue;
        const json& mp = j[side];
        if (!mp.is_object()) throw SchemaError(std::string("/") + side + ": expected an object keyed by index");
        for (const auto& [key, val] : mp.items()) {
            int k = 0;
            try {
                std::size_t used = 0;
                k = std::stoi(key, &used);
                if (used != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw SchemaError(std::string("/") + side + "/" + key + ": key must be an index");
            }
            if (k < 1 || k > s.m) throw SchemaError(std::string("/") + side + "/" + key + ": index outside 1..m");
            (side[0] == 'F' ? s.F : s.G)[k] = matrix_from(val, s.n, std::string("/") + side + "/" + key);
        }
    }
    try {
        validate_fi(s);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    return s;
}

void check_schema_tag(const json& j) {
    if (!j.is_object()) throw SchemaError("top level: expected an object");
    if (!j.contains("schema") || j["schema"] != kSchema)
        throw SchemaError(std::string("/schema: expected \"") + kSchema + "\"");
}

// ---------------------------------------------------------------------------
// commands

int cmd_qn(int n, bool polarized, bool noncentral, bool scalar, const Globals& g) {
    if (n < 1) throw SchemaError("--n must be at least 1");
    if (static_cast<int>(polarized) + static_cast<int>(noncentral) + static_cast<int>(scalar) > 1)
        throw SchemaError("choose at most one of --polarized, --noncentral, --scalar");
    enforce_caps(n, n + 1, g);
    std::string kind = "ch";
    GenPoly p;
    if (polarized) {
        kind = "polarized";
        p = polarized_ch(n);
    } else if (noncentral) {
        kind = "noncentral";
        p = noncentral_part(n);
    } else if (scalar) {
        kind = "scalar";
        p = central_part(n);
    } else {
        p = ch_poly(n);
    }
    const std::string text = p.str(kind == "ch");
    if (g.output.empty()) {
        std::cout << (text.empty() ? "0" : text) << "\n";
    } else {
        write_json(g.output, {{"schema", kSchema}, {"kind", kind}, {"n", n}, {"arity", p.arity()}, {"genpoly", text}});
    }
    return kOk;
}

int cmd_expand(const Globals& g) {
    const json j = read_json(g.input);
    check_schema_tag(j);
    write_json(g.output, fi_json(fi_from_json(j, g)));
    return kOk;
}

int cmd_check(const Globals& g) {
    const json j = read_json(g.input);
    check_schema_tag(j);
    const FISpec s = fi_from_json(j, g);
    const CheckResult r = check_fi(s);
    if (g.output.empty()) {
        std::cout << (r.holds ? "holds" : "fails") << "\n";
        if (!r.holds) std::cout << "residual: " << r.residual.str() << "\n";
    } else {
        write_json(g.output, {{"schema", kSchema}, {"holds", r.holds}, {"residual", matrix_json(r.residual)}});
    }
    return r.holds ? kOk : kFails;
}

json one_sided_json(const FISpec& s, const OneSidedSolution& sol, const Globals& g) {
    json entries = json::array();
    for (const auto& [key, lam] : sol)
        entries.push_back({{"ell", key.ell}, {"I", key.I}, {"J", key.J}, {"lambda", poly_json(lam)}});
    const auto terms = to_gpi_sum(sol, s.n);
    json gpi = json::array();
    for (const auto& t : terms) {
        json a = json::array();
        for (const auto& m : t.a) a.push_back(rational_matrix_json(m));
        gpi.push_back({{"g", poly_json(t.g)}, {"slots", t.slots}, {"a", a}});
    }
    const auto expanded = expand_gpi_sum(terms, s.n);
    for (int k = 1; k <= s.m; ++k) {
        auto it = expanded.find(k);
        const PolyMatrix e = it == expanded.end() ? PolyMatrix(s.n, s.n) : it->second;
        const PolyMatrix want = std::find(s.K.begin(), s.K.end(), k) != s.K.end() ? s.f(k) : PolyMatrix(s.n, s.n);
        if (!(e == want)) throw InternalMismatch("GPI expansion does not reproduce F_" + std::to_string(k));
    }
    json checks = {{"reconstruction", true}, {"gpi_expansion", true}};
    if (g.oracle) {
        if (!solve_one_sided_oracle(s)) throw InternalMismatch("linear-algebra oracle finds no solution");
        checks["oracle"] = "agrees";
    }
    return {{"schema", kSchema}, {"mode", "left"}, {"n", s.n}, {"m", s.m}, {"K", s.K},
            {"solution", entries}, {"gpi_terms", gpi}, {"checks", checks}};
}

json two_sided_json(const FISpec& s, const TwoSidedDecomposition& d, const Globals& g) {
    const std::string err = verify_decomposition(s, d);
    if (!err.empty()) throw InternalMismatch(err);
    json p = json::array(), lam = json::array(), phi = json::array(), psi = json::array();
    for (const auto& [kl, a] : d.p) p.push_back({{"k", kl.first}, {"l", kl.second}, {"value", matrix_json(a)}});
    for (const auto& [i, v] : d.lambda) lam.push_back({{"i", i}, {"value", poly_json(v)}});
    for (const auto& [k, a] : d.phi) phi.push_back({{"k", k}, {"value", matrix_json(a)}});
    for (const auto& [l, a] : d.psi) psi.push_back({{"l", l}, {"value", matrix_json(a)}});
    json checks = {{"reconstruction", true}};
    if (g.oracle) {
        const auto o = decompose_two_sided_oracle(s);
        if (!o || !verify_decomposition(s, *o).empty()) throw InternalMismatch("linear-algebra oracle disagrees");
        checks["oracle"] = "agrees";
    }
    return {{"schema", kSchema}, {"mode", "two-sided"}, {"n", s.n}, {"m", s.m}, {"K", s.K}, {"L", s.L},
            {"p", p}, {"lambda", lam}, {"phi", phi}, {"psi", psi}, {"checks", checks}};
}

int cmd_solve(const std::string& mode, const Globals& g) {
    const json j = read_json(g.input);
    check_schema_tag(j);
    json out;
    if (mode == "left") {
        const FISpec s = fi_from_json(j, g);
        out = one_sided_json(s, solve_one_sided(s, g.threads), g);
    } else if (mode == "two-sided") {
        const FISpec s = fi_from_json(j, g);
        out = two_sided_json(s, decompose_two_sided(s, g.threads), g);
    } else if (mode == "trace-form") {
        require_keys(j, {"schema", "n", "T", "T_genpoly"}, "");
        const int n = int_from(j.value("n", json()), "/n", 1, VarId::kMaxIJ);
        PolyMatrix T;
        if (j.contains("T") == j.contains("T_genpoly")) throw SchemaError("give exactly one of /T and /T_genpoly");
        if (j.contains("T")) {
            T = matrix_from(j["T"], n, "/T");
        } else {
            if (!j["T_genpoly"].is_string()) throw SchemaError("/T_genpoly: expected a string");
            GenPoly gp;
            try {
                gp = parse_genpoly(j["T_genpoly"].get<std::string>(), 1);
            } catch (const std::invalid_argument& e) {
                throw SchemaError(std::string("/T_genpoly: ") + e.what());
            }
            T = eval(gp, std::vector<PolyMatrix>{generic_matrix(1, n)});
        }
        int r = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) r = std::max(r, T(a, b).degree());
        enforce_caps(n, r + 1, g);
        TraceForm f;
        try {
            f = commuting_trace_form(T, n, g.threads);
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kFails;
        }
        json mu = json::array();
        for (const auto& p : f.mu) mu.push_back(poly_json(p));
        out = {{"schema", kSchema}, {"mode", "trace-form"}, {"n", n}, {"r", f.r}, {"mu", mu},
               {"checks", {{"reconstruction", evaluate_trace_form(f, n) == T}}}};
        if (!(evaluate_trace_form(f, n) == T)) throw InternalMismatch("trace form does not reproduce T");
    } else {
        throw SchemaError("--mode must be left, two-sided or trace-form");
    }
    write_json(g.output, out);
    return kOk;
}

int cmd_groebner(const std::string& rows, int n, int m, bool multilinear_only, std::size_t max_elements,
                 const Globals& g) {
    if (n < 1 || m < 1) throw SchemaError("--n and --m must be positive");
    enforce_caps(n, m, g);
    std::vector<ModuleElement> gens;
    if (rows == "xi") {
        gens = xi_rows(n, m);
    } else if (rows == "generic") {
        for (const auto& d : determinantal_generators(stacked_generic(n, m))) gens.push_back(d.g);
        if (multilinear_only) gens = multilinear_filter(gens);
    } else {
        throw SchemaError("--rows must be xi or generic");
    }
    BuchbergerOptions opt;
    opt.multilinear_only = multilinear_only;
    opt.threads = g.threads;
    opt.max_elements = max_elements;
    GroebnerBasis B;
    try {
        B = buchberger(gens, opt);
    } catch (const ResourceLimit& e) {
        std::cerr << "resource cap: " << e.what() << " (" << gens.size() << " generators)\n";
        return kResource;
    }
    json basis = json::array();
    for (std::size_t i = 0; i < B.elements.size(); ++i) {
        json expr = json::array();
        for (std::size_t k = 0; k < B.expressions[i].size(); ++k)
            if (!B.expressions[i][k].is_zero())
                expr.push_back({{"generator", k}, {"coeff", poly_json(B.expressions[i][k])}});
        basis.push_back({{"element", module_json(B.elements[i])}, {"expression", expr}});
    }
    json out = {{"schema", kSchema}, {"rows", rows}, {"n", n}, {"m", m}, {"multilinear_only", multilinear_only},
                {"generators", gens.size()}, {"added", B.added}, {"basis", basis}};
    if (rows == "xi" && multilinear_only) {
        const auto fam = build_G_families(n, m);
        std::vector<ModuleElement> G;
        for (const auto& e : fam.prime) G.push_back(e.g);
        for (const auto& e : fam.dprime) G.push_back(e.g);
        bool mutual = true;
        for (const auto& e : B.elements) mutual = mutual && normal_form(e, G).remainder.is_zero();
        for (const auto& e : G) mutual = mutual && normal_form(e, B.elements).remainder.is_zero();
        out["matches_G_families"] = mutual;
        if (!mutual) {
            write_json(g.output, out);
            return kInternal;
        }
    }
    write_json(g.output, out);
    return kOk;
}

int cmd_syzygy_gens(const std::string& family, int n, int m, const Globals& g) {
    if (n < 1 || m < 1) throw SchemaError("--n and --m must be positive");
    enforce_caps(n, m, g);
    json items = json::array();
    if (family == "determinantal") {
        for (const auto& d : determinantal_generators(stacked_generic(n, m)))
            items.push_back({{"rows", d.rows}, {"element", module_json(d.g)}});
    } else if (family == "g") {
        const auto fam = build_G_families(n, m);
        for (const auto* part : {&fam.prime, &fam.dprime})
            for (const auto& e : *part)
                items.push_back({{"family", e.prime ? "prime" : "dprime"},
                                 {"index", e.index},
                                 {"groups", e.groups},
                                 {"tuple", e.tuple},
                                 {"element", module_json(e.g)},
                                 {"xi_rows", module_json(e.rows)}});
    } else {
        throw SchemaError("--family must be determinantal or g");
    }
    write_json(g.output, {{"schema", kSchema}, {"family", family}, {"n", n}, {"m", m}, {"generators", items}});
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fident: functional identities on matrix algebras"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--input", g.input, "problem file");
    app.add_option("--output", g.output, "output file (stdout when omitted)");
    app.add_option("--seed", g.seed, "seed for random constructions");
    app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1, 256));
    app.add_flag("--oracle", g.oracle, "cross-check with the linear-algebra oracle");
    app.add_flag("--allow-large", g.allow_large, "lift the n <= 3, m <= 5 cap");

    int qn_n = 0;
    bool polarized = false, noncentral = false, scalar = false;
    auto* qn = app.add_subcommand("qn", "print q_n, Q_n, its noncentral part or its central part");
    qn->add_option("--n", qn_n, "matrix size")->required();
    qn->add_flag("--polarized", polarized, "Q_n");
    qn->add_flag("--noncentral", noncentral, "noncentral part of Q_n");
    qn->add_flag("--scalar", scalar, "central part of Q_n");

    auto* check = app.add_subcommand("check", "verify a functional identity");
    auto* expand = app.add_subcommand("expand", "write a problem, including constructed ones, with explicit coordinates");

    std::string mode;
    auto* solve = app.add_subcommand("solve", "solve and self-verify");
    solve->add_option("--mode", mode, "left | two-sided | trace-form")->required();

    std::string rows;
    int gn = 0, gm = 0;
    bool multilinear_only = false;
    std::size_t max_elements = 0;
    auto* groebner = app.add_subcommand("groebner", "Groebner basis of the Xi rows or of the determinantal generators");
    groebner->add_option("--rows", rows, "xi | generic")->required();
    groebner->add_option("--n", gn, "matrix size")->required();
    groebner->add_option("--m", gm, "number of generic matrices")->required();
    groebner->add_flag("--multilinear-only", multilinear_only, "only multilinear S-pairs");
    groebner->add_option("--max-elements", max_elements, "cap on the basis size (0 = none)");

    std::string family;
    int sn = 0, sm = 0;
    auto* syz = app.add_subcommand("syzygy-gens", "emit syzygy generators");
    syz->add_option("--family", family, "determinantal | g")->required();
    syz->add_option("--n", sn, "matrix size")->required();
    syz->add_option("--m", sm, "number of generic matrices")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*qn) return cmd_qn(qn_n, polarized, noncentral, scalar, g);
        if ((*check || *solve || *expand) && g.input.empty()) throw SchemaError("--input is required");
        if (*check) return cmd_check(g);
        if (*expand) return cmd_expand(g);
        if (*solve) return cmd_solve(mode, g);
        if (*groebner) return cmd_groebner(rows, gn, gm, multilinear_only, max_elements, g);
        if (*syz) return cmd_syzygy_gens(family, sn, sm, g);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const CapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kResource;
    } catch (const ResourceLimit& e) {
        std::cerr << "resource cap: " << e.what() << "\n";
        return kResource;
    } catch (const IdentityFails& e) {
        std::cerr << "identity fails; residual: " << e.residual.str() << "\n";
        return kFails;
    } catch (const NoSolution& e) {
        std::cerr << "no solution: " << e.what() << "\n";
        return kFails;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
