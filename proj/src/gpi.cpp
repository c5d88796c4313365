#include "fident/gpi.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fident {

namespace {

std::vector<int> min_rotation(const std::vector<int>& w) {
    std::vector<int> best = w;
    std::vector<int> r = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        if (r < best) best = r;
    }
    return best;
}

bool term_less(const GenTerm& a, const GenTerm& b) {
    if (a.word.size() != b.word.size()) return a.word.size() > b.word.size();
    if (a.traces != b.traces) return a.traces < b.traces;
    return a.word < b.word;
}

bool same_shape(const GenTerm& a, const GenTerm& b) { return a.traces == b.traces && a.word == b.word; }

}  // namespace

GenPoly GenPoly::slot(int arity, int s) {
    if (s < 1 || s > arity) throw std::out_of_range("slot out of range");
    GenPoly g(arity);
    g.t_.push_back(GenTerm{Rational(1), {}, {s}});
    return g;
}

GenPoly GenPoly::one(int arity) {
    GenPoly g(arity);
    g.t_.push_back(GenTerm{Rational(1), {}, {}});
    return g;
}

void GenPoly::canonicalize() {
    for (auto& t : t_) {
        for (auto& tr : t.traces) tr = min_rotation(tr);
        std::sort(t.traces.begin(), t.traces.end());
    }
    std::sort(t_.begin(), t_.end(), term_less);
    std::vector<GenTerm> out;
    for (auto& t : t_) {
        if (!out.empty() && same_shape(out.back(), t))
            out.back().c += t.c;
        else
            out.push_back(std::move(t));
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const GenTerm& t) { return t.c == 0; }), out.end());
    t_ = std::move(out);
}

GenPoly GenPoly::from_terms(int arity, std::vector<GenTerm> terms) {
    GenPoly g(arity);
    for (auto& t : terms) {
        for (const auto& tr : t.traces) {
            if (tr.empty()) throw std::invalid_argument("empty trace factor");
            for (int s : tr)
                if (s < 1 || s > arity) throw std::out_of_range("slot out of range");
        }
        for (int s : t.word)
            if (s < 1 || s > arity) throw std::out_of_range("slot out of range");
    }
    g.t_ = std::move(terms);
    g.canonicalize();
    return g;
}

void GenPoly::add_term(GenTerm t) {
    for (const auto& tr : t.traces) {
        if (tr.empty()) throw std::invalid_argument("empty trace factor");
        for (int s : tr)
            if (s < 1 || s > arity_) throw std::out_of_range("slot out of range");
    }
    for (int s : t.word)
        if (s < 1 || s > arity_) throw std::out_of_range("slot out of range");
    t_.push_back(std::move(t));
    canonicalize();
}

GenPoly GenPoly::operator+(const GenPoly& o) const {
    if (o.arity_ != arity_) throw std::invalid_argument("arity mismatch");
    GenPoly r = *this;
    r.t_.insert(r.t_.end(), o.t_.begin(), o.t_.end());
    r.canonicalize();
    return r;
}

GenPoly GenPoly::operator-(const GenPoly& o) const { return *this + o.scaled(Rational(-1)); }

GenPoly GenPoly::operator*(const GenPoly& o) const {
    if (o.arity_ != arity_) throw std::invalid_argument("arity mismatch");
    GenPoly r(arity_);
    for (const auto& a : t_)
        for (const auto& b : o.t_) {
            GenTerm t{a.c * b.c, a.traces, a.word};
            t.traces.insert(t.traces.end(), b.traces.begin(), b.traces.end());
            t.word.insert(t.word.end(), b.word.begin(), b.word.end());
            r.t_.push_back(std::move(t));
        }
    r.canonicalize();
    return r;
}

GenPoly GenPoly::scaled(const Rational& c) const {
    GenPoly r = *this;
    for (auto& t : r.t_) t.c *= c;
    r.canonicalize();
    return r;
}

bool GenPoly::operator==(const GenPoly& o) const {
    if (arity_ != o.arity_ || t_.size() != o.t_.size()) return false;
    for (std::size_t i = 0; i < t_.size(); ++i)
        if (t_[i].c != o.t_[i].c || !same_shape(t_[i], o.t_[i])) return false;
    return true;
}

GenPoly GenPoly::remap_slots(const std::vector<int>& map, int new_arity) const {
    if (static_cast<int>(map.size()) != arity_) throw std::invalid_argument("slot map size mismatch");
    GenPoly r(new_arity);
    auto f = [&](int s) {
        const int t = map[static_cast<std::size_t>(s - 1)];
        if (t < 1 || t > new_arity) throw std::out_of_range("slot map target out of range");
        return t;
    };
    for (const auto& t : t_) {
        GenTerm u{t.c, t.traces, t.word};
        for (auto& tr : u.traces) std::transform(tr.begin(), tr.end(), tr.begin(), f);
        std::transform(u.word.begin(), u.word.end(), u.word.begin(), f);
        r.t_.push_back(std::move(u));
    }
    r.canonicalize();
    return r;
}

bool GenPoly::is_multilinear() const {
    for (const auto& t : t_) {
        std::vector<int> cnt(static_cast<std::size_t>(arity_) + 1, 0);
        for (const auto& tr : t.traces)
            for (int s : tr) ++cnt[static_cast<std::size_t>(s)];
        for (int s : t.word) ++cnt[static_cast<std::size_t>(s)];
        for (int s = 1; s <= arity_; ++s)
            if (cnt[static_cast<std::size_t>(s)] != 1) return false;
    }
    return true;
}

std::string GenPoly::str(bool single_x) const {
    if (t_.empty()) return "0";
    auto name = [&](int s) { return (single_x && arity_ == 1) ? std::string("x") : "x" + std::to_string(s); };
    auto word_str = [&](const std::vector<int>& w) {
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "*" : "") + name(w[i]);
        return out;
    };
    std::ostringstream os;
    bool first = true;
    for (const auto& t : t_) {
        Rational c = t.c;
        if (first) {
            if (c < 0) os << '-';
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (c < 0) c = -c;
        std::vector<std::string> factors;
        for (const auto& tr : t.traces) factors.push_back("tr(" + word_str(tr) + ")");
        if (!t.word.empty()) factors.push_back(word_str(t.word));
        if (c != 1 || factors.empty()) factors.insert(factors.begin(), c.get_str());
        for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? "*" : "") << factors[i];
    }
    return os.str();
}

namespace {

class GenParser {
public:
    GenParser(const std::string& s, int arity) : s_(s), arity_(arity) {}

    GenPoly parse() {
        GenPoly g(arity_);
        skip();
        bool first = true;
        while (pos_ < s_.size()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected + or -");
            }
            GenTerm t = term();
            t.c *= sign;
            g.add_term(std::move(t));
            first = false;
            skip();
        }
        if (first) fail("empty expression");
        return g;
    }

private:
    const std::string& s_;
    int arity_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("generalized polynomial parse error at " + std::to_string(pos_) + ": " + what);
    }
    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool factor_start() const {
        const char c = peek();
        return c == 'x' || c == 't' || std::isdigit(static_cast<unsigned char>(c));
    }

    int slot() {
        if (peek() != 'x') fail("expected slot");
        ++pos_;
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        const int s = start == pos_ ? 1 : std::stoi(s_.substr(start, pos_ - start));
        if (s < 1 || s > arity_) fail("slot out of range");
        return s;
    }

    GenTerm term() {
        GenTerm t{Rational(1), {}, {}};
        bool any = false;
        while (true) {
            skip();
            if (!factor_start()) break;
            any = true;
            const char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t start = pos_;
                while (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '/') ++pos_;
                t.c *= parse_rational(s_.substr(start, pos_ - start));
            } else if (c == 't') {
                if (s_.compare(pos_, 3, "tr(") != 0) fail("expected tr(");
                pos_ += 3;
                std::vector<int> w;
                while (true) {
                    skip();
                    w.push_back(slot());
                    skip();
                    if (peek() == '*') {
                        ++pos_;
                        continue;
                    }
                    if (peek() == ')') break;
                    if (peek() != 'x') fail("expected ) in trace");
                }
                ++pos_;
                t.traces.push_back(std::move(w));
            } else {
                t.word.push_back(slot());
            }
            skip();
            if (peek() == '*') ++pos_;
        }
        if (!any) fail("expected factor");
        return t;
    }
};

// Power-sum monomials: sorted exponent lists of tr(x^j) factors.
using PowerSums = std::map<std::vector<int>, Rational>;

}  // namespace

GenPoly parse_genpoly(const std::string& s, int arity) { return GenParser(s, arity).parse(); }

GenPoly ch_poly(int n) {
    if (n < 1) throw std::invalid_argument("ch_poly: n must be at least 1");
    // Newton: i e_i = sum_{j=1}^i (-1)^{j-1} e_{i-j} p_j.
    std::vector<PowerSums> e(static_cast<std::size_t>(n) + 1);
    e[0][{}] = 1;
    for (int i = 1; i <= n; ++i) {
        PowerSums acc;
        for (int j = 1; j <= i; ++j) {
            const Rational sign = (j % 2 == 1) ? 1 : -1;
            for (const auto& [key, c] : e[static_cast<std::size_t>(i - j)]) {
                auto k = key;
                k.push_back(j);
                std::sort(k.begin(), k.end());
                acc[k] += sign * c / i;
            }
        }
        for (auto it = acc.begin(); it != acc.end();) it = it->second == 0 ? acc.erase(it) : std::next(it);
        e[static_cast<std::size_t>(i)] = std::move(acc);
    }
    GenPoly q(1);
    for (int i = 0; i <= n; ++i) {
        const Rational tau_sign = (i % 2 == 0) ? 1 : -1;
        for (const auto& [key, c] : e[static_cast<std::size_t>(i)]) {
            GenTerm t{tau_sign * c, {}, std::vector<int>(static_cast<std::size_t>(n - i), 1)};
            for (int j : key) t.traces.push_back(std::vector<int>(static_cast<std::size_t>(j), 1));
            q.add_term(std::move(t));
        }
    }
    return q;
}

GenPoly polarized_ch(int n) {
    if (n < 1) throw std::invalid_argument("polarized_ch: n must be at least 1");
    const int N = n + 1;
    std::vector<int> perm(static_cast<std::size_t>(N));
    std::iota(perm.begin(), perm.end(), 1);  // perm[i-1] = sigma(i)
    std::vector<GenTerm> terms;
    do {
        std::vector<bool> seen(static_cast<std::size_t>(N) + 1, false);
        GenTerm t{Rational(1), {}, {}};
        int cycles = 0;
        // Last cycle (s_1, ..., s_k, n+1): s_1 = sigma(n+1).
        for (int s = perm[static_cast<std::size_t>(N - 1)]; s != N; s = perm[static_cast<std::size_t>(s - 1)]) {
            t.word.push_back(s);
            seen[static_cast<std::size_t>(s)] = true;
        }
        seen[static_cast<std::size_t>(N)] = true;
        ++cycles;
        for (int i = 1; i <= n; ++i) {
            if (seen[static_cast<std::size_t>(i)]) continue;
            std::vector<int> cyc;
            for (int s = i; !seen[static_cast<std::size_t>(s)]; s = perm[static_cast<std::size_t>(s - 1)]) {
                cyc.push_back(s);
                seen[static_cast<std::size_t>(s)] = true;
            }
            t.traces.push_back(std::move(cyc));
            ++cycles;
        }
        t.c = ((N - cycles) % 2 == 0) ? 1 : -1;
        terms.push_back(std::move(t));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return GenPoly::from_terms(n, std::move(terms));
}

GenPoly noncentral_part(int n) {
    std::vector<GenTerm> keep;
    const GenPoly q = polarized_ch(n);
    for (const auto& t : q.terms())
        if (!t.word.empty()) keep.push_back(t);
    return GenPoly::from_terms(n, std::move(keep));
}

GenPoly central_part(int n) {
    std::vector<GenTerm> keep;
    const GenPoly q = polarized_ch(n);
    for (const auto& t : q.terms())
        if (t.word.empty()) keep.push_back(t);
    return GenPoly::from_terms(n, std::move(keep));
}

PolyMatrix MatrixArg::to_matrix(int n) const {
    switch (kind) {
    case Kind::Constant:
        if (a.rows() != n || a.cols() != n) throw std::invalid_argument("constant argument has wrong dimension");
        return a;
    case Kind::Generic:
        return generic_matrix(k, n);
    case Kind::Scaled:
        if (a.rows() != n || a.cols() != n) throw std::invalid_argument("constant factor has wrong dimension");
        return a * generic_matrix(k, n);
    }
    throw std::invalid_argument("unknown argument kind");
}

namespace {

class WordCache {
public:
    explicit WordCache(const std::vector<PolyMatrix>& args) : args_(args) {}

    const PolyMatrix& product(const std::vector<int>& w) {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        PolyMatrix p;
        if (w.empty()) {
            p = PolyMatrix::identity(args_.empty() ? 0 : args_[0].rows());
        } else if (w.size() == 1) {
            p = args_[static_cast<std::size_t>(w[0] - 1)];
        } else {
            std::vector<int> prefix(w.begin(), w.end() - 1);
            p = product(prefix) * args_[static_cast<std::size_t>(w.back() - 1)];
        }
        return memo_.emplace(w, std::move(p)).first->second;
    }

    Poly trace_product(const std::vector<std::vector<int>>& traces) {
        Poly s(1);
        for (const auto& tr : traces) s *= product(tr).trace();
        return s;
    }

private:
    const std::vector<PolyMatrix>& args_;
    std::map<std::vector<int>, PolyMatrix> memo_;
};

}  // namespace

PolyMatrix eval(const GenPoly& g, const std::vector<PolyMatrix>& args) {
    if (static_cast<int>(args.size()) != g.arity()) throw std::invalid_argument("eval: arity mismatch");
    if (args.empty()) throw std::invalid_argument("eval: no arguments");
    const int n = args[0].rows();
    for (const auto& a : args)
        if (a.rows() != n || a.cols() != n) throw std::invalid_argument("eval: dimension mismatch");
    WordCache cache(args);
    PolyMatrix out(n, n);
    for (const auto& t : g.terms()) {
        Poly s = cache.trace_product(t.traces);
        if (s.is_zero()) continue;
        out += cache.product(t.word).times(s.scaled(t.c));
    }
    return out;
}

PolyMatrix eval(const GenPoly& g, const std::vector<MatrixArg>& args, int n) {
    std::vector<PolyMatrix> mats;
    mats.reserve(args.size());
    for (const auto& a : args) mats.push_back(a.to_matrix(n));
    return eval(g, mats);
}

std::map<int, PolyMatrix> coordinate_form(const GenPoly& g, const std::vector<MatrixArg>& args, int n) {
    if (static_cast<int>(args.size()) != g.arity()) throw std::invalid_argument("coordinate_form: arity mismatch");
    if (!g.is_multilinear()) throw std::invalid_argument("coordinate_form: input is not multilinear");
    std::vector<int> seen;
    for (const auto& a : args) {
        if (a.kind == MatrixArg::Kind::Constant)
            throw std::invalid_argument("coordinate_form: arguments must involve a generic matrix");
        if (std::find(seen.begin(), seen.end(), a.k) != seen.end())
            throw std::invalid_argument("coordinate_form: generic matrices must be distinct");
        seen.push_back(a.k);
    }
    std::vector<PolyMatrix> mats;
    for (const auto& a : args) mats.push_back(a.to_matrix(n));
    WordCache cache(mats);
    std::map<int, PolyMatrix> H;
    for (const auto& a : args) H.emplace(a.k, PolyMatrix(n, n));
    for (const auto& t : g.terms()) {
        if (t.word.empty()) throw std::invalid_argument("coordinate_form: term without a matrix word");
        const Poly s = cache.trace_product(t.traces).scaled(t.c);
        if (s.is_zero()) continue;
        const auto& last = args[static_cast<std::size_t>(t.word.back() - 1)];
        PolyMatrix p = cache.product(std::vector<int>(t.word.begin(), t.word.end() - 1));
        if (last.kind == MatrixArg::Kind::Scaled) p = p * last.a;
        H[last.k] += p.times(s);
    }
    return H;
}

GenPoly nonstandard_commutator(int n) {
    std::vector<int> id(static_cast<std::size_t>(n));
    std::iota(id.begin(), id.end(), 1);
    const GenPoly qt = noncentral_part(n).remap_slots(id, n + 1);
    const GenPoly x = GenPoly::slot(n + 1, n + 1);
    return qt * x - x * qt;
}

FISpec basic_nonstandard_fi(int n, const std::vector<PolyMatrix>& a) {
    if (static_cast<int>(a.size()) != n + 1) throw std::invalid_argument("basic_nonstandard_fi: need n+1 constants");
    std::vector<MatrixArg> args;
    for (int i = 1; i <= n + 1; ++i) {
        const auto& ai = a[static_cast<std::size_t>(i - 1)];
        if (ai.rows() != n || ai.cols() != n || !ai.is_constant())
            throw std::invalid_argument("basic_nonstandard_fi: constants must be rational n x n matrices");
        args.push_back(MatrixArg::scaled(ai, i));
    }
    FISpec spec;
    spec.n = n;
    spec.m = n + 1;
    for (int k = 1; k <= n + 1; ++k) spec.K.push_back(k);
    spec.F = coordinate_form(nonstandard_commutator(n), args, n);
    return spec;
}

Rational rank_one_reduction(const GenPoly& g) {
    if (!g.is_multilinear()) throw std::invalid_argument("rank_one_reduction: input is not multilinear");
    Rational a(0);
    for (const auto& t : g.terms()) {
        bool in_trace = false;
        for (const auto& tr : t.traces)
            if (std::find(tr.begin(), tr.end(), 1) != tr.end()) in_trace = true;
        if (!in_trace) a += t.c;
    }
    return a;
}

CHDetCheck ch_det_identity(int n, const std::vector<int>& i, const std::vector<int>& j) {
    if (n < 1) throw std::invalid_argument("ch_det_identity: n must be at least 1");
    if (static_cast<int>(i.size()) != n + 1 || static_cast<int>(j.size()) != n + 1)
        throw std::invalid_argument("ch_det_identity: index tuples must have length n+1");
    auto I = [&](int l) { return i[static_cast<std::size_t>(l - 1)]; };
    auto J = [&](int l) { return j[static_cast<std::size_t>(l - 1)]; };
    auto e = [&](int a, int b) { return PolyMatrix::unit(n, a, b); };
    // Q_{n-1}(e_{i_1 j_1} X_1, ..., e_{i_{n-1} j_{n-1}} X_{n-1}); Q_0 is the identity.
    PolyMatrix q_prev = PolyMatrix::identity(n);
    if (n >= 2) {
        std::vector<MatrixArg> args;
        for (int l = 1; l < n; ++l) args.push_back(MatrixArg::scaled(e(I(l), J(l)), l));
        q_prev = eval(polarized_ch(n - 1), args, n);
    }
    CHDetCheck out;
    std::vector<int> head(i.begin(), i.end() - 1);
    std::vector<int> sorted = head;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> full(static_cast<std::size_t>(n));
    std::iota(full.begin(), full.end(), 1);
    out.full_index_set = sorted == full;
    if (!out.full_index_set) {
        out.vanishing = q_prev * e(I(n), J(n));
        return out;
    }
    out.lhs = e(I(n + 1), J(n)) * generic_matrix(n, n) * q_prev * e(I(n), J(n + 1));
    IndexedRowSpec rows;
    for (int l = 1; l <= n; ++l) rows.emplace_back(l, J(l));
    const Poly d = bracket_det(n, rows);
    const int sign = perm_sign(full, head);
    out.mid = e(I(n + 1), J(n + 1)).times(sign > 0 ? d : -d);
    std::vector<MatrixArg> args;
    for (int l = 1; l <= n; ++l) args.push_back(MatrixArg::scaled(e(I(l), J(l)), l));
    out.rhs = -(e(I(n + 1), J(n + 1)) * eval(noncentral_part(n), args, n));
    return out;
}

}  // namespace fident
