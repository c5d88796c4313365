#include "fident/symmat.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fident {

PolyMatrix::PolyMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows * cols)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

PolyMatrix PolyMatrix::identity(int n) { return scalar(n, Poly(1)); }

PolyMatrix PolyMatrix::unit(int n, int i, int j) {
    if (i < 1 || i > n || j < 1 || j > n) throw std::out_of_range("matrix unit index");
    PolyMatrix m(n, n);
    m(i - 1, j - 1) = Poly(1);
    return m;
}

PolyMatrix PolyMatrix::scalar(int n, const Poly& s) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = s;
    return m;
}

PolyMatrix PolyMatrix::from_rationals(const std::vector<std::vector<Rational>>& grid) {
    const int r = static_cast<int>(grid.size());
    const int c = r == 0 ? 0 : static_cast<int>(grid[0].size());
    PolyMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(grid[static_cast<std::size_t>(i)].size()) != c)
            throw std::invalid_argument("ragged rational grid");
        for (int j = 0; j < c; ++j) m(i, j) = Poly(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
    return m;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::is_scalar(Poly* s) const {
    if (!is_square()) return false;
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) {
            if (i == j) {
                if ((*this)(i, i) != (*this)(0, 0)) return false;
            } else if (!(*this)(i, j).is_zero()) {
                return false;
            }
        }
    if (s != nullptr) *s = r_ == 0 ? Poly{} : (*this)(0, 0);
    return true;
}

bool PolyMatrix::is_constant() const {
    return std::all_of(a_.begin(), a_.end(), [](const Poly& p) { return p.is_constant(); });
}

PolyMatrix PolyMatrix::operator-() const {
    PolyMatrix m = *this;
    for (auto& p : m.a_) p = -p;
    return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    PolyMatrix m = *this;
    m += o;
    return m;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    PolyMatrix m = *this;
    m -= o;
    return m;
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (c_ != o.r_) throw std::invalid_argument("matrix shape mismatch");
    PolyMatrix m(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Poly& x = (*this)(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < o.c_; ++j) {
                const Poly& y = o(k, j);
                if (!y.is_zero()) m(i, j) += x * y;
            }
        }
    return m;
}

PolyMatrix PolyMatrix::times(const Poly& s) const {
    PolyMatrix m = *this;
    for (auto& p : m.a_) p = p * s;
    return m;
}

PolyMatrix PolyMatrix::scaled(const Rational& s) const {
    PolyMatrix m = *this;
    for (auto& p : m.a_) p = p.scaled(s);
    return m;
}

Poly PolyMatrix::trace() const {
    if (!is_square()) throw std::invalid_argument("trace of non-square matrix");
    Poly t;
    for (int i = 0; i < r_; ++i) t += (*this)(i, i);
    return t;
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix m(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

PolyMatrix PolyMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    PolyMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            m(static_cast<int>(i), static_cast<int>(j)) = (*this)(rows[i], cols[j]);
    return m;
}

PolyMatrix PolyMatrix::substitute(const std::map<std::uint32_t, Poly>& by_id) const {
    PolyMatrix m = *this;
    for (auto& p : m.a_) p = p.substitute(by_id);
    return m;
}

PolyMatrix PolyMatrix::relabel(const std::function<VarId(const VarId&)>& f) const {
    PolyMatrix m = *this;
    for (auto& p : m.a_) p = p.relabel(f);
    return m;
}

GroupMask PolyMatrix::groups() const {
    GroupMask g = 0;
    for (const auto& p : a_) g |= p.groups();
    return g;
}

std::string PolyMatrix::str() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < r_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < c_; ++j) os << (j ? ", " : "") << (*this)(i, j).str();
        os << ']';
    }
    os << ']';
    return os.str();
}

PolyMatrix generic_matrix(int k, int n) {
    if (k < 1 || k > VarId::kMaxK) throw std::out_of_range("generic matrix index out of range");
    if (n < 1 || n > VarId::kMaxIJ) throw std::out_of_range("generic matrix dimension out of range");
    PolyMatrix m(n, n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) m(i - 1, j - 1) = Poly::var(k, i, j);
    return m;
}

namespace {

Poly cofactor_rec(const PolyMatrix& a, int row, unsigned cols_used) {
    const int n = a.rows();
    if (row == n) return Poly(1);
    Poly out;
    int sign = 1;
    for (int j = 0; j < n; ++j) {
        if (cols_used & (1u << j)) continue;
        const Poly& x = a(row, j);
        if (!x.is_zero()) {
            Poly minor = cofactor_rec(a, row + 1, cols_used | (1u << j));
            if (!minor.is_zero()) {
                if (sign > 0)
                    out += x * minor;
                else
                    out -= x * minor;
            }
        }
        sign = -sign;
    }
    return out;
}

}  // namespace

Poly det_cofactor(const PolyMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
    if (a.rows() > 16) throw std::invalid_argument("cofactor determinant limited to size 16");
    return cofactor_rec(a, 0, 0);
}

Poly det_bareiss(const PolyMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("determinant of non-square matrix");
    const int n = a.rows();
    if (n == 0) return Poly(1);
    PolyMatrix m = a;
    int sign = 1;
    Poly prev(1);
    for (int k = 0; k + 1 < n; ++k) {
        if (m(k, k).is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m(i, k).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Poly{};
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                Poly num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                m(i, j) = divide_exact(num, prev);
            }
            m(i, k) = Poly{};
        }
        prev = m(k, k);
    }
    return sign > 0 ? m(n - 1, n - 1) : -m(n - 1, n - 1);
}

Poly det(const PolyMatrix& a) { return a.rows() <= 4 ? det_cofactor(a) : det_bareiss(a); }

Poly bracket_det(int n, const IndexedRowSpec& spec) {
    if (static_cast<int>(spec.size()) != n) throw std::invalid_argument("bracket length must equal n");
    std::vector<int> cols(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) cols[static_cast<std::size_t>(j)] = j + 1;
    for (const auto& [i, j] : spec)
        if (i < 1 || i > VarId::kMaxK || j < 1 || j > n) throw std::out_of_range("bracket index out of range");
    return det(row_grid(spec, cols));
}

PolyMatrix column_grid(const std::vector<int>& row_idx, const std::vector<std::pair<int, int>>& cols) {
    PolyMatrix m(static_cast<int>(row_idx.size()), static_cast<int>(cols.size()));
    for (std::size_t r = 0; r < row_idx.size(); ++r)
        for (std::size_t l = 0; l < cols.size(); ++l)
            m(static_cast<int>(r), static_cast<int>(l)) = Poly::var(cols[l].first, row_idx[r], cols[l].second);
    return m;
}

PolyMatrix row_grid(const std::vector<std::pair<int, int>>& rows, const std::vector<int>& col_idx) {
    PolyMatrix m(static_cast<int>(rows.size()), static_cast<int>(col_idx.size()));
    for (std::size_t l = 0; l < rows.size(); ++l)
        for (std::size_t c = 0; c < col_idx.size(); ++c)
            m(static_cast<int>(l), static_cast<int>(c)) = Poly::var(rows[l].first, rows[l].second, col_idx[c]);
    return m;
}

int perm_sign(const std::vector<int>& domain_sorted, const std::vector<int>& images) {
    const std::size_t c = domain_sorted.size();
    if (images.size() != c) throw std::invalid_argument("permutation size mismatch");
    std::vector<int> p(c);
    for (std::size_t i = 0; i < c; ++i) {
        auto it = std::find(domain_sorted.begin(), domain_sorted.end(), images[i]);
        if (it == domain_sorted.end()) throw std::invalid_argument("permutation image outside domain");
        p[i] = static_cast<int>(it - domain_sorted.begin());
    }
    int sign = 1;
    std::vector<bool> seen(c, false);
    for (std::size_t i = 0; i < c; ++i) {
        if (seen[i]) continue;
        std::size_t len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = true;
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

namespace {

std::vector<int> complement(const std::vector<int>& sub, int size) {
    std::vector<int> out;
    for (int i = 1; i <= size; ++i)
        if (std::find(sub.begin(), sub.end(), i) == sub.end()) out.push_back(i);
    return out;
}

std::vector<int> apply_map(const std::map<int, int>& perm, const std::vector<int>& fallback) {
    if (perm.empty()) return fallback;
    std::vector<int> out;
    out.reserve(perm.size());
    for (const auto& [from, to] : perm) out.push_back(to);
    return out;
}

bool contains(const std::vector<int>& v, int x) { return std::find(v.begin(), v.end(), x) != v.end(); }

}  // namespace

std::vector<int> DetFamilySpec::Q() const {
    std::vector<int> q;
    std::set_intersection(K.begin(), K.end(), L.begin(), L.end(), std::back_inserter(q));
    return q;
}

std::vector<int> DetFamilySpec::d() const {
    std::vector<int> out;
    for (int q : Q()) out.push_back(static_cast<int>(std::find(K.begin(), K.end(), q) - K.begin()) + 1);
    return out;
}

std::vector<int> DetFamilySpec::f() const {
    std::vector<int> out;
    for (int q : Q()) out.push_back(static_cast<int>(std::find(L.begin(), L.end(), q) - L.begin()) + 1);
    return out;
}

std::vector<int> DetFamilySpec::q_cols() const {
    if (Q().empty()) return {};
    return apply_map(sigma, complement(U, static_cast<int>(K.size())));
}

std::vector<int> DetFamilySpec::q_rows() const {
    if (Q().empty()) return {};
    return apply_map(tau, complement(W, static_cast<int>(L.size())));
}

void DetFamilySpec::validate() const {
    if (n < 1) throw std::invalid_argument("det family: n < 1");
    if (!std::is_sorted(K.begin(), K.end()) || !std::is_sorted(L.begin(), L.end()))
        throw std::invalid_argument("det family: K and L must be sorted");
    if (std::adjacent_find(K.begin(), K.end()) != K.end() || std::adjacent_find(L.begin(), L.end()) != L.end())
        throw std::invalid_argument("det family: K and L must not repeat");
    if (V.size() != K.size() || S.size() != L.size()) throw std::invalid_argument("det family: |V| != |K| or |S| != |L|");
    for (int v : V)
        if (v < 1 || v > n) throw std::invalid_argument("det family: V out of range");
    for (int s : S)
        if (s < 1 || s > n) throw std::invalid_argument("det family: S out of range");
    if (lambda < 1 || lambda > n) throw std::invalid_argument("det family: lambda out of range");
    const std::size_t c = Q().size();
    if (!sigma.empty() && sigma.size() != c) throw std::invalid_argument("det family: sigma size != |Q|");
    if (!tau.empty() && tau.size() != c) throw std::invalid_argument("det family: tau size != |Q|");
    for (const auto* perm : {&sigma, &tau}) {
        std::vector<int> dom, img;
        for (const auto& [a, b] : *perm) {
            dom.push_back(a);
            img.push_back(b);
        }
        std::sort(img.begin(), img.end());
        if (dom != img) throw std::invalid_argument("det family: sigma/tau is not a permutation of its domain");
    }
    if (sigma.empty() && !U.empty() && U.size() + c != K.size()) throw std::invalid_argument("det family: |U| != a - c");
    if (tau.empty() && !W.empty() && W.size() + c != L.size()) throw std::invalid_argument("det family: |W| != b - c");
}

PolyMatrix family_Y(const DetFamilySpec& s) {
    s.validate();
    const int b = static_cast<int>(s.L.size());
    const auto q = s.Q();
    const auto f = s.f();
    const auto qc = s.q_cols();
    if (qc.size() != q.size()) throw std::invalid_argument("det family: cannot determine Q columns");
    std::vector<int> rows;
    for (int i = 1; i < b; ++i) rows.push_back(i);
    if (b > 0) rows.push_back(s.lambda);
    std::vector<std::pair<int, int>> cols;
    for (int l = 1; l <= b; ++l) {
        auto it = std::find(f.begin(), f.end(), l);
        if (it != f.end()) {
            const auto t = static_cast<std::size_t>(it - f.begin());
            cols.emplace_back(q[t], qc[t]);
        } else {
            cols.emplace_back(s.L[static_cast<std::size_t>(l - 1)], s.S[static_cast<std::size_t>(l - 1)]);
        }
    }
    return column_grid(rows, cols);
}

PolyMatrix family_Z(const DetFamilySpec& s) {
    s.validate();
    const int a = static_cast<int>(s.K.size());
    const auto q = s.Q();
    const auto d = s.d();
    const auto qr = s.q_rows();
    if (qr.size() != q.size()) throw std::invalid_argument("det family: cannot determine Q rows");
    std::vector<int> cols;
    for (int j = 1; j < a; ++j) cols.push_back(j);
    if (a > 0) cols.push_back(s.lambda);
    std::vector<std::pair<int, int>> rows;
    for (int l = 1; l <= a; ++l) {
        auto it = std::find(d.begin(), d.end(), l);
        if (it != d.end()) {
            const auto t = static_cast<std::size_t>(it - d.begin());
            rows.emplace_back(q[t], qr[t]);
        } else {
            rows.emplace_back(s.K[static_cast<std::size_t>(l - 1)], s.V[static_cast<std::size_t>(l - 1)]);
        }
    }
    return row_grid(rows, cols);
}

Poly det_family(const DetFamilySpec& s, DetKind kind, const std::vector<int>& selection) {
    auto zero_based = [](const std::vector<int>& labels, int size) {
        std::vector<int> out;
        for (int x : labels) {
            if (x < 1 || x > size) throw std::invalid_argument("det family: selection label out of range");
            out.push_back(x - 1);
        }
        return out;
    };
    const int a = static_cast<int>(s.K.size());
    const int b = static_cast<int>(s.L.size());
    switch (kind) {
    case DetKind::Dc:
        return det(family_Y(s));
    case DetKind::Dr:
        return det(family_Z(s));
    case DetKind::dc_Q:
    case DetKind::dc_rest: {
        const auto f = s.f();
        std::vector<int> cols;
        for (int l = 1; l <= b; ++l)
            if (contains(f, l) == (kind == DetKind::dc_Q)) cols.push_back(l - 1);
        if (selection.size() != cols.size()) throw std::invalid_argument("det family: selection size mismatch");
        return det(family_Y(s).submatrix(zero_based(selection, b), cols));
    }
    case DetKind::dr_Q:
    case DetKind::dr_rest: {
        const auto d = s.d();
        std::vector<int> rows;
        for (int l = 1; l <= a; ++l)
            if (contains(d, l) == (kind == DetKind::dr_Q)) rows.push_back(l - 1);
        if (selection.size() != rows.size()) throw std::invalid_argument("det family: selection size mismatch");
        return det(family_Z(s).submatrix(rows, zero_based(selection, a)));
    }
    }
    throw std::invalid_argument("det family: unknown kind");
}

std::pair<PolyMatrix, PolyMatrix> kron_blocks(int k, int n) {
    const PolyMatrix x = generic_matrix(k, n);
    PolyMatrix xp(n * n, n * n);
    PolyMatrix xpp(n * n, n * n);
    for (int g = 0; g < n; ++g)
        for (int v = 0; v < n; ++v)
            for (int a = 0; a < n; ++a) xp(g * n + v, g * n + a) = x(v, a);
    // Row (s-1)n+delta carries x_{is} at column (i-1)n+delta.
    for (int s = 0; s < n; ++s)
        for (int dl = 0; dl < n; ++dl)
            for (int i = 0; i < n; ++i) xpp(s * n + dl, i * n + dl) = x(i, s);
    return {xp, xpp};
}

PolyMatrix build_Xi(int n, const std::vector<int>& K, const std::vector<int>& L) {
    const int rows = static_cast<int>(K.size() + L.size()) * n * n;
    if (rows == 0) return PolyMatrix(0, 0);
    PolyMatrix xi(rows, n * n);
    int r0 = 0;
    auto place = [&](const PolyMatrix& blk) {
        for (int i = 0; i < n * n; ++i)
            for (int j = 0; j < n * n; ++j) xi(r0 + i, j) = blk(i, j);
        r0 += n * n;
    };
    for (int k : K) place(kron_blocks(k, n).first);
    for (int l : L) place(kron_blocks(l, n).second);
    return xi;
}

ModuleElement xprime_row(int n, int k, int gamma, int v) {
    ModuleElement e(static_cast<std::size_t>(n * n));
    for (int a = 1; a <= n; ++a) e.c[static_cast<std::size_t>(flat_position(n, gamma, a))] = Poly::var(k, v, a);
    return e;
}

ModuleElement xdprime_row(int n, int l, int s, int delta) {
    ModuleElement e(static_cast<std::size_t>(n * n));
    for (int i = 1; i <= n; ++i) e.c[static_cast<std::size_t>(flat_position(n, i, delta))] = Poly::var(l, i, s);
    return e;
}

}  // namespace fident
