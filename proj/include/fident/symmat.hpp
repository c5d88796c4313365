#pragma once

#include "fident/module.hpp"
#include "fident/poly.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fident {

/// Rectangular matrix with Poly entries; indices are 0-based.
class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(int rows, int cols);

    static PolyMatrix identity(int n);
    /// Matrix unit e_{ij} (1-based i, j).
    static PolyMatrix unit(int n, int i, int j);
    static PolyMatrix scalar(int n, const Poly& s);
    static PolyMatrix from_rationals(const std::vector<std::vector<Rational>>& grid);

    int rows() const { return r_; }
    int cols() const { return c_; }
    bool is_square() const { return r_ == c_; }
    Poly& operator()(int i, int j) { return a_[static_cast<std::size_t>(i * c_ + j)]; }
    const Poly& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i * c_ + j)]; }

    bool is_zero() const;
    /// Returns true and sets *s when the matrix is s times the identity.
    bool is_scalar(Poly* s = nullptr) const;
    bool is_constant() const;

    PolyMatrix operator-() const;
    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator-=(const PolyMatrix& o);
    PolyMatrix times(const Poly& s) const;
    PolyMatrix scaled(const Rational& s) const;
    bool operator==(const PolyMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

    Poly trace() const;
    PolyMatrix transpose() const;
    /// Rows and columns given as 0-based index lists.
    PolyMatrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const;
    PolyMatrix substitute(const std::map<std::uint32_t, Poly>& by_id) const;
    PolyMatrix relabel(const std::function<VarId(const VarId&)>& f) const;
    GroupMask groups() const;

    std::string str() const;

private:
    int r_ = 0;
    int c_ = 0;
    std::vector<Poly> a_;
};

/// X_k = (x_{ij}^{(k)}), n x n.
PolyMatrix generic_matrix(int k, int n);

/// Determinant; cofactor expansion up to size 4, fraction-free elimination above.
Poly det(const PolyMatrix& a);
Poly det_cofactor(const PolyMatrix& a);
Poly det_bareiss(const PolyMatrix& a);

/// Bracket [(i_1,j_1),...,(i_n,j_n)]: row l is row j_l of X_{i_l}.
using IndexedRowSpec = std::vector<std::pair<int, int>>;
Poly bracket_det(int n, const IndexedRowSpec& spec);

/// Entry (r, l) is x^{(cols[l].first)}_{row_idx[r], cols[l].second}.
PolyMatrix column_grid(const std::vector<int>& row_idx, const std::vector<std::pair<int, int>>& cols);
/// Entry (l, c) is x^{(rows[l].first)}_{rows[l].second, col_idx[c]}.
PolyMatrix row_grid(const std::vector<std::pair<int, int>>& rows, const std::vector<int>& col_idx);

/// Data for the D^c / D^r / d^c / d^r determinant families.
///
/// K and L are sorted subsets of 1..m with Q = K and L intersected. V and S attach a row
/// (resp. column) index to every element of K (resp. L). sigma maps the listed complement
/// set U^c (its keys) to column indices used by the Q columns of Y; tau maps W^c to row
/// indices used by the Q rows of Z. Empty maps mean the identity on U^c (resp. W^c).
struct DetFamilySpec {
    int n = 0;
    std::vector<int> K, L;
    std::vector<int> V, S;
    std::vector<int> U, W;
    std::map<int, int> sigma, tau;
    int lambda = 1;

    std::vector<int> Q() const;
    /// 1-based positions of Q inside K (d) and inside L (f).
    std::vector<int> d() const;
    std::vector<int> f() const;
    /// Column indices of the Q columns of Y, and row indices of the Q rows of Z.
    std::vector<int> q_cols() const;
    std::vector<int> q_rows() const;
    void validate() const;
};

/// The b x b matrix Y behind D^c_lambda(Q_sigma, L_S \ Q).
PolyMatrix family_Y(const DetFamilySpec& s);
/// The a x a matrix Z behind D^r_lambda(Q_tau, K_V \ Q).
PolyMatrix family_Z(const DetFamilySpec& s);

enum class DetKind {
    Dc,       ///< det Y
    Dr,       ///< det Z
    dc_Q,     ///< Y restricted to the Q columns and the selected row labels
    dc_rest,  ///< Y restricted to the other columns and the selected row labels
    dr_Q,     ///< Z restricted to the Q rows and the selected column labels
    dr_rest,  ///< Z restricted to the other rows and the selected column labels
};

/// Selection lists 1-based row (for dc) or column (for dr) labels; ignored for Dc, Dr.
Poly det_family(const DetFamilySpec& s, DetKind kind, const std::vector<int>& selection = {});

/// X'_k (block diagonal copies of X_k) and X''_k (1 tensor X_k^t), both n^2 x n^2.
std::pair<PolyMatrix, PolyMatrix> kron_blocks(int k, int n);

/// Vertical stack of X'_k for k in K, then X''_l for l in L.
PolyMatrix build_Xi(int n, const std::vector<int>& K, const std::vector<int>& L);

/// Row (gamma-1)n+v of X'_k and row (s-1)n+delta of X''_l as elements of C^{n^2}.
ModuleElement xprime_row(int n, int k, int gamma, int v);
ModuleElement xdprime_row(int n, int l, int s, int delta);

/// Sign of the permutation given as images of the sorted domain.
int perm_sign(const std::vector<int>& domain_sorted, const std::vector<int>& images);

}  // namespace fident
