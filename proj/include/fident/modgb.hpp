#pragma once

#include "fident/module.hpp"
#include "fident/symmat.hpp"

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fident {

/// Thrown when a computation exceeds a caller-imposed size cap.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Syzygy generator of the rows of Y for one chain of c+1 rows (0-based, increasing).
struct DeterminantalGenerator {
    std::vector<int> rows;
    ModuleElement g;
};

/// sum_l (-1)^l [j_0, .., ^j_l, .., j_c] u_{j_l} over all chains of c+1 rows of an r x c
/// matrix Y with r > c. Each output satisfies g * Y = 0.
std::vector<DeterminantalGenerator> determinantal_generators(const PolyMatrix& Y);

/// X_{n,m}: the mn x n stack of X_1, ..., X_m; row (k-1)n + j - 1 is row j of X_k.
PolyMatrix stacked_generic(int n, int m);

/// sum_r v[r] * Y(r, .) as a row vector.
std::vector<Poly> row_combination(const ModuleElement& v, const PolyMatrix& Y);

struct DivisionResult {
    ModuleElement remainder;
    std::vector<Poly> quotients;
};

/// Division under the position-first order: v = sum q_i g_i + remainder, where no term of
/// the remainder is divisible by a leading term and init(q_i g_i) <= init(v).
DivisionResult normal_form(const ModuleElement& v, const std::vector<ModuleElement>& basis);

/// Groebner basis with each element written over the input generators.
struct GroebnerBasis {
    std::vector<ModuleElement> elements;
    /// expressions[i][g]: coefficient of generator g in elements[i].
    std::vector<std::vector<Poly>> expressions;
    /// Group support of each element, recorded on insertion.
    std::vector<GroupMask> support;
    std::size_t rank = 0;
    std::size_t num_generators = 0;
    /// Count of elements added beyond the input generators.
    std::size_t added = 0;

    /// sum_g expressions[i][g] * gens[g].
    ModuleElement expand(std::size_t i, const std::vector<ModuleElement>& gens) const;
};

struct BuchbergerOptions {
    /// Only S-pairs whose leading-term lcm is multilinear are formed; inputs must be
    /// multilinear.
    bool multilinear_only = false;
    int threads = 1;
    /// S-pairs reduced against one snapshot of the basis. Fixed so results do not depend
    /// on the thread count.
    std::size_t batch = 32;
    /// 0 means unlimited; exceeding it throws ResourceLimit.
    std::size_t max_elements = 0;
};

/// Completes gens (zero entries are dropped) with the normal selection strategy.
GroebnerBasis buchberger(const std::vector<ModuleElement>& gens, const BuchbergerOptions& opt = {});

/// True iff every S-pair (restricted to multilinear ones when asked) reduces to zero.
bool satisfies_buchberger_criterion(const std::vector<ModuleElement>& basis, bool multilinear_only = false);

/// tau_ij = c_i m_ji u_i - c_j m_ij u_j - sum h_l u_l, with c_i, c_j the inverse leading
/// coefficients so that the leading terms of sigma_ij cancel.
struct SchreyerSyzygy {
    std::size_t i = 0, j = 0;
    Monomial m_ji, m_ij;
    Rational c_i, c_j;
    std::vector<Poly> h;
    /// Leading term of sigma_ij; pos is -1 when sigma_ij is zero.
    int init_pos = -1;
    Monomial init_mono;

    /// Coefficients of tau_ij over the t basis elements.
    std::vector<Poly> tau(std::size_t t) const;
};

/// One syzygy per pair of elements whose leading terms share a position. Throws
/// std::logic_error if some sigma_ij does not reduce to zero.
std::vector<SchreyerSyzygy> schreyer_syzygies(const std::vector<ModuleElement>& basis, bool multilinear_only = false);

/// init(sigma_ij) >= init(h_l g_l) for every l.
bool init_dominant(const SchreyerSyzygy& s, const std::vector<ModuleElement>& basis);

/// Element of G' (prime) or G'' with its expression over the rows of Xi for K = L = 1..m.
struct GFamilyElement {
    bool prime = true;
    int index = 0;               ///< gamma for G', delta for G''
    std::vector<int> groups;     ///< K or L
    std::vector<int> tuple;      ///< V or S
    ModuleElement g;             ///< in C^{n^2}
    ModuleElement rows;          ///< coefficients over the 2mn^2 rows of Xi
};

struct GFamilies {
    std::vector<GFamilyElement> prime, dprime;
};

/// Enumerates G' and G'' for all nonempty K, L with at most n elements and all tuples
/// V in N_n^|K|, S in N_n^|L|; zero elements are skipped.
GFamilies build_G_families(int n, int m);

/// Row index inside Xi (K = L = 1..m) of row (gamma-1)n+v of X'_k and row (s-1)n+delta of X''_l.
std::size_t xi_row_prime(int n, int k, int gamma, int v);
std::size_t xi_row_dprime(int n, int m, int l, int s, int delta);

/// Rows of Xi for K = L = 1..m as elements of C^{n^2}.
std::vector<ModuleElement> xi_rows(int n, int m);
/// Rows of X'_k for k in K followed by X''_l for l in L.
std::vector<ModuleElement> xi_rows(int n, const std::vector<int>& K, const std::vector<int>& L);

/// Elements whose every component is multilinear in one common group set.
std::vector<ModuleElement> multilinear_filter(const std::vector<ModuleElement>& v);

enum class LaplaceVariant {
    /// sum_{sigma in Sym U_alpha} sign d^c_{beta,W}(Q_sigma) vs the tau sum; U and W of the
    /// spec are the c-element sets.
    Symmetrized,
    /// The two Laplace-expanded sums over U, W of size a-c, b-c.
    Full,
};

/// Both sides of the polarized Laplace identity for the given spec.
std::pair<Poly, Poly> polarized_laplace_check(const DetFamilySpec& spec, int alpha, int beta,
                                              LaplaceVariant variant = LaplaceVariant::Full);

/// All permutations of a sorted set, each as its image list, with its sign.
std::vector<std::pair<std::vector<int>, int>> signed_permutations(const std::vector<int>& set);

}  // namespace fident
