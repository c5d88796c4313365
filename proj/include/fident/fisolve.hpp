#pragma once

#include "fident/fispec.hpp"
#include "fident/gpi.hpp"
#include "fident/modgb.hpp"

#include <compare>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fident {

/// The identity does not hold; carries the residual.
struct IdentityFails : std::runtime_error {
    PolyMatrix residual;
    IdentityFails(const std::string& what, PolyMatrix r) : std::runtime_error(what), residual(std::move(r)) {}
};

/// The requested solution shape does not exist for this input.
struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A solver produced output that fails its own reconstruction check.
struct InternalMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

struct CheckResult {
    bool holds = false;
    /// sum F_k X_k - sum X_l G_l.
    PolyMatrix residual;
};

/// Dimensions, index sets and multilinearity of every coordinate; throws std::invalid_argument.
void validate_fi(const FISpec& spec);
CheckResult check_fi(const FISpec& spec);

/// Label of lambda_{ell I J}: I sorted with n+1 elements, J in N_n^{n+1}.
struct OneSidedKey {
    int ell = 0;
    std::vector<int> I, J;
    auto operator<=>(const OneSidedKey&) const = default;
};
using OneSidedSolution = std::map<OneSidedKey, Poly>;

/// Sign-carrying syzygy generator for (I, J): sum_s (-1)^s [.., ^(i_s, j_s), ..] u_{(i_s-1)n+j_s}
/// in C^{mn}, with s 1-based.
ModuleElement one_sided_generator(int n, int m, const std::vector<int>& I, const std::vector<int>& J);

/// F_k = sum (-1)^s lambda_{ell I J} [.., ^(i_s, j_s), ..] e_{ell j_s} over I containing k = i_s.
std::map<int, PolyMatrix> reconstruct_one_sided(const OneSidedSolution& sol, int n, int m);

/// Left-sided identity sum_k F_k X_k = 0 (L empty): each row slice e_{ell ell} H_k is divided by
/// the multilinear determinantal generators. Throws IdentityFails when the identity fails.
OneSidedSolution solve_one_sided(const FISpec& spec, int threads = 1);

/// Same problem by exact linear algebra on the multilinear coefficient space, with unknowns
/// ordered by (ell, I, J, monomial). nullopt when no solution exists.
std::optional<OneSidedSolution> solve_one_sided_oracle(const FISpec& spec);

/// g [Q~_n(a_1 x_{k_1}, ..., a_n x_{k_n}), a_{n+1} x_{k_{n+1}}] with g a scalar coordinate function.
struct GpiTerm {
    Poly g;
    std::vector<int> slots;
    std::vector<PolyMatrix> a;
};

std::vector<GpiTerm> to_gpi_sum(const OneSidedSolution& sol, int n);
/// Left coordinates of the sum, per group index.
std::map<int, PolyMatrix> expand_gpi_sum(const std::vector<GpiTerm>& terms, int n);

/// Standard part p, lambda plus one-sided corrections phi, psi.
struct TwoSidedDecomposition {
    std::map<std::pair<int, int>, PolyMatrix> p;
    std::map<int, Poly> lambda;
    std::map<int, PolyMatrix> phi, psi;
};

/// Checks every defining equation, the one-sided annihilation of phi and psi, and that no
/// component sits outside K, L. Returns an empty string on success, else a description.
std::string verify_decomposition(const FISpec& spec, const TwoSidedDecomposition& d);

/// Pure standard solution by linear algebra (p columns before lambda columns). Requires
/// |K|, |L| <= n. Throws NoSolution when none exists.
TwoSidedDecomposition standard_solve_small(const FISpec& spec);

/// Standard modulo one-sided identities, through the syzygies of the G' and G'' families.
TwoSidedDecomposition decompose_two_sided(const FISpec& spec, int threads = 1);

/// Independent check: solves sum_{k,l} X_l p_kl X_k + sum lambda_i X_i = sum F_k X_k directly.
/// nullopt when that system has no solution or the right-hand side is not matched.
std::optional<TwoSidedDecomposition> decompose_two_sided_oracle(const FISpec& spec);

/// T(x) = sum_i mu_i(x) x^i, with mu_i homogeneous of degree r - i in the entries of X_1.
struct TraceForm {
    int r = 0;
    std::vector<Poly> mu;
};

/// Fully polarized symmetric r-linear map of T: the part of T(x_1 + ... + x_r) multilinear in 1..r.
PolyMatrix polarize(const PolyMatrix& T, int r);
/// Every group renamed to group 1.
PolyMatrix collapse_groups(const PolyMatrix& a);
Poly collapse_groups(const Poly& a);

/// Standard form of a commuting trace T (entries homogeneous of degree r in X_1).
TraceForm commuting_trace_form(const PolyMatrix& T, int n, int threads = 1);
PolyMatrix evaluate_trace_form(const TraceForm& f, int n);

/// S_k with T_k = det(X) S_k, where T_k is F_k with all arguments equal.
PolyMatrix det_trace_extract(const OneSidedSolution& sol, int k, int m, int n);

/// sum_{k<=n} F_k X_k + F X_{n+1} = 0 with F = -(1/n!) Q~_n, whose trace is det(x) * 1.
FISpec determinant_fi(int n);

/// F_1, ..., F_n completing sum F_k X_k + F X_{n+1} = 0 for a given F, by linear algebra.
std::optional<FISpec> complete_left_sided(int n, const PolyMatrix& F);

/// Random multilinear polynomial in exactly the given groups with up to `terms` terms.
Poly random_multilinear(std::mt19937_64& rng, const std::vector<int>& groups, int n, int terms = 2);
/// Random lambda values on up to `keys` labels with I inside K.
OneSidedSolution random_one_sided_solution(std::mt19937_64& rng, int n, int m, const std::vector<int>& K, int keys = 3);
/// x^{(k)}_{ij} -> x^{(k)}_{ji} in every entry, then the transpose. Maps left-sided identities to
/// right-sided ones.
PolyMatrix transpose_relabel(const PolyMatrix& a);
/// Random standard solution plus random left- and right-sided parts; the identity holds.
FISpec random_two_sided(std::mt19937_64& rng, int n, int m, const std::vector<int>& K, const std::vector<int>& L);

}  // namespace fident
