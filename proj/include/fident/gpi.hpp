#pragma once

#include "fident/fispec.hpp"
#include "fident/symmat.hpp"

#include <map>
#include <string>
#include <vector>

namespace fident {

/// c * tr(w_1) ... tr(w_t) * word; slots are 1-based, the empty word is the identity.
struct GenTerm {
    Rational c;
    std::vector<std::vector<int>> traces;
    std::vector<int> word;
};

/// Formal generalized polynomial with trace factors over `arity` argument slots.
///
/// Terms are kept canonical: traces rotated to their lexicographically minimal
/// rotation and sorted, like terms combined, zero terms dropped, and terms ordered by
/// word length (longest first), then traces, then word.
class GenPoly {
public:
    GenPoly() = default;
    explicit GenPoly(int arity) : arity_(arity) {}
    static GenPoly slot(int arity, int s);
    static GenPoly one(int arity);
    static GenPoly from_terms(int arity, std::vector<GenTerm> terms);

    int arity() const { return arity_; }
    const std::vector<GenTerm>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(GenTerm t);
    GenPoly operator+(const GenPoly& o) const;
    GenPoly operator-(const GenPoly& o) const;
    GenPoly operator*(const GenPoly& o) const;
    GenPoly scaled(const Rational& c) const;
    bool operator==(const GenPoly& o) const;

    /// Slot s becomes slot map[s-1] in a polynomial of the given arity.
    GenPoly remap_slots(const std::vector<int>& map, int new_arity) const;
    /// True iff every term uses each slot exactly once.
    bool is_multilinear() const;

    /// Printed with slot names x1, x2, ... (or x when arity is 1 and `single_x`).
    std::string str(bool single_x = false) const;

private:
    int arity_ = 0;
    std::vector<GenTerm> t_;
    void canonicalize();
};

/// Parses the printed form, e.g. "x1*x2 - tr(x1)*x2 + 1/2*tr(x1*x2)". A bare x is slot 1.
GenPoly parse_genpoly(const std::string& s, int arity);

/// q_n(x) with the coefficients expanded into trace products by Newton's identities.
GenPoly ch_poly(int n);
/// Q_n = sum over S_{n+1} of sign * phi_sigma.
GenPoly polarized_ch(int n);
/// Terms of Q_n with a nonempty word (sigma moves n+1).
GenPoly noncentral_part(int n);
/// Terms of Q_n with an empty word.
GenPoly central_part(int n);

/// Argument of an evaluation: a constant matrix, X_k, or a * X_k.
struct MatrixArg {
    enum class Kind { Constant, Generic, Scaled };
    Kind kind = Kind::Generic;
    PolyMatrix a;
    int k = 0;

    static MatrixArg constant(const PolyMatrix& a) { return {Kind::Constant, a, 0}; }
    static MatrixArg generic(int k) { return {Kind::Generic, PolyMatrix{}, k}; }
    static MatrixArg scaled(const PolyMatrix& a, int k) { return {Kind::Scaled, a, k}; }
    PolyMatrix to_matrix(int n) const;
};

PolyMatrix eval(const GenPoly& g, const std::vector<PolyMatrix>& args);
PolyMatrix eval(const GenPoly& g, const std::vector<MatrixArg>& args, int n);

/// Left coordinate form: H_k with g(args) = sum_k H_k X_k, grouping terms by their last
/// letter. Arguments must be generic or scaled generic with distinct indices, and every
/// term must have a nonempty word.
std::map<int, PolyMatrix> coordinate_form(const GenPoly& g, const std::vector<MatrixArg>& args, int n);

/// [Q~_n(a_1 x_1, ..., a_n x_n), a_{n+1} x_{n+1}] as a left-sided FI instance.
FISpec basic_nonstandard_fi(int n, const std::vector<PolyMatrix>& a);

/// [Q~_n(x_1, ..., x_n), x_{n+1}] as a formal generalized polynomial of arity n+1.
GenPoly nonstandard_commutator(int n);

/// Both sides of the determinant form of the Cayley-Hamilton identity for index tuples
/// i, j of length n+1. When {i_1..i_n} = 1..n:
///   lhs = e_{i_{n+1} j_n} X_n Q_{n-1}(e_{i_1 j_1} X_1, ...) e_{i_n j_{n+1}}
///   mid = sign(i_1..i_n) D_{j_1..j_n} e_{i_{n+1} j_{n+1}}
///   rhs = -e_{i_{n+1} j_{n+1}} Q~_n(e_{i_1 j_1} X_1, ..., e_{i_n j_n} X_n)
/// Otherwise only `vanishing` = Q_{n-1}(e_{i_1 j_1} X_1, ...) e_{i_n j_n} is filled.
struct CHDetCheck {
    bool full_index_set = false;
    PolyMatrix lhs, mid, rhs, vanishing;
};
CHDetCheck ch_det_identity(int n, const std::vector<int>& i, const std::vector<int>& j);

/// Formal rank-one reduction of a multilinear g: slot 1 becomes A, the other slots an
/// idempotent E with AE = EA = A, tr(E^k) = 1 and tr of any word containing A is 0.
/// Returns the coefficient of A.
Rational rank_one_reduction(const GenPoly& g);

}  // namespace fident
