#pragma once

#include "fident/poly.hpp"
#include "fident/symmat.hpp"

#include <random>
#include <vector>

namespace fident::testing {

inline Rational small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

/// Random polynomial with up to `terms` terms of degree <= deg in groups 1..m, n x n entries.
inline Poly random_poly(std::mt19937_64& rng, int n, int m, int terms, int deg) {
    std::uniform_int_distribution<int> pick_k(1, m), pick_ij(1, n), pick_deg(0, deg);
    std::vector<Term> ts;
    for (int t = 0; t < terms; ++t) {
        Monomial mono;
        const int d = pick_deg(rng);
        for (int e = 0; e < d; ++e) mono = mono * Monomial::var(VarId{pick_k(rng), pick_ij(rng), pick_ij(rng)});
        ts.push_back(Term{mono, small_rational(rng)});
    }
    return Poly::from_terms(ts);
}

inline PolyMatrix random_rational_matrix(std::mt19937_64& rng, int n) {
    PolyMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Poly(small_rational(rng));
    return a;
}

}  // namespace fident::testing
