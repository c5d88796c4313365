#pragma once

#include "fident/symmat.hpp"

#include <map>
#include <vector>

namespace fident {

/// Two-sided functional identity sum_{k in K} F_k X_k = sum_{l in L} X_l G_l on M_n.
///
/// F_k and G_l are coordinate matrices over C in the groups 1..m, multilinear in every
/// group other than their own index.
struct FISpec {
    int n = 0;
    int m = 0;
    std::vector<int> K, L;
    std::map<int, PolyMatrix> F, G;

    std::vector<int> groups() const {
        std::vector<int> g;
        for (int k = 1; k <= m; ++k) g.push_back(k);
        return g;
    }
    /// F_k, or the zero matrix when k is absent.
    PolyMatrix f(int k) const {
        auto it = F.find(k);
        return it == F.end() ? PolyMatrix(n, n) : it->second;
    }
    PolyMatrix g(int l) const {
        auto it = G.find(l);
        return it == G.end() ? PolyMatrix(n, n) : it->second;
    }
};

}  // namespace fident
