#include "doctest.h"
#include "helpers.hpp"

#include "fident/symmat.hpp"

using namespace fident;

namespace {

Poly x(int k, int i, int j) { return Poly::var(k, i, j); }

// Sum over U of Laplace terms along the Q columns of Y, as in the column expansion.
Poly laplace_by_q_columns(const DetFamilySpec& s) {
    const int b = static_cast<int>(s.L.size());
    const auto f = s.f();
    const int c = static_cast<int>(f.size());
    int sign_f = 0;
    for (int v : f) sign_f += v;
    Poly total;
    for (unsigned mask = 0; mask < (1u << b); ++mask) {
        std::vector<int> wc, w;
        for (int r = 1; r <= b; ++r) ((mask >> (r - 1)) & 1u ? wc : w).push_back(r);
        if (static_cast<int>(wc.size()) != c) continue;
        int sign = sign_f;
        for (int v : wc) sign += v;
        Poly term = det_family(s, DetKind::dc_rest, w) * det_family(s, DetKind::dc_Q, wc);
        total += sign % 2 == 0 ? term : -term;
    }
    return total;
}

DetFamilySpec worked_example() {
    DetFamilySpec s;
    s.n = 4;
    s.K = {1, 2, 3};
    s.L = {2, 3, 4, 5};
    s.V = {4, 1, 2};
    s.S = {3, 4, 2, 1};
    s.U = {2};
    s.W = {1, 3};
    s.tau = {{2, 4}, {4, 2}};
    s.lambda = 4;
    return s;
}

}  // namespace

TEST_CASE("generic_matrix") {
    const PolyMatrix a = generic_matrix(1, 2);
    CHECK(a(0, 1) == x(1, 1, 2));
    CHECK(a(1, 0) == x(1, 2, 1));
    CHECK(generic_matrix(2, 1)(0, 0) == x(2, 1, 1));
    CHECK_THROWS(generic_matrix(0, 2));
}

TEST_CASE("det examples") {
    CHECK(det(PolyMatrix(0, 0)) == Poly(1));
    PolyMatrix a(2, 2);
    a(0, 0) = x(1, 1, 1);
    a(0, 1) = x(1, 1, 2);
    a(1, 0) = x(2, 1, 1);
    a(1, 1) = x(2, 1, 2);
    CHECK(det(a) == x(1, 1, 1) * x(2, 1, 2) - x(1, 1, 2) * x(2, 1, 1));
    CHECK(det(PolyMatrix::identity(3)) == Poly(1));
    CHECK_THROWS(det(PolyMatrix(2, 3)));
}

TEST_CASE("cofactor and Bareiss agree") {
    for (int n = 1; n <= 4; ++n) CHECK(det_cofactor(generic_matrix(1, n)) == det_bareiss(generic_matrix(1, n)));
    PolyMatrix mixed = generic_matrix(1, 3) + generic_matrix(2, 3).scaled(2);
    CHECK(det_cofactor(mixed) == det_bareiss(mixed));
    PolyMatrix sparse(4, 4);
    sparse(0, 1) = x(1, 1, 1);
    sparse(1, 0) = x(1, 2, 2);
    sparse(2, 3) = Poly(1);
    sparse(3, 2) = x(2, 1, 1);
    CHECK(det_cofactor(sparse) == det_bareiss(sparse));
}

TEST_CASE("det multilinearity and antisymmetry in rows") {
    for (int n = 2; n <= 3; ++n) {
        PolyMatrix a = generic_matrix(1, n);
        PolyMatrix b = a, c = a, sw = a;
        for (int j = 0; j < n; ++j) {
            b(0, j) = x(2, 1, j + 1);
            c(0, j) = a(0, j) + b(0, j).scaled(3);
            std::swap(sw(0, j), sw(1, j));
        }
        CHECK(det(c) == det(a) + det(b).scaled(3));
        CHECK(det(sw) == -det(a));
    }
}

TEST_CASE("det is multiplicative on random rational matrices") {
    std::mt19937_64 rng(11);
    for (int n = 1; n <= 3; ++n)
        for (int t = 0; t < 10; ++t) {
            const auto a = testing::random_rational_matrix(rng, n);
            const auto b = testing::random_rational_matrix(rng, n);
            CHECK(det(a * b) == det(a) * det(b));
        }
}

TEST_CASE("bracket_det") {
    const Poly p = x(1, 1, 1) * x(2, 1, 2) - x(1, 1, 2) * x(2, 1, 1);
    CHECK(bracket_det(2, {{1, 1}, {2, 1}}) == p);
    CHECK(bracket_det(2, {{1, 1}, {1, 1}}).is_zero());
    CHECK(bracket_det(2, {{2, 1}, {1, 1}}) == -p);
    // D_{j_1 j_2 j_3} built from generic rows directly.
    PolyMatrix d(3, 3);
    const int js[3] = {2, 3, 2};
    for (int l = 0; l < 3; ++l)
        for (int c = 0; c < 3; ++c) d(l, c) = x(l + 1, js[l], c + 1);
    CHECK(bracket_det(3, {{1, 2}, {2, 3}, {3, 2}}) == det(d));
}

TEST_CASE("det_family reproduces the worked n = 4 example") {
    const auto s = worked_example();
    PolyMatrix y(4, 4);
    for (int i = 1; i <= 4; ++i) {
        y(i - 1, 0) = x(2, i, 1);
        y(i - 1, 1) = x(3, i, 3);
        y(i - 1, 2) = x(4, i, 2);
        y(i - 1, 3) = x(5, i, 1);
    }
    CHECK(det_family(s, DetKind::Dc) == det(y));
    PolyMatrix z(3, 3);
    const int cols[3] = {1, 2, 4};
    for (int j = 0; j < 3; ++j) {
        z(0, j) = x(1, 4, cols[j]);
        z(1, j) = x(2, 4, cols[j]);
        z(2, j) = x(3, 2, cols[j]);
    }
    CHECK(det_family(s, DetKind::Dr) == det(z));
    CHECK(det_family(s, DetKind::dc_Q, {2, 4}) == x(2, 2, 1) * x(3, 4, 3) - x(3, 2, 3) * x(2, 4, 1));
    CHECK(det_family(s, DetKind::dc_rest, {1, 3}) == x(4, 1, 2) * x(5, 3, 1) - x(5, 1, 1) * x(4, 3, 2));
    CHECK(det_family(s, DetKind::dr_Q, {1, 3}) == x(2, 4, 1) * x(3, 2, 4) - x(2, 4, 4) * x(3, 2, 1));
    CHECK(det_family(s, DetKind::dr_rest, {2}) == x(1, 4, 2));
}

TEST_CASE("det_family empty selection is 1") {
    DetFamilySpec s;
    s.n = 2;
    s.K = {1, 2};
    s.L = {1, 2};
    s.V = {1, 2};
    s.S = {2, 1};
    s.lambda = 2;
    CHECK(det_family(s, DetKind::dc_rest, {}) == Poly(1));
    CHECK(det_family(s, DetKind::dr_rest, {}) == Poly(1));
}

TEST_CASE("Laplace expansion by the Q columns") {
    CHECK(laplace_by_q_columns(worked_example()) == det_family(worked_example(), DetKind::Dc));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 20; ++t) {
        DetFamilySpec s;
        s.n = 3;
        std::uniform_int_distribution<int> idx(1, 3);
        for (int k = 1; k <= 4; ++k) {
            if (rng() % 2) s.K.push_back(k);
            if (rng() % 2) s.L.push_back(k);
        }
        if (s.K.empty() || s.L.empty() || s.K.size() > 3 || s.L.size() > 3) continue;
        for (std::size_t i = 0; i < s.K.size(); ++i) s.V.push_back(idx(rng));
        for (std::size_t i = 0; i < s.L.size(); ++i) s.S.push_back(idx(rng));
        const auto q = s.Q();
        if (q.size() > s.K.size()) continue;
        for (std::size_t i = 0; i + q.size() < s.K.size(); ++i) s.U.push_back(static_cast<int>(i) + 1);
        s.lambda = 3;
        CHECK(laplace_by_q_columns(s) == det_family(s, DetKind::Dc));
    }
}

TEST_CASE("kron_blocks and build_Xi") {
    auto [p1, pp1] = kron_blocks(1, 1);
    CHECK(p1(0, 0) == x(1, 1, 1));
    CHECK(pp1(0, 0) == x(1, 1, 1));
    auto [p, pp] = kron_blocks(1, 2);
    PolyMatrix blockdiag(4, 4);
    for (int g = 0; g < 2; ++g)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) blockdiag(2 * g + i, 2 * g + j) = x(1, i + 1, j + 1);
    CHECK(p == blockdiag);
    CHECK(pp(0, 2) == x(1, 2, 1));
    CHECK(pp(1, 3) == x(1, 2, 1));
    CHECK(pp(2, 0) == x(1, 1, 2));
    const PolyMatrix xi = build_Xi(1, {1}, {});
    CHECK(xi.rows() == 1);
    CHECK(xi(0, 0) == x(1, 1, 1));
    CHECK(build_Xi(2, {1, 2, 3}, {1, 2, 3}).rows() == 2 * 3 * 4);
    CHECK(build_Xi(2, {}, {}).rows() == 0);
    // Row helpers agree with the stacked blocks.
    for (int g = 1; g <= 2; ++g)
        for (int v = 1; v <= 2; ++v) {
            const auto r = xprime_row(2, 1, g, v);
            for (int c = 0; c < 4; ++c) CHECK(r.c[static_cast<std::size_t>(c)] == p((g - 1) * 2 + v - 1, c));
            const auto rr = xdprime_row(2, 1, g, v);
            for (int c = 0; c < 4; ++c) CHECK(rr.c[static_cast<std::size_t>(c)] == pp((g - 1) * 2 + v - 1, c));
        }
}
