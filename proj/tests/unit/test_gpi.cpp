#include "doctest.h"
#include "helpers.hpp"

#include "fident/gpi.hpp"

#include <numeric>

using namespace fident;

namespace {

Rational factorial(int n) {
    Rational f(1);
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

std::vector<PolyMatrix> generics(int n, int count) {
    std::vector<PolyMatrix> v;
    for (int k = 1; k <= count; ++k) v.push_back(generic_matrix(k, n));
    return v;
}

bool is_central(const PolyMatrix& m) { return m.is_scalar(); }

}  // namespace

TEST_CASE("ch_poly") {
    CHECK(ch_poly(1).str(true) == "x - tr(x)");
    CHECK(ch_poly(2).str(true) == "x*x - tr(x)*x + 1/2*tr(x)*tr(x) - 1/2*tr(x*x)");
    for (int n = 1; n <= 3; ++n) CHECK(eval(ch_poly(n), {generic_matrix(1, n)}).is_zero());
    CHECK_THROWS(ch_poly(0));
}

TEST_CASE("ch_poly constant term is (-1)^n det") {
    std::mt19937_64 rng(3);
    for (int n = 2; n <= 3; ++n) {
        std::vector<GenTerm> constant;
        const GenPoly q = ch_poly(n);
        for (const auto& t : q.terms())
            if (t.word.empty()) constant.push_back(t);
        const GenPoly tau_n = GenPoly::from_terms(1, constant);
        for (int t = 0; t < 5; ++t) {
            const auto a = testing::random_rational_matrix(rng, n);
            const Poly d = det(a);
            CHECK(eval(tau_n, {a}) == PolyMatrix::scalar(n, n % 2 == 0 ? d : -d));
        }
    }
}

TEST_CASE("polarized_ch n = 2 matches the six-term display") {
    const std::string display = "x1*x2 + x2*x1 - tr(x1)*x2 - tr(x2)*x1 + tr(x1)*tr(x2) - tr(x1*x2)";
    CHECK(polarized_ch(2).str() == display);
    CHECK(parse_genpoly(display, 2) == polarized_ch(2));
    CHECK(parse_genpoly("-tr(x2 x1) + tr(x2)tr(x1) + x2x1 + x1x2 - tr(x2)x1 - tr(x1)x2", 2) == polarized_ch(2));
}

TEST_CASE("polarized_ch n = 1 follows the signed permutation sum") {
    // Identity contributes tr(x1); the transposition contributes -x1.
    CHECK(polarized_ch(1).str() == "-x1 + tr(x1)");
}

TEST_CASE("restitution: Q_n(x,...,x) = (-1)^n n! q_n(x)") {
    for (int n = 1; n <= 4; ++n) {
        const GenPoly diag = polarized_ch(n).remap_slots(std::vector<int>(static_cast<std::size_t>(n), 1), 1);
        const Rational c = (n % 2 == 0 ? 1 : -1) * factorial(n);
        CHECK(diag == ch_poly(n).scaled(c));
    }
}

TEST_CASE("noncentral_part") {
    CHECK(noncentral_part(2).str() == "x1*x2 + x2*x1 - tr(x1)*x2 - tr(x2)*x1");
    for (int n = 2; n <= 3; ++n) {
        const auto xs = generics(n, n);
        CHECK(eval(noncentral_part(n), xs) == -eval(central_part(n), xs));
    }
}

TEST_CASE("noncentral part splits by the last letter") {
    // Q~_n = -sum_k Q_{n-1}(x_1, .., ^x_k, .., x_n) x_k, syntactically.
    for (int n = 2; n <= 4; ++n) {
        GenPoly sum(n);
        for (int k = 1; k <= n; ++k) {
            std::vector<int> map;
            for (int s = 1; s <= n; ++s)
                if (s != k) map.push_back(s);
            sum = sum + polarized_ch(n - 1).remap_slots(map, n) * GenPoly::slot(n, k);
        }
        CHECK(noncentral_part(n) == sum.scaled(-1));
    }
}

TEST_CASE("Cayley-Hamilton certificate and centrality") {
    for (int n = 1; n <= 3; ++n) {
        CHECK(eval(polarized_ch(n), generics(n, n)).is_zero());
        CHECK(is_central(eval(noncentral_part(n), generics(n, n))));
    }
    const auto x = generics(2, 2);
    const Poly c = x[0].trace() * x[1].trace() - (x[0] * x[1]).trace();
    CHECK(eval(noncentral_part(2), x) == PolyMatrix::scalar(2, -c));
}

TEST_CASE("rank-one reduction") {
    for (int n = 2; n <= 4; ++n) {
        const Rational expected = (n % 2 == 0 ? 1 : -1) * factorial(n - 1);
        CHECK(rank_one_reduction(polarized_ch(n)) == expected);
    }
    // Functionally both sides vanish at n = 2 with e = e_11.
    const int n = 2;
    const PolyMatrix e = PolyMatrix::unit(n, 1, 1);
    const PolyMatrix a1 = e * generic_matrix(1, n) * e;
    const PolyMatrix a2 = e * generic_matrix(2, n) * e;
    const PolyMatrix comm = a1 * a2 - a2 * a1;
    CHECK(comm.is_zero());
    CHECK(eval(polarized_ch(n), {comm, e}).is_zero());
}

TEST_CASE("coordinate_form small cases") {
    const auto h = coordinate_form(GenPoly::slot(1, 1), {MatrixArg::generic(1)}, 3);
    CHECK(h.at(1) == PolyMatrix::identity(3));
    const auto h2 = coordinate_form(parse_genpoly("tr(x1)*x2", 2), {MatrixArg::generic(1), MatrixArg::generic(2)}, 2);
    CHECK(h2.at(2) == PolyMatrix::scalar(2, generic_matrix(1, 2).trace()));
    CHECK(h2.at(1).is_zero());
    CHECK_THROWS(coordinate_form(parse_genpoly("tr(x1)", 1), {MatrixArg::generic(1)}, 2));
}

TEST_CASE("basic nonstandard identity n = 2 matches the displayed coefficients") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 3; ++t) {
        std::vector<PolyMatrix> a;
        for (int i = 0; i < 3; ++i) a.push_back(testing::random_rational_matrix(rng, 2));
        if (t == 0) a = {PolyMatrix::identity(2), PolyMatrix::identity(2), PolyMatrix::identity(2)};
        const FISpec fi = basic_nonstandard_fi(2, a);
        std::vector<PolyMatrix> y;
        for (int i = 0; i < 3; ++i) y.push_back(a[static_cast<std::size_t>(i)] * generic_matrix(i + 1, 2));
        const PolyMatrix f1 = y[2] * (-y[1] + PolyMatrix::scalar(2, y[1].trace())) * a[0];
        const PolyMatrix f2 = y[2] * (-y[0] + PolyMatrix::scalar(2, y[0].trace())) * a[1];
        const PolyMatrix f3 = (y[0] * y[1] + y[1] * y[0] - y[1].times(y[0].trace()) - y[0].times(y[1].trace())) * a[2];
        CHECK(fi.F.at(1) == f1);
        CHECK(fi.F.at(2) == f2);
        CHECK(fi.F.at(3) == f3);
        PolyMatrix sum(2, 2);
        for (int k = 1; k <= 3; ++k) sum += fi.F.at(k) * generic_matrix(k, 2);
        CHECK(sum.is_zero());
    }
}

TEST_CASE("basic nonstandard identity n = 1") {
    const PolyMatrix a1 = PolyMatrix::from_rationals({{Rational(2)}});
    const PolyMatrix a2 = PolyMatrix::from_rationals({{Rational(-3)}});
    const FISpec fi = basic_nonstandard_fi(1, {a1, a2});
    const Poly x1 = Poly::var(1, 1, 1), x2 = Poly::var(2, 1, 1);
    CHECK(fi.F.at(1)(0, 0) == (x2 * 2).scaled(-3));
    CHECK(fi.F.at(2)(0, 0) == (x1 * 2).scaled(3));
}

TEST_CASE("coordinate form agrees with evaluation") {
    std::mt19937_64 rng(23);
    std::vector<PolyMatrix> a;
    for (int i = 0; i < 3; ++i) a.push_back(testing::random_rational_matrix(rng, 2));
    const FISpec fi = basic_nonstandard_fi(2, a);
    std::vector<MatrixArg> args;
    for (int i = 0; i < 3; ++i) args.push_back(MatrixArg::scaled(a[static_cast<std::size_t>(i)], i + 1));
    const PolyMatrix full = eval(nonstandard_commutator(2), args, 2);
    PolyMatrix sum(2, 2);
    for (int k = 1; k <= 3; ++k) sum += fi.F.at(k) * generic_matrix(k, 2);
    CHECK(full == sum);
    // Substituting rational matrices commutes with taking coordinates.
    std::map<std::uint32_t, Poly> sub;
    std::vector<PolyMatrix> b;
    for (int k = 1; k <= 3; ++k) {
        b.push_back(testing::random_rational_matrix(rng, 2));
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) sub[VarId{k, i, j}.id()] = b.back()(i - 1, j - 1);
    }
    std::vector<PolyMatrix> vals;
    for (int i = 0; i < 3; ++i) vals.push_back(a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(i)]);
    const PolyMatrix direct = eval(nonstandard_commutator(2), vals);
    PolyMatrix via(2, 2);
    for (int k = 1; k <= 3; ++k) via += fi.F.at(k).substitute(sub) * b[static_cast<std::size_t>(k - 1)];
    CHECK(direct == via);
}

TEST_CASE("determinant form of the Cayley-Hamilton identity, n = 2 exhaustive") {
    int full = 0, vanish = 0;
    for (int code = 0; code < 64; ++code) {
        std::vector<int> i(3), j(3);
        for (int l = 0; l < 3; ++l) {
            i[static_cast<std::size_t>(l)] = ((code >> l) & 1) + 1;
            j[static_cast<std::size_t>(l)] = ((code >> (l + 3)) & 1) + 1;
        }
        const auto r = ch_det_identity(2, i, j);
        if (r.full_index_set) {
            ++full;
            CHECK(r.lhs == r.mid);
            CHECK(r.mid == r.rhs);
        } else {
            ++vanish;
            CHECK(r.vanishing.is_zero());
        }
    }
    CHECK(full == 32);
    CHECK(vanish == 32);
}

TEST_CASE("remark: e x_{n+1} Q~_n rewritten through Q~_n with x_{n+1} inside, n = 2") {
    const int n = 2;
    for (int code = 0; code < 64; ++code) {
        int i[4], j[4];
        for (int l = 1; l <= 3; ++l) {
            i[l] = ((code >> (l - 1)) & 1) + 1;
            j[l] = ((code >> (l + 2)) & 1) + 1;
        }
        auto e = [&](int a, int b) { return PolyMatrix::unit(n, a, b); };
        const GenPoly qt = noncentral_part(n);
        const PolyMatrix lhs = e(i[3], j[3]) * generic_matrix(3, n) *
                               eval(qt, {MatrixArg::scaled(e(i[1], j[1]), 1), MatrixArg::scaled(e(i[2], j[2]), 2)}, n);
        PolyMatrix rhs(n, n);
        for (int k = 1; k <= n; ++k) {
            std::vector<MatrixArg> args;
            for (int l = 1; l <= n; ++l)
                if (l != k) args.push_back(MatrixArg::scaled(e(i[l], j[l]), l));
            args.push_back(MatrixArg::scaled(e(i[k], j[3]), 3));
            rhs += eval(qt, args, n) * e(i[3], j[k]) * generic_matrix(k, n);
        }
        CHECK(lhs == rhs);
    }
}
