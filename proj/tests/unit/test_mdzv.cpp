#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mdz/mdzv.hpp"
#include "mdz/oracle.hpp"

using namespace mdz;

namespace {

Cone gauss() { return Cone(QuadField::quadratic(-1), {{1, 0}, {0, 1}}); }

MdzvSpec gauss_spec(std::vector<cplx> row, std::int64_t A) {
    MdzvSpec s;
    s.field = QuadField::quadratic(-1);
    s.cones.assign(row.size(), gauss());
    s.exponents = ExponentMatrix::constant_rows(2, row);
    s.params.A = A;
    return s;
}

const double kF2Gauss = 0.42437977621184684;
const double kEis4 = -0.29452023317266384;      // lemniscatic G_4(i)/4 - zeta(4)
const double kMultiEis33Im = 0.10453186543855;  // pure imaginary by the swap symmetry
const double kEK22 = 0.019188993274179358;
const double kZeta22 = 0.81174242528335364;     // (zeta(2)^2 - zeta(4))/2

}  // namespace

TEST_CASE("enumerate_shuffles: counts and structure") {
    CHECK(enumerate_shuffles(1, 1).size() == 2);
    CHECK(enumerate_shuffles(2, 1).size() == 3);
    CHECK(enumerate_shuffles(2, 1, ShuffleVariant::sh1).size() == 2);
    CHECK(enumerate_shuffles(3, 2).size() == 10);
    for (int p = 1; p <= 4; ++p)
        for (int q = 0; q <= 4; ++q) {
            auto all = enumerate_shuffles(p, q);
            for (const auto& tau : all) {
                // permutation of {1..p+q}, order-preserving on each block
                std::vector<bool> seen(tau.size() + 1, false);
                for (int v : tau) {
                    CHECK(v >= 1);
                    CHECK(v <= static_cast<int>(tau.size()));
                    CHECK_FALSE(seen[static_cast<std::size_t>(v)]);
                    seen[static_cast<std::size_t>(v)] = true;
                }
                for (int a = 1; a < p; ++a) CHECK(tau[static_cast<std::size_t>(a - 1)] < tau[static_cast<std::size_t>(a)]);
                for (int a = p + 1; a < p + q; ++a)
                    CHECK(tau[static_cast<std::size_t>(a - 1)] < tau[static_cast<std::size_t>(a)]);
            }
            // sh1 count: binomial(p+q-1, q)
            double b = 1;
            for (int i = 1; i <= q; ++i) b = b * (p - 1 + i) / i;
            CHECK(enumerate_shuffles(p, q, ShuffleVariant::sh1).size() == static_cast<std::size_t>(std::llround(b)));
        }
}

TEST_CASE("shuffle_to_exponents: boundary conventions") {
    // m = 1, m_i = k-1: the unique sh1 shuffle gives k_{i1} = k
    ShuffleSpec one;
    one.m = 1;
    one.m_i = {3, 3};
    one.tau_i = {{1, 2, 3, 4}, {1, 2, 3, 4}};
    ExponentMatrix e1 = shuffle_to_exponents(one);
    CHECK(e1.at(0, 0) == cplx(4, 0));
    CHECK(e1.at(1, 0) == cplx(4, 0));

    // m = 2, no 1-forms: all k = 1
    ShuffleSpec flat;
    flat.m = 2;
    flat.m_i = {0, 0};
    flat.tau_i = {{1, 2}, {1, 2}};
    ExponentMatrix e2 = shuffle_to_exponents(flat);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(e2.at(i, j) == cplx(1, 0));

    // Example 2 pattern (omega, dz, omega, dz) -> (2,2)
    ShuffleSpec ex2;
    ex2.m = 2;
    ex2.m_i = {2, 2};
    ex2.tau_i = {{1, 3, 2, 4}, {1, 3, 2, 4}};
    ExponentMatrix e3 = shuffle_to_exponents(ex2);
    CHECK(e3.at(0, 0) == cplx(2, 0));
    CHECK(e3.at(0, 1) == cplx(2, 0));

    ShuffleSpec bad = ex2;
    bad.tau_i = {{2, 3, 1, 4}, {1, 3, 2, 4}};  // tau(1) != 1
    CHECK_THROWS_AS(shuffle_to_exponents(bad), std::invalid_argument);
    bad.tau_i = {{1, 4, 3, 2}, {1, 3, 2, 4}};  // S_i block order broken
    CHECK_THROWS_AS(shuffle_to_exponents(bad), std::invalid_argument);
}

TEST_CASE("shuffle exponents reproduce the Example 2 sum against brute force") {
    ShuffleSpec ex2;
    ex2.m = 2;
    ex2.m_i = {2, 2};
    ex2.tau_i = {{1, 3, 2, 4}, {1, 3, 2, 4}};
    MdzvSpec s;
    s.field = QuadField::quadratic(-1);
    s.cones = {gauss(), gauss()};
    s.exponents = shuffle_to_exponents(ex2);
    s.params.A = 512;
    auto brute = oracle::brute_force_sum(4, 96, [](const std::vector<std::int64_t>& a) {
        double n1 = static_cast<double>(a[0] * a[0] + a[1] * a[1]);
        double n2 = static_cast<double>((a[0] + a[2]) * (a[0] + a[2]) + (a[1] + a[3]) * (a[1] + a[3]));
        return cplx(1.0 / (n1 * n1 * n2 * n2), 0.0);
    }, 2.0);
    CHECK(std::abs(mdzv_eval(s).value - brute.value) < 1e-7);
}

TEST_CASE("mdzv_eval: headline Gaussian values") {
    CHECK(std::abs(mdzv_eval(gauss_spec({cplx(2, 0)}, 1600)).value - kF2Gauss) < 1e-9);

    SumResult z12 = mdzv_eval(gauss_spec({cplx(1, 0), cplx(2, 0)}, 1536));
    SectorPoint zero = SectorPoint::zero(2);
    CHECK(z12.value == f_multi({gauss(), gauss()}, {1, 2}, zero, 1536).value);  // same engine path
    CHECK(std::abs(z12.value - 0.0648705351) < 5e-8);  // prototype band, brute-checked in acceptance
    CHECK(std::abs(z12.value.imag()) < 1e-12);
}

TEST_CASE("mdzv_eval: Eisenstein row [[4],[0]]") {
    MdzvSpec s;
    s.field = QuadField::quadratic(-1);
    s.cones = {gauss()};
    s.exponents = ExponentMatrix(2, 1);
    s.exponents.at(0, 0) = cplx(4, 0);
    s.exponents.at(1, 0) = cplx(0, 0);
    s.params.A = 4000;
    CHECK(std::abs(mdzv_eval(s).value - kEis4) < 2e-8);
}

TEST_CASE("mdzv_eval validates cones") {
    MdzvSpec s;
    s.field = QuadField::quadratic(-1);
    s.cones = {Cone(s.field, {{1, 0}, {0, 2}})};  // determinant 2
    s.exponents = ExponentMatrix::constant_rows(2, {cplx(2, 0)});
    CHECK_THROWS_AS(mdzv_eval(s), std::invalid_argument);
    MdzvSpec s2;
    s2.field = QuadField::quadratic(2);
    s2.cones = {Cone(s2.field, {{1, 0}, {1, 1}})};  // unimodular but sigma_2 changes sign
    s2.exponents = ExponentMatrix::constant_rows(2, {cplx(2, 0)});
    CHECK_THROWS_AS(mdzv_eval(s2), std::domain_error);
}

TEST_CASE("mzv_eval: classical values and refusals") {
    CHECK(std::abs(mzv_eval({cplx(2, 0)}).value - oracle::riemann_zeta(cplx(2, 0))) < 1e-11);
    CHECK(std::abs(mzv_eval({cplx(1, 0), cplx(2, 0)}).value - oracle::riemann_zeta(cplx(3, 0))) < 1e-10);
    CHECK(std::abs(mzv_eval({cplx(2, 0), cplx(2, 0)}).value - kZeta22) < 1e-9);
    // zeta(1,1,2) = zeta(4)
    CHECK(std::abs(mzv_eval({cplx(1, 0), cplx(1, 0), cplx(2, 0)}).value - oracle::riemann_zeta(cplx(4, 0))) < 1e-8);
    CHECK_THROWS_AS(mzv_eval({cplx(1, 0)}), std::domain_error);
    CHECK_THROWS_AS(mzv_eval({cplx(2, 0), cplx(1, 0)}), std::domain_error);
    CHECK_THROWS_AS(mzv_eval({cplx(0, 0), cplx(0, 0), cplx(3, 0)}), std::domain_error);
}

TEST_CASE("K = Q reduction: mdzv_eval on N{1} cones equals mzv_eval") {
    MdzvSpec s;
    s.field = QuadField::rationals();
    s.cones = {Cone(s.field, {{1, 0}}), Cone(s.field, {{1, 0}})};
    s.exponents = ExponentMatrix(1, 2);
    s.exponents.at(0, 0) = cplx(1, 0);
    s.exponents.at(0, 1) = cplx(2, 0);
    CHECK(std::abs(mdzv_eval(s).value - mzv_eval({cplx(1, 0), cplx(2, 0)}).value) < 1e-12);
}

TEST_CASE("MZV stuffle: zeta(2)^2 = 2 zeta(2,2) + zeta(4)") {
    cplx z2 = oracle::riemann_zeta(cplx(2, 0));
    cplx z4 = oracle::riemann_zeta(cplx(4, 0));
    cplx z22 = mzv_eval({cplx(2, 0), cplx(2, 0)}).value;
    CHECK(std::abs(z2 * z2 - 2.0 * z22 - z4) < 1e-9);
}

TEST_CASE("conjugate symmetry and row swap over imaginary quadratic fields") {
    // equal integer rows: the value is real
    for (std::int64_t d : {-1, -7}) {
        MdzvSpec s;
        s.field = QuadField::quadratic(d);
        s.cones = {Cone(s.field, {{1, 0}, {0, 1}})};
        s.exponents = ExponentMatrix::constant_rows(2, {cplx(2, 0)});
        s.params.A = 400;
        CHECK(std::abs(mdzv_eval(s).value.imag()) < 1e-10);
    }
    // swapping the embedding rows conjugates the value (sigma_2 = conj sigma_1)
    MdzvSpec s;
    s.field = QuadField::quadratic(-1);
    s.cones = {gauss()};
    s.exponents = ExponentMatrix(2, 1);
    s.exponents.at(0, 0) = cplx(3, 0);
    s.exponents.at(1, 0) = cplx(1, 0);
    s.params.A = 600;
    cplx v = mdzv_eval(s).value;
    std::swap(s.exponents.at(0, 0), s.exponents.at(1, 0));
    cplx w = mdzv_eval(s).value;
    CHECK(std::abs(w - std::conj(v)) < 1e-10);
}

TEST_CASE("eisenstein_partial") {
    QuadField qi = QuadField::quadratic(-1);
    EvalParams p;
    p.A = 2048;
    SumResult r = eisenstein_partial(qi, gauss(), 4, 1, p);
    CHECK(std::abs(r.value - kEis4) < 2e-8);
    SumResult r2 = eisenstein_partial(qi, gauss(), 4, 2, p);
    CHECK(std::abs(r2.value - std::conj(r.value)) < 1e-12);
    CHECK_THROWS_AS(eisenstein_partial(qi, gauss(), 2, 1, p), std::domain_error);

    // real quadratic Example-12 shape: cone need not be unimodular, only simple
    QuadField q2 = QuadField::quadratic(2);
    Cone c(q2, {{1, 0}, {3, 2}});
    SumResult rr = eisenstein_partial(q2, c, 4, 1, p);
    CHECK(std::abs(rr.value - 0.00160545233272060) < 1e-9);
    // the other embedding converges as well on a totally positive cone
    SumResult rr2 = eisenstein_partial(q2, c, 4, 2, p);
    CHECK(rr2.value.real() > 0);
}

TEST_CASE("multiple_eisenstein and the Eisenstein-Kronecker variant") {
    QuadField qi = QuadField::quadratic(-1);
    EvalParams p;
    p.A = 1024;
    SumResult r = multiple_eisenstein(qi, gauss(), 3, 3, 1, p);
    CHECK(std::abs(r.value.real()) < 1e-10);  // swap symmetry makes it pure imaginary
    CHECK(std::abs(r.value.imag() - kMultiEis33Im) < 5e-7);
    CHECK_THROWS_AS(multiple_eisenstein(qi, gauss(), 2, 3, 1, p), std::domain_error);

    SumResult ek = eisenstein_kronecker(qi, gauss(), 2, 2, p);
    CHECK(std::abs(ek.value - kEK22) < 1e-8);
    SectorPoint zero = SectorPoint::zero(2);
    CHECK(ek.value == f_multi({gauss(), gauss()}, {2, 2}, zero, 1024).value);
}

TEST_CASE("engine paths agree: streaming vs direct on reordered generators") {
    // same lattice set, different generator order: different code path, same sum
    Cone a = gauss();
    Cone b(QuadField::quadratic(-1), {{0, 1}, {1, 0}});
    MdzvSpec fast;
    fast.field = QuadField::quadratic(-1);
    fast.cones = {a, a};
    fast.exponents = ExponentMatrix::constant_rows(2, {cplx(1, 0), cplx(2, 0)});
    fast.params.A = 48;
    MdzvSpec slow = fast;
    slow.cones = {a, b};
    CHECK(std::abs(mdzv_eval(fast).value - mdzv_eval(slow).value) < 1e-13);
}

TEST_CASE("engine paths agree: rational DP vs direct on a scaled ray") {
    // N{2} over Q forces the direct path; the sum is 2^-(s1+s2) * zeta(s1,s2)
    QuadField q = QuadField::rationals();
    Cone two(q, {{2, 0}});
    cplx direct = f_multi({two, two}, {2, 2}, SectorPoint::zero(1), 3000).value;
    CHECK(std::abs(direct - kZeta22 / 16.0) < 1e-7);
}
