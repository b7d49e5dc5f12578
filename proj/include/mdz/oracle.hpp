#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mdz/mdzv.hpp"

namespace mdz::oracle {

// Euler-Maclaurin evaluations, abs error well below 1e-12 in the tested range
cplx riemann_zeta(cplx s);            // Re s > 1
cplx hurwitz_zeta(cplx s, double a);  // Re s > 1, a > 0

// Kronecker symbol (D/n) for a fundamental discriminant D
int kronecker_symbol(std::int64_t D, std::int64_t n);

// L(s, chi_D) via the Hurwitz-zeta residue decomposition; s = 1 via digamma
cplx dirichlet_L(cplx s, std::int64_t D);
double digamma(double x);

// Lanczos Gamma (Boost g=6.0246..., 13 terms), |rel err| < 1e-13 on Re s in (0,30)
cplx gamma_lanczos(cplx s);

// ---- brute-force lattice sums (independent code path: plain loops, plain doubles) ----

struct BruteResult {
    cplx value;      // extrapolated
    cplx raw;        // S at the largest box
    double tail = 0; // extrapolation-spread estimate
};

namespace detail {
// extrapolate checkpointed box sums: log-aware fit for tail exponent <= 2, else Aitken
BruteResult finish_brute(std::vector<std::pair<double, cplx>> S, double tail_exponent);
}  // namespace detail

// S(B) = sum over (a_1..a_dim) in [1..B]^dim of term(a); checkpointed at
// B/4, 3B/8, B/2, 3B/4, B and extrapolated (Aitken, or a log-aware fit for slow tails)
template <class F>
BruteResult brute_force_sum(int dim, std::int64_t B, F&& term, double tail_exponent = 2.0) {
    if (B < 8 || dim < 1 || dim > 6) throw std::invalid_argument("brute_force_sum: bad shape");
    const std::int64_t cps[5] = {B / 4, 3 * B / 8, B / 2, 3 * B / 4, B};
    cplx bucket[5] = {};
    std::vector<std::int64_t> a(static_cast<std::size_t>(dim), 1);
    while (true) {
        std::int64_t mx = 0;
        for (auto v : a) mx = std::max(mx, v);
        cplx t = term(const_cast<const std::vector<std::int64_t>&>(a));
        for (int k = 0; k < 5; ++k)
            if (mx <= cps[k]) { bucket[k] += t; break; }
        int sl = dim - 1;
        while (sl >= 0) {
            if (++a[static_cast<std::size_t>(sl)] <= B) break;
            a[static_cast<std::size_t>(sl)] = 1;
            --sl;
        }
        if (sl < 0) break;
    }
    std::vector<std::pair<double, cplx>> S;
    cplx run{};
    for (int k = 0; k < 5; ++k) {
        run += bucket[k];
        if (cps[k] >= 1 && (k == 0 || cps[k] != cps[k - 1])) S.push_back({static_cast<double>(cps[k]), run});
    }
    return detail::finish_brute(std::move(S), tail_exponent);
}

// same over [-B..B]^dim minus the origin
template <class F>
BruteResult brute_force_sum_all(int dim, std::int64_t B, F&& term, double tail_exponent = 2.0) {
    if (B < 8 || dim < 1 || dim > 4) throw std::invalid_argument("brute_force_sum_all: bad shape");
    const std::int64_t cps[5] = {B / 4, 3 * B / 8, B / 2, 3 * B / 4, B};
    cplx bucket[5] = {};
    std::vector<std::int64_t> a(static_cast<std::size_t>(dim), -B);
    while (true) {
        bool zero = true;
        std::int64_t mx = 0;
        for (auto v : a) {
            if (v != 0) zero = false;
            mx = std::max(mx, v < 0 ? -v : v);
        }
        if (!zero) {
            cplx t = term(const_cast<const std::vector<std::int64_t>&>(a));
            for (int k = 0; k < 5; ++k)
                if (mx <= cps[k]) { bucket[k] += t; break; }
        }
        int sl = dim - 1;
        while (sl >= 0) {
            if (++a[static_cast<std::size_t>(sl)] <= B) break;
            a[static_cast<std::size_t>(sl)] = -B;
            --sl;
        }
        if (sl < 0) break;
    }
    std::vector<std::pair<double, cplx>> S;
    cplx run{};
    for (int k = 0; k < 5; ++k) {
        run += bucket[k];
        if (cps[k] >= 1 && (k == 0 || cps[k] != cps[k - 1])) S.push_back({static_cast<double>(cps[k]), run});
    }
    return detail::finish_brute(std::move(S), tail_exponent);
}

// ---- quadrature of the MDZF integral representation ----

// exp-sinh double-exponential nodes for (0,inf) on a truncated uniform grid
struct QuadratureGrid {
    std::vector<double> nodes, weights;
    static QuadratureGrid make(double h = 0.08, double tneg = -4.2, double tpos = 3.2);
    double self_calibration() const;  // |int_0^inf e^-u du - 1| on the grid
};

// numerical MDZF integral (mn <= 4, real exponents in the convergence region);
// contour-rotated per embedding so the integrand decays absolutely
cplx quadrature_mdzf(const MdzvSpec& spec);

// grid integral of the ordered simplex {b > t_1 > ... > t_n > a} vs (b-a)^n/n!
double simplex_volume_check(int n, double a, double b);

}  // namespace mdz::oracle
