#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mdz/cone.hpp"
#include "mdz/field.hpp"

namespace mdz {

// One complex coordinate per embedding; t = 0 selects the lattice-value case.
struct SectorPoint {
    std::vector<cplx> t;
    static SectorPoint zero(int n) { return {std::vector<cplx>(static_cast<std::size_t>(n), cplx{})}; }
    bool is_zero() const {
        for (const auto& v : t)
            if (v != cplx{}) return false;
        return true;
    }
};

struct SumResult {
    cplx value;
    double tail_bound = 0.0;     // rigorous for t != 0, extrapolation-based estimate at t = 0
    std::int64_t terms_used = 0;
    bool converged = false;
    bool heuristic_tail = false;
};

bool in_sector(const Cone& c, const SectorPoint& t);

// f0(C,t) = sum_{alpha in C} exp(-sum_i sigma_i(alpha) t_i), truncated at a_j <= A
// with a rigorous geometric tail bound. Requires t in every sector S_i(C).
SumResult f0_sum(const Cone& c, const SectorPoint& t, std::int64_t A);

// closed form prod_j y_j/(1-y_j), y_j = exp(-sum_i sigma_i(e_j) t_i); valid by
// analytic continuation away from the poles sum_i sigma_i(e_j) t_i in 2 pi i Z
cplx f0_product(const Cone& c, const SectorPoint& t);

// f_m(C,t) = sum exp(-sum_i sigma_i(alpha) t_i) / N(alpha)^m
SumResult fm(const Cone& c, int m, const SectorPoint& t, std::int64_t A);

// sum over (a_1..a_m) in C_1 x...x C_m of exp(-sum_i sigma_i(a_1+..+a_m)t_i)
//   / prod_j N(a_1+..+a_j)^{k_j}
SumResult f_multi(const std::vector<Cone>& cones, const std::vector<int>& exponents, const SectorPoint& t,
                  std::int64_t A);

// Li^K_m(C, X) = f_m(C, -log X_1, ..., -log X_n), principal branch
cplx dedekind_polylog(const Cone& c, int m, const std::vector<cplx>& X, std::int64_t A);

// zeta_K(m) = sum over fundamental-domain cones of eps(C)^m f_m(C, 0); class number 1 fields
SumResult dedekind_zeta_via_cones(const QuadField& f, int m, std::int64_t A);

}  // namespace mdz
