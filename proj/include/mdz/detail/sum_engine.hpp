#pragma once

#include <cstdint>
#include <vector>

#include "mdz/cone.hpp"
#include "mdz/series.hpp"

namespace mdz::detail {

// Internal evaluation request: value = sum over (a_1..a_m) in C_1 x..x C_m of
//   prod_{i,j} sigma_i(b_j)^{-s_ij} * exp(-sum_i sigma_i(b_m) t_i),
// b_j = a_1 + ... + a_j, truncated to coefficient boxes a <= A per level.
struct EngineSpec {
    QuadField field;
    std::vector<Cone> cones;
    std::vector<cplx> s;  // row-major n x m: s[(i-1)*m + (j-1)]
    SectorPoint t;        // empty or all-zero => lattice-value case
    std::int64_t A = 0;   // 0 => path default
    double tol = 1e-8;
    int threads = 1;
};

// throws std::domain_error when the comparison test fails (t = 0 only)
void convergence_precheck(const EngineSpec& spec);

// min over suffixes r..m of (sum Re s - sum of cone ranks); > 0 iff convergent
double convergence_margin(const EngineSpec& spec);

SumResult eval_nested(const EngineSpec& spec);

int default_threads();  // MDZ_THREADS environment override, else 1

}  // namespace mdz::detail
