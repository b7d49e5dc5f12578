#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mdz/cone.hpp"
#include "mdz/series.hpp"

namespace mdz {

// n x m exponent block s_ij: row i = embedding, column j = iteration level.
struct ExponentMatrix {
    int rows = 0, cols = 0;
    std::vector<cplx> s;  // row-major

    ExponentMatrix() = default;
    ExponentMatrix(int n, int m) : rows(n), cols(m), s(static_cast<std::size_t>(n) * m) {}
    cplx& at(int i, int j) { return s[static_cast<std::size_t>(i * cols + j)]; }
    const cplx& at(int i, int j) const { return s[static_cast<std::size_t>(i * cols + j)]; }
    static ExponentMatrix constant_rows(int n, const std::vector<cplx>& row);
    bool operator==(const ExponentMatrix&) const = default;
};

enum class EvalMode { sum, quadrature };

struct EvalParams {
    std::int64_t A = 0;       // 0 = path default
    double tol = 1e-8;
    EvalMode mode = EvalMode::sum;
    int threads = 0;          // 0 = MDZ_THREADS env or 1
};

struct MdzvSpec {
    QuadField field;
    std::vector<Cone> cones;
    ExponentMatrix exponents;
    EvalParams params;

    void validate() const;  // cones simple + unimodular, dimensions match
};

// Shuffle data of Def 4.2/4.3: tau_i in Sh^1(m, m_i) per direction i.
// A permutation is stored as tau[a-1] = tau(a) on {1..m+m_i}.
struct ShuffleSpec {
    int m = 0;
    std::vector<int> m_i;                  // size n
    std::vector<std::vector<int>> tau_i;   // size n
};

enum class ShuffleVariant { all, sh1 };

// all order-preserving interleavings of {1..p} and {p+1..p+q}
std::vector<std::vector<int>> enumerate_shuffles(int p, int q, ShuffleVariant variant = ShuffleVariant::all);

// k_ij from the subinterval cut by the images of {1..m}: k_ij = q_{j+1} - q_j
// with q_{m+1} = m + m_i + 1 (so m_i = 0 gives k = 1, and m = 1 gives k = m_i + 1)
ExponentMatrix shuffle_to_exponents(const ShuffleSpec& s);

SumResult mdzv_eval(const MdzvSpec& spec);

// K = Q reduction: zeta(s_1,...,s_d) over 0 < n_1 < ... < n_d (same code path)
SumResult mzv_eval(const std::vector<cplx>& s, const EvalParams& params = {});

// sum_{alpha in C} sigma_i(alpha)^{-k}; k >= 3 (absolute convergence on rank-2 cones)
SumResult eisenstein_partial(const QuadField& f, const Cone& c, int k, int embedding, const EvalParams& params = {});

// sum_{alpha,beta in C} sigma_i(alpha)^{-k} sigma_i(alpha+beta)^{-l}; k, l >= 3
SumResult multiple_eisenstein(const QuadField& f, const Cone& c, int k, int l, int embedding,
                              const EvalParams& params = {});

// Example-4 companion: zeta_{K,C,C}(k,..,k,l,..,l) = sum 1/(N(a)^k N(a+b)^l)
SumResult eisenstein_kronecker(const QuadField& f, const Cone& c, int k, int l, const EvalParams& params = {});

}  // namespace mdz
