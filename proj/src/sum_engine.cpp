#include "mdz/detail/sum_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace mdz::detail {

namespace {

using i128 = __int128;

// ------------------------- accumulation -------------------------

// Neumaier compensated sum; fixed evaluation order keeps results bit-reproducible.
struct Acc {
    double s = 0.0, c = 0.0;
    void add(double v) {
        double t = s + v;
        c += (std::abs(s) >= std::abs(v)) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    double get() const { return s + c; }
};

struct AccC {
    Acc re, im;
    void add(cplx v) {
        re.add(v.real());
        im.add(v.imag());
    }
    cplx get() const { return {re.get(), im.get()}; }
};

// ------------------------- small least squares -------------------------

// Householder QR solve of an overdetermined real system, long double.
bool lstsq(std::vector<std::vector<long double>> M, std::vector<long double> b, std::vector<long double>& out) {
    const std::size_t rows = M.size(), cols = M[0].size();
    if (rows < cols) return false;
    for (std::size_t k = 0; k < cols; ++k) {
        long double nrm = 0;
        for (std::size_t i = k; i < rows; ++i) nrm += M[i][k] * M[i][k];
        nrm = std::sqrt(nrm);
        if (nrm < 1e-300L) return false;
        if (M[k][k] > 0) nrm = -nrm;
        for (std::size_t i = k; i < rows; ++i) M[i][k] /= nrm;
        M[k][k] -= 1.0L;
        for (std::size_t j = k + 1; j < cols; ++j) {
            long double sum = 0;
            for (std::size_t i = k; i < rows; ++i) sum += M[i][k] * M[i][j];
            sum /= M[k][k];
            for (std::size_t i = k; i < rows; ++i) M[i][j] += sum * M[i][k];
        }
        long double sum = 0;
        for (std::size_t i = k; i < rows; ++i) sum += M[i][k] * b[i];
        sum /= M[k][k];
        for (std::size_t i = k; i < rows; ++i) b[i] += sum * M[i][k];
        M[k][k] = nrm;
    }
    out.assign(cols, 0.0L);
    for (std::size_t k = cols; k-- > 0;) {
        long double v = b[k];
        for (std::size_t j = k + 1; j < cols; ++j) v -= M[k][j] * out[j];
        if (std::abs(M[k][k]) < 1e-300L) return false;
        out[k] = v / M[k][k];
    }
    return true;
}

struct Fit {
    cplx value;
    double err = 0.0;
    bool ok = false;
};

// Fit S(B) = c0 - sum_k c_k * B^{-q_k} log^{l_k} B; returns c0 and a spread-based
// error estimate (full model vs model without its last term).
Fit tail_log_fit(const std::vector<std::pair<double, cplx>>& samples, double p, int nlog) {
    std::vector<std::pair<double, int>> terms;
    for (int k = 0; k <= nlog; ++k) terms.push_back({p, k});
    for (int k = 0; k <= nlog; ++k) terms.push_back({p + 1, k});
    terms.push_back({p + 2, 0});
    while (terms.size() + 1 > samples.size()) terms.pop_back();
    if (terms.size() < 2) return {};

    auto solve = [&](std::size_t nterms, cplx* c0) {
        std::vector<std::vector<long double>> M;
        std::vector<long double> br, bi;
        for (const auto& [B, S] : samples) {
            std::vector<long double> row{1.0L};
            for (std::size_t k = 0; k < nterms; ++k)
                row.push_back(-std::pow(static_cast<long double>(B), -static_cast<long double>(terms[k].first)) *
                              std::pow(std::log(static_cast<long double>(B)), terms[k].second));
            M.push_back(row);
            br.push_back(S.real());
            bi.push_back(S.imag());
        }
        std::vector<long double> xr, xi;
        if (!lstsq(M, br, xr) || !lstsq(M, bi, xi)) return false;
        *c0 = cplx(static_cast<double>(xr[0]), static_cast<double>(xi[0]));
        return true;
    };

    Fit f;
    cplx full, reduced;
    if (!solve(terms.size(), &full)) return {};
    if (!solve(terms.size() - 1, &reduced)) return {};
    f.value = full;
    f.err = 3.0 * std::abs(full - reduced) + 8e-16 * std::abs(full);
    f.ok = true;
    return f;
}

// Aitken delta-squared on three dyadic checkpoints (margin >= 2 regime).
Fit aitken(cplx s0, cplx s1, cplx s2) {
    Fit f;
    cplx d1 = s1 - s0, d2 = s2 - s1;
    if (std::abs(d1) == 0.0 || std::abs(d2) >= 0.95 * std::abs(d1)) {
        f.value = s2;
        f.err = 3.0 * std::abs(d2) + 8e-16 * std::abs(s2);
        f.ok = true;
        return f;
    }
    cplx rho = d2 / d1;
    cplx corr = d2 * rho / (1.0 - rho);
    f.value = s2 + corr;
    f.err = std::max(2.0 * std::abs(corr), 8e-16 * std::abs(f.value));
    f.ok = true;
    return f;
}

// ------------------------- per-level factors -------------------------

struct LevelFactor {
    bool identity = false;        // all exponents zero
    bool int_equal = false;       // integer equal-row: |N(b)|^{-k} with sign
    int k = 0;
    bool int_rows = false;        // per-embedding integer exponents
    std::vector<int> ki;
    std::vector<cplx> si;
};

bool integer_like(cplx s, int* k) {
    double r = std::round(s.real());
    if (s.imag() != 0.0 || std::abs(s.real() - r) > 0 || std::abs(r) > 60) return false;
    *k = static_cast<int>(r);
    return true;
}

std::vector<LevelFactor> build_factors(const EngineSpec& spec) {
    const int n = spec.field.degree();
    const int m = static_cast<int>(spec.cones.size());
    std::vector<LevelFactor> out(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        LevelFactor& lf = out[static_cast<std::size_t>(j)];
        lf.si.resize(static_cast<std::size_t>(n));
        lf.ki.assign(static_cast<std::size_t>(n), 0);
        lf.int_rows = true;
        bool all_zero = true, equal = true;
        for (int i = 0; i < n; ++i) {
            cplx s = spec.s[static_cast<std::size_t>(i * m + j)];
            lf.si[static_cast<std::size_t>(i)] = s;
            int k;
            if (integer_like(s, &k))
                lf.ki[static_cast<std::size_t>(i)] = k;
            else
                lf.int_rows = false;
            if (s != cplx{}) all_zero = false;
            if (s != spec.s[static_cast<std::size_t>(j)]) equal = false;
        }
        lf.identity = all_zero;
        if (lf.int_rows && equal) {
            lf.int_equal = true;
            lf.k = lf.ki[0];
        }
    }
    return out;
}

struct FieldCtx {
    QuadField f;
    cplx w1, w2;          // sigma_i(omega)
    bool half = false;
    std::int64_t d = 0;
    bool rational = true;

    explicit FieldCtx(const QuadField& field) : f(field) {
        rational = field.is_rational();
        if (!rational) {
            w1 = field.omega(1);
            w2 = field.omega(2);
            half = field.half_basis();
            d = field.d();
        }
    }
    double norm_of(std::int64_t x, std::int64_t y) const {
        if (rational) return static_cast<double>(x);
        i128 xx = x, yy = y;
        i128 nb = half ? xx * xx + xx * yy + yy * yy * ((1 - static_cast<i128>(d)) / 4)
                       : xx * xx - static_cast<i128>(d) * yy * yy;
        return static_cast<double>(nb);
    }
    cplx sigma(std::int64_t x, std::int64_t y, int i) const {
        if (rational) return {static_cast<double>(x), 0.0};
        return static_cast<double>(x) + static_cast<double>(y) * (i == 1 ? w1 : w2);
    }
};

double ipow(double base, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

cplx ipow(cplx base, int e) {
    cplx r = 1.0;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

cplx level_factor(const FieldCtx& fc, const LevelFactor& lf, std::int64_t x, std::int64_t y) {
    if (lf.identity) return 1.0;
    if (lf.int_equal) {
        double nb = fc.norm_of(x, y);
        return lf.k >= 0 ? 1.0 / ipow(nb, lf.k) : ipow(nb, -lf.k);
    }
    cplx r = 1.0;
    for (std::size_t i = 0; i < lf.si.size(); ++i) {
        if (lf.si[i] == cplx{}) continue;
        cplx z = fc.sigma(x, y, static_cast<int>(i) + 1);
        int k;
        if (lf.int_rows) {
            k = lf.ki[i];
            r *= k >= 0 ? 1.0 / ipow(z, k) : ipow(z, -k);
        } else {
            r *= std::exp(-lf.si[i] * std::log(z));
        }
    }
    return r;
}

// ------------------------- prechecks -------------------------

bool t_is_zero(const EngineSpec& spec) { return spec.t.t.empty() || spec.t.is_zero(); }

void validate(const EngineSpec& spec) {
    if (spec.cones.empty()) throw std::invalid_argument("no cones");
    const int n = spec.field.degree();
    const int m = static_cast<int>(spec.cones.size());
    if (spec.s.size() != static_cast<std::size_t>(n * m)) throw std::invalid_argument("exponent matrix shape");
    for (const auto& c : spec.cones) {
        if (!(c.field() == spec.field)) throw std::invalid_argument("cone field mismatch");
        if (!is_simple(c, SimplicityMode::operative)) throw std::domain_error("non-simple cone");
    }
    if (!t_is_zero(spec) && spec.t.t.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("sector point dimension");
}

// cut safety for non-integer exponents: the sigma_i-image of the cone must
// avoid the closed nonpositive real axis
void branch_cut_check(const EngineSpec& spec) {
    bool all_int = true;
    int k = 0;
    for (const auto& s : spec.s)
        if (!integer_like(s, &k)) all_int = false;
    if (all_int) return;
    for (const auto& c : spec.cones) {
        for (int i = 1; i <= spec.field.degree(); ++i) {
            if (spec.field.is_real()) {
                for (const auto& g : c.generators())
                    if (embedding_sign(spec.field, g, i) < 0)
                        throw std::domain_error("branch cut: cone meets the negative real axis");
            } else {
                // imaginary: negative real direction inside the closed direction arc
                auto dir_nonpos = [&](const FieldElement& g) {
                    cplx z = embed(spec.field, g, i);
                    return z.imag() == 0.0 && z.real() < 0.0;
                };
                const auto& gens = c.generators();
                for (const auto& g : gens)
                    if (dir_nonpos(g)) throw std::domain_error("branch cut: generator on the negative real axis");
                if (gens.size() == 2) {
                    cplx u = embed(spec.field, gens[0], i), v = embed(spec.field, gens[1], i);
                    double cu = -u.imag(), cv = v.imag();  // cross(u,-1), cross(-1,v)
                    double cw = u.real() * v.imag() - u.imag() * v.real();
                    if (cw < 0) { std::swap(cu, cv); cu = -cu; cv = -cv; }
                    if (cu > 0 && cv > 0)
                        throw std::domain_error("branch cut: cone spans the negative real axis");
                }
            }
        }
    }
}

}  // namespace

double convergence_margin(const EngineSpec& spec) {
    const int n = spec.field.degree();
    const int m = static_cast<int>(spec.cones.size());
    double margin = 1e300;
    double s_suffix = 0.0;
    double rank_suffix = 0.0;
    for (int r = m; r >= 1; --r) {
        for (int i = 0; i < n; ++i) s_suffix += spec.s[static_cast<std::size_t>(i * m + r - 1)].real();
        rank_suffix += spec.cones[static_cast<std::size_t>(r - 1)].rank();
        margin = std::min(margin, s_suffix - rank_suffix);
    }
    return margin;
}

void convergence_precheck(const EngineSpec& spec) {
    if (convergence_margin(spec) <= 0.0)
        throw std::domain_error("divergent spec: comparison test fails (suffix exponent mass <= rank)");
    branch_cut_check(spec);
}

int default_threads() {
    if (const char* env = std::getenv("MDZ_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1 && v <= 256) return v;
    }
    return 1;
}

namespace {

// ------------------------- path 1: K = Q, cones N{1} (MZV shape) -------------------------

bool mzv_shape(const EngineSpec& spec) {
    if (!spec.field.is_rational()) return false;
    for (const auto& c : spec.cones)
        if (c.rank() != 1 || !(c.generators()[0] == FieldElement{1, 0})) return false;
    return true;
}

cplx pow_int_inv(double x, cplx s, bool is_int, int k) {
    if (is_int) return k >= 0 ? 1.0 / ipow(x, k) : ipow(x, -k);
    return std::exp(-s * std::log(x));
}

// windowed forward DP: S(B) = sum over 0<n_1<...<n_m, n_j - n_{j-1} <= B
cplx mzv_dp_value(const EngineSpec& spec, std::int64_t B, std::int64_t* work) {
    const int m = static_cast<int>(spec.cones.size());
    std::vector<cplx> sj(static_cast<std::size_t>(m));
    std::vector<int> kj(static_cast<std::size_t>(m));
    std::vector<bool> intj(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        sj[static_cast<std::size_t>(j)] = spec.s[static_cast<std::size_t>(j)];
        int k;
        intj[static_cast<std::size_t>(j)] = integer_like(sj[static_cast<std::size_t>(j)], &k);
        kj[static_cast<std::size_t>(j)] = intj[static_cast<std::size_t>(j)] ? k : 0;
    }
    const std::int64_t X = static_cast<std::int64_t>(m) * B;
    std::vector<cplx> prev(static_cast<std::size_t>(X + 1)), cur(static_cast<std::size_t>(X + 1));
    // prev = prefix sums of level j values
    for (int j = 0; j < m; ++j) {
        AccC run_re;
        cplx run{};
        for (std::int64_t x = 0; x <= X; ++x) {
            cplx w{};
            if (x >= 1) {
                if (j == 0) {
                    if (x <= B) w = pow_int_inv(static_cast<double>(x), sj[0], intj[0], kj[0]);
                } else {
                    std::int64_t lo = x - B - 1, hi = x - 1;
                    if (hi >= 1) {
                        cplx window = prev[static_cast<std::size_t>(hi)] -
                                      (lo >= 0 ? prev[static_cast<std::size_t>(lo)] : cplx{});
                        w = pow_int_inv(static_cast<double>(x), sj[static_cast<std::size_t>(j)],
                                        intj[static_cast<std::size_t>(j)], kj[static_cast<std::size_t>(j)]) *
                            window;
                    }
                }
            }
            run += w;
            cur[static_cast<std::size_t>(x)] = run;
        }
        *work += X;
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(X)];
}

SumResult eval_mzv_dp(const EngineSpec& spec) {
    const int m = static_cast<int>(spec.cones.size());
    std::int64_t A = spec.A > 0 ? spec.A : (std::int64_t{1} << 19) / std::max(1, m / 2);
    SumResult res;
    // prefix growth exponents kappa and marginal-level count for the tail model
    double kappa = 0.0;
    int nlog = 0;
    for (int j = 0; j + 1 < m; ++j) {
        double raw = kappa + 1.0 - spec.s[static_cast<std::size_t>(j)].real();
        if (std::abs(raw) < 1e-12) ++nlog;
        kappa = std::max(0.0, raw);
    }
    double p = spec.s[static_cast<std::size_t>(m - 1)].real() - 1.0 - kappa;
    nlog = std::max(1, std::min(nlog, 2));

    std::vector<std::pair<double, cplx>> samples;
    const int npts = nlog >= 2 ? 10 : 8;
    for (int k = npts - 1; k >= 0; --k) {
        std::int64_t B = A >> k;
        if (B < 4) continue;
        samples.push_back({static_cast<double>(B), mzv_dp_value(spec, B, &res.terms_used)});
    }
    if (samples.size() >= 4) {
        Fit f = tail_log_fit(samples, p, nlog);
        if (f.ok) {
            res.value = f.value;
            res.tail_bound = f.err;
            res.heuristic_tail = true;
            res.converged = res.tail_bound <= spec.tol;
            return res;
        }
    }
    std::size_t sz = samples.size();
    if (sz >= 3) {
        Fit f = aitken(samples[sz - 3].second, samples[sz - 2].second, samples[sz - 1].second);
        res.value = f.value;
        res.tail_bound = f.err;
    } else if (sz >= 1) {
        res.value = samples.back().second;
        res.tail_bound = std::abs(res.value);
    }
    res.heuristic_tail = true;
    res.converged = res.tail_bound <= spec.tol;
    return res;
}

// ------------------------- path 2: m = 2, equal rank-2 cones -------------------------

bool stream2_shape(const EngineSpec& spec) {
    return !spec.field.is_rational() && spec.cones.size() == 2 && spec.cones[0].rank() == 2 &&
           spec.cones[0] == spec.cones[1];
}

cplx stream2_value(const EngineSpec& spec, const FieldCtx& fc, const std::vector<LevelFactor>& lf,
                   std::int64_t B, std::int64_t* work) {
    const auto& g = spec.cones[0].generators();
    const std::int64_t G = 2 * B;
    auto coords = [&](std::int64_t u, std::int64_t v, std::int64_t* x, std::int64_t* y) {
        *x = u * g[0].x + v * g[1].x;
        *y = u * g[0].y + v * g[1].y;
    };
    std::vector<cplx> colwin(static_cast<std::size_t>(B + 1), cplx{});
    std::vector<cplx> prefix(static_cast<std::size_t>(B + 1), cplx{});
    AccC total;
    for (std::int64_t g2 = 2; g2 <= G; ++g2) {
        std::int64_t badd = g2 - 1, bsub = g2 - 1 - B;
        for (std::int64_t a = 1; a <= B; ++a) {
            std::int64_t x, y;
            if (badd <= B) {
                coords(a, badd, &x, &y);
                colwin[static_cast<std::size_t>(a)] += level_factor(fc, lf[0], x, y);
            }
            if (bsub >= 1) {
                coords(a, bsub, &x, &y);
                colwin[static_cast<std::size_t>(a)] -= level_factor(fc, lf[0], x, y);
            }
        }
        cplx run{};
        for (std::int64_t a = 1; a <= B; ++a) {
            run += colwin[static_cast<std::size_t>(a)];
            prefix[static_cast<std::size_t>(a)] = run;
        }
        for (std::int64_t g1 = 2; g1 <= G; ++g1) {
            std::int64_t hi = std::min(B, g1 - 1), lo = std::max<std::int64_t>(1, g1 - B) - 1;
            cplx U = prefix[static_cast<std::size_t>(hi)] - (lo >= 1 ? prefix[static_cast<std::size_t>(lo)] : cplx{});
            std::int64_t x, y;
            coords(g1, g2, &x, &y);
            total.add(level_factor(fc, lf[1], x, y) * U);
        }
        *work += 3 * G;
    }
    return total.get();
}

// ------------------------- path 3: direct nested loops -------------------------

struct Slot {
    int cone;  // level index
    FieldElement gen;
};

// rigorous geometric tail for sector-mode sums whose level factors have modulus <= 1
double geometric_tail(const EngineSpec& spec, std::int64_t A) {
    const int n = spec.field.degree();
    std::vector<double> r;
    for (const auto& c : spec.cones)
        for (const auto& e : c.generators()) {
            double w = 0.0;
            for (int i = 1; i <= n; ++i)
                w += (embed(spec.field, e, i) * spec.t.t[static_cast<std::size_t>(i - 1)]).real();
            r.push_back(std::exp(-w));
        }
    double full = 1.0;
    for (double v : r) full *= v / (1.0 - v);
    double tail = 0.0;
    for (double v : r) {
        double rest = full / (v / (1.0 - v));
        tail += std::pow(v, static_cast<double>(A + 1)) / (1.0 - v) * rest;
    }
    return tail;
}

SumResult eval_direct(const EngineSpec& spec) {
    const bool tz = t_is_zero(spec);
    const int n = spec.field.degree();
    const int m = static_cast<int>(spec.cones.size());
    FieldCtx fc(spec.field);
    auto lf = build_factors(spec);

    std::vector<Slot> slots;
    for (int j = 0; j < m; ++j)
        for (const auto& g : spec.cones[static_cast<std::size_t>(j)].generators())
            slots.push_back({j, g});
    const int ns = static_cast<int>(slots.size());

    std::int64_t A = spec.A;
    if (A <= 0) A = tz ? (ns <= 2 ? 4000 : 120) : 48;

    // checkpoint thresholds (ascending) for shell bucketing
    std::vector<std::int64_t> Bs{A / 4, 3 * A / 8, A / 2, 3 * A / 4, A};
    Bs.erase(std::remove_if(Bs.begin(), Bs.end(), [](std::int64_t v) { return v < 1; }), Bs.end());
    std::sort(Bs.begin(), Bs.end());
    Bs.erase(std::unique(Bs.begin(), Bs.end()), Bs.end());
    const int nbuck = static_cast<int>(Bs.size());

    constexpr std::int64_t kBlock = 4;
    const std::int64_t nblocks = (A + kBlock - 1) / kBlock;
    std::vector<std::vector<AccC>> partial(static_cast<std::size_t>(nblocks),
                                           std::vector<AccC>(static_cast<std::size_t>(nbuck)));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(nblocks), 0);

    auto run_block = [&](std::int64_t blk) {
        std::vector<std::int64_t> a(static_cast<std::size_t>(ns), 1);
        std::vector<std::int64_t> px(static_cast<std::size_t>(m)), py(static_cast<std::size_t>(m));
        auto& acc = partial[static_cast<std::size_t>(blk)];
        std::int64_t lo = blk * kBlock + 1, hi = std::min(A, (blk + 1) * kBlock);
        for (std::int64_t a0 = lo; a0 <= hi; ++a0) {
            a.assign(static_cast<std::size_t>(ns), 1);
            a[0] = a0;
            while (true) {
                // partial sums per level
                std::int64_t x = 0, y = 0;
                std::int64_t maxc = 0;
                {
                    int sl = 0;
                    for (int j = 0; j < m; ++j) {
                        while (sl < ns && slots[static_cast<std::size_t>(sl)].cone == j) {
                            x += a[static_cast<std::size_t>(sl)] * slots[static_cast<std::size_t>(sl)].gen.x;
                            y += a[static_cast<std::size_t>(sl)] * slots[static_cast<std::size_t>(sl)].gen.y;
                            maxc = std::max(maxc, a[static_cast<std::size_t>(sl)]);
                            ++sl;
                        }
                        px[static_cast<std::size_t>(j)] = x;
                        py[static_cast<std::size_t>(j)] = y;
                    }
                }
                cplx term = 1.0;
                for (int j = 0; j < m; ++j)
                    term *= level_factor(fc, lf[static_cast<std::size_t>(j)], px[static_cast<std::size_t>(j)],
                                         py[static_cast<std::size_t>(j)]);
                if (!tz) {
                    cplx e{};
                    for (int i = 1; i <= n; ++i)
                        e += fc.sigma(px[static_cast<std::size_t>(m - 1)], py[static_cast<std::size_t>(m - 1)], i) *
                             spec.t.t[static_cast<std::size_t>(i - 1)];
                    term *= std::exp(-e);
                }
                int bucket = static_cast<int>(std::lower_bound(Bs.begin(), Bs.end(), maxc) - Bs.begin());
                acc[static_cast<std::size_t>(bucket)].add(term);
                ++counts[static_cast<std::size_t>(blk)];
                // odometer over slots 1..ns-1 (slot 0 pinned to a0)
                int sl = ns - 1;
                while (sl >= 1) {
                    if (++a[static_cast<std::size_t>(sl)] <= A) break;
                    a[static_cast<std::size_t>(sl)] = 1;
                    --sl;
                }
                if (sl < 1) break;
            }
        }
    };

    int nthreads = std::max(1, spec.threads);
    if (nthreads == 1 || nblocks == 1) {
        for (std::int64_t b = 0; b < nblocks; ++b) run_block(b);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        for (int tmo = 0; tmo < std::min<std::int64_t>(nthreads, nblocks); ++tmo)
            pool.emplace_back([&] {
                for (std::int64_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) run_block(b);
            });
        for (auto& th : pool) th.join();
    }

    // deterministic reduction: bucket-major, block order
    std::vector<cplx> cum(static_cast<std::size_t>(nbuck));
    {
        AccC run;
        for (int bu = 0; bu < nbuck; ++bu) {
            for (std::int64_t bl = 0; bl < nblocks; ++bl)
                run.add(partial[static_cast<std::size_t>(bl)][static_cast<std::size_t>(bu)].get());
            cum[static_cast<std::size_t>(bu)] = run.get();
        }
    }
    SumResult res;
    for (std::int64_t c : counts) res.terms_used += c;
    res.value = cum.back();

    if (!tz) {
        bool contractive = true;
        for (const auto& f : lf)
            if (!(f.identity || (f.int_equal && f.k >= 0))) contractive = false;
        if (contractive) {
            res.tail_bound = geometric_tail(spec, A);
            res.heuristic_tail = false;
            res.converged = res.tail_bound <= spec.tol;
            return res;
        }
    }
    // heuristic tails: Aitken for comfortable margins, log-aware fit otherwise
    double margin = tz ? convergence_margin(spec) : 3.0;
    Fit f;
    if (margin <= 2.5 && nbuck >= 5) {
        std::vector<std::pair<double, cplx>> samples;
        for (int bu = 0; bu < nbuck; ++bu)
            samples.push_back({static_cast<double>(Bs[static_cast<std::size_t>(bu)]), cum[static_cast<std::size_t>(bu)]});
        f = tail_log_fit(samples, margin, 1);
    }
    if (!f.ok && nbuck >= 3)
        f = aitken(cum[0], cum[static_cast<std::size_t>(nbuck / 2)], cum.back());
    if (f.ok) {
        res.value = f.value;
        res.tail_bound = f.err;
    } else {
        res.tail_bound = std::abs(res.value);
    }
    res.heuristic_tail = true;
    res.converged = res.tail_bound <= spec.tol;
    return res;
}

SumResult eval_stream2(const EngineSpec& spec) {
    FieldCtx fc(spec.field);
    auto lf = build_factors(spec);
    std::int64_t A = spec.A > 0 ? spec.A : 1536;
    std::vector<std::int64_t> Bs{A / 4, 3 * A / 8, A / 2, 3 * A / 4, A};
    Bs.erase(std::remove_if(Bs.begin(), Bs.end(), [](std::int64_t v) { return v < 2; }), Bs.end());
    std::sort(Bs.begin(), Bs.end());
    Bs.erase(std::unique(Bs.begin(), Bs.end()), Bs.end());

    SumResult res;
    std::vector<std::pair<double, cplx>> samples;
    for (std::int64_t B : Bs)
        samples.push_back({static_cast<double>(B), stream2_value(spec, fc, lf, B, &res.terms_used)});

    double margin = convergence_margin(spec);
    Fit f;
    if (margin <= 2.5 && samples.size() >= 5) f = tail_log_fit(samples, margin, 1);
    if (!f.ok && samples.size() >= 3)
        f = aitken(samples[0].second, samples[samples.size() / 2].second, samples.back().second);
    if (f.ok) {
        res.value = f.value;
        res.tail_bound = f.err;
    } else {
        res.value = samples.empty() ? cplx{} : samples.back().second;
        res.tail_bound = std::abs(res.value);
    }
    res.heuristic_tail = true;
    res.converged = res.tail_bound <= spec.tol;
    return res;
}

}  // namespace

SumResult eval_nested(const EngineSpec& spec) {
    validate(spec);
    const bool tz = t_is_zero(spec);
    if (!tz) {
        for (const auto& c : spec.cones)
            if (!in_sector(c, spec.t)) throw std::domain_error("sector violated: Re(sigma_i(e_j) t_i) <= 0");
        branch_cut_check(spec);
    } else {
        convergence_precheck(spec);
    }
    if (tz && mzv_shape(spec)) return eval_mzv_dp(spec);
    if (tz && stream2_shape(spec)) return eval_stream2(spec);
    return eval_direct(spec);
}

}  // namespace mdz::detail
