#include "mdz/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace mdz::oracle {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// B_2, B_4, ..., B_24
constexpr double kBernoulli[] = {1.0 / 6,           -1.0 / 30,         1.0 / 42,         -1.0 / 30,
                                 5.0 / 66,          -691.0 / 2730,     7.0 / 6,          -3617.0 / 510,
                                 43867.0 / 798,     -174611.0 / 330,   854513.0 / 138,   -236364091.0 / 2730};

cplx cexpm1(cplx v) {
    double a = v.real(), b = v.imag();
    if (a > 40.0) return std::exp(cplx(std::min(a, 700.0), 0.0)) * cplx(std::cos(b), std::sin(b)) - 1.0;
    double s = std::sin(b / 2);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

}  // namespace

cplx hurwitz_zeta(cplx s, double a) {
    if (s.real() <= 1.0 && s == cplx(1.0, 0.0)) throw std::domain_error("zeta(1) pole");
    if (s.real() <= 1.0) throw std::domain_error("hurwitz_zeta needs Re s > 1");
    if (a <= 0.0) throw std::domain_error("hurwitz_zeta needs a > 0");
    const int N = 24;
    cplx sum{};
    for (int k = 0; k < N; ++k) sum += std::pow(cplx(a + k, 0.0), -s);
    double x = a + N;
    sum += std::pow(cplx(x, 0.0), 1.0 - s) / (s - 1.0);
    sum += 0.5 * std::pow(cplx(x, 0.0), -s);
    // Bernoulli correction: sum_j B_2j/(2j)! * (s)(s+1)..(s+2j-2) * x^{-s-2j+1}
    cplx rising = s;  // (s)_{1}
    double fact = 2.0;
    for (int j = 1; j <= 12; ++j) {
        sum += kBernoulli[j - 1] / fact * rising * std::pow(cplx(x, 0.0), -s - (2.0 * j - 1.0));
        rising *= (s + cplx(2.0 * j - 1.0, 0.0)) * (s + cplx(2.0 * j, 0.0));
        fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    }
    return sum;
}

cplx riemann_zeta(cplx s) {
    if (s.real() <= 1.0) throw std::domain_error("riemann_zeta needs Re s > 1");
    return hurwitz_zeta(s, 1.0);
}

int kronecker_symbol(std::int64_t D, std::int64_t n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int r = 1;
    if (n < 0) {
        n = -n;
        if (D < 0) r = -r;
    }
    while (n % 2 == 0) {
        n /= 2;
        if (D % 2 == 0) return 0;
        std::int64_t m = ((D % 8) + 8) % 8;
        if (m == 3 || m == 5) r = -r;
    }
    if (n == 1) return r;
    // Jacobi symbol (D mod n / n), n odd > 1
    std::int64_t a = ((D % n) + n) % n;
    std::int64_t q = n;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t m = q % 8;
            if (m == 3 || m == 5) r = -r;
        }
        std::swap(a, q);
        if (a % 4 == 3 && q % 4 == 3) r = -r;
        a %= q;
    }
    return q == 1 ? r : 0;
}

double digamma(double x) {
    if (x <= 0.0) throw std::domain_error("digamma needs x > 0");
    double acc = 0.0;
    while (x < 12.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x, inv2 = inv * inv;
    double r = std::log(x) - 0.5 * inv;
    double p = inv2;
    const double coef[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760, 1.0 / 12};
    for (double c : coef) {
        r -= c * p;
        p *= inv2;
    }
    return acc + r;
}

cplx dirichlet_L(cplx s, std::int64_t D) {
    if (D == 0 || D == 1) throw std::invalid_argument("unsupported character: need a fundamental discriminant");
    std::int64_t q = D < 0 ? -D : D;
    if (s == cplx(1.0, 0.0)) {
        double sum = 0.0;
        for (std::int64_t r = 1; r <= q; ++r) {
            int chi = kronecker_symbol(D, r);
            if (chi) sum += chi * digamma(static_cast<double>(r) / static_cast<double>(q));
        }
        return cplx(-sum / static_cast<double>(q), 0.0);
    }
    if (s.real() <= 1.0) throw std::domain_error("dirichlet_L needs Re s > 1 (or s = 1)");
    cplx sum{};
    for (std::int64_t r = 1; r <= q; ++r) {
        int chi = kronecker_symbol(D, r);
        if (chi) sum += static_cast<double>(chi) * hurwitz_zeta(s, static_cast<double>(r) / static_cast<double>(q));
    }
    return sum * std::pow(cplx(static_cast<double>(q), 0.0), -s);
}

cplx gamma_lanczos(cplx s) {
    // Godfrey's g = 607/128 table
    static const double g = 4.7421875;
    static const double c[] = {0.99999999999999709182,
                               57.156235665862923517,
                               -59.597960355475491248,
                               14.136097974741747174,
                               -0.49191381609762019978,
                               3.3994649984811888699e-5,
                               4.6523628927048575665e-5,
                               -9.8374475304879564677e-5,
                               1.5808870322491248884e-4,
                               -2.1026444172410488319e-4,
                               2.1743961811521264320e-4,
                               -1.6431810653676389022e-4,
                               8.4418223983852743293e-5,
                               -2.6190838401581408670e-5,
                               3.6899182659531622704e-6};
    if (s.real() < 0.5) {
        // reflection
        return kPi / (std::sin(kPi * s) * gamma_lanczos(1.0 - s));
    }
    cplx z = s - 1.0;
    cplx a = c[0];
    for (int k = 1; k < 15; ++k) a += c[k] / (z + static_cast<double>(k));
    cplx t = z + g + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

// ------------------------- brute-force lattice sums -------------------------

namespace {

// fit const + (c1 + c2 logB) B^-p + (c3 + c4 logB) B^-p-1 by Gaussian elimination
bool exact_fit(const std::vector<std::pair<double, cplx>>& pts, double p, cplx* c0) {
    const std::size_t n = pts.size();
    if (n < 3) return false;
    std::size_t nt = std::min<std::size_t>(n, 5);
    auto term = [&](double B, std::size_t k) -> long double {
        long double lb = std::log(static_cast<long double>(B));
        switch (k) {
            case 0: return 1.0L;
            case 1: return -std::pow(static_cast<long double>(B), -static_cast<long double>(p));
            case 2: return -std::pow(static_cast<long double>(B), -static_cast<long double>(p)) * lb;
            case 3: return -std::pow(static_cast<long double>(B), -static_cast<long double>(p + 1));
            default: return -std::pow(static_cast<long double>(B), -static_cast<long double>(p + 1)) * lb;
        }
    };
    // use the last nt points
    std::vector<std::vector<long double>> M(nt, std::vector<long double>(nt + 2));
    for (std::size_t r = 0; r < nt; ++r) {
        const auto& [B, S] = pts[n - nt + r];
        for (std::size_t k = 0; k < nt; ++k) M[r][k] = term(B, k);
        M[r][nt] = S.real();
        M[r][nt + 1] = S.imag();
    }
    for (std::size_t k = 0; k < nt; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < nt; ++r)
            if (std::abs(M[r][k]) > std::abs(M[piv][k])) piv = r;
        std::swap(M[k], M[piv]);
        if (std::abs(M[k][k]) < 1e-280L) return false;
        for (std::size_t r = 0; r < nt; ++r) {
            if (r == k) continue;
            long double f = M[r][k] / M[k][k];
            for (std::size_t cidx = k; cidx < nt + 2; ++cidx) M[r][cidx] -= f * M[k][cidx];
        }
    }
    *c0 = cplx(static_cast<double>(M[0][nt] / M[0][0]), static_cast<double>(M[0][nt + 1] / M[0][0]));
    return true;
}

}  // namespace

namespace detail {

BruteResult finish_brute(std::vector<std::pair<double, cplx>> S, double p) {
    BruteResult out;
    out.raw = S.back().second;
    // Aitken on the dyadic triple (first, middle, last)
    cplx s0 = S.front().second, s1 = S[S.size() / 2].second, s2 = S.back().second;
    cplx d1 = s1 - s0, d2 = s2 - s1;
    cplx ait = s2;
    if (std::abs(d1) > 0 && std::abs(d2) < 0.95 * std::abs(d1)) {
        cplx rho = d2 / d1;
        ait = s2 + d2 * rho / (1.0 - rho);
    }
    cplx fit;
    if (p <= 2.0 && exact_fit(S, p, &fit)) {
        out.value = fit;
        out.tail = 2.0 * std::abs(fit - ait) + 1e-15 * std::abs(fit);
    } else {
        out.value = ait;
        out.tail = 2.0 * std::abs(ait - s2) + 1e-15 * std::abs(ait);
    }
    return out;
}

}  // namespace detail

// ------------------------- quadrature -------------------------

QuadratureGrid QuadratureGrid::make(double h, double tneg, double tpos) {
    QuadratureGrid g;
    for (int k = static_cast<int>(tneg / h); k <= static_cast<int>(tpos / h); ++k) {
        double t = k * h;
        double u = std::exp(0.5 * kPi * std::sinh(t));
        double w = h * 0.5 * kPi * std::cosh(t) * u;
        g.nodes.push_back(u);
        g.weights.push_back(w);
    }
    return g;
}

double QuadratureGrid::self_calibration() const {
    double s = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) s += weights[k] * std::exp(-nodes[k]);
    return std::abs(s - 1.0);
}

cplx quadrature_mdzf(const MdzvSpec& spec) {
    spec.validate();
    const int n = spec.field.degree();
    const int m = static_cast<int>(spec.cones.size());
    if (n * m > 4) throw std::invalid_argument("quadrature_mdzf: dimension m*n > 4");
    for (const auto& s : spec.exponents.s) {
        if (s.imag() != 0.0) throw std::invalid_argument("quadrature_mdzf: real exponents only");
        if (s.real() <= 0.0) throw std::domain_error("quadrature_mdzf: exponents must be positive");
    }
    {
        double suffix = 0.0, ranks = 0.0;
        for (int r = m; r >= 1; --r) {
            for (int i = 0; i < n; ++i) suffix += spec.exponents.at(i, r - 1).real();
            ranks += spec.cones[static_cast<std::size_t>(r - 1)].rank();
            if (suffix <= ranks) throw std::domain_error("quadrature_mdzf: outside the convergence region");
        }
    }

    // contour direction per embedding: center of the intersected sector
    std::vector<cplx> rot(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        double amin = 1e9, amax = -1e9;
        for (const auto& c : spec.cones)
            for (int j = 1; j <= c.rank(); ++j) {
                double a = std::arg(c.embedded_generator(i, j));
                amin = std::min(amin, a);
                amax = std::max(amax, a);
            }
        if (amax - amin >= kPi) throw std::domain_error("quadrature_mdzf: no common sector");
        rot[static_cast<std::size_t>(i - 1)] = std::polar(1.0, -(amin + amax) / 2.0);
    }

    QuadratureGrid grid = (n * m <= 2) ? QuadratureGrid::make(0.08, -4.2, 3.2)
                                       : QuadratureGrid::make(0.11, -4.1, 3.1);
    const std::size_t K = grid.nodes.size();
    const int dims = n * m;  // index (i,j) -> i*m + j

    cplx pref = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) {
            cplx s = spec.exponents.at(i, j);
            pref *= std::pow(rot[static_cast<std::size_t>(i)], s) / gamma_lanczos(s);
        }

    std::vector<std::size_t> idx(static_cast<std::size_t>(dims), 0);
    cplx total{};
    std::vector<double> rho(static_cast<std::size_t>(dims));
    while (true) {
        double wprod = 1.0;
        for (int dpos = 0; dpos < dims; ++dpos) {
            rho[static_cast<std::size_t>(dpos)] = grid.nodes[idx[static_cast<std::size_t>(dpos)]];
            wprod *= grid.weights[idx[static_cast<std::size_t>(dpos)]];
        }
        cplx f = 1.0;
        for (int j = 0; j < m && f != cplx{}; ++j) {
            const Cone& c = spec.cones[static_cast<std::size_t>(j)];
            // t_i^j = rot_i * (rho_{i,j} + ... + rho_{i,m-1})
            for (int jj = 1; jj <= c.rank(); ++jj) {
                cplx v{};
                for (int i = 0; i < n; ++i) {
                    double radial = 0.0;
                    for (int j2 = j; j2 < m; ++j2) radial += rho[static_cast<std::size_t>(i * m + j2)];
                    v += c.embedded_generator(i + 1, jj) * (rot[static_cast<std::size_t>(i)] * radial);
                }
                cplx em = cexpm1(v);
                // v -> 0 is integrable against the u^{s-1} factors; only a
                // nonzero pole 2 pi i k on the contour is fatal
                if (std::abs(em) < 1e-12 && std::abs(v) > 1.0)
                    throw std::domain_error("quadrature_mdzf: pole on grid");
                f /= em;
            }
        }
        double powprod = 1.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                double s = spec.exponents.at(i, j).real();
                powprod *= std::pow(rho[static_cast<std::size_t>(i * m + j)], s - 1.0);
            }
        total += wprod * powprod * f;
        int dpos = dims - 1;
        while (dpos >= 0) {
            if (++idx[static_cast<std::size_t>(dpos)] < K) break;
            idx[static_cast<std::size_t>(dpos)] = 0;
            --dpos;
        }
        if (dpos < 0) break;
    }
    return pref * total;
}

double simplex_volume_check(int n, double a, double b) {
    if (n < 1 || n > 6 || b <= a) throw std::invalid_argument("simplex_volume_check: bad arguments");
    const int M = 4096;
    double h = (b - a) / M;
    std::vector<double> prev(M + 1, 1.0), cur(M + 1);
    for (int level = 1; level <= n; ++level) {
        cur[0] = 0.0;
        for (int k = 1; k <= M; ++k) cur[k] = cur[k - 1] + 0.5 * h * (prev[k - 1] + prev[k]);
        std::swap(prev, cur);
    }
    return prev[M];
}

}  // namespace mdz::oracle
