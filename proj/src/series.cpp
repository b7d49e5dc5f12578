#include "mdz/series.hpp"

#include <cmath>
#include <stdexcept>

#include "mdz/detail/sum_engine.hpp"

namespace mdz {

namespace {

// exp(v) - 1, stable for small |v| and safe against overflow of exp(Re v)
cplx cexpm1(cplx v) {
    double a = v.real(), b = v.imag();
    if (a > 40.0) return std::exp(cplx(std::min(a, 700.0), 0.0)) * cplx(std::cos(b), std::sin(b)) - 1.0;
    double s = std::sin(b / 2);
    return {std::expm1(a) * std::cos(b) - 2.0 * s * s, std::exp(a) * std::sin(b)};
}

detail::EngineSpec make_spec(const QuadField& f, std::vector<Cone> cones, std::vector<cplx> s,
                             const SectorPoint& t, std::int64_t A) {
    detail::EngineSpec spec;
    spec.field = f;
    spec.cones = std::move(cones);
    spec.s = std::move(s);
    spec.t = t;
    spec.A = A;
    spec.threads = detail::default_threads();
    return spec;
}

}  // namespace

bool in_sector(const Cone& c, const SectorPoint& t) {
    const QuadField& f = c.field();
    if (t.t.size() != static_cast<std::size_t>(f.degree())) throw std::invalid_argument("sector point dimension");
    for (int i = 1; i <= f.degree(); ++i)
        for (int j = 1; j <= c.rank(); ++j)
            if ((c.embedded_generator(i, j) * t.t[static_cast<std::size_t>(i - 1)]).real() <= 0.0) return false;
    return true;
}

SumResult f0_sum(const Cone& c, const SectorPoint& t, std::int64_t A) {
    if (t.is_zero()) throw std::domain_error("f0 diverges at t = 0");
    std::vector<cplx> s(static_cast<std::size_t>(c.field().degree()), cplx{});
    return detail::eval_nested(make_spec(c.field(), {c}, std::move(s), t, A));
}

cplx f0_product(const Cone& c, const SectorPoint& t) {
    const QuadField& f = c.field();
    if (t.t.size() != static_cast<std::size_t>(f.degree())) throw std::invalid_argument("sector point dimension");
    cplx prod = 1.0;
    for (int j = 1; j <= c.rank(); ++j) {
        cplx v{};
        for (int i = 1; i <= f.degree(); ++i) v += c.embedded_generator(i, j) * t.t[static_cast<std::size_t>(i - 1)];
        cplx em = cexpm1(v);  // y/(1-y) = 1/(e^v - 1)
        if (std::abs(em) < 1e-12) throw std::domain_error("pole: sum_i sigma_i(e_j) t_i in 2 pi i Z");
        prod /= em;
    }
    return prod;
}

SumResult fm(const Cone& c, int m, const SectorPoint& t, std::int64_t A) {
    if (m < 0) throw std::invalid_argument("m must be >= 0");
    std::vector<cplx> s(static_cast<std::size_t>(c.field().degree()), cplx(static_cast<double>(m), 0.0));
    return detail::eval_nested(make_spec(c.field(), {c}, std::move(s), t, A));
}

SumResult f_multi(const std::vector<Cone>& cones, const std::vector<int>& exponents, const SectorPoint& t,
                  std::int64_t A) {
    if (cones.empty() || cones.size() != exponents.size()) throw std::invalid_argument("cones/exponents shape");
    const QuadField& f = cones[0].field();
    const int n = f.degree();
    const int m = static_cast<int>(cones.size());
    std::vector<cplx> s(static_cast<std::size_t>(n * m));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            s[static_cast<std::size_t>(i * m + j)] = cplx(static_cast<double>(exponents[static_cast<std::size_t>(j)]), 0.0);
    return detail::eval_nested(make_spec(f, cones, std::move(s), t, A));
}

cplx dedekind_polylog(const Cone& c, int m, const std::vector<cplx>& X, std::int64_t A) {
    const int n = c.field().degree();
    if (static_cast<int>(X.size()) != n) throw std::invalid_argument("X dimension");
    SectorPoint t = SectorPoint::zero(n);
    for (int i = 0; i < n; ++i) {
        if (X[static_cast<std::size_t>(i)].imag() == 0.0 && X[static_cast<std::size_t>(i)].real() <= 0.0)
            throw std::domain_error("branch cut: X on the nonpositive real axis");
        t.t[static_cast<std::size_t>(i)] = -std::log(X[static_cast<std::size_t>(i)]);
    }
    return fm(c, m, t, A).value;
}

SumResult dedekind_zeta_via_cones(const QuadField& f, int m, std::int64_t A) {
    if (m < 2) throw std::invalid_argument("zeta_K(m) needs m >= 2");
    if (!f.is_rational()) {
        // class number 1 guard (Dedekind zeta = partial zeta over the principal class)
        static const std::int64_t imag_h1[] = {-1, -2, -3, -7, -11, -19, -43, -67, -163};
        static const std::int64_t real_h1[] = {2,  3,  5,  6,  7,  11, 13, 14, 17, 19, 21, 22, 23,
                                               29, 31, 33, 37, 38, 41, 43, 46, 47, 53, 57, 59, 61,
                                               62, 67, 69, 71, 73, 77, 83, 86, 89, 93, 94, 97};
        bool ok = false;
        for (auto d : imag_h1) ok = ok || d == f.d();
        for (auto d : real_h1) ok = ok || d == f.d();
        if (!ok) throw std::domain_error("unsupported field: class number 1 required");
    }
    ConeDecomposition dec = fundamental_domain(f);
    SumResult total;
    total.converged = true;
    SectorPoint zero = SectorPoint::zero(f.degree());
    for (std::size_t k = 0; k < dec.cones.size(); ++k) {
        SumResult part = fm(dec.cones[k], m, zero, A);
        double w = (dec.signs[k] == -1 && (m % 2)) ? -1.0 : 1.0;
        total.value += w * part.value;
        total.tail_bound += part.tail_bound;
        total.terms_used += part.terms_used;
        total.converged = total.converged && part.converged;
        total.heuristic_tail = total.heuristic_tail || part.heuristic_tail;
    }
    return total;
}

}  // namespace mdz
