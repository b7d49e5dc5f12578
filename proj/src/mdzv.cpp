#include "mdz/mdzv.hpp"

#include <algorithm>
#include <stdexcept>

#include "mdz/detail/sum_engine.hpp"

namespace mdz {

ExponentMatrix ExponentMatrix::constant_rows(int n, const std::vector<cplx>& row) {
    ExponentMatrix e(n, static_cast<int>(row.size()));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < e.cols; ++j) e.at(i, j) = row[static_cast<std::size_t>(j)];
    return e;
}

void MdzvSpec::validate() const {
    if (cones.empty()) throw std::invalid_argument("spec needs at least one cone");
    if (exponents.rows != field.degree() || exponents.cols != static_cast<int>(cones.size()))
        throw std::invalid_argument("exponent matrix shape mismatch");
    for (const auto& c : cones) {
        if (!(c.field() == field)) throw std::invalid_argument("cone field mismatch");
        if (!is_unimodular(c)) throw std::invalid_argument("cone not unimodular");
        if (!is_simple(c)) throw std::domain_error("non-simple cone");
    }
}

std::vector<std::vector<int>> enumerate_shuffles(int p, int q, ShuffleVariant variant) {
    if (p < 1 || q < 0) throw std::invalid_argument("need p >= 1, q >= 0");
    std::vector<std::vector<int>> out;
    // choose the positions of block {1..p} inside {1..p+q}
    std::vector<int> pos(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) pos[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
        std::vector<int> tau(static_cast<std::size_t>(p + q));
        std::vector<bool> used(static_cast<std::size_t>(p + q) + 1, false);
        for (int i = 0; i < p; ++i) {
            tau[static_cast<std::size_t>(i)] = pos[static_cast<std::size_t>(i)];
            used[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])] = true;
        }
        int next = 1;
        for (int i = 0; i < q; ++i) {
            while (used[static_cast<std::size_t>(next)]) ++next;
            tau[static_cast<std::size_t>(p + i)] = next;
            used[static_cast<std::size_t>(next)] = true;
        }
        if (variant == ShuffleVariant::all || tau[0] == 1) out.push_back(tau);
        // next combination
        int i = p - 1;
        while (i >= 0 && pos[static_cast<std::size_t>(i)] == q + i + 1) --i;
        if (i < 0) break;
        ++pos[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < p; ++j) pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

ExponentMatrix shuffle_to_exponents(const ShuffleSpec& s) {
    const int n = static_cast<int>(s.m_i.size());
    if (s.m < 1 || n < 1 || s.tau_i.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("malformed shuffle spec");
    ExponentMatrix e(n, s.m);
    for (int i = 0; i < n; ++i) {
        const auto& tau = s.tau_i[static_cast<std::size_t>(i)];
        const int mi = s.m_i[static_cast<std::size_t>(i)];
        if (static_cast<int>(tau.size()) != s.m + mi) throw std::invalid_argument("malformed shuffle spec");
        // validity: permutation, order-preserving on both blocks, tau(1) = 1
        std::vector<bool> seen(tau.size() + 1, false);
        for (int v : tau) {
            if (v < 1 || v > static_cast<int>(tau.size()) || seen[static_cast<std::size_t>(v)])
                throw std::invalid_argument("malformed shuffle spec");
            seen[static_cast<std::size_t>(v)] = true;
        }
        for (int a = 1; a < s.m; ++a)
            if (tau[static_cast<std::size_t>(a - 1)] >= tau[static_cast<std::size_t>(a)])
                throw std::invalid_argument("shuffle not order-preserving on S");
        for (int a = s.m + 1; a < s.m + mi; ++a)
            if (tau[static_cast<std::size_t>(a - 1)] >= tau[static_cast<std::size_t>(a)])
                throw std::invalid_argument("shuffle not order-preserving on S_i");
        if (tau[0] != 1) throw std::invalid_argument("Sh^1 requires tau(1) = 1");
        // k_ij = q_{j+1} - q_j, q_{m+1} = m + m_i + 1
        for (int j = 0; j < s.m; ++j) {
            int qj = tau[static_cast<std::size_t>(j)];
            int qn = (j + 1 < s.m) ? tau[static_cast<std::size_t>(j + 1)] : s.m + mi + 1;
            e.at(i, j) = cplx(static_cast<double>(qn - qj), 0.0);
        }
    }
    return e;
}

namespace {

detail::EngineSpec to_engine(const MdzvSpec& spec) {
    detail::EngineSpec es;
    es.field = spec.field;
    es.cones = spec.cones;
    es.s = spec.exponents.s;
    es.A = spec.params.A;
    es.tol = spec.params.tol;
    es.threads = spec.params.threads > 0 ? spec.params.threads : detail::default_threads();
    return es;
}

}  // namespace

SumResult mdzv_eval(const MdzvSpec& spec) {
    spec.validate();
    return detail::eval_nested(to_engine(spec));
}

SumResult mzv_eval(const std::vector<cplx>& s, const EvalParams& params) {
    if (s.empty()) throw std::invalid_argument("empty exponent list");
    MdzvSpec spec;
    spec.field = QuadField::rationals();
    for (std::size_t j = 0; j < s.size(); ++j)
        spec.cones.emplace_back(spec.field, std::vector<FieldElement>{{1, 0}});
    spec.exponents = ExponentMatrix(1, static_cast<int>(s.size()));
    for (std::size_t j = 0; j < s.size(); ++j) spec.exponents.at(0, static_cast<int>(j)) = s[j];
    spec.params = params;
    return mdzv_eval(spec);
}

SumResult eisenstein_partial(const QuadField& f, const Cone& c, int k, int embedding, const EvalParams& params) {
    if (k <= 2) throw std::domain_error("eisenstein_partial needs k >= 3");
    if (embedding < 1 || embedding > f.degree()) throw std::out_of_range("embedding index");
    detail::EngineSpec es;
    es.field = f;
    es.cones = {c};
    es.s.assign(static_cast<std::size_t>(f.degree()), cplx{});
    es.s[static_cast<std::size_t>(embedding - 1)] = cplx(static_cast<double>(k), 0.0);
    es.A = params.A;
    es.tol = params.tol;
    es.threads = params.threads > 0 ? params.threads : detail::default_threads();
    return detail::eval_nested(es);
}

SumResult multiple_eisenstein(const QuadField& f, const Cone& c, int k, int l, int embedding,
                              const EvalParams& params) {
    if (k <= 2 || l <= 2) throw std::domain_error("multiple_eisenstein needs k, l >= 3");
    if (embedding < 1 || embedding > f.degree()) throw std::out_of_range("embedding index");
    detail::EngineSpec es;
    es.field = f;
    es.cones = {c, c};
    es.s.assign(static_cast<std::size_t>(2 * f.degree()), cplx{});
    es.s[static_cast<std::size_t>(2 * (embedding - 1) + 0)] = cplx(static_cast<double>(k), 0.0);
    es.s[static_cast<std::size_t>(2 * (embedding - 1) + 1)] = cplx(static_cast<double>(l), 0.0);
    es.A = params.A;
    es.tol = params.tol;
    es.threads = params.threads > 0 ? params.threads : detail::default_threads();
    return detail::eval_nested(es);
}

SumResult eisenstein_kronecker(const QuadField& f, const Cone& c, int k, int l, const EvalParams& params) {
    MdzvSpec spec;
    spec.field = f;
    spec.cones = {c, c};
    spec.exponents = ExponentMatrix::constant_rows(f.degree(), {cplx(static_cast<double>(k), 0.0),
                                                                cplx(static_cast<double>(l), 0.0)});
    spec.params = params;
    return mdzv_eval(spec);
}

}  // namespace mdz
