#include "mdz/cone.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace mdz {

namespace {

using i128 = __int128;

int sgn(i128 v) { return (v > 0) - (v < 0); }

// sigma_1(e) = (P + Q*sqrt(|d|)*unit)/2 with unit = 1 (real) or i (imaginary).
// sigma_2 flips the sign of Q.
struct Dir {
    i128 p, q;
};

Dir direction(const QuadField& f, const FieldElement& e, int i) {
    i128 p = f.half_basis() ? 2 * static_cast<i128>(e.x) + e.y : 2 * static_cast<i128>(e.x);
    i128 q = f.half_basis() ? static_cast<i128>(e.y) : 2 * static_cast<i128>(e.y);
    if (i == 2) q = -q;
    return {p, q};
}

// sign of the planar cross product of two sigma_1-images (imaginary quadratic)
int cross_sign(const Dir& u, const Dir& v) { return sgn(u.p * v.q - u.q * v.p); }

int dot_sign(const Dir& u, const Dir& v, std::int64_t D) {
    return sgn(u.p * v.p + static_cast<i128>(D) * u.q * v.q);
}

// sign of sigma_1(u)sigma_2(v) - sigma_2(u)sigma_1(v) for a real quadratic field
int sigma_cross_sign(const QuadField& f, const FieldElement& u, const FieldElement& v) {
    Dir a = direction(f, u, 1), b = direction(f, v, 1);
    return sgn(a.q * b.p - a.p * b.q);
}

[[maybe_unused]] int sigma_dot_sign(const QuadField& f, const FieldElement& u, const FieldElement& v) {
    Dir a = direction(f, u, 1), b = direction(f, v, 1);
    return sgn(a.p * b.p + static_cast<i128>(f.d()) * a.q * b.q);
}

bool strictly_inside(const Dir& w, const Dir& a, const Dir& b) {
    // open planar cone spanned by a,b (positively oriented)
    return cross_sign(a, w) > 0 && cross_sign(w, b) > 0;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

}  // namespace

Cone::Cone(const QuadField& field, std::vector<FieldElement> generators)
    : field_(field), gens_(std::move(generators)) {
    if (gens_.empty() || static_cast<int>(gens_.size()) > field_.degree())
        throw std::invalid_argument("cone needs 1..n generators");
    for (const auto& g : gens_) {
        if (g.is_zero()) throw std::invalid_argument("cone generator must be nonzero");
        if (field_.is_rational() && g.y != 0) throw std::invalid_argument("rational element with y != 0");
    }
    emb_.resize(static_cast<std::size_t>(field_.degree()) * gens_.size());
    for (int i = 1; i <= field_.degree(); ++i)
        for (std::size_t j = 0; j < gens_.size(); ++j)
            emb_[(i - 1) * gens_.size() + j] = embed(field_, gens_[j], i);
}

bool is_unimodular(const Cone& c) {
    const auto& g = c.generators();
    if (c.field().is_rational()) return g[0].x == 1 || g[0].x == -1;
    if (g.size() == 2) {
        i128 det = static_cast<i128>(g[0].x) * g[1].y - static_cast<i128>(g[0].y) * g[1].x;
        return det == 1 || det == -1;
    }
    return gcd64(g[0].x, g[0].y) == 1;
}

bool is_simple(const Cone& c, SimplicityMode mode) {
    const QuadField& f = c.field();
    const auto& g = c.generators();

    // operative: per embedding, all generator directions in a common open half-plane
    bool operative = true;
    for (int i = 1; i <= f.degree() && operative; ++i) {
        if (f.is_real()) {
            int s0 = embedding_sign(f, g[0], i);
            for (const auto& e : g)
                if (embedding_sign(f, e, i) != s0) { operative = false; break; }
        } else if (g.size() == 2) {
            Dir u = direction(f, g[0], i), v = direction(f, g[1], i);
            int cr = cross_sign(u, v);
            if (cr == 0 && dot_sign(u, v, -f.d()) <= 0) operative = false;
        }
    }
    if (mode == SimplicityMode::operative || !operative) return operative;

    // strict: additionally no cone points alpha, beta with
    // arg sigma_i(alpha) = -arg sigma_i(beta).
    if (f.is_real()) return false;  // every point is real at a real embedding: alpha=beta fails it
    Dir u1 = direction(f, g[0], 1);
    if (g.size() == 1) return u1.q != 0;
    Dir u2 = direction(f, g[1], 1);
    int cr = cross_sign(u1, u2);
    if (cr == 0) return u1.q != 0;  // all points share one direction
    if (cr < 0) std::swap(u1, u2);
    Dir v1{u1.p, -u1.q}, v2{u2.p, -u2.q};  // conjugate cone
    if (cross_sign(v1, v2) < 0) std::swap(v1, v2);
    bool meet = strictly_inside(v1, u1, u2) || strictly_inside(v2, u1, u2) ||
                strictly_inside(u1, v1, v2) || strictly_inside(u2, v1, v2) ||
                (cross_sign(u1, v1) == 0 && dot_sign(u1, v1, -f.d()) > 0 &&
                 cross_sign(u2, v2) == 0 && dot_sign(u2, v2, -f.d()) > 0);
    return !meet;
}

int sign_epsilon(const Cone& c) {
    if (!is_simple(c, SimplicityMode::operative)) throw std::domain_error("sign_epsilon needs a simple cone");
    const QuadField& f = c.field();
    if (f.is_imaginary()) return 1;
    FieldElement deep{0, 0};
    for (const auto& g : c.generators()) deep = add(deep, g);
    int s = 1;
    for (int i = 1; i <= f.degree(); ++i) s *= embedding_sign(f, deep, i);
    return s;
}

void for_each_point(const Cone& c, std::int64_t A,
                    const std::function<void(const FieldElement&, const std::vector<std::int64_t>&)>& fn) {
    if (A < 1) throw std::invalid_argument("coefficient bound must be >= 1");
    const auto& g = c.generators();
    std::vector<std::int64_t> a(g.size(), 1);
    while (true) {
        FieldElement p{0, 0};
        for (std::size_t j = 0; j < g.size(); ++j)
            p = add(p, mul(c.field(), FieldElement{a[j], 0}, g[j]));
        fn(p, a);
        std::size_t j = g.size();
        while (j > 0) {
            if (++a[j - 1] <= A) break;
            a[j - 1] = 1;
            --j;
        }
        if (j == 0) return;
    }
}

std::vector<std::pair<FieldElement, std::vector<std::int64_t>>> enumerate_points(const Cone& c, std::int64_t A) {
    std::vector<std::pair<FieldElement, std::vector<std::int64_t>>> out;
    for_each_point(c, A, [&](const FieldElement& p, const std::vector<std::int64_t>& a) { out.emplace_back(p, a); });
    return out;
}

std::optional<std::vector<std::int64_t>> cone_coordinates(const Cone& c, const FieldElement& alpha) {
    const auto& g = c.generators();
    if (g.size() == 1) {
        std::int64_t k;
        if (g[0].x != 0) {
            if (alpha.x % g[0].x != 0) return std::nullopt;
            k = alpha.x / g[0].x;
        } else {
            if (alpha.y % g[0].y != 0) return std::nullopt;
            k = alpha.y / g[0].y;
        }
        if (k * g[0].x != alpha.x || k * g[0].y != alpha.y) return std::nullopt;
        return std::vector<std::int64_t>{k};
    }
    i128 det = static_cast<i128>(g[0].x) * g[1].y - static_cast<i128>(g[0].y) * g[1].x;
    if (det == 0) return std::nullopt;
    i128 na = static_cast<i128>(alpha.x) * g[1].y - static_cast<i128>(alpha.y) * g[1].x;
    i128 nb = static_cast<i128>(g[0].x) * alpha.y - static_cast<i128>(g[0].y) * alpha.x;
    if (na % det != 0 || nb % det != 0) return std::nullopt;
    return std::vector<std::int64_t>{static_cast<std::int64_t>(na / det), static_cast<std::int64_t>(nb / det)};
}

bool contains(const Cone& c, const FieldElement& alpha) {
    auto coords = cone_coordinates(c, alpha);
    if (!coords) return false;
    for (auto v : *coords)
        if (v < 1) return false;
    return true;
}

namespace {

// Chain of lattice points on the origin-facing convex hull boundary of the
// closed sector [ray(vs), ray(ve)] (sigma-plane angle < pi). Consecutive chain
// pairs are unimodular; collinear edge lattice points stay in the chain.
std::vector<FieldElement> hull_chain(const QuadField& f, const FieldElement& vs, const FieldElement& ve) {
    auto lo = [](std::int64_t a, std::int64_t b) { return std::min({a, b, std::int64_t{0}}); };
    auto hi = [](std::int64_t a, std::int64_t b) { return std::max({a, b, std::int64_t{0}}); };
    std::int64_t x0 = lo(vs.x, ve.x), x1 = hi(vs.x, ve.x);
    std::int64_t y0 = lo(vs.y, ve.y), y1 = hi(vs.y, ve.y);
    constexpr std::int64_t kBoxCap = 4000;
    if (x1 - x0 > kBoxCap || y1 - y0 > kBoxCap)
        throw std::runtime_error("fundamental unit too large for cone decomposition");

    int o = sigma_cross_sign(f, vs, ve);
    // candidates: closed sector, restricted to the triangle (0, vs, ve)
    std::set<std::pair<std::int64_t, std::int64_t>> prim;
    FieldElement chord = sub(ve, vs);
    for (std::int64_t x = x0; x <= x1; ++x) {
        for (std::int64_t y = y0; y <= y1; ++y) {
            FieldElement a{x, y};
            if (a.is_zero()) continue;
            if (sigma_cross_sign(f, vs, a) * o < 0) continue;
            if (sigma_cross_sign(f, a, ve) * o < 0) continue;
            // origin side of the chord through vs, ve (or on it)
            FieldElement rel = sub(a, vs);
            int side = sigma_cross_sign(f, chord, rel);
            int origin_side = sigma_cross_sign(f, chord, neg(vs));
            if (side != 0 && side != origin_side) continue;
            std::int64_t gg = gcd64(x, y);
            prim.insert({x / gg, y / gg});
        }
    }
    std::vector<FieldElement> pts;
    for (auto [x, y] : prim) pts.push_back({x, y});
    std::sort(pts.begin(), pts.end(), [&](const FieldElement& a, const FieldElement& b) {
        return sigma_cross_sign(f, a, b) * o > 0;
    });

    std::vector<FieldElement> chain;
    for (const auto& p : pts) {
        while (chain.size() >= 2) {
            const FieldElement& a = chain[chain.size() - 2];
            const FieldElement& b = chain.back();
            int s = sigma_cross_sign(f, sub(p, a), sub(b, a));
            int so = sigma_cross_sign(f, sub(p, a), neg(a));
            if (s != 0 && s != so)
                chain.pop_back();
            else
                break;
        }
        chain.push_back(p);
    }
    if (chain.size() < 2 || !(chain.front() == vs) || !(chain.back() == ve))
        throw std::logic_error("hull chain construction failed");
    return chain;
}

void append_sector_fan(ConeDecomposition& dec, const QuadField& f, const FieldElement& vs, const FieldElement& ve) {
    auto chain = hull_chain(f, vs, ve);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        dec.cones.emplace_back(f, std::vector<FieldElement>{chain[k]});
        dec.cones.emplace_back(f, std::vector<FieldElement>{chain[k], chain[k + 1]});
    }
    for (const auto& c : dec.cones)
        if (!is_unimodular(c) || !is_simple(c))
            throw std::logic_error("decomposition cone not unimodular simple: " + to_string(c.generators()[0]) +
                                   (c.rank() > 1 ? " ; " + to_string(c.generators()[1]) : ""));
}

}  // namespace

ConeDecomposition fundamental_domain(const QuadField& f) {
    ConeDecomposition dec;
    dec.field = f;
    const FieldElement one{1, 0}, w{0, 1};
    if (f.is_rational()) {
        dec.cones.emplace_back(f, std::vector<FieldElement>{one});
    } else if (f.is_imaginary()) {
        if (f.d() == -1 || f.d() == -3) {
            // quarter turn resp. sixth turn: sector [ray(1), ray(w))
            dec.cones.emplace_back(f, std::vector<FieldElement>{one, w});
            dec.cones.emplace_back(f, std::vector<FieldElement>{one});
        } else {
            // units {+-1}: upper half plane plus the positive real ray
            dec.cones.emplace_back(f, std::vector<FieldElement>{one, w});
            dec.cones.emplace_back(f, std::vector<FieldElement>{w});
            dec.cones.emplace_back(f, std::vector<FieldElement>{neg(one), w});
            dec.cones.emplace_back(f, std::vector<FieldElement>{one});
        }
    } else {
        FieldElement eps0 = fundamental_unit(f);
        FieldElement eps = totally_positive_fundamental_unit(f);
        append_sector_fan(dec, f, one, eps);
        if (norm(f, eps0) == 1) {
            // units never reach the mixed sign classes: mirrored sector at w
            append_sector_fan(dec, f, w, mul(f, eps, w));
        }
    }
    dec.signs.reserve(dec.cones.size());
    for (const auto& c : dec.cones) dec.signs.push_back(sign_epsilon(c));
    return dec;
}

namespace {

constexpr std::int64_t kOrbitCoordCap = std::int64_t{1} << 40;

bool small_enough(const FieldElement& a) {
    return std::abs(a.x) < kOrbitCoordCap && std::abs(a.y) < kOrbitCoordCap;
}

// full unit orbit of alpha, truncated per the coordinate growth bound
std::vector<FieldElement> unit_orbit(const QuadField& f, const FieldElement& alpha, std::int64_t H) {
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    auto push = [&](const FieldElement& e) { seen.insert({e.x, e.y}); };
    if (f.is_real() && !f.is_rational()) {
        FieldElement eps0 = fundamental_unit(f);
        FieldElement inv = conjugate(f, eps0);  // eps0 * conj = N = +-1
        if (norm(f, eps0) == -1) inv = neg(inv);
        double l = std::log(std::abs(embed(f, eps0, 1)));
        int K = static_cast<int>(2.0 * std::log(static_cast<double>(std::max<std::int64_t>(H, 2))) / l) + 2;
        for (int s = 0; s < 2; ++s) {
            FieldElement base = s ? neg(alpha) : alpha;
            FieldElement cur = base;
            for (int k = 0; k <= K && small_enough(cur); ++k) {
                push(cur);
                cur = mul(f, cur, eps0);
            }
            cur = base;
            for (int k = 0; k <= K && small_enough(cur); ++k) {
                push(cur);
                cur = mul(f, cur, inv);
            }
        }
    } else {
        for (const auto& u : torsion_units(f)) push(mul(f, u, alpha));
    }
    std::vector<FieldElement> out;
    for (auto [x, y] : seen) out.push_back({x, y});
    return out;
}

}  // namespace

PartitionReport verify_partition(const ConeDecomposition& dec, std::int64_t H) {
    if (H < 1) throw std::invalid_argument("height bound must be >= 1");
    PartitionReport rep;
    const QuadField& f = dec.field;
    std::int64_t ylim = f.is_rational() ? 0 : H;
    for (std::int64_t x = -H; x <= H; ++x) {
        for (std::int64_t y = -ylim; y <= ylim; ++y) {
            FieldElement a{x, y};
            if (a.is_zero()) continue;
            auto orbit = unit_orbit(f, a, H);
            // process each orbit once: at its lexicographically smallest member in the box
            bool is_canonical = true;
            for (const auto& o : orbit)
                if (std::abs(o.x) <= H && std::abs(o.y) <= ylim &&
                    (o.x < x || (o.x == x && o.y < y)))
                    is_canonical = false;
            if (!is_canonical) continue;
            int hits = 0;
            FieldElement hit_elem{0, 0};
            for (const auto& o : orbit)
                for (const auto& c : dec.cones)
                    if (contains(c, o)) { ++hits; hit_elem = o; }
            ++rep.orbits_checked;
            if (hits != 1) {
                ++rep.violations;
                rep.ok = false;
                if (rep.first_counterexample.empty()) {
                    rep.first_counterexample = "alpha=(" + to_string(a) + ") covered " +
                                               std::to_string(hits) + " times";
                    if (hits > 1) rep.first_counterexample += " (e.g. " + to_string(hit_elem) + ")";
                }
            }
        }
    }
    return rep;
}

}  // namespace mdz
