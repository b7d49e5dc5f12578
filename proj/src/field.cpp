#include "mdz/field.hpp"

#include <cmath>
#include <stdexcept>

namespace mdz {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in field arithmetic");
    return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in field arithmetic");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in field arithmetic");
    return r;
}

std::int64_t narrow(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("integer overflow in norm/trace");
    return static_cast<std::int64_t>(v);
}

bool squarefree(std::int64_t d) {
    std::int64_t a = d < 0 ? -d : d;
    for (std::int64_t p = 2; p * p <= a; ++p)
        if (a % (p * p) == 0) return false;
    return true;
}

}  // namespace

QuadField QuadField::rationals() {
    QuadField f;
    f.rational_ = true;
    return f;
}

QuadField QuadField::quadratic(std::int64_t d) {
    if (d == 0 || d == 1) throw std::invalid_argument("d must be a squarefree integer != 0, 1");
    if (!squarefree(d)) throw std::invalid_argument("d must be squarefree");
    QuadField f;
    f.rational_ = false;
    f.d_ = d;
    // d == 1 mod 4 (careful with negative d)
    std::int64_t r = d % 4;
    if (r < 0) r += 4;
    f.half_ = (r == 1);
    return f;
}

cplx QuadField::omega(int i) const {
    if (rational_) throw std::domain_error("omega undefined over Q");
    if (i < 1 || i > 2) throw std::out_of_range("embedding index");
    double root = std::sqrt(static_cast<double>(d_ < 0 ? -d_ : d_));
    cplx sq = d_ > 0 ? cplx(root, 0.0) : cplx(0.0, root);
    if (i == 2) sq = -sq;
    return half_ ? (1.0 + sq) / 2.0 : sq;
}

FieldElement add(const FieldElement& a, const FieldElement& b) {
    return {checked_add(a.x, b.x), checked_add(a.y, b.y)};
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
    return {checked_sub(a.x, b.x), checked_sub(a.y, b.y)};
}

FieldElement neg(const FieldElement& a) {
    return {checked_sub(0, a.x), checked_sub(0, a.y)};
}

FieldElement mul(const QuadField& f, const FieldElement& a, const FieldElement& b) {
    if (f.is_rational()) {
        if (a.y != 0 || b.y != 0) throw std::invalid_argument("rational element with y != 0");
        return {checked_mul(a.x, b.x), 0};
    }
    std::int64_t cross = checked_add(checked_mul(a.x, b.y), checked_mul(a.y, b.x));
    std::int64_t yy = checked_mul(a.y, b.y);
    if (f.half_basis()) {
        // w^2 = (d-1)/4 + w
        std::int64_t c = (f.d() - 1) / 4;
        return {checked_add(checked_mul(a.x, b.x), checked_mul(yy, c)), checked_add(cross, yy)};
    }
    // w^2 = d
    return {checked_add(checked_mul(a.x, b.x), checked_mul(yy, f.d())), cross};
}

FieldElement conjugate(const QuadField& f, const FieldElement& a) {
    if (f.is_rational()) return a;
    // conj(w) = -w, or 1 - w in the half-integral basis
    if (f.half_basis()) return {checked_add(a.x, a.y), checked_sub(0, a.y)};
    return {a.x, checked_sub(0, a.y)};
}

cplx embed(const QuadField& f, const FieldElement& a, int i) {
    if (i < 1 || i > f.degree()) throw std::out_of_range("embedding index");
    if (f.is_rational()) return cplx(static_cast<double>(a.x), 0.0);
    return static_cast<double>(a.x) + static_cast<double>(a.y) * f.omega(i);
}

std::int64_t norm(const QuadField& f, const FieldElement& a) {
    if (f.is_rational()) return a.x;
    __int128 x = a.x, y = a.y;
    __int128 n = f.half_basis() ? x * x + x * y + y * y * ((1 - static_cast<__int128>(f.d())) / 4)
                                : x * x - static_cast<__int128>(f.d()) * y * y;
    return narrow(n);
}

std::int64_t trace(const QuadField& f, const FieldElement& a) {
    if (f.is_rational()) return a.x;
    __int128 t = f.half_basis() ? 2 * static_cast<__int128>(a.x) + a.y : 2 * static_cast<__int128>(a.x);
    return narrow(t);
}

int embedding_sign(const QuadField& f, const FieldElement& a, int i) {
    if (!f.is_real()) throw std::domain_error("embedding_sign needs a real embedding");
    if (i < 1 || i > f.degree()) throw std::out_of_range("embedding index");
    if (f.is_rational()) return (a.x > 0) - (a.x < 0);
    // sigma_i(a) proportional to p + q sqrt(d): p = x (or 2x+y), q = +-y
    __int128 p = f.half_basis() ? 2 * static_cast<__int128>(a.x) + a.y : static_cast<__int128>(a.x);
    __int128 q = (i == 1) ? a.y : -static_cast<__int128>(a.y);
    if (q == 0) return (p > 0) - (p < 0);
    if (p == 0) return (q > 0) - (q < 0);
    if (p > 0 && q > 0) return 1;
    if (p < 0 && q < 0) return -1;
    // opposite signs: compare p^2 vs d q^2
    __int128 lhs = p * p, rhs = static_cast<__int128>(f.d()) * q * q;
    if (lhs == rhs) return 0;
    bool p_dominates = lhs > rhs;
    return (p > 0) == p_dominates ? 1 : -1;
}

namespace {

// is n a perfect square; if so store root
bool perfect_square(__int128 n, std::int64_t* root) {
    if (n < 0) return false;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    for (std::int64_t c = r - 2; c <= r + 2; ++c) {
        if (c >= 0 && static_cast<__int128>(c) * c == n) {
            *root = c;
            return true;
        }
    }
    return false;
}

}  // namespace

FieldElement fundamental_unit(const QuadField& f) {
    if (!f.is_real() || f.is_rational())
        throw std::domain_error("fundamental unit: real quadratic fields only");
    constexpr std::int64_t kSearchLimit = 1000000;
    const std::int64_t d = f.d();
    for (std::int64_t y = 1; y <= kSearchLimit; ++y) {
        FieldElement best{0, 0};
        double best_val = 0;
        if (!f.half_basis()) {
            // x^2 - d y^2 = +-1
            for (int s : {-1, 1}) {
                std::int64_t x;
                if (perfect_square(static_cast<__int128>(d) * y * y + s, &x)) {
                    double v = x + y * std::sqrt(static_cast<double>(d));
                    if (best_val == 0 || v < best_val) { best = {x, y}; best_val = v; }
                }
            }
        } else {
            // x^2 + xy + y^2(1-d)/4 = +-1  =>  x = (-y + sqrt(d y^2 +- 4)) / 2
            for (int s : {-4, 4}) {
                std::int64_t r;
                if (perfect_square(static_cast<__int128>(d) * y * y + s, &r) && ((r - y) % 2 == 0)) {
                    std::int64_t x = (r - y) / 2;
                    double v = x + y * (1 + std::sqrt(static_cast<double>(d))) / 2;
                    if (best_val == 0 || v < best_val) { best = {x, y}; best_val = v; }
                }
            }
        }
        if (best_val > 1) return best;
    }
    throw std::runtime_error("fundamental unit search exceeded Pell bound");
}

FieldElement totally_positive_fundamental_unit(const QuadField& f) {
    FieldElement e0 = fundamental_unit(f);
    if (norm(f, e0) == 1) return e0;
    return mul(f, e0, e0);
}

std::vector<FieldElement> torsion_units(const QuadField& f) {
    if (f.is_imaginary()) {
        if (f.d() == -1) return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        if (f.d() == -3)
            return {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    }
    return {{1, 0}, {-1, 0}};
}

std::string to_string(const QuadField& f) {
    if (f.is_rational()) return "Q";
    return "Q(sqrt " + std::to_string(f.d()) + ")";
}

std::string to_string(const FieldElement& a) {
    return std::to_string(a.x) + "," + std::to_string(a.y);
}

}  // namespace mdz
