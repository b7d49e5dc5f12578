#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace mdz {

using cplx = std::complex<double>;

// Q or a quadratic field Q(sqrt d), d squarefree, with integral basis {1, w}:
// w = sqrt(d) when d != 1 mod 4, w = (1+sqrt(d))/2 when d == 1 mod 4.
// Embedding convention: sigma_1 sends sqrt(d) to the positive root (d > 0)
// or to the root with positive imaginary part (d < 0); sigma_2 is the conjugate.
class QuadField {
public:
    QuadField() = default;  // the rationals
    static QuadField rationals();
    static QuadField quadratic(std::int64_t d);  // throws on d in {0,1} or non-squarefree

    bool is_rational() const { return rational_; }
    bool is_real() const { return rational_ || d_ > 0; }
    bool is_imaginary() const { return !rational_ && d_ < 0; }
    int degree() const { return rational_ ? 1 : 2; }
    std::int64_t d() const { return d_; }
    bool half_basis() const { return half_; }   // basis {1,(1+sqrt d)/2}
    std::int64_t discriminant() const { return rational_ ? 1 : (half_ ? d_ : 4 * d_); }
    cplx omega(int embedding) const;            // sigma_i(w), 1-based index

    bool operator==(const QuadField&) const = default;

private:
    bool rational_ = true;
    bool half_ = false;
    std::int64_t d_ = 0;
};

// Coordinates x + y*w in the integral basis; y stays 0 over Q.
struct FieldElement {
    std::int64_t x = 0;
    std::int64_t y = 0;
    bool operator==(const FieldElement&) const = default;
    bool is_zero() const { return x == 0 && y == 0; }
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement neg(const FieldElement& a);
FieldElement mul(const QuadField& f, const FieldElement& a, const FieldElement& b);
FieldElement conjugate(const QuadField& f, const FieldElement& a);

// sigma_i(a) in binary64, i in [1, degree]
cplx embed(const QuadField& f, const FieldElement& a, int i);

// exact N_{K/Q}(a), trace; overflow raises std::overflow_error
std::int64_t norm(const QuadField& f, const FieldElement& a);
std::int64_t trace(const QuadField& f, const FieldElement& a);

// exact sign of sigma_i(a) for real embeddings (-1, 0, +1)
int embedding_sign(const QuadField& f, const FieldElement& a, int i);

// Units. fundamental_unit: real quadratic only (smallest unit > 1 under sigma_1,
// found by Pell search); totally_positive_fundamental_unit: eps0 or eps0^2.
// torsion_units: the finite unit list ({+-1}, 4 for d=-1, 6 for d=-3).
FieldElement fundamental_unit(const QuadField& f);
FieldElement totally_positive_fundamental_unit(const QuadField& f);
std::vector<FieldElement> torsion_units(const QuadField& f);

std::string to_string(const QuadField& f);
std::string to_string(const FieldElement& a);

}  // namespace mdz
