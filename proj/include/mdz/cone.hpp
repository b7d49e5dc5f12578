#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mdz/field.hpp"

namespace mdz {

enum class SimplicityMode { operative, strict };

// C = N{e_1,...,e_m}: all sums a_1 e_1 + ... + a_m e_m with integer a_j >= 1.
class Cone {
public:
    Cone(const QuadField& field, std::vector<FieldElement> generators);

    const QuadField& field() const { return field_; }
    const std::vector<FieldElement>& generators() const { return gens_; }
    int rank() const { return static_cast<int>(gens_.size()); }
    // cached sigma_i(e_j), 1-based indices
    cplx embedded_generator(int i, int j) const {
        return emb_[static_cast<std::size_t>(i - 1) * gens_.size() + static_cast<std::size_t>(j - 1)];
    }

    bool operator==(const Cone& o) const { return field_ == o.field_ && gens_ == o.gens_; }

private:
    QuadField field_;
    std::vector<FieldElement> gens_;
    std::vector<cplx> emb_;
};

bool is_unimodular(const Cone& c);
bool is_simple(const Cone& c, SimplicityMode mode = SimplicityMode::operative);

// +-1: product over real embeddings of the (constant) sign of sigma on C.
// Requires an operative-simple cone; +1 for imaginary quadratic fields.
int sign_epsilon(const Cone& c);

// Lexicographic enumeration of cone points with 1 <= a_j <= A.
void for_each_point(const Cone& c, std::int64_t A,
                    const std::function<void(const FieldElement&, const std::vector<std::int64_t>&)>& fn);
std::vector<std::pair<FieldElement, std::vector<std::int64_t>>> enumerate_points(const Cone& c, std::int64_t A);

// exact coefficients of alpha in the generator basis, if alpha lies in the
// generator lattice span; membership in C means all coefficients >= 1
std::optional<std::vector<std::int64_t>> cone_coordinates(const Cone& c, const FieldElement& alpha);
bool contains(const Cone& c, const FieldElement& alpha);

struct ConeDecomposition {
    QuadField field;
    std::vector<Cone> cones;
    std::vector<int> signs;  // epsilon(C) per cone
};

// Unimodular simple cones partitioning a fundamental domain of O_K - {0} mod U_K.
// Q: the ray N{1}. Imaginary quadratic: angular sectors (2 cones for d=-1,-3,
// else 4). Real quadratic: Klein-polygon fan of the totally positive sector
// [ray(1), ray(eps)), plus a mirrored fan when N(eps_0) = +1.
ConeDecomposition fundamental_domain(const QuadField& f);

struct PartitionReport {
    bool ok = true;
    std::int64_t orbits_checked = 0;
    std::int64_t violations = 0;
    std::string first_counterexample;
};

// For every nonzero alpha with |x|,|y| <= H: exactly one unit multiple must lie
// in exactly one cone. Reports violations instead of throwing.
PartitionReport verify_partition(const ConeDecomposition& dec, std::int64_t H);

}  // namespace mdz
