#pragma once

#include "poisson/algebra_json.hpp"
#include "poisson/rational.hpp"
#include "poisson/structure.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace poisson {

// theta(x,y) = sum_k B_k(x,y) e_k, stored as antisymmetric constants c_{ij}^k = B_k(e_i,e_j).
struct SkewBilinearMap {
    StructureConstants<Rational> c;

    SkewBilinearMap() = default;
    explicit SkewBilinearMap(int n) : c(n, Symmetry::antisymmetric) {}
    explicit SkewBilinearMap(StructureConstants<Rational> s);

    int dim() const { return c.dim(); }
    Rational component(int k, int i, int j) const { return c.get(i, j, k); }
    bool is_zero() const { return c.is_zero(); }

    // Coordinates in the ambient space of dimension n * n(n-1)/2, ordered by component k,
    // then by pair (i<j) lexicographically.
    std::vector<Rational> coords() const;
    static SkewBilinearMap from_coords(int n, const std::vector<Rational>& v);
    // Delta_{i,j} tensor e_k.
    static SkewBilinearMap delta(int n, int i, int j, int k, const Rational& q = Rational(1));

    SkewBilinearMap operator+(const SkewBilinearMap& o) const;
    SkewBilinearMap scaled(const Rational& q) const;
    friend bool operator==(const SkewBilinearMap& a, const SkewBilinearMap& b) { return a.c == b.c; }

    std::string str() const;
};

int skew_ambient_dim(int n);

std::vector<SkewBilinearMap> leibniz_space(const StructureConstants<Rational>& dot);

// Triples i<j<k (1-based) with nonzero Jacobiator; the Jacobiator is alternating, so
// these cover every failure.
std::vector<std::array<int, 3>> jacobi_residual(const SkewBilinearMap& theta);

struct Z2Report {
    int linear_dim = 0;
    bool jacobi_automatic = false;  // exact: Jacobiator vanishes on all basis elements and pairwise sums
    bool sampled_ok = true;         // random combinations, a cross-check only
    int samples = 0;
    std::vector<SkewBilinearMap> basis;
};

Z2Report z2_report(const StructureConstants<Rational>& dot, int samples, std::uint64_t seed);

// (theta * phi)(x,y) = phi^-1 theta(phi x, phi y); columns of phi are the images of e_i.
SkewBilinearMap theta_action(const Matrix<Rational>& phi, const SkewBilinearMap& theta);

// Coordinates of theta in the echelon basis, or nullopt if theta is outside its span.
std::optional<std::vector<Rational>> express_in_basis(const std::vector<SkewBilinearMap>& basis,
                                                      const SkewBilinearMap& theta);

json skew_to_json(const SkewBilinearMap& theta);
SkewBilinearMap skew_from_json(const json& j);

}  // namespace poisson
