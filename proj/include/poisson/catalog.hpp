#pragma once

#include "poisson/cyclotomic.hpp"
#include "poisson/rational.hpp"
#include "poisson/ratfunc.hpp"
#include "poisson/structure.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

namespace poisson {

// Family names are canonical: A1..A12, L3.1..L3.5, P3.1..P3.20, mu0, mu11, mu12,
// P0, P1.1..P1.5. `n` is 0 for the fixed 3-dimensional lists.
struct CatalogKey {
    std::string family;
    int n = 0;
    std::map<std::string, Rational> params;

    // Accepts P3.16(alpha=5), P3_16(alpha=5), P0(n=7), mu12(n=5), P15(n=5), P1_5(n=5).
    static CatalogKey parse(std::string_view text);
    std::string str() const;
    int dim() const;
    bool is_parametric_alpha() const;

    friend bool operator==(const CatalogKey& a, const CatalogKey& b)
    {
        return a.family == b.family && a.n == b.n && a.params == b.params;
    }
    friend bool operator<(const CatalogKey& a, const CatalogKey& b)
    {
        return std::tie(a.family, a.n, a.params) < std::tie(b.family, b.n, b.params);
    }
};

// True for families carrying the parameter alpha (L3.4, P3.4, P3.16).
bool family_has_alpha(const std::string& family);
std::string canonical_family(std::string_view name);

// Structure constants with alpha supplied in any scalar type; no validation of n
// beyond n >= 1, so the n = 3 filiform tables are reachable here.
template <class S>
BilinearPair<S> build_raw(const std::string& family, int n, const S& alpha);

BilinearPair<Rational> build(const CatalogKey& key);

// All family names of the 3-dimensional lists in paper order.
const std::vector<std::string>& three_dim_poisson_families();
const std::vector<std::string>& commutative_families();
const std::vector<std::string>& lie_families();
const std::vector<std::string>& filiform_families();  // P0, P1.1..P1.5

struct AutTemplate {
    CatalogKey key;
    int n = 0;
    std::vector<std::string> symbols;
    std::vector<std::vector<std::string>> pattern;  // display form, row-major
    std::string constraint;                         // empty when every instantiation is admissible
    std::function<Matrix<Rational>(const std::map<std::string, Rational>&)> instantiate;
    std::function<std::map<std::string, Rational>(std::mt19937_64&)> sample;  // admissible, det != 0
};

AutTemplate aut_template(const CatalogKey& key);

struct CrossrefRow {
    std::string three_dim;  // display label
    std::string filiform;
    BilinearPair<Cyclotomic> source;
    BilinearPair<Cyclotomic> target;
    Matrix<Cyclotomic> g;  // apply(g, source) == target
    bool needs_i = false;
};

std::vector<CrossrefRow> crossref_table(int n = 3);

// Rows of the 3-dimensional classification table, P3.4 split at alpha = 1.
struct Table1Row {
    std::string label;
    CatalogKey key;             // representative instantiation
    std::vector<Rational> alphas;        // every alpha at which dim Der is checked
    int dim_der = 0;                     // value printed in the paper
    std::string dot_name;                // component algebra labels
    std::string bracket_name;
    std::vector<Rational> label_alphas;  // alphas at which the labels are checked
    std::function<CatalogKey(const Rational&)> dot_key;
    std::function<CatalogKey(const Rational&)> bracket_key;
    // Columns form a basis in which the bracket is literally the labelled Lie table.
    std::function<Matrix<Rational>(const Rational&)> bracket_basis;
};

const std::vector<Table1Row>& table1_rows();

// apply(g, build(source)) == build(target) for the isomorphisms inside the alpha families.
struct FamilyIsomorphism {
    std::string law;
    CatalogKey source;
    CatalogKey target;
    Matrix<Rational> g;
};

// P3.4^a -> P3.4^(1/a) (a != 0) and P3.16^a -> P3.16^(-a).
FamilyIsomorphism family_isomorphism(const std::string& family, const Rational& alpha);

Rational random_rational(std::mt19937_64& rng, bool allow_zero = true);

}  // namespace poisson
