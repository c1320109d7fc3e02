#pragma once

#include "poisson/algebra_json.hpp"
#include "poisson/catalog.hpp"
#include "poisson/rational.hpp"
#include "poisson/structure.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace poisson {

// Sparse polynomial over Q in named variables: c[i,j,k] (dot), c'[i,j,k] (bracket), alpha.
class MultiPoly {
public:
    using Monomial = std::map<std::string, int>;

    MultiPoly() = default;
    MultiPoly(const Rational& c);
    static MultiPoly var(const std::string& name);

    const std::map<Monomial, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    std::set<std::string> variables() const;
    int degree_in(const std::string& v) const;
    std::optional<Rational> constant_value() const;
    // Substitutes the given variables; others stay symbolic.
    MultiPoly substitute(const std::map<std::string, Rational>& values) const;
    // p = a*v + b with a, b free of v; only valid when degree_in(v) <= 1.
    std::pair<MultiPoly, MultiPoly> linear_split(const std::string& v) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator-() const;
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.t_ == b.t_; }

    std::string str() const;

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> t_;
};

// Canonical variable name for a constant, folding symmetric partners: c'[2,1,3] -> -c'[1,2,3].
MultiPoly constant_var(bool bracket, int i, int j, int k, int dim);
// Parses "lhs = rhs [= rhs2 ...]" into the differences of neighbouring sides.
std::vector<MultiPoly> parse_equation_chain(const std::string& text, int dim);
MultiPoly parse_multipoly(const std::string& text, int dim);

// Every canonical constant name of a pair of dimension n, dot first.
std::vector<std::string> canonical_constant_names(int n);
std::map<std::string, Rational> pair_values(const BilinearPair<Rational>& p);
BilinearPair<Rational> pair_from_values(int n, const std::map<std::string, Rational>& values);

struct ClosedConditionSet {
    int dim = 3;
    std::vector<std::string> eq_text;
    std::vector<MultiPoly> equations;   // each = 0
    std::set<std::string> free;         // canonical names declared arbitrary
    std::set<std::string> mentioned;    // free plus every constant named in an equation
    bool zero_otherwise = false;

    static ClosedConditionSet from_json(const json& j);
    json to_json() const;
    bool uses_alpha() const;
    ClosedConditionSet with_alpha(const Rational& alpha) const;
};

struct MembershipReport {
    bool member = true;
    std::string reason;  // first failed equation or nonzero unmentioned constant
};

MembershipReport membership(const ClosedConditionSet& r, const BilinearPair<Rational>& p);
bool satisfies(const ClosedConditionSet& r, const BilinearPair<Rational>& p);

// Random point of R, or nullopt when the sampler could not solve the equations.
std::optional<BilinearPair<Rational>> sample_point(const ClosedConditionSet& r, std::mt19937_64& rng);
Matrix<Rational> random_lower_triangular(std::mt19937_64& rng, int n);

struct StabilityViolation {
    BilinearPair<Rational> point;
    Matrix<Rational> g;
    std::string reason;
};

struct StabilityReport {
    int trials = 0;
    int sampled = 0;  // trials where a point of R was found
    std::vector<StabilityViolation> violations;
};

StabilityReport sampled_stability(const ClosedConditionSet& r, int trials, std::uint64_t seed);

struct OrbitSearchResult {
    std::optional<Matrix<Rational>> witness;  // g with g*target in R
    int tried = 0;
};

OrbitSearchResult heuristic_orbit_search(const ClosedConditionSet& r, const BilinearPair<Rational>& target,
                                         int trials, std::uint64_t seed);

bool self_consistency(const ClosedConditionSet& r, const std::vector<BilinearPair<Rational>>& sources);

// A key with optional alpha samples, e.g. {"key": "P3.4", "alpha": ["1", "2"]}.
struct KeySpec {
    std::string key;
    std::vector<Rational> alphas;
    std::vector<CatalogKey> expand() const;
};

struct SeparatingRow {
    std::string path, section, name;
    std::string row;                    // display text
    std::optional<std::string> source_family;  // set when the row is about a whole family
    std::vector<KeySpec> sources;
    std::vector<KeySpec> targets;
    ClosedConditionSet set;
    std::string note;
    json alternative_reading;  // null when the row has a single reading
};

SeparatingRow separating_row_from_json(const json& j);
SeparatingRow load_separating_row(const std::filesystem::path& path);
std::vector<SeparatingRow> load_separating_dir(const std::filesystem::path& dir);

// R instantiated for one source; R's alpha is the source's alpha.
ClosedConditionSet condition_set_for(const SeparatingRow& row, const CatalogKey& source);

struct RowCheck {
    const SeparatingRow* row = nullptr;
    bool self_consistent = true;
    std::vector<std::string> inconsistent_sources;
    int stability_trials = 0;
    int violations = 0;
    std::string first_violation;
    int searches = 0;
    std::vector<std::string> refuted;  // "target via g"
    bool ok() const { return self_consistent && violations == 0 && refuted.empty(); }
};

RowCheck check_row(const SeparatingRow& row, int stability_trials, int search_trials, std::uint64_t seed);

}  // namespace poisson
