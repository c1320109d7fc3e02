#pragma once

#include "poisson/algebra_json.hpp"
#include "poisson/catalog.hpp"
#include "poisson/rational.hpp"
#include "poisson/structure.hpp"

#include <array>
#include <string>
#include <vector>

namespace poisson {

// Derivations of both products, as a basis of n x n matrices (columns are images of e_i).
std::vector<Matrix<Rational>> derivation_space(const BilinearPair<Rational>& p);

bool is_derivation(const BilinearPair<Rational>& p, const Matrix<Rational>& phi);

struct InvariantProfile {
    int dim_der = 0;
    int orbit_dim = 0;
    int ann_dot = 0;
    int ann_bracket = 0;
    int ann_joint = 0;
    int dim_dot_square = 0;
    int dim_bracket_square = 0;
    int dim_p_square = 0;

    friend bool operator==(const InvariantProfile&, const InvariantProfile&) = default;
};

InvariantProfile invariant_profile(const BilinearPair<Rational>& p);

struct NecessaryCondition {
    std::string name;      // e.g. "ann_dot <="
    int source = 0;
    int target = 0;
    bool pass = true;
};

struct NecessaryReport {
    std::array<NecessaryCondition, 6> conditions;
    bool all_pass() const;
    std::vector<int> failing() const;  // 1-based condition numbers
};

// Corollary inequalities in the source -> target direction; any failure rules out the degeneration.
NecessaryReport check_necessary_conditions(const BilinearPair<Rational>& source, const BilinearPair<Rational>& target);
NecessaryReport check_necessary_conditions(const InvariantProfile& source, const InvariantProfile& target);

json profile_to_json(const InvariantProfile& p);
json necessary_to_json(const NecessaryReport& r);

struct Table1Check {
    const Table1Row* row = nullptr;
    std::vector<std::pair<Rational, int>> computed;  // (alpha, dim Der); alpha 0 for fixed rows
    bool dim_der_ok = true;
    bool labels_ok = true;
    InvariantProfile profile;  // at the representative key
};

std::vector<Table1Check> check_table1();
std::string table1_text(const std::vector<Table1Check>& rows);
json table1_json(const std::vector<Table1Check>& rows);

}  // namespace poisson
