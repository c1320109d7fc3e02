#pragma once

#include "poisson/algebra_json.hpp"
#include "poisson/catalog.hpp"
#include "poisson/cyclotomic.hpp"
#include "poisson/ratfunc.hpp"
#include "poisson/structure.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace poisson {

using FF = RatFunc<Cyclotomic>;

// g(t) with columns g_i(t) = g(t)(e_i); entries in Q(t) or Q(zeta)(t).
class ParamBasisChange {
public:
    // rows[i] are the coordinates of g_{i+1}(t), as in the witness files.
    static ParamBasisChange from_rows(const std::vector<std::vector<FF>>& rows, int zeta_order = 0);
    static ParamBasisChange from_matrix(Matrix<FF> g, int zeta_order = 0);

    int dim() const { return g_.rows(); }
    int zeta_order() const { return zeta_; }
    const Matrix<FF>& matrix() const { return g_; }
    const Matrix<FF>& inverse() const { return h_; }
    const FF& det() const { return det_; }
    // g(t0); throws DivisionByZero when t0 is a pole of some entry.
    Matrix<Cyclotomic> at(const Cyclotomic& t0) const;
    std::vector<std::vector<std::string>> rows_str() const;

private:
    Matrix<FF> g_, h_;
    FF det_;
    int zeta_ = 0;
};

BilinearPair<FF> lift_pair(const BilinearPair<Rational>& p);
BilinearPair<FF> lift_pair(const BilinearPair<Cyclotomic>& p);
BilinearPair<Cyclotomic> to_cyclotomic(const BilinearPair<Rational>& p);
// Rational pair if every constant is rational, else nullopt.
std::optional<BilinearPair<Rational>> to_rational(const BilinearPair<Cyclotomic>& p);

BilinearPair<FF> transform(const ParamBasisChange& g, const BilinearPair<FF>& p);
BilinearPair<Cyclotomic> evaluate_pair(const BilinearPair<FF>& q, const Cyclotomic& t0);

// Raised by limit_pair; carries the offending constant.
struct LimitPole : PoleAtZero {
    std::string product;  // "dot" or "bracket"
    int i, j, k;
    std::string expansion;
    LimitPole(std::string prod, int i_, int j_, int k_, std::string exp);
};

BilinearPair<Cyclotomic> limit_pair(const BilinearPair<FF>& q);

struct DegenerationCheck {
    bool ok = false;
    std::optional<BilinearPair<Cyclotomic>> limit;
    std::vector<std::string> problems;  // pole or mismatched constants with 3-term expansions
    bool sanity_ok = true;              // g(t0)-image agrees with the pointwise action and stays Poisson
    std::string summary() const;
};

DegenerationCheck check_degeneration(const BilinearPair<FF>& source, const ParamBasisChange& g,
                                     const BilinearPair<Cyclotomic>& target, std::uint64_t seed = 1);
bool verify_degeneration(const BilinearPair<Rational>& source, const ParamBasisChange& g,
                         const BilinearPair<Rational>& target);

struct FamilyWitness {
    std::string family;  // P3.4 or P3.16
    FF f;                // alpha := f(t)
    ParamBasisChange g;
    CatalogKey target;
};

BilinearPair<FF> family_member(const std::string& family, const FF& f);
bool verify_family_degeneration(const FamilyWitness& w);

// One witness file; `alpha` and `z` may appear in entries when alpha_samples / zeta_order are set.
struct WitnessFile {
    std::string path;
    std::string section;  // parent directory name
    std::string name;     // file stem
    std::string source;
    std::string target;
    std::vector<std::vector<std::string>> g;
    std::vector<std::vector<std::string>> transcribed_g;  // as printed, when it differs from g
    std::optional<std::string> f;
    int zeta_order = 0;
    std::vector<Rational> alpha_samples;
    std::string note;
};

WitnessFile witness_from_json(const json& j);
json witness_to_json(const WitnessFile& w);
WitnessFile load_witness(const std::filesystem::path& path);
std::vector<WitnessFile> load_witness_dir(const std::filesystem::path& dir);

// A witness with alpha and the field fixed.
struct WitnessInstance {
    std::string label;
    CatalogKey source_key;  // no alpha param when the source is a whole family
    bool family = false;
    std::optional<FF> f;
    ParamBasisChange g;
    CatalogKey target_key;
    BilinearPair<FF> source;
    BilinearPair<Cyclotomic> target;
};

// Parses a g matrix given as rows; `alpha` substitutes the symbol when given.
ParamBasisChange parse_rows(const std::vector<std::vector<std::string>>& rows, int zeta_order,
                            const std::optional<Rational>& alpha);
std::vector<WitnessInstance> instantiate(const WitnessFile& w);

struct WitnessResult {
    WitnessInstance inst;
    DegenerationCheck check;
};

WitnessResult verify_witness(const WitnessInstance& inst, std::uint64_t seed = 1);

std::filesystem::path default_data_dir();

}  // namespace poisson
