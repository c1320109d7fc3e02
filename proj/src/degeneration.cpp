#include "poisson/degeneration.hpp"

#include "poisson/parse.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace poisson {

namespace {

FF lift(const Rational& q) { return FF(Cyclotomic(q)); }

std::string constant_name(const std::string& prod, int i, int j, int k)
{
    return prod + " c_{" + std::to_string(i) + std::to_string(j) + "}^" + std::to_string(k);
}

}  // namespace

ParamBasisChange ParamBasisChange::from_matrix(Matrix<FF> g, int zeta_order)
{
    if (g.rows() != g.cols() || g.rows() < 1)
        throw BadDimension("basis change must be square");
    ParamBasisChange b;
    b.det_ = g.det();
    if (b.det_.is_zero())
        throw SingularFamily("g(t) has zero determinant");
    b.h_ = g.inverse();
    b.g_ = std::move(g);
    b.zeta_ = zeta_order;
    return b;
}

ParamBasisChange ParamBasisChange::from_rows(const std::vector<std::vector<FF>>& rows, int zeta_order)
{
    int n = static_cast<int>(rows.size());
    if (n == 0)
        throw BadDimension("empty basis change");
    Matrix<FF> g(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n)
            throw DimensionMismatch("basis change rows must all have length " + std::to_string(n));
        for (int j = 0; j < n; ++j)
            g(j, i) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    return from_matrix(std::move(g), zeta_order);
}

Matrix<Cyclotomic> ParamBasisChange::at(const Cyclotomic& t0) const
{
    return g_.map([&t0](const FF& f) { return f.eval(t0); });
}

std::vector<std::vector<std::string>> ParamBasisChange::rows_str() const
{
    int n = dim();
    std::vector<std::vector<std::string>> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out[static_cast<size_t>(i)].push_back(g_(j, i).str());
    return out;
}

BilinearPair<FF> lift_pair(const BilinearPair<Rational>& p) { return p.map<FF>(lift); }

BilinearPair<FF> lift_pair(const BilinearPair<Cyclotomic>& p)
{
    return p.map<FF>([](const Cyclotomic& c) { return FF(c); });
}

BilinearPair<Cyclotomic> to_cyclotomic(const BilinearPair<Rational>& p)
{
    return p.map<Cyclotomic>([](const Rational& q) { return Cyclotomic(q); });
}

std::optional<BilinearPair<Rational>> to_rational(const BilinearPair<Cyclotomic>& p)
{
    for (auto* m : {&p.dot, &p.bracket})
        for (auto& [k, v] : m->entries())
            if (!v.is_rational())
                return std::nullopt;
    return p.map<Rational>([](const Cyclotomic& c) { return c.to_rational(); });
}

BilinearPair<FF> transform(const ParamBasisChange& g, const BilinearPair<FF>& p)
{
    if (g.dim() != p.dim())
        throw DimensionMismatch("basis change and algebra have different dimensions");
    return BilinearPair<FF>(act(g.matrix(), g.inverse(), p.dot), act(g.matrix(), g.inverse(), p.bracket));
}

BilinearPair<Cyclotomic> evaluate_pair(const BilinearPair<FF>& q, const Cyclotomic& t0)
{
    return q.map<Cyclotomic>([&t0](const FF& f) { return f.eval(t0); });
}

LimitPole::LimitPole(std::string prod, int i_, int j_, int k_, std::string exp)
    : PoleAtZero("pole at t=0 in " + constant_name(prod, i_, j_, k_) + " = " + exp), product(std::move(prod)),
      i(i_), j(j_), k(k_), expansion(std::move(exp))
{
}

BilinearPair<Cyclotomic> limit_pair(const BilinearPair<FF>& q)
{
    BilinearPair<Cyclotomic> out(q.dim());
    for (auto [name, src, dst] : {std::tuple{"dot", &q.dot, &out.dot}, std::tuple{"bracket", &q.bracket, &out.bracket}})
        for (auto& [key, v] : src->entries()) {
            if (v.valuation() < 0)
                throw LimitPole(name, key[0], key[1], key[2], v.expansion(3));
            dst->set(key[0], key[1], key[2], v.limit_at_zero());
        }
    return out;
}

std::string DegenerationCheck::summary() const
{
    if (ok)
        return "ok";
    std::string s;
    for (auto& p : problems)
        s += (s.empty() ? "" : "; ") + p;
    if (!sanity_ok)
        s += std::string(s.empty() ? "" : "; ") + "pointwise sanity check failed";
    return s;
}

DegenerationCheck check_degeneration(const BilinearPair<FF>& source, const ParamBasisChange& g,
                                     const BilinearPair<Cyclotomic>& target, std::uint64_t seed)
{
    if (source.dim() != target.dim() || source.dim() != g.dim())
        throw DimensionMismatch("degeneration between algebras of different dimension");
    DegenerationCheck r;
    BilinearPair<FF> moved = transform(g, source);
    try {
        r.limit = limit_pair(moved);
    } catch (const LimitPole& e) {
        r.problems.push_back(e.what());
    }
    if (r.limit && !(*r.limit == target)) {
        for (auto [name, got, want, full] :
             {std::tuple{"dot", &r.limit->dot, &target.dot, &moved.dot},
              std::tuple{"bracket", &r.limit->bracket, &target.bracket, &moved.bracket}}) {
            int n = source.dim();
            for (int i = 1; i <= n; ++i)
                for (int j = i; j <= n; ++j)
                    for (int k = 1; k <= n; ++k) {
                        if (got->get(i, j, k) == want->get(i, j, k))
                            continue;
                        r.problems.push_back(constant_name(name, i, j, k) + ": limit " +
                                             got->get(i, j, k).str() + ", expected " + want->get(i, j, k).str() +
                                             " (g*mu = " + full->get(i, j, k).expansion(3) + ")");
                    }
        }
    }
    // Pointwise sanity at a rational t0 where g(t0) is defined and invertible.
    std::mt19937_64 rng(seed);
    for (int attempt = 0; attempt < 50; ++attempt) {
        Cyclotomic t0(random_rational(rng, false));
        try {
            Matrix<Cyclotomic> gt = g.at(t0);
            if (gt.det().is_zero())
                continue;
            BilinearPair<Cyclotomic> src = evaluate_pair(source, t0);
            BilinearPair<Cyclotomic> img = evaluate_pair(moved, t0);
            r.sanity_ok = apply_basis_change(gt, src) == img && is_poisson(src) == is_poisson(img);
            break;
        } catch (const DivisionByZero&) {
        }
    }
    r.ok = r.problems.empty() && r.sanity_ok;
    return r;
}

bool verify_degeneration(const BilinearPair<Rational>& source, const ParamBasisChange& g,
                         const BilinearPair<Rational>& target)
{
    return check_degeneration(lift_pair(source), g, to_cyclotomic(target)).ok;
}

BilinearPair<FF> family_member(const std::string& family, const FF& f)
{
    if (!family_has_alpha(family))
        throw InputError(family + " has no parameter to substitute");
    return build_raw<FF>(family, 3, f);
}

bool verify_family_degeneration(const FamilyWitness& w)
{
    return check_degeneration(family_member(w.family, w.f), w.g, to_cyclotomic(build(w.target))).ok;
}

namespace {

std::vector<std::vector<std::string>> matrix_from_json(const json& j, const char* what)
{
    if (!j.is_array() || j.empty())
        throw ParseError(std::string("'") + what + "' must be a non-empty array of rows");
    std::vector<std::vector<std::string>> rows;
    for (auto& r : j) {
        if (!r.is_array())
            throw ParseError(std::string("'") + what + "' rows must be arrays");
        std::vector<std::string> row;
        for (auto& e : r) {
            if (e.is_string())
                row.push_back(e.get<std::string>());
            else if (e.is_number_integer())
                row.push_back(std::to_string(e.get<long long>()));
            else
                throw ParseError(std::string("bad entry in '") + what + "': " + e.dump());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

WitnessFile witness_from_json(const json& j)
{
    if (!j.is_object())
        throw ParseError("witness must be a JSON object");
    for (const char* req : {"source", "target", "g"})
        if (!j.contains(req))
            throw ParseError(std::string("witness needs '") + req + "'");
    WitnessFile w;
    if (!j["source"].is_string() || !j["target"].is_string())
        throw ParseError("'source' and 'target' must be strings");
    w.source = j["source"].get<std::string>();
    w.target = j["target"].get<std::string>();
    w.g = matrix_from_json(j["g"], "g");
    if (j.contains("transcribed_g"))
        w.transcribed_g = matrix_from_json(j["transcribed_g"], "transcribed_g");
    if (j.contains("f") && !j["f"].is_null()) {
        if (!j["f"].is_string())
            throw ParseError("'f' must be a string or null");
        w.f = j["f"].get<std::string>();
    }
    if (j.contains("field")) {
        std::string field = j["field"].get<std::string>();
        if (field.rfind("cyclotomic:", 0) == 0) {
            Rational m = Rational::parse(field.substr(11));
            if (!m.is_integer() || m < Rational(3))
                throw ParseError("bad cyclotomic order in '" + field + "'");
            w.zeta_order = static_cast<int>(m.num().get_si());
        } else if (field != "rational") {
            throw ParseError("unknown field '" + field + "'");
        }
    }
    if (j.contains("alpha_samples"))
        for (auto& a : j["alpha_samples"])
            w.alpha_samples.push_back(rational_from_json(a));
    if (j.contains("note"))
        w.note = j["note"].get<std::string>();
    return w;
}

json witness_to_json(const WitnessFile& w)
{
    json j = {{"source", w.source}, {"target", w.target}, {"g", w.g}};
    j["f"] = w.f ? json(*w.f) : json(nullptr);
    if (w.zeta_order)
        j["field"] = "cyclotomic:" + std::to_string(w.zeta_order);
    if (!w.transcribed_g.empty())
        j["transcribed_g"] = w.transcribed_g;
    if (!w.alpha_samples.empty()) {
        json a = json::array();
        for (auto& q : w.alpha_samples)
            a.push_back(q.str());
        j["alpha_samples"] = a;
    }
    if (!w.note.empty())
        j["note"] = w.note;
    return j;
}

WitnessFile load_witness(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read witness file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    WitnessFile w;
    try {
        w = witness_from_json(j);
    } catch (const InputError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    w.path = path.string();
    w.section = path.parent_path().filename().string();
    w.name = path.stem().string();
    return w;
}

std::vector<WitnessFile> load_witness_dir(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir))
        throw InputError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (auto& e : std::filesystem::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<WitnessFile> out;
    for (auto& f : files)
        out.push_back(load_witness(f));
    return out;
}

ParamBasisChange parse_rows(const std::vector<std::vector<std::string>>& rows, int zeta_order,
                            const std::optional<Rational>& alpha)
{
    std::map<std::string, FF> syms;
    if (zeta_order)
        syms.emplace("z", FF(Cyclotomic::generator(zeta_order)));
    if (alpha)
        syms.emplace("alpha", FF(Cyclotomic(*alpha)));
    ScalarParser<Cyclotomic> parser(syms);
    std::vector<std::vector<FF>> g;
    for (auto& r : rows) {
        std::vector<FF> row;
        for (auto& e : r)
            row.push_back(parser.parse(e));
        g.push_back(std::move(row));
    }
    return ParamBasisChange::from_rows(g, zeta_order);
}

std::vector<WitnessInstance> instantiate(const WitnessFile& w)
{
    std::vector<std::optional<Rational>> alphas;
    if (w.alpha_samples.empty())
        alphas.push_back(std::nullopt);
    else
        for (auto& a : w.alpha_samples)
            alphas.push_back(a);
    std::vector<WitnessInstance> out;
    for (auto& a : alphas) {
        ParamBasisChange g = parse_rows(w.g, w.zeta_order, a);
        WitnessInstance inst{"", CatalogKey::parse(w.source), false, std::nullopt, g, CatalogKey::parse(w.target),
                             {}, {}};
        if (w.f) {
            if (a)
                throw InputError(w.path + ": a family witness cannot also carry alpha samples");
            if (!inst.source_key.params.empty())
                throw InputError(w.path + ": family source must be a bare family name");
            std::map<std::string, FF> syms;
            if (w.zeta_order)
                syms.emplace("z", FF(Cyclotomic::generator(w.zeta_order)));
            inst.f = ScalarParser<Cyclotomic>(syms).parse(*w.f);
            inst.family = true;
            inst.source = family_member(inst.source_key.family, *inst.f);
        } else {
            if (a)
                inst.source_key.params["alpha"] = *a;
            inst.source = lift_pair(build(inst.source_key));
        }
        inst.target = to_cyclotomic(build(inst.target_key));
        inst.label = (inst.family ? inst.source_key.family + "*" : inst.source_key.str()) + " -> " +
                     inst.target_key.str();
        out.push_back(std::move(inst));
    }
    return out;
}

WitnessResult verify_witness(const WitnessInstance& inst, std::uint64_t seed)
{
    return {inst, check_degeneration(inst.source, inst.g, inst.target, seed)};
}

std::filesystem::path default_data_dir()
{
    if (const char* env = std::getenv("POISSON_DATA"))
        return env;
    return POISSON_DATA_DIR;
}

}  // namespace poisson
