#include "poisson/separating.hpp"

#include "poisson/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <numeric>
#include <sstream>

namespace poisson {

// ---------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const Rational& c)
{
    if (!c.is_zero())
        t_[{}] = c;
}

MultiPoly MultiPoly::var(const std::string& name)
{
    MultiPoly p;
    p.t_[{{name, 1}}] = Rational(1);
    return p;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c)
{
    if (c.is_zero())
        return;
    auto [it, inserted] = t_.emplace(m, c);
    if (!inserted) {
        it->second = it->second + c;
        if (it->second.is_zero())
            t_.erase(it);
    }
}

std::set<std::string> MultiPoly::variables() const
{
    std::set<std::string> out;
    for (auto& [m, c] : t_)
        for (auto& [v, e] : m)
            out.insert(v);
    return out;
}

int MultiPoly::degree_in(const std::string& v) const
{
    int d = 0;
    for (auto& [m, c] : t_) {
        auto it = m.find(v);
        if (it != m.end())
            d = std::max(d, it->second);
    }
    return d;
}

std::optional<Rational> MultiPoly::constant_value() const
{
    if (t_.empty())
        return Rational(0);
    if (t_.size() == 1 && t_.begin()->first.empty())
        return t_.begin()->second;
    return std::nullopt;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, Rational>& values) const
{
    MultiPoly out;
    for (auto& [m, c] : t_) {
        Monomial rest;
        Rational coef = c;
        for (auto& [v, e] : m) {
            auto it = values.find(v);
            if (it == values.end()) {
                rest[v] = e;
                continue;
            }
            for (int i = 0; i < e; ++i)
                coef = coef * it->second;
        }
        out.add_term(rest, coef);
    }
    return out;
}

std::pair<MultiPoly, MultiPoly> MultiPoly::linear_split(const std::string& v) const
{
    if (degree_in(v) > 1)
        throw InputError("linear_split on a nonlinear variable " + v);
    MultiPoly a, b;
    for (auto& [m, c] : t_) {
        if (m.count(v)) {
            Monomial rest = m;
            rest.erase(v);
            a.add_term(rest, c);
        } else {
            b.add_term(m, c);
        }
    }
    return {a, b};
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const
{
    MultiPoly r = *this;
    for (auto& [m, c] : o.t_)
        r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-() const
{
    MultiPoly r;
    for (auto& [m, c] : t_)
        r.t_[m] = -c;
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const
{
    MultiPoly r;
    for (auto& [m1, c1] : t_)
        for (auto& [m2, c2] : o.t_) {
            Monomial m = m1;
            for (auto& [v, e] : m2)
                m[v] += e;
            r.add_term(m, c1 * c2);
        }
    return r;
}

std::string MultiPoly::str() const
{
    if (t_.empty())
        return "0";
    std::string s;
    bool first = true;
    for (auto& [m, c] : t_) {
        Rational a = c;
        bool neg = a < Rational(0);
        if (neg)
            a = -a;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        std::string mono;
        for (auto& [v, e] : m) {
            if (!mono.empty())
                mono += "*";
            mono += v;
            if (e > 1)
                mono += "^" + std::to_string(e);
        }
        if (mono.empty())
            s += a.str();
        else if (a == Rational(1))
            s += mono;
        else
            s += a.str() + "*" + mono;
    }
    return s;
}

// ---------------------------------------------------------------- parsing

MultiPoly constant_var(bool bracket, int i, int j, int k, int dim)
{
    if (i < 1 || j < 1 || k < 1 || i > dim || j > dim || k > dim)
        throw DimensionMismatch("structure constant index out of range: [" + std::to_string(i) + "," +
                                std::to_string(j) + "," + std::to_string(k) + "]");
    if (bracket && i == j)
        return MultiPoly();
    bool swap = i > j;
    if (swap)
        std::swap(i, j);
    std::string name = std::string(bracket ? "c'" : "c") + "[" + std::to_string(i) + "," + std::to_string(j) +
                       "," + std::to_string(k) + "]";
    MultiPoly v = MultiPoly::var(name);
    return (bracket && swap) ? -v : v;
}

namespace {

class PolyParser {
public:
    PolyParser(std::string_view s, int dim) : s_(s), dim_(dim) {}

    std::vector<MultiPoly> chain()
    {
        std::vector<MultiPoly> sides{expr()};
        skip();
        while (pos_ < s_.size() && s_[pos_] == '=') {
            ++pos_;
            sides.push_back(expr());
            skip();
        }
        if (pos_ != s_.size())
            fail("unexpected character");
        std::vector<MultiPoly> out;
        for (size_t i = 0; i + 1 < sides.size(); ++i)
            out.push_back(sides[i] - sides[i + 1]);
        return out;
    }

    MultiPoly single()
    {
        MultiPoly p = expr();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    char peek()
    {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    MultiPoly expr()
    {
        MultiPoly r;
        bool neg = false;
        char c = peek();
        if (c == '+' || c == '-') {
            neg = c == '-';
            ++pos_;
        }
        r = neg ? -term() : term();
        for (;;) {
            c = peek();
            if (c != '+' && c != '-')
                return r;
            ++pos_;
            r = c == '+' ? r + term() : r - term();
        }
    }

    bool starts_factor(char c) const
    {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == 'c' || c == 'a';
    }

    MultiPoly term()
    {
        MultiPoly r = power();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                r = r * power();
            } else if (c == '/') {
                ++pos_;
                auto d = power().constant_value();
                if (!d || d->is_zero())
                    fail("division by a non-constant or zero");
                r = r * MultiPoly(Rational(1) / *d);
            } else if (starts_factor(c)) {
                r = r * power();
            } else {
                return r;
            }
        }
    }

    MultiPoly power()
    {
        MultiPoly b = factor();
        if (peek() == '^') {
            ++pos_;
            int e = integer();
            MultiPoly r(Rational(1));
            for (int i = 0; i < e; ++i)
                r = r * b;
            return r;
        }
        return b;
    }

    int integer()
    {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return std::stoi(std::string(s_.substr(start, pos_ - start)));
    }

    void expect(char c)
    {
        if (peek() != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    MultiPoly factor()
    {
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -factor();
        }
        if (c == '(') {
            ++pos_;
            MultiPoly r = expr();
            expect(')');
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return MultiPoly(Rational(integer()));
        if (s_.substr(pos_, 5) == "alpha") {
            pos_ += 5;
            return MultiPoly::var("alpha");
        }
        if (c == 'c') {
            ++pos_;
            bool bracket = false;
            if (pos_ < s_.size() && s_[pos_] == '\'') {
                bracket = true;
                ++pos_;
            }
            expect('[');
            int i = integer();
            expect(',');
            int j = integer();
            expect(',');
            int k = integer();
            expect(']');
            return constant_var(bracket, i, j, k, dim_);
        }
        fail("expected a term");
    }

    std::string_view s_;
    int dim_;
    size_t pos_ = 0;
};

}  // namespace

std::vector<MultiPoly> parse_equation_chain(const std::string& text, int dim)
{
    auto eqs = PolyParser(text, dim).chain();
    if (eqs.empty())
        throw ParseError("equation without '=': '" + text + "'");
    return eqs;
}

MultiPoly parse_multipoly(const std::string& text, int dim) { return PolyParser(text, dim).single(); }

// ---------------------------------------------------------------- pairs as values

std::vector<std::string> canonical_constant_names(int n)
{
    std::vector<std::string> out;
    for (int b = 0; b < 2; ++b)
        for (int i = 1; i <= n; ++i)
            for (int j = b ? i + 1 : i; j <= n; ++j)
                for (int k = 1; k <= n; ++k)
                    out.push_back(constant_var(b == 1, i, j, k, n).variables().begin()->c_str());
    return out;
}

namespace {

struct ParsedName {
    bool bracket;
    int i, j, k;
};

ParsedName parse_name(const std::string& name)
{
    ParsedName p{};
    size_t at = 1;
    p.bracket = name.size() > 1 && name[1] == '\'';
    if (p.bracket)
        ++at;
    if (std::sscanf(name.c_str() + at, "[%d,%d,%d]", &p.i, &p.j, &p.k) != 3)
        throw ParseError("bad constant name " + name);
    return p;
}

}  // namespace

std::map<std::string, Rational> pair_values(const BilinearPair<Rational>& p)
{
    std::map<std::string, Rational> out;
    for (auto& name : canonical_constant_names(p.dim())) {
        auto q = parse_name(name);
        out[name] = q.bracket ? p.bracket.get(q.i, q.j, q.k) : p.dot.get(q.i, q.j, q.k);
    }
    return out;
}

BilinearPair<Rational> pair_from_values(int n, const std::map<std::string, Rational>& values)
{
    BilinearPair<Rational> p(n);
    for (auto& [name, v] : values) {
        if (name == "alpha")
            continue;
        auto q = parse_name(name);
        if (q.bracket)
            p.bracket.set(q.i, q.j, q.k, v);
        else
            p.dot.set(q.i, q.j, q.k, v);
    }
    return p;
}

// ---------------------------------------------------------------- condition sets

ClosedConditionSet ClosedConditionSet::from_json(const json& j)
{
    if (!j.is_object())
        throw ParseError("condition set must be an object");
    ClosedConditionSet r;
    r.dim = j.value("dim", 3);
    if (r.dim < 1)
        throw BadDimension("condition set dimension must be positive");
    for (auto& e : j.value("eq", json::array())) {
        std::string text = e.get<std::string>();
        r.eq_text.push_back(text);
        for (auto& p : parse_equation_chain(text, r.dim)) {
            for (auto& v : p.variables())
                if (v != "alpha")
                    r.mentioned.insert(v);
            if (!p.is_zero())
                r.equations.push_back(p);
        }
        // Constants named in an equation count as mentioned even when the equation folds to 0 = 0.
        for (size_t pos = text.find('c'); pos != std::string::npos; pos = text.find('c', pos + 1)) {
            size_t end = text.find(']', pos);
            if (end == std::string::npos)
                break;
            auto v = parse_multipoly(text.substr(pos, end - pos + 1), r.dim).variables();
            r.mentioned.insert(v.begin(), v.end());
        }
    }
    for (auto& f : j.value("free", json::array())) {
        auto v = parse_multipoly(f.get<std::string>(), r.dim).variables();
        if (v.size() != 1 || *v.begin() == "alpha")
            throw ParseError("free entry must name one structure constant: " + f.dump());
        r.free.insert(*v.begin());
        r.mentioned.insert(*v.begin());
    }
    r.zero_otherwise = j.value("zero_otherwise", false);
    return r;
}

json ClosedConditionSet::to_json() const
{
    json j;
    j["dim"] = dim;
    j["eq"] = eq_text;
    j["free"] = std::vector<std::string>(free.begin(), free.end());
    j["zero_otherwise"] = zero_otherwise;
    return j;
}

bool ClosedConditionSet::uses_alpha() const
{
    for (auto& e : equations)
        if (e.variables().count("alpha"))
            return true;
    return false;
}

ClosedConditionSet ClosedConditionSet::with_alpha(const Rational& alpha) const
{
    ClosedConditionSet r = *this;
    r.equations.clear();
    for (auto& e : equations) {
        auto s = e.substitute({{"alpha", alpha}});
        if (!s.is_zero())
            r.equations.push_back(s);
    }
    return r;
}

MembershipReport membership(const ClosedConditionSet& r, const BilinearPair<Rational>& p)
{
    if (p.dim() != r.dim)
        throw DimensionMismatch("pair of dimension " + std::to_string(p.dim()) + " tested against a set of dimension " +
                                std::to_string(r.dim));
    if (r.uses_alpha())
        throw MissingParam("condition set depends on alpha; instantiate it first");
    auto vals = pair_values(p);
    for (auto& e : r.equations) {
        auto v = e.substitute(vals).constant_value();
        if (!v || !v->is_zero())
            return {false, e.str() + " = 0 fails"};
    }
    if (r.zero_otherwise)
        for (auto& [name, v] : vals)
            if (!v.is_zero() && !r.mentioned.count(name))
                return {false, name + " = " + v.str() + " should be 0"};
    return {};
}

bool satisfies(const ClosedConditionSet& r, const BilinearPair<Rational>& p) { return membership(r, p).member; }

// ---------------------------------------------------------------- sampling

namespace {

Rational sample_value(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> coin(0, 3);
    return coin(rng) == 0 ? Rational(0) : random_rational(rng, false);
}

}  // namespace

std::optional<BilinearPair<Rational>> sample_point(const ClosedConditionSet& r, std::mt19937_64& rng)
{
    if (r.uses_alpha())
        throw MissingParam("condition set depends on alpha; instantiate it first");
    auto names = canonical_constant_names(r.dim);
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::map<std::string, Rational> val;
        for (auto& v : r.free)
            val[v] = sample_value(rng);
        for (;;) {
            bool progress = false;
            for (auto& e : r.equations) {
                auto s = e.substitute(val);
                auto vars = s.variables();
                if (vars.size() != 1 || s.degree_in(*vars.begin()) != 1)
                    continue;
                auto [a, b] = s.linear_split(*vars.begin());
                auto av = a.constant_value(), bv = b.constant_value();
                if (!av || av->is_zero())
                    continue;
                val[*vars.begin()] = -(*bv) / *av;
                progress = true;
            }
            if (progress)
                continue;
            std::optional<std::string> pick;
            for (auto& e : r.equations) {
                auto vars = e.substitute(val).variables();
                if (!vars.empty()) {
                    pick = *vars.begin();
                    break;
                }
            }
            if (!pick)
                break;
            val[*pick] = sample_value(rng);
        }
        bool ok = true;
        for (auto& e : r.equations) {
            auto v = e.substitute(val).constant_value();
            if (!v || !v->is_zero()) {
                ok = false;
                break;
            }
        }
        if (!ok)
            continue;
        for (auto& name : names)
            if (!val.count(name) && (r.mentioned.count(name) || !r.zero_otherwise))
                val[name] = sample_value(rng);
        return pair_from_values(r.dim, val);
    }
    return std::nullopt;
}

Matrix<Rational> random_lower_triangular(std::mt19937_64& rng, int n)
{
    Matrix<Rational> g(n, n);
    for (int i = 0; i < n; ++i) {
        g(i, i) = random_rational(rng, false);
        for (int j = 0; j < i; ++j)
            g(i, j) = random_rational(rng);
    }
    return g;
}

StabilityReport sampled_stability(const ClosedConditionSet& r, int trials, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    StabilityReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        auto p = sample_point(r, rng);
        if (!p)
            continue;
        ++rep.sampled;
        auto g = random_lower_triangular(rng, r.dim);
        auto m = membership(r, apply_basis_change(g, *p));
        if (!m.member)
            rep.violations.push_back({*p, g, m.reason});
    }
    return rep;
}

// ---------------------------------------------------------------- orbit search

namespace {

std::vector<Matrix<Rational>> permutation_matrices(int n)
{
    std::vector<int> perm(static_cast<size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<Matrix<Rational>> out;
    do {
        Matrix<Rational> w(n, n);
        for (int j = 0; j < n; ++j)
            w(perm[static_cast<size_t>(j)], j) = Rational(1);
        out.push_back(w);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

Matrix<Rational> random_dense(std::mt19937_64& rng, int n)
{
    for (;;) {
        Matrix<Rational> g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                g(i, j) = random_rational(rng);
        if (!g.det().is_zero())
            return g;
    }
}

}  // namespace

// R is stable under lower-triangular g, so by the Bruhat decomposition it is enough to try
// g = w * u * d with w a permutation, u upper unipotent and d diagonal. Dense draws are mixed in.
OrbitSearchResult heuristic_orbit_search(const ClosedConditionSet& r, const BilinearPair<Rational>& target,
                                         int trials, std::uint64_t seed)
{
    if (target.dim() != r.dim)
        throw DimensionMismatch("target dimension does not match the condition set");
    int n = r.dim;
    OrbitSearchResult res;
    auto attempt = [&](const Matrix<Rational>& g) {
        ++res.tried;
        if (satisfies(r, apply_basis_change(g, target))) {
            res.witness = g;
            return true;
        }
        return false;
    };
    auto perms = permutation_matrices(n);
    for (auto& w : perms)
        if (attempt(w))
            return res;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, perms.size() - 1);
    for (int t = 0; t < trials; ++t) {
        Matrix<Rational> g(n, n);
        if (t % 4 == 3) {
            g = random_dense(rng, n);
        } else {
            Matrix<Rational> u = Matrix<Rational>::identity(n), d(n, n);
            for (int i = 0; i < n; ++i) {
                d(i, i) = random_rational(rng, false);
                for (int j = i + 1; j < n; ++j)
                    u(i, j) = random_rational(rng);
            }
            g = perms[pick(rng)] * u * d;
        }
        if (attempt(g))
            return res;
    }
    return res;
}

bool self_consistency(const ClosedConditionSet& r, const std::vector<BilinearPair<Rational>>& sources)
{
    for (auto& s : sources)
        if (!satisfies(r, s))
            return false;
    return true;
}

// ---------------------------------------------------------------- rows

std::vector<CatalogKey> KeySpec::expand() const
{
    std::vector<CatalogKey> out;
    CatalogKey base = CatalogKey::parse(key);
    if (alphas.empty()) {
        out.push_back(base);
        return out;
    }
    if (!family_has_alpha(base.family))
        throw InputError(key + " takes no alpha samples");
    for (auto& a : alphas) {
        CatalogKey k = base;
        k.params["alpha"] = a;
        out.push_back(k);
    }
    return out;
}

namespace {

KeySpec key_spec_from_json(const json& j)
{
    KeySpec k;
    if (j.is_string()) {
        k.key = j.get<std::string>();
        return k;
    }
    if (!j.is_object() || !j.contains("key"))
        throw ParseError("key spec must be a string or {key, alpha}: " + j.dump());
    k.key = j.at("key").get<std::string>();
    for (auto& a : j.value("alpha", json::array()))
        k.alphas.push_back(rational_from_json(a));
    return k;
}

std::vector<KeySpec> key_specs(const json& j, const char* field)
{
    if (!j.contains(field) || !j.at(field).is_array())
        throw ParseError(std::string("separating row needs an array '") + field + "'");
    std::vector<KeySpec> out;
    for (auto& e : j.at(field))
        out.push_back(key_spec_from_json(e));
    return out;
}

}  // namespace

SeparatingRow separating_row_from_json(const json& j)
{
    SeparatingRow r;
    r.row = j.value("row", "");
    if (j.contains("source_family"))
        r.source_family = canonical_family(j.at("source_family").get<std::string>());
    r.sources = key_specs(j, "sources");
    r.targets = key_specs(j, "targets");
    if (!j.contains("set"))
        throw ParseError("separating row needs 'set'");
    r.set = ClosedConditionSet::from_json(j.at("set"));
    r.note = j.value("note", "");
    r.alternative_reading = j.value("alternative_reading", json());
    for (auto& s : r.sources)
        for (auto& k : s.expand())
            if (r.set.uses_alpha() && !k.params.count("alpha"))
                throw InputError("condition set uses alpha but source " + k.str() + " has none");
    return r;
}

SeparatingRow load_separating_row(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    SeparatingRow r = separating_row_from_json(j);
    r.path = path.string();
    r.section = path.parent_path().filename().string();
    r.name = path.stem().string();
    return r;
}

std::vector<SeparatingRow> load_separating_dir(const std::filesystem::path& dir)
{
    if (!std::filesystem::is_directory(dir))
        throw InputError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (auto& e : std::filesystem::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".json")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<SeparatingRow> out;
    for (auto& f : files)
        out.push_back(load_separating_row(f));
    return out;
}

ClosedConditionSet condition_set_for(const SeparatingRow& row, const CatalogKey& source)
{
    if (!row.set.uses_alpha())
        return row.set;
    auto it = source.params.find("alpha");
    if (it == source.params.end())
        throw MissingParam("condition set uses alpha but " + source.str() + " has none");
    return row.set.with_alpha(it->second);
}

RowCheck check_row(const SeparatingRow& row, int stability_trials, int search_trials, std::uint64_t seed)
{
    RowCheck c;
    c.row = &row;
    std::vector<ClosedConditionSet> sets;
    std::set<std::string> seen_alpha;
    for (auto& spec : row.sources)
        for (auto& key : spec.expand()) {
            auto r = condition_set_for(row, key);
            if (!satisfies(r, build(key))) {
                c.self_consistent = false;
                c.inconsistent_sources.push_back(key.str());
            }
            std::string tag = row.set.uses_alpha() ? key.params.at("alpha").str() : "";
            if (seen_alpha.insert(tag).second)
                sets.push_back(r);
        }
    std::uint64_t s = seed;
    for (auto& r : sets) {
        auto rep = sampled_stability(r, stability_trials, s++);
        c.stability_trials += rep.trials;
        c.violations += static_cast<int>(rep.violations.size());
        if (!rep.violations.empty() && c.first_violation.empty())
            c.first_violation = rep.violations.front().reason;
        for (auto& spec : row.targets)
            for (auto& key : spec.expand()) {
                auto found = heuristic_orbit_search(r, build(key), search_trials, s++);
                ++c.searches;
                if (found.witness) {
                    std::ostringstream os;
                    os << key.str() << " via g with rows";
                    for (int i = 0; i < found.witness->rows(); ++i) {
                        os << " [";
                        for (int j = 0; j < found.witness->cols(); ++j)
                            os << (j ? "," : "") << (*found.witness)(i, j).str();
                        os << "]";
                    }
                    c.refuted.push_back(os.str());
                }
            }
    }
    return c;
}

}  // namespace poisson
