#include "poisson/catalog.hpp"

#include "poisson/parse.hpp"

#include <cctype>
#include <sstream>

namespace poisson {

namespace {

// Table entries: "d112" is e1.e1 = e2, "b131:-2" is {e1,e3} = -2 e1, ":a" scales by alpha.
const std::map<std::string, std::vector<std::string>>& three_dim_tables()
{
    static const std::map<std::string, std::vector<std::string>> t = {
        {"A1", {}},
        {"A2", {"d112"}},
        {"A3", {"d123"}},
        {"A4", {"d112", "d123"}},
        {"A5", {"d111", "d222", "d333"}},
        {"A6", {"d111", "d222", "d233"}},
        {"A7", {"d111", "d122", "d133"}},
        {"A8", {"d111", "d122", "d133", "d223"}},
        {"A9", {"d111", "d222"}},
        {"A10", {"d111", "d122"}},
        {"A11", {"d111"}},
        {"A12", {"d111", "d223"}},
        {"L3.1", {}},
        {"L3.2", {"b123"}},
        {"L3.3", {"b122", "b132", "b133"}},
        {"L3.4", {"b122", "b133:a"}},
        {"L3.5", {"b123", "b131:-2", "b232:2"}},
        {"P3.1", {}},
        {"P3.2", {"b123"}},
        {"P3.3", {"b122", "b132", "b133"}},
        {"P3.4", {"b122", "b133:a"}},
        {"P3.5", {"b123", "b131:-2", "b232:2"}},
        {"P3.6", {"d112", "d123"}},
        {"P3.7", {"d111", "d222", "d333"}},
        {"P3.8", {"d111", "d222", "d233"}},
        {"P3.9", {"d111", "d122", "d133", "d223"}},
        {"P3.10", {"d111", "d222"}},
        {"P3.11", {"d111", "d122"}},
        {"P3.12", {"d111", "d223"}},
        {"P3.13", {"d112"}},
        {"P3.14", {"d112", "b133"}},
        {"P3.15", {"d112", "b132"}},
        {"P3.16", {"d123", "b123:a"}},
        {"P3.17", {"d111", "d122", "d133"}},
        {"P3.18", {"d111", "d122", "d133", "b232"}},
        {"P3.19", {"d111"}},
        {"P3.20", {"d111", "b232"}},
    };
    return t;
}

bool is_filiform_family(const std::string& f)
{
    return f == "mu0" || f == "mu11" || f == "mu12" || f == "P0" || f == "P1.1" || f == "P1.2" ||
           f == "P1.3" || f == "P1.4" || f == "P1.5";
}

template <class S>
BilinearPair<S> build_filiform(const std::string& f, int n)
{
    BilinearPair<S> p(n);
    bool null_filiform = f == "mu0" || f == "P0";
    int top = null_filiform ? n : n - 1;
    for (int i = 1; i <= top; ++i)
        for (int j = i; i + j <= top; ++j)
            p.dot.set(i, j, i + j, S(1));
    if (null_filiform)
        return p;
    if (f == "mu12" || f == "P1.4" || f == "P1.5")
        p.dot.set(n, n, n - 1, S(1));
    if (f == "P1.2")
        p.bracket.set(1, n, n, S(1));
    if (f == "P1.3" || f == "P1.5")
        p.bracket.set(1, n, n - 1, S(1));
    return p;
}

}  // namespace

bool family_has_alpha(const std::string& family)
{
    return family == "L3.4" || family == "P3.4" || family == "P3.16";
}

std::string canonical_family(std::string_view name)
{
    std::string s;
    for (char c : name)
        s += (c == '_' || c == ',') ? '.' : c;
    if (s == "P11" || s == "P12" || s == "P13" || s == "P14" || s == "P15")
        s = std::string("P1.") + s.back();
    if (s == "mu1.1")
        s = "mu11";
    if (s == "mu1.2")
        s = "mu12";
    if (three_dim_tables().count(s) || is_filiform_family(s))
        return s;
    throw UnknownKey("unknown algebra family '" + std::string(name) + "'");
}

CatalogKey CatalogKey::parse(std::string_view text)
{
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            t += c;
    CatalogKey k;
    auto open = t.find('(');
    k.family = canonical_family(t.substr(0, open));
    if (open == std::string::npos)
        return k;
    if (t.back() != ')')
        throw ParseError("missing ')' in key '" + std::string(text) + "'");
    std::string args = t.substr(open + 1, t.size() - open - 2);
    std::stringstream ss(args);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ParseError("expected name=value in key '" + std::string(text) + "'");
        std::string name = item.substr(0, eq), value = item.substr(eq + 1);
        if (name == "n") {
            Rational v = Rational::parse(value);
            if (!v.is_integer() || v.sign() <= 0 || v > Rational(64))
                throw BadDimension("bad dimension in key '" + std::string(text) + "'");
            k.n = static_cast<int>(v.num().get_si());
        } else if (name == "alpha") {
            k.params[name] = Rational::parse(value);
        } else {
            throw InputError("unknown parameter '" + name + "' in key '" + std::string(text) + "'");
        }
    }
    return k;
}

std::string CatalogKey::str() const
{
    std::string s = family;
    std::vector<std::string> args;
    if (n > 0 && is_filiform_family(family))
        args.push_back("n=" + std::to_string(n));
    for (auto& [name, v] : params)
        args.push_back(name + "=" + v.str());
    if (!args.empty()) {
        s += "(";
        for (size_t i = 0; i < args.size(); ++i)
            s += (i ? "," : "") + args[i];
        s += ")";
    }
    return s;
}

int CatalogKey::dim() const
{
    return is_filiform_family(family) ? n : 3;
}

bool CatalogKey::is_parametric_alpha() const
{
    return family_has_alpha(family);
}

template <class S>
BilinearPair<S> build_raw(const std::string& family, int n, const S& alpha)
{
    if (is_filiform_family(family)) {
        if (n < 1)
            throw BadDimension("dimension must be positive");
        if (family != "mu0" && family != "P0" && n < 3)
            throw BadDimension("filiform tables need n >= 3");
        return build_filiform<S>(family, n);
    }
    auto it = three_dim_tables().find(family);
    if (it == three_dim_tables().end())
        throw UnknownKey("unknown algebra family '" + family + "'");
    BilinearPair<S> p(3);
    for (const std::string& e : it->second) {
        int i = e[1] - '0', j = e[2] - '0', k = e[3] - '0';
        S v(1);
        if (e.size() > 4) {
            std::string c = e.substr(5);
            v = c == "a" ? alpha : S(std::stoi(c));
        }
        (e[0] == 'd' ? p.dot : p.bracket).set(i, j, k, v);
    }
    return p;
}

template BilinearPair<Rational> build_raw(const std::string&, int, const Rational&);
template BilinearPair<Cyclotomic> build_raw(const std::string&, int, const Cyclotomic&);
template BilinearPair<RatFunc<Rational>> build_raw(const std::string&, int, const RatFunc<Rational>&);
template BilinearPair<RatFunc<Cyclotomic>> build_raw(const std::string&, int, const RatFunc<Cyclotomic>&);

BilinearPair<Rational> build(const CatalogKey& key)
{
    const std::string& f = key.family;
    for (auto& [name, v] : key.params)
        if (name != "alpha" || !family_has_alpha(f))
            throw InputError("parameter '" + name + "' not accepted by " + f);
    Rational alpha(0);
    if (family_has_alpha(f)) {
        auto it = key.params.find("alpha");
        if (it == key.params.end())
            throw MissingParam(f + " needs parameter alpha");
        alpha = it->second;
    }
    if (is_filiform_family(f)) {
        if (key.n == 0)
            throw MissingParam(f + " needs parameter n");
        bool null_filiform = f == "mu0" || f == "P0";
        if (!null_filiform && key.n < 4)
            throw BadDimension(f + " requires n > 3");
        return build_raw<Rational>(f, key.n, alpha);
    }
    if (key.n != 0 && key.n != 3)
        throw BadDimension(f + " is 3-dimensional");
    return build_raw<Rational>(f, 3, alpha);
}

const std::vector<std::string>& three_dim_poisson_families()
{
    static const std::vector<std::string> v = [] {
        std::vector<std::string> r;
        for (int i = 1; i <= 20; ++i)
            r.push_back("P3." + std::to_string(i));
        return r;
    }();
    return v;
}

const std::vector<std::string>& commutative_families()
{
    static const std::vector<std::string> v = [] {
        std::vector<std::string> r;
        for (int i = 1; i <= 12; ++i)
            r.push_back("A" + std::to_string(i));
        return r;
    }();
    return v;
}

const std::vector<std::string>& lie_families()
{
    static const std::vector<std::string> v = {"L3.1", "L3.2", "L3.3", "L3.4", "L3.5"};
    return v;
}

const std::vector<std::string>& filiform_families()
{
    static const std::vector<std::string> v = {"P0", "P1.1", "P1.2", "P1.3", "P1.4", "P1.5"};
    return v;
}

Rational random_rational(std::mt19937_64& rng, bool allow_zero)
{
    std::uniform_int_distribution<int> num(-5, 5), den(1, 3);
    for (;;) {
        int a = num(rng);
        if (a == 0 && !allow_zero)
            continue;
        return Rational(a, den(rng));
    }
}

namespace {

Matrix<Rational> eval_pattern(const std::vector<std::vector<std::string>>& pattern,
                              const std::map<std::string, Rational>& values)
{
    std::map<std::string, RatFunc<Rational>> sym;
    for (auto& [k, v] : values)
        sym.emplace(k, RatFunc<Rational>(v));
    ScalarParser<Rational> parser(sym);
    int n = static_cast<int>(pattern.size());
    Matrix<Rational> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto f = parser.parse(pattern[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            m(i, j) = f.constant_value();
        }
    return m;
}

AutTemplate pattern_template(const CatalogKey& key, std::vector<std::string> symbols,
                             std::vector<std::vector<std::string>> pattern, std::string constraint,
                             std::function<void(std::map<std::string, Rational>&, std::mt19937_64&)> fix)
{
    AutTemplate t;
    t.key = key;
    t.n = 3;
    t.symbols = symbols;
    t.pattern = pattern;
    t.constraint = constraint;
    t.instantiate = [pattern](const std::map<std::string, Rational>& v) { return eval_pattern(pattern, v); };
    t.sample = [symbols, pattern, fix](std::mt19937_64& rng) {
        for (;;) {
            std::map<std::string, Rational> v;
            for (auto& s : symbols)
                v[s] = random_rational(rng);
            if (fix)
                fix(v, rng);
            if (!eval_pattern(pattern, v).det().is_zero())
                return v;
        }
    };
    return t;
}

// phi(e1) = v, phi(e_i) = v^i for 2 <= i <= n-1, last column supplied.
Matrix<Rational> filiform_aut(const BilinearPair<Rational>& alg, const std::vector<Rational>& v,
                              const std::vector<Rational>& last)
{
    int n = alg.dim();
    Matrix<Rational> m(n, n);
    std::vector<Rational> power = v;
    for (int i = 0; i < n - 1; ++i) {
        if (i > 0)
            power = evaluate(alg.dot, power, v);
        for (int r = 0; r < n; ++r)
            m(r, i) = power[static_cast<size_t>(r)];
    }
    for (int r = 0; r < n; ++r)
        m(r, n - 1) = last[static_cast<size_t>(r)];
    return m;
}

AutTemplate filiform_template(const CatalogKey& key)
{
    int n = key.n;
    if (n < 4)
        throw BadDimension(key.family + " requires n > 3");
    bool second = key.family == "mu12";
    BilinearPair<Rational> alg = build(key);
    AutTemplate t;
    t.key = key;
    t.n = n;
    auto a = [](int i, int j) { return "a" + std::to_string(i) + "_" + std::to_string(j); };
    if (second)
        t.symbols.push_back("s");
    else
        t.symbols.push_back(a(1, 1));
    for (int k = 2; k <= n; ++k)
        t.symbols.push_back(a(k, 1));
    t.symbols.push_back(a(n - 1, n));
    if (!second)
        t.symbols.push_back(a(n, n));
    t.pattern.assign(static_cast<size_t>(n), std::vector<std::string>(static_cast<size_t>(n), "0"));
    std::string a11 = second ? "s^2" : a(1, 1);
    for (int i = 1; i <= n - 1; ++i)
        t.pattern[static_cast<size_t>(i - 1)][static_cast<size_t>(i - 1)] =
            i == 1 ? a11 : "(" + a11 + ")^" + std::to_string(i);
    for (int k = 2; k <= n; ++k)
        t.pattern[static_cast<size_t>(k - 1)][0] = a(k, 1);
    for (int i = 2; i <= n - 1; ++i)
        for (int r = i + 1; r <= n - 1; ++r)
            t.pattern[static_cast<size_t>(r - 1)][static_cast<size_t>(i - 1)] = "*";
    t.pattern[static_cast<size_t>(n - 2)][static_cast<size_t>(n - 1)] = a(n - 1, n);
    if (second) {
        t.pattern[static_cast<size_t>(n - 3)][static_cast<size_t>(n - 1)] =
            "-" + a(n, 1) + "*s^" + std::to_string(n - 3);
        t.pattern[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)] = "s^" + std::to_string(n - 1);
        t.constraint = "a1_1 = s^2";
    } else {
        t.pattern[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)] = a(n, n);
    }
    t.instantiate = [alg, n, second, a](const std::map<std::string, Rational>& val) {
        auto get = [&val](const std::string& s) {
            auto it = val.find(s);
            if (it == val.end())
                throw MissingParam("template symbol '" + s + "' not supplied");
            return it->second;
        };
        std::vector<Rational> v(static_cast<size_t>(n), Rational(0)), last(static_cast<size_t>(n), Rational(0));
        Rational s = second ? get("s") : Rational(0);
        v[0] = second ? s * s : get(a(1, 1));
        for (int k = 2; k <= n; ++k)
            v[static_cast<size_t>(k - 1)] = get(a(k, 1));
        last[static_cast<size_t>(n - 2)] = get(a(n - 1, n));
        if (second) {
            last[static_cast<size_t>(n - 3)] = -get(a(n, 1)) * s.pow(n - 3);
            last[static_cast<size_t>(n - 1)] = s.pow(n - 1);
        } else {
            last[static_cast<size_t>(n - 1)] = get(a(n, n));
        }
        return filiform_aut(alg, v, last);
    };
    auto inst = t.instantiate;
    auto syms = t.symbols;
    t.sample = [inst, syms](std::mt19937_64& rng) {
        for (;;) {
            std::map<std::string, Rational> v;
            for (auto& s : syms)
                v[s] = random_rational(rng);
            if (!inst(v).det().is_zero())
                return v;
        }
    };
    return t;
}

}  // namespace

AutTemplate aut_template(const CatalogKey& key)
{
    const std::string& f = key.family;
    if (f == "A2")
        return pattern_template(key, {"a11", "a21", "a23", "a31", "a33"},
                                {{"a11", "0", "0"}, {"a21", "a11^2", "a23"}, {"a31", "0", "a33"}}, "", nullptr);
    if (f == "A3")
        return pattern_template(
            key, {"a11", "a12", "a21", "a22", "a31", "a32"},
            {{"a11", "a12", "0"}, {"a21", "a22", "0"}, {"a31", "a32", "a11*a22+a12*a21"}},
            "a12 = a21 = 0 or a11 = a22 = 0",
            [](std::map<std::string, Rational>& v, std::mt19937_64& rng) {
                if (rng() % 2) {
                    v["a12"] = Rational(0);
                    v["a21"] = Rational(0);
                } else {
                    v["a11"] = Rational(0);
                    v["a22"] = Rational(0);
                }
            });
    if (f == "A7" || f == "A11")
        return pattern_template(key, {"a22", "a23", "a32", "a33"},
                                {{"1", "0", "0"}, {"0", "a22", "a23"}, {"0", "a32", "a33"}}, "", nullptr);
    if (f == "mu11" || f == "mu12")
        return filiform_template(key);
    throw UnknownKey("no automorphism template recorded for " + key.str());
}

std::vector<CrossrefRow> crossref_table(int n)
{
    if (n != 3)
        throw BadDimension("the cross-reference table is 3-dimensional");
    const int order = 4;  // Q(i)
    Cyclotomic i = Cyclotomic::generator(order);
    auto lift = [](const BilinearPair<Rational>& p) {
        return p.map<Cyclotomic>([](const Rational& q) { return Cyclotomic(q); });
    };
    Matrix<Cyclotomic> id = Matrix<Cyclotomic>::identity(3);
    // New basis f1 = e1+e2, f2 = 2e3, f3 = i(e1-e2) of P3.16; g maps it to e1, e2, e3.
    Matrix<Cyclotomic> h(3, 3);
    h(0, 0) = Cyclotomic(1);
    h(1, 0) = Cyclotomic(1);
    h(2, 1) = Cyclotomic(2);
    h(0, 2) = i;
    h(1, 2) = -i;
    Matrix<Cyclotomic> g = h.inverse();
    std::vector<CrossrefRow> rows;
    auto add = [&](std::string a, std::string b, BilinearPair<Cyclotomic> s, BilinearPair<Cyclotomic> t,
                   Matrix<Cyclotomic> w, bool ni) {
        rows.push_back({std::move(a), std::move(b), std::move(s), std::move(t), std::move(w), ni});
    };
    add("P3.6", "P0(n=3)", lift(build(CatalogKey::parse("P3.6"))), build_raw<Cyclotomic>("P0", 3, Cyclotomic(0)),
        id, false);
    add("P3.13", "P1.1(n=3)", lift(build(CatalogKey::parse("P3.13"))),
        build_raw<Cyclotomic>("P1.1", 3, Cyclotomic(0)), id, false);
    add("P3.14", "P1.2(n=3)", lift(build(CatalogKey::parse("P3.14"))),
        build_raw<Cyclotomic>("P1.2", 3, Cyclotomic(0)), id, false);
    add("P3.15", "P1.3(n=3)", lift(build(CatalogKey::parse("P3.15"))),
        build_raw<Cyclotomic>("P1.3", 3, Cyclotomic(0)), id, false);
    add("P3.16(alpha=0)", "P1.4(n=3)", build_raw<Cyclotomic>("P3.16", 3, Cyclotomic::in_field(order, 0)),
        build_raw<Cyclotomic>("P1.4", 3, Cyclotomic(0)), g, true);
    add("P3.16(alpha=i)", "P1.5(n=3)", build_raw<Cyclotomic>("P3.16", 3, i),
        build_raw<Cyclotomic>("P1.5", 3, Cyclotomic(0)), g, true);
    return rows;
}

const std::vector<Table1Row>& table1_rows()
{
    static const std::vector<Table1Row> rows = [] {
        auto key = [](const std::string& s) { return CatalogKey::parse(s); };
        auto fixed = [key](const std::string& s) {
            return std::function<CatalogKey(const Rational&)>([key, s](const Rational&) { return key(s); });
        };
        auto with_alpha = [](const std::string& fam) {
            return std::function<CatalogKey(const Rational&)>([fam](const Rational& a) {
                CatalogKey k;
                k.family = fam;
                k.params["alpha"] = a;
                return k;
            });
        };
        auto ident = std::function<Matrix<Rational>(const Rational&)>(
            [](const Rational&) { return Matrix<Rational>::identity(3); });
        auto cols = [](std::vector<std::vector<int>> c) {
            return std::function<Matrix<Rational>(const Rational&)>([c](const Rational&) {
                Matrix<Rational> m(3, 3);
                for (int j = 0; j < 3; ++j)
                    for (int i = 0; i < 3; ++i)
                        m(i, j) = Rational(c[static_cast<size_t>(j)][static_cast<size_t>(i)]);
                return m;
            });
        };
        std::vector<Rational> all = {Rational(0), Rational(1), Rational(-1), Rational(2), Rational(1, 2)};
        std::vector<Rational> not_one = {Rational(0), Rational(-1), Rational(2), Rational(1, 2)};
        std::vector<Table1Row> r;
        auto add = [&](std::string label, std::string fam, std::vector<Rational> alphas, int dd,
                       std::string dn, std::string bn, std::vector<Rational> label_alphas,
                       std::function<CatalogKey(const Rational&)> dk, std::function<CatalogKey(const Rational&)> bk,
                       std::function<Matrix<Rational>(const Rational&)> basis) {
            CatalogKey k = key(fam);
            if (!alphas.empty())
                k.params["alpha"] = alphas.front();
            r.push_back({label, k, alphas, dd, dn, bn, label_alphas, dk, bk, basis});
        };
        add("P3.1", "P3.1", {}, 9, "A1", "L3.1", {}, fixed("A1"), fixed("L3.1"), ident);
        add("P3.2", "P3.2", {}, 6, "A1", "L3.2", {}, fixed("A1"), fixed("L3.2"), ident);
        add("P3.3", "P3.3", {}, 4, "A1", "L3.3", {}, fixed("A1"), fixed("L3.3"), ident);
        add("P3.4^1", "P3.4", {Rational(1)}, 6, "A1", "L3.4^1", {Rational(1)}, fixed("A1"), with_alpha("L3.4"),
            ident);
        add("P3.4^(alpha!=1)", "P3.4", not_one, 4, "A1", "L3.4^alpha", not_one, fixed("A1"), with_alpha("L3.4"),
            ident);
        add("P3.5", "P3.5", {}, 3, "A1", "L3.5", {}, fixed("A1"), fixed("L3.5"), ident);
        add("P3.6", "P3.6", {}, 3, "A4", "L3.1", {}, fixed("A4"), fixed("L3.1"), ident);
        add("P3.7", "P3.7", {}, 0, "A5", "L3.1", {}, fixed("A5"), fixed("L3.1"), ident);
        add("P3.8", "P3.8", {}, 1, "A6", "L3.1", {}, fixed("A6"), fixed("L3.1"), ident);
        add("P3.9", "P3.9", {}, 2, "A8", "L3.1", {}, fixed("A8"), fixed("L3.1"), ident);
        add("P3.10", "P3.10", {}, 1, "A9", "L3.1", {}, fixed("A9"), fixed("L3.1"), ident);
        add("P3.11", "P3.11", {}, 2, "A10", "L3.1", {}, fixed("A10"), fixed("L3.1"), ident);
        add("P3.12", "P3.12", {}, 2, "A12", "L3.1", {}, fixed("A12"), fixed("L3.1"), ident);
        add("P3.13", "P3.13", {}, 5, "A2", "L3.1", {}, fixed("A2"), fixed("L3.1"), ident);
        // {e1,e3} = e3 becomes {f1,f2} = f2 in the basis e1, e3, e2.
        add("P3.14", "P3.14", {}, 3, "A2", "L3.4^0", {}, fixed("A2"), fixed("L3.4(alpha=0)"),
            cols({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
        add("P3.15", "P3.15", {}, 4, "A2", "L3.2", {}, fixed("A2"), fixed("L3.2"),
            cols({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}}));
        // alpha = 0 gives the trivial bracket, so the L3.2 label is checked at alpha != 0.
        add("P3.16^alpha", "P3.16", all, 4, "A3", "L3.2", {Rational(1), Rational(-1), Rational(2), Rational(1, 2)},
            fixed("A3"), fixed("L3.2"), [](const Rational& a) {
                Matrix<Rational> m = Matrix<Rational>::identity(3);
                m(2, 2) = a;
                return m;
            });
        add("P3.17", "P3.17", {}, 4, "A7", "L3.1", {}, fixed("A7"), fixed("L3.1"), ident);
        // {e2,e3} = e2 becomes {f1,f2} = f2 with f1 = -e3, f2 = e2, f3 = e1.
        add("P3.18", "P3.18", {}, 2, "A7", "L3.4^0", {}, fixed("A7"), fixed("L3.4(alpha=0)"),
            cols({{0, 0, -1}, {0, 1, 0}, {1, 0, 0}}));
        add("P3.19", "P3.19", {}, 4, "A11", "L3.1", {}, fixed("A11"), fixed("L3.1"), ident);
        add("P3.20", "P3.20", {}, 2, "A11", "L3.4^0", {}, fixed("A11"), fixed("L3.4(alpha=0)"),
            cols({{0, 0, -1}, {0, 1, 0}, {1, 0, 0}}));
        return r;
    }();
    return rows;
}

FamilyIsomorphism family_isomorphism(const std::string& family, const Rational& alpha)
{
    auto keyed = [&family](const Rational& a) {
        CatalogKey k;
        k.family = family;
        k.params["alpha"] = a;
        return k;
    };
    Matrix<Rational> g(3, 3);
    if (family == "P3.4") {
        if (alpha.is_zero())
            throw InputError("P3.4^alpha ~ P3.4^(1/alpha) needs alpha != 0");
        // e1 -> alpha e1, e2 <-> e3
        g(0, 0) = alpha;
        g(2, 1) = Rational(1);
        g(1, 2) = Rational(1);
        return {"alpha -> 1/alpha", keyed(alpha), keyed(alpha.inverse()), g};
    }
    if (family == "P3.16") {
        g(1, 0) = Rational(1);
        g(0, 1) = Rational(1);
        g(2, 2) = Rational(1);
        return {"alpha -> -alpha", keyed(alpha), keyed(-alpha), g};
    }
    throw UnknownKey("no family isomorphism recorded for " + family);
}

}  // namespace poisson
