#include "poisson/algebra_json.hpp"

#include "poisson/errors.hpp"

namespace poisson {

Rational rational_from_json(const json& v)
{
    if (v.is_string())
        return Rational::parse(v.get<std::string>());
    if (v.is_number_integer())
        return Rational(static_cast<long>(v.get<long long>()));
    throw ParseError("expected a rational scalar, got " + v.dump());
}

namespace {

json side_to_json(const StructureConstants<Rational>& m)
{
    json arr = json::array();
    for (auto& [key, c] : m.entries())
        arr.push_back(json::array({key[0], key[1], key[2], c.str()}));
    return arr;
}

void side_from_json(const json& arr, StructureConstants<Rational>& m, const char* name)
{
    if (!arr.is_array())
        throw ParseError(std::string("'") + name + "' must be an array");
    std::map<StructureConstants<Rational>::Key, Rational> seen;
    for (auto& e : arr) {
        if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
            !e[2].is_number_integer())
            throw ParseError(std::string("bad entry in '") + name + "': " + e.dump());
        int i = e[0].get<int>(), j = e[1].get<int>(), k = e[2].get<int>();
        Rational q = rational_from_json(e[3]);
        if (i < 1 || j < 1 || k < 1 || i > m.dim() || j > m.dim() || k > m.dim())
            throw DimensionMismatch(std::string("index out of range in '") + name + "': " + e.dump());
        bool anti = m.symmetry() == Symmetry::antisymmetric;
        if (anti && i == j && !q.is_zero())
            throw InputError(std::string("nonzero diagonal bracket entry: ") + e.dump());
        Rational canon = (anti && i > j) ? -q : q;
        StructureConstants<Rational>::Key key = i > j ? StructureConstants<Rational>::Key{j, i, k}
                                                      : StructureConstants<Rational>::Key{i, j, k};
        auto it = seen.find(key);
        if (it != seen.end() && !(it->second == canon))
            throw InputError(std::string("conflicting entries in '") + name + "': " + e.dump());
        seen[key] = canon;
        m.set(i, j, k, q);
    }
}

}  // namespace

json pair_to_json(const BilinearPair<Rational>& p)
{
    return json{{"dim", p.dim()}, {"dot", side_to_json(p.dot)}, {"bracket", side_to_json(p.bracket)}};
}

BilinearPair<Rational> pair_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
        throw ParseError("algebra JSON needs an integer 'dim'");
    int n = j["dim"].get<int>();
    if (n < 1 || n > 64)
        throw BadDimension("algebra dimension out of range");
    BilinearPair<Rational> p(n);
    if (j.contains("dot"))
        side_from_json(j["dot"], p.dot, "dot");
    if (j.contains("bracket"))
        side_from_json(j["bracket"], p.bracket, "bracket");
    return p;
}

}  // namespace poisson
