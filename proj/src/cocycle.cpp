#include "poisson/cocycle.hpp"

#include "poisson/catalog.hpp"

#include <random>

namespace poisson {

SkewBilinearMap::SkewBilinearMap(StructureConstants<Rational> s) : c(std::move(s))
{
    if (c.symmetry() != Symmetry::antisymmetric)
        throw InputError("skew map needs antisymmetric constants");
}

int skew_ambient_dim(int n) { return n * n * (n - 1) / 2; }

std::vector<Rational> SkewBilinearMap::coords() const
{
    int n = dim();
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(skew_ambient_dim(n)));
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                v.push_back(c.get(i, j, k));
    return v;
}

SkewBilinearMap SkewBilinearMap::from_coords(int n, const std::vector<Rational>& v)
{
    if (static_cast<int>(v.size()) != skew_ambient_dim(n))
        throw DimensionMismatch("coordinate vector has wrong length for a skew map");
    SkewBilinearMap m(n);
    size_t p = 0;
    for (int k = 1; k <= n; ++k)
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                m.c.set(i, j, k, v[p++]);
    return m;
}

SkewBilinearMap SkewBilinearMap::delta(int n, int i, int j, int k, const Rational& q)
{
    SkewBilinearMap m(n);
    m.c.set(i, j, k, q);
    return m;
}

SkewBilinearMap SkewBilinearMap::operator+(const SkewBilinearMap& o) const
{
    if (dim() != o.dim())
        throw DimensionMismatch("adding skew maps of different dimension");
    SkewBilinearMap r = *this;
    for (auto& [key, v] : o.c.entries())
        r.c.set(key[0], key[1], key[2], r.c.get(key[0], key[1], key[2]) + v);
    return r;
}

SkewBilinearMap SkewBilinearMap::scaled(const Rational& q) const
{
    return SkewBilinearMap(c.map<Rational>([&q](const Rational& v) { return v * q; }));
}

std::string SkewBilinearMap::str() const
{
    if (is_zero())
        return "0";
    std::string s;
    for (auto& [key, v] : c.entries()) {
        std::string d = "D" + std::to_string(key[0]) + std::to_string(key[1]) + "*e" + std::to_string(key[2]);
        std::string t = v == Rational(1) ? d : v == Rational(-1) ? "-" + d : v.str() + "*" + d;
        append_term(s, t);
    }
    return s;
}

std::vector<SkewBilinearMap> leibniz_space(const StructureConstants<Rational>& dot)
{
    if (dot.symmetry() != Symmetry::symmetric)
        throw InputError("leibniz_space needs a symmetric dot");
    int n = dot.dim();
    int vars = skew_ambient_dim(n);
    detail::ProductTable<Rational> D(dot);
    // Residual of theta(x.y,z) - theta(x,z).y - x.theta(y,z) on basis triples, one column per
    // ambient basis element.
    std::vector<std::vector<Rational>> cols;
    for (int v = 0; v < vars; ++v) {
        std::vector<Rational> u(static_cast<size_t>(vars), Rational(0));
        u[static_cast<size_t>(v)] = Rational(1);
        detail::ProductTable<Rational> T(SkewBilinearMap::from_coords(n, u).c);
        std::vector<Rational> col;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    auto l = T.mul(D.basis(i, j), detail::unit<Rational>(n, k));
                    auto r1 = D.mul(T.basis(i, k), detail::unit<Rational>(n, j));
                    auto r2 = D.mul(detail::unit<Rational>(n, i), T.basis(j, k));
                    for (int m = 0; m < n; ++m)
                        col.push_back(l[static_cast<size_t>(m)] - r1[static_cast<size_t>(m)] -
                                      r2[static_cast<size_t>(m)]);
                }
        cols.push_back(std::move(col));
    }
    int rows = n * n * n * n;
    Matrix<Rational> a(rows, vars);
    for (int v = 0; v < vars; ++v)
        for (int r = 0; r < rows; ++r)
            a(r, v) = cols[static_cast<size_t>(v)][static_cast<size_t>(r)];
    std::vector<SkewBilinearMap> out;
    for (auto& b : solve_nullspace(a))
        out.push_back(SkewBilinearMap::from_coords(n, b));
    return out;
}

std::vector<std::array<int, 3>> jacobi_residual(const SkewBilinearMap& theta)
{
    int n = theta.dim();
    detail::ProductTable<Rational> B(theta.c);
    auto e = [n](int i) { return detail::unit<Rational>(n, i); };
    std::vector<std::array<int, 3>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                auto s = detail::add(B.mul(B.basis(i, j), e(k)), B.mul(B.basis(j, k), e(i)));
                s = detail::add(s, B.mul(B.basis(k, i), e(j)));
                if (!detail::is_zero_vec(s))
                    out.push_back({i + 1, j + 1, k + 1});
            }
    return out;
}

Z2Report z2_report(const StructureConstants<Rational>& dot, int samples, std::uint64_t seed)
{
    Z2Report r;
    r.basis = leibniz_space(dot);
    r.linear_dim = static_cast<int>(r.basis.size());
    r.samples = samples;
    // The Jacobiator of sum l_i theta_i is a quadratic form in l; it vanishes identically
    // iff it vanishes on every theta_i and every theta_i + theta_j.
    r.jacobi_automatic = true;
    for (size_t i = 0; i < r.basis.size() && r.jacobi_automatic; ++i)
        for (size_t j = i; j < r.basis.size(); ++j) {
            SkewBilinearMap t = i == j ? r.basis[i] : r.basis[i] + r.basis[j];
            if (!jacobi_residual(t).empty()) {
                r.jacobi_automatic = false;
                break;
            }
        }
    std::mt19937_64 rng(seed);
    for (int s = 0; s < samples && !r.basis.empty(); ++s) {
        SkewBilinearMap t(dot.dim());
        for (auto& b : r.basis)
            t = t + b.scaled(random_rational(rng));
        if (!jacobi_residual(t).empty())
            r.sampled_ok = false;
    }
    return r;
}

SkewBilinearMap theta_action(const Matrix<Rational>& phi, const SkewBilinearMap& theta)
{
    if (phi.rows() != theta.dim() || phi.cols() != theta.dim())
        throw DimensionMismatch("automorphism has wrong size");
    Matrix<Rational> inv = phi.inverse();
    return SkewBilinearMap(act(inv, phi, theta.c));
}

std::optional<std::vector<Rational>> express_in_basis(const std::vector<SkewBilinearMap>& basis,
                                                      const SkewBilinearMap& theta)
{
    int n = theta.dim();
    int len = skew_ambient_dim(n);
    int m = static_cast<int>(basis.size());
    Matrix<Rational> a(len, m + 1);
    for (int c = 0; c < m; ++c) {
        auto v = basis[static_cast<size_t>(c)].coords();
        for (int r = 0; r < len; ++r)
            a(r, c) = v[static_cast<size_t>(r)];
    }
    auto t = theta.coords();
    for (int r = 0; r < len; ++r)
        a(r, m) = t[static_cast<size_t>(r)];
    auto piv = a.rref_inplace();
    std::vector<Rational> x(static_cast<size_t>(m), Rational(0));
    for (size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == m)
            return std::nullopt;
        x[static_cast<size_t>(piv[r])] = a(static_cast<int>(r), m);
    }
    return x;
}

json skew_to_json(const SkewBilinearMap& theta)
{
    json comps = json::array();
    for (auto& [key, v] : theta.c.entries())
        comps.push_back({key[0], key[1], key[2], v.str()});
    return {{"dim", theta.dim()}, {"components", comps}};
}

SkewBilinearMap skew_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("dim") || !j.contains("components"))
        throw ParseError("skew map JSON needs 'dim' and 'components'");
    if (!j["dim"].is_number_integer())
        throw ParseError("'dim' must be an integer");
    int n = j["dim"].get<int>();
    if (n < 1)
        throw BadDimension("dimension must be positive");
    SkewBilinearMap m(n);
    for (auto& e : j["components"]) {
        if (!e.is_array() || e.size() != 4 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
            !e[2].is_number_integer())
            throw ParseError("component entries are [i, j, k, \"q\"]");
        int i = e[0].get<int>(), jj = e[1].get<int>(), k = e[2].get<int>();
        if (i < 1 || jj < 1 || k < 1 || i > n || jj > n || k > n)
            throw ParseError("component index out of range");
        if (i >= jj)
            throw ParseError("component indices must satisfy i < j");
        if (!m.c.get(i, jj, k).is_zero())
            throw ParseError("duplicate component entry");
        m.c.set(i, jj, k, rational_from_json(e[3]));
    }
    return m;
}

}  // namespace poisson
