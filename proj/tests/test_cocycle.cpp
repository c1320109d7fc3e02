#include <doctest.h>

#include "poisson/catalog.hpp"
#include "poisson/cocycle.hpp"

#include <random>

using namespace poisson;
using Q = Rational;

namespace {

SkewBilinearMap D(int n, int i, int j, int k, Q q = Q(1)) { return SkewBilinearMap::delta(n, i, j, k, q); }

// Jacobiator straight from structure constants: sum over l of c_ij^l c_lk^m + cyclic.
bool jacobi_brute(const SkewBilinearMap& t, int i, int j, int k)
{
    int n = t.dim();
    auto c = [&](int a, int b, int m) { return t.c.get(a, b, m); };
    for (int m = 1; m <= n; ++m) {
        Q s(0);
        for (int l = 1; l <= n; ++l)
            s = s + c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
        if (!s.is_zero())
            return false;
    }
    return true;
}

// Image of x under the matrix whose columns are the images of the basis vectors.
std::vector<Q> image(const Matrix<Q>& m, const std::vector<Q>& x) { return m * x; }

// phi^-1 theta(phi e_i, phi e_j) computed entry by entry.
SkewBilinearMap action_brute(const Matrix<Q>& phi, const SkewBilinearMap& th)
{
    int n = th.dim();
    Matrix<Q> inv = phi.inverse();
    SkewBilinearMap out(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<Q> acc(static_cast<size_t>(n), Q(0));
            for (int a = 1; a <= n; ++a)
                for (int b = 1; b <= n; ++b)
                    for (int k = 1; k <= n; ++k)
                        acc[static_cast<size_t>(k - 1)] = acc[static_cast<size_t>(k - 1)] +
                                                          phi(a - 1, i - 1) * phi(b - 1, j - 1) * th.component(k, a, b);
            auto v = image(inv, acc);
            for (int k = 1; k <= n; ++k)
                out.c.set(i, j, k, v[static_cast<size_t>(k - 1)]);
        }
    return out;
}

Matrix<Q> random_invertible(std::mt19937_64& rng, int n)
{
    for (;;) {
        Matrix<Q> m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m(i, j) = random_rational(rng);
        if (!m.det().is_zero())
            return m;
    }
}

SkewBilinearMap random_skew(std::mt19937_64& rng, int n)
{
    SkewBilinearMap t(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = 1; k <= n; ++k)
                if (rng() % 3 == 0)
                    t.c.set(i, j, k, random_rational(rng));
    return t;
}

const StructureConstants<Q>& dot_of(const std::string& key)
{
    static std::map<std::string, BilinearPair<Q>> cache;
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, build(CatalogKey::parse(key))).first;
    return it->second.dot;
}

}  // namespace

TEST_CASE("leibniz_space examples")
{
    auto a2 = leibniz_space(dot_of("A2"));
    REQUIRE(a2.size() == 2);
    CHECK(a2[0] == D(3, 1, 3, 2));
    CHECK(a2[1] == D(3, 1, 3, 3));
    CHECK(leibniz_space(StructureConstants<Q>(3, Symmetry::symmetric)).size() == 9);
    CHECK(leibniz_space(dot_of("mu0(n=6)")).empty());
}

TEST_CASE("Z2 of the commutative 3-dimensional algebras")
{
    for (std::string a : {"A4", "A5", "A6", "A8", "A9", "A10", "A12"}) {
        CAPTURE(a);
        auto r = z2_report(dot_of(a), 20, 1);
        CHECK(r.linear_dim == 0);
        CHECK(r.jacobi_automatic);
    }
    auto a3 = z2_report(dot_of("A3"), 50, 2);
    CHECK(a3.linear_dim == 1);
    CHECK(a3.basis[0] == D(3, 1, 2, 3));
    CHECK(a3.jacobi_automatic);
    CHECK(a3.sampled_ok);
    auto a7 = z2_report(dot_of("A7"), 50, 3);
    CHECK(a7.linear_dim == 2);
    CHECK(a7.basis[0] == D(3, 2, 3, 2));
    CHECK(a7.basis[1] == D(3, 2, 3, 3));
    CHECK(a7.jacobi_automatic);
    auto a11 = z2_report(dot_of("A11"), 50, 4);
    CHECK(a11.linear_dim == 2);
    CHECK(a11.jacobi_automatic);
    auto a1 = z2_report(dot_of("A1"), 50, 5);
    CHECK(a1.linear_dim == 9);
    // On the zero algebra Z2 is the set of all Lie brackets, not a linear space.
    CHECK_FALSE(a1.jacobi_automatic);
    CHECK_FALSE(a1.sampled_ok);
}

TEST_CASE("filiform Z2 lemmas at parametric n")
{
    for (int n = 2; n <= 8; ++n)
        CHECK(leibniz_space(build_raw<Q>("mu0", n, Q(0)).dot).empty());
    for (int n = 4; n <= 8; ++n) {
        CAPTURE(n);
        auto r11 = z2_report(dot_of("mu11(n=" + std::to_string(n) + ")"), 10, 7);
        REQUIRE(r11.linear_dim == 2);
        CHECK(r11.basis[0] == D(n, 1, n, n - 1));
        CHECK(r11.basis[1] == D(n, 1, n, n));
        CHECK(r11.jacobi_automatic);
        auto r12 = z2_report(dot_of("mu12(n=" + std::to_string(n) + ")"), 10, 7);
        REQUIRE(r12.linear_dim == 1);
        CHECK(r12.basis[0] == D(n, 1, n, n - 1));
        CHECK(r12.jacobi_automatic);
    }
}

TEST_CASE("jacobi_residual")
{
    auto l35 = build(CatalogKey::parse("L3.5")).bracket;
    CHECK(jacobi_residual(SkewBilinearMap(l35)).empty());
    CHECK(jacobi_residual(SkewBilinearMap(3)).empty());

    // {e1,e2}=e1, {e1,e3}=e2, {e2,e3}=e3: the Jacobiator at (1,2,3) is e2 - e2 + 0.
    SkewBilinearMap t = D(3, 1, 2, 1) + D(3, 1, 3, 2) + D(3, 2, 3, 3);
    CHECK(jacobi_brute(t, 1, 2, 3));
    CHECK(jacobi_residual(t).empty());

    // {e1,e2}=e3, {e1,e3}=e1, {e2,e3}=e2 is not a Lie bracket.
    SkewBilinearMap u = D(3, 1, 2, 3) + D(3, 1, 3, 1) + D(3, 2, 3, 2);
    CHECK_FALSE(jacobi_brute(u, 1, 2, 3));
    auto res = jacobi_residual(u);
    REQUIRE(res.size() == 1);
    CHECK(res[0] == std::array<int, 3>{1, 2, 3});

    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        auto th = random_skew(rng, n);
        std::vector<std::array<int, 3>> expect;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                for (int k = j + 1; k <= n; ++k)
                    if (!jacobi_brute(th, i, j, k))
                        expect.push_back({i, j, k});
        CHECK(jacobi_residual(th) == expect);
        CHECK(check_identity(BilinearPair<Q>(StructureConstants<Q>(n, Symmetry::symmetric), th.c),
                             Identity::jacobi)
                  .holds == expect.empty());
    }
}

TEST_CASE("theta_action examples")
{
    auto a2 = aut_template(CatalogKey::parse("A2"));
    Matrix<Q> phi = a2.instantiate({{"a11", Q(2)}, {"a21", Q(0)}, {"a23", Q(3)}, {"a31", Q(0)}, {"a33", Q(1)}});
    SkewBilinearMap th = D(3, 1, 3, 3);
    SkewBilinearMap expect = D(3, 1, 3, 2, Q(-3, 2)) + D(3, 1, 3, 3, Q(2));
    CHECK(theta_action(phi, th) == expect);
    CHECK(action_brute(phi, th) == expect);
    // alpha' = (alpha a33 - beta a23)/a11, beta' = beta a11
    Q alpha(0), beta(1), a11(2), a23(3), a33(1);
    CHECK(expect == D(3, 1, 3, 2, (alpha * a33 - beta * a23) / a11) + D(3, 1, 3, 3, beta * a11));

    std::map<std::string, Q> v;
    auto mu = aut_template(CatalogKey::parse("mu11(n=5)"));
    for (auto& s : mu.symbols)
        v[s] = Q(0);
    v["a1_1"] = Q(2);
    v["a5_5"] = Q(1);
    Matrix<Q> psi = mu.instantiate(v);
    CHECK(theta_action(psi, D(5, 1, 5, 4)) == D(5, 1, 5, 4, Q(1, 8)));
    CHECK(action_brute(psi, D(5, 1, 5, 4)) == D(5, 1, 5, 4, Q(1, 8)));

    CHECK(theta_action(Matrix<Q>::identity(3), expect) == expect);
    Matrix<Q> sing(3, 3);
    CHECK_THROWS_AS(theta_action(sing, th), SingularMatrix);
}

TEST_CASE("theta_action agrees with brute force and composes as a right action")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        auto th = random_skew(rng, n);
        auto phi = random_invertible(rng, n), psi = random_invertible(rng, n);
        auto once = theta_action(phi, th);
        CHECK(once == action_brute(phi, th));
        CHECK(theta_action(phi * psi, th) == theta_action(psi, once));
    }
}

TEST_CASE("Aut-template instantiations preserve the Leibniz space")
{
    std::mt19937_64 rng(29);
    std::vector<std::string> keys = {"A2", "A3", "A7", "A11"};
    for (int n = 4; n <= 8; ++n) {
        keys.push_back("mu11(n=" + std::to_string(n) + ")");
        keys.push_back("mu12(n=" + std::to_string(n) + ")");
    }
    for (auto& k : keys) {
        CAPTURE(k);
        auto key = CatalogKey::parse(k);
        auto tmpl = aut_template(key);
        const auto& dot = dot_of(k);
        auto basis = leibniz_space(dot);
        int trials = key.n > 5 ? 4 : 15;
        for (int trial = 0; trial < trials; ++trial) {
            Matrix<Q> phi = tmpl.instantiate(tmpl.sample(rng));
            // phi is an automorphism of the dot: phi(x.y) = phi x . phi y on basis pairs.
            CHECK(act(phi, phi.inverse(), dot) == dot);
            for (auto& b : basis)
                CHECK(express_in_basis(basis, theta_action(phi, b)).has_value());
        }
    }
}

TEST_CASE("cocycle representatives give Poisson algebras")
{
    struct Row {
        std::string dot, target;
        SkewBilinearMap theta;
    };
    std::vector<Row> rows = {
        {"A2", "P3.13", SkewBilinearMap(3)},
        {"A2", "P3.14", D(3, 1, 3, 3)},
        {"A2", "P3.15", D(3, 1, 3, 2)},
        {"A3", "P3.16(alpha=1)", D(3, 1, 2, 3)},
        {"A7", "P3.17", SkewBilinearMap(3)},
        {"A7", "P3.18", D(3, 2, 3, 2)},
        {"A11", "P3.19", SkewBilinearMap(3)},
        {"A11", "P3.20", D(3, 2, 3, 2)},
    };
    for (auto& r : rows) {
        CAPTURE(r.target);
        BilinearPair<Q> p(dot_of(r.dot), r.theta.c);
        CHECK(is_poisson(p));
        CHECK(p == build(CatalogKey::parse(r.target)));
    }
}

TEST_CASE("skew map JSON")
{
    SkewBilinearMap t = D(3, 1, 3, 2, Q(-3, 2)) + D(3, 1, 3, 3, Q(2));
    auto j = skew_to_json(t);
    CHECK(j.dump() == R"({"components":[[1,3,2,"-3/2"],[1,3,3,"2"]],"dim":3})");
    CHECK(skew_from_json(j) == t);
    CHECK_THROWS_AS(skew_from_json(json::parse(R"({"dim":3,"components":[[3,1,2,"1"]]})")), ParseError);
    CHECK_THROWS_AS(skew_from_json(json::parse(R"({"dim":3,"components":[[1,4,2,"1"]]})")), ParseError);
    CHECK_THROWS_AS(skew_from_json(json::parse(R"({"dim":3})")), ParseError);
}
