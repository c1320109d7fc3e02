#include <doctest.h>

#include "poisson/catalog.hpp"

#include <random>

using namespace poisson;
using Q = Rational;

namespace {

const std::vector<Q> kAlphas = {Q(0), Q(1), Q(-1), Q(2), Q(1, 2)};

CatalogKey with_alpha(const std::string& fam, const Q& a)
{
    CatalogKey k = CatalogKey::parse(fam);
    k.params["alpha"] = a;
    return k;
}

}  // namespace

TEST_CASE("build examples")
{
    auto p16 = build(CatalogKey::parse("P3_16(alpha=5)"));
    CHECK(p16.dot.entries().size() == 1);
    CHECK(p16.dot.get(1, 2, 3) == Q(1));
    CHECK(p16.bracket.entries().size() == 1);
    CHECK(p16.bracket.get(1, 2, 3) == Q(5));

    auto p0 = build(CatalogKey::parse("P0(n=4)"));
    CHECK(p0.dot.entries().size() == 4);
    CHECK(p0.dot.get(1, 1, 2) == Q(1));
    CHECK(p0.dot.get(1, 2, 3) == Q(1));
    CHECK(p0.dot.get(1, 3, 4) == Q(1));
    CHECK(p0.dot.get(2, 2, 4) == Q(1));
    CHECK(p0.bracket.is_zero());

    auto p15 = build(CatalogKey::parse("P1_5(n=5)"));
    BilinearPair<Q> expect(5);
    for (int i = 1; i <= 4; ++i)
        for (int j = i; i + j <= 4; ++j)
            expect.dot.set(i, j, i + j, Q(1));
    expect.dot.set(5, 5, 4, Q(1));
    expect.bracket.set(1, 5, 4, Q(1));
    CHECK(p15 == expect);
    CHECK(build(CatalogKey::parse("P3.1")) == BilinearPair<Q>(3));
}

TEST_CASE("filiform families follow the e_i e_j = e_(i+j) rule")
{
    for (int n = 4; n <= 8; ++n)
        for (auto& f : filiform_families()) {
            auto p = build(CatalogKey::parse(f + "(n=" + std::to_string(n) + ")"));
            int top = f == "P0" ? n : n - 1;
            for (int i = 1; i <= n; ++i)
                for (int j = 1; j <= n; ++j)
                    for (int k = 1; k <= n; ++k) {
                        bool rule = i < n && j < n && i + j <= top && k == i + j;
                        if (f == "P0")
                            rule = i + j <= n && k == i + j;
                        bool extra = (f == "P1.4" || f == "P1.5") && i == n && j == n && k == n - 1;
                        CHECK(p.dot.get(i, j, k) == Q(rule || extra ? 1 : 0));
                    }
            Q b1n = p.bracket.get(1, n, n), b1m = p.bracket.get(1, n, n - 1);
            CHECK(b1n == Q(f == "P1.2" ? 1 : 0));
            CHECK(b1m == Q(f == "P1.3" || f == "P1.5" ? 1 : 0));
        }
}

TEST_CASE("build errors")
{
    CHECK_THROWS_AS(CatalogKey::parse("P3.21"), UnknownKey);
    CHECK_THROWS_AS(CatalogKey::parse("Q7"), UnknownKey);
    CHECK_THROWS_AS(build(CatalogKey::parse("P3.16")), MissingParam);
    CHECK_THROWS_AS(build(CatalogKey::parse("P1.2")), MissingParam);
    CHECK_THROWS_AS(build(CatalogKey::parse("P1.2(n=3)")), BadDimension);
    CHECK_THROWS_AS(build(CatalogKey::parse("mu11(n=3)")), BadDimension);
    CHECK_THROWS_AS(build(CatalogKey::parse("P3.5(n=4)")), BadDimension);
    CHECK_THROWS_AS(build(CatalogKey::parse("P3.5(alpha=1)")), InputError);
    CHECK_THROWS_AS(CatalogKey::parse("P3.16(beta=1)"), InputError);
    CHECK_THROWS_AS(CatalogKey::parse("P0(n=0)"), BadDimension);
    CHECK_THROWS_AS(CatalogKey::parse("P0(n=x)"), ParseError);
    CHECK_THROWS_AS(CatalogKey::parse("P0(n=4"), ParseError);
    CHECK_NOTHROW(build(CatalogKey::parse("P0(n=1)")));
    CHECK_NOTHROW(build(CatalogKey::parse("mu0(n=2)")));
}

TEST_CASE("key grammar")
{
    CHECK(CatalogKey::parse("P3_16(alpha=5)").str() == "P3.16(alpha=5)");
    CHECK(CatalogKey::parse("P15(n=5)").str() == "P1.5(n=5)");
    CHECK(CatalogKey::parse("P1_5(n=5)") == CatalogKey::parse("P1.5(n=5)"));
    CHECK(CatalogKey::parse("mu12(n=5)").str() == "mu12(n=5)");
    CHECK(CatalogKey::parse("P3.4(alpha=-2/4)").str() == "P3.4(alpha=-1/2)");
    CHECK(CatalogKey::parse("L3_5").str() == "L3.5");
    for (std::string s : {"P3.16(alpha=5)", "P0(n=7)", "mu12(n=5)", "A12", "P3.4(alpha=0)"}) {
        auto k = CatalogKey::parse(s);
        CHECK(CatalogKey::parse(k.str()) == k);
        CHECK(build(k) == build(CatalogKey::parse(s)));
    }
}

TEST_CASE("identity suite over the 3-dimensional lists")
{
    int poisson = 0;
    for (auto& f : three_dim_poisson_families()) {
        CAPTURE(f);
        if (family_has_alpha(f))
            for (auto& a : kAlphas)
                CHECK(is_poisson(build(with_alpha(f, a))));
        else
            CHECK(is_poisson(build(CatalogKey::parse(f))));
        ++poisson;
    }
    CHECK(poisson == 20);
    for (auto& f : commutative_families()) {
        auto p = build(CatalogKey::parse(f));
        CHECK(check_identity(p, Identity::commutative).holds);
        CHECK(check_identity(p, Identity::associative).holds);
        CHECK(p.bracket.is_zero());
    }
    CHECK(commutative_families().size() == 12);
    for (auto& f : lie_families()) {
        std::vector<CatalogKey> keys;
        if (family_has_alpha(f))
            for (auto& a : kAlphas)
                keys.push_back(with_alpha(f, a));
        else
            keys.push_back(CatalogKey::parse(f));
        for (auto& k : keys) {
            auto p = build(k);
            CHECK(check_identity(p, Identity::anticommutative).holds);
            CHECK(check_identity(p, Identity::jacobi).holds);
            CHECK(check_identity(p, Identity::malcev).holds);
        }
    }
}

TEST_CASE("Poisson pairs split into a listed commutative algebra and a listed Lie algebra")
{
    for (auto& row : table1_rows()) {
        CAPTURE(row.label);
        std::vector<Q> alphas = row.label_alphas.empty() ? std::vector<Q>{Q(0)} : row.label_alphas;
        for (auto& a : alphas) {
            CatalogKey k = row.key;
            if (!row.label_alphas.empty())
                k.params["alpha"] = a;
            auto p = build(k);
            CHECK(p.dot == build(row.dot_key(a)).dot);
            // In the new basis f_j = columns of B, the bracket is the labelled Lie table.
            Matrix<Q> basis = row.bracket_basis(a);
            auto moved = apply_basis_change(basis.inverse(), BilinearPair<Q>(StructureConstants<Q>(3, Symmetry::symmetric), p.bracket));
            CHECK(moved.bracket == build(row.bracket_key(a)).bracket);
        }
    }
}

TEST_CASE("automorphism templates")
{
    auto a2 = aut_template(CatalogKey::parse("A2"));
    CHECK(a2.pattern[1][1] == "a11^2");
    CHECK(a2.pattern[0] == std::vector<std::string>{"a11", "0", "0"});
    auto a7 = aut_template(CatalogKey::parse("A7"));
    CHECK(a7.pattern[0] == std::vector<std::string>{"1", "0", "0"});
    CHECK(a7.pattern[1][0] == "0");
    CHECK(a7.pattern[2][0] == "0");
    auto m12 = aut_template(CatalogKey::parse("mu12(n=5)"));
    CHECK(m12.pattern[4][4] == "s^4");  // a11^((n-1)/2) with a11 = s^2
    CHECK(m12.pattern[0][0] == "s^2");
    CHECK(m12.pattern[3][4] == "a4_5");
    CHECK_THROWS_AS(aut_template(CatalogKey::parse("A5")), UnknownKey);

    std::vector<std::string> keys = {"A2", "A3", "A7", "A11"};
    for (int n = 4; n <= 8; ++n) {
        keys.push_back("mu11(n=" + std::to_string(n) + ")");
        keys.push_back("mu12(n=" + std::to_string(n) + ")");
    }
    std::mt19937_64 rng(41);
    for (auto& k : keys) {
        CAPTURE(k);
        auto key = CatalogKey::parse(k);
        auto t = aut_template(key);
        BilinearPair<Q> alg(build(key).dot, StructureConstants<Q>(key.dim(), Symmetry::antisymmetric));
        for (int trial = 0; trial < 100; ++trial) {
            Matrix<Q> phi = t.instantiate(t.sample(rng));
            REQUIRE_FALSE(phi.det().is_zero());
            CHECK(apply_basis_change(phi, alg) == alg);
        }
    }
}

TEST_CASE("A3 template needs one of its two branch constraints")
{
    auto t = aut_template(CatalogKey::parse("A3"));
    auto alg = build(CatalogKey::parse("A3"));
    std::map<std::string, Q> v = {{"a11", Q(1)}, {"a12", Q(2)}, {"a21", Q(3)},
                                  {"a22", Q(5)}, {"a31", Q(0)}, {"a32", Q(0)}};
    Matrix<Q> phi = t.instantiate(v);
    REQUIRE_FALSE(phi.det().is_zero());
    CHECK_FALSE(apply_basis_change(phi, alg) == alg);
}

TEST_CASE("cross-reference isomorphisms")
{
    auto rows = crossref_table(3);
    REQUIRE(rows.size() == 6);
    int need_i = 0;
    for (auto& r : rows) {
        CAPTURE(r.three_dim);
        CHECK(verify_isomorphism(r.source, r.target, r.g));
        CHECK(is_poisson(r.target));
        need_i += r.needs_i;
    }
    CHECK(need_i == 2);
    CHECK(rows[0].g == Matrix<Cyclotomic>::identity(3));
    CHECK(rows[1].g == Matrix<Cyclotomic>::identity(3));
    CHECK_THROWS_AS(crossref_table(4), BadDimension);
}

TEST_CASE("family isomorphism laws")
{
    for (Q a : {Q(2), Q(3), Q(1, 5)}) {
        auto w = family_isomorphism("P3.4", a);
        CHECK(w.target == with_alpha("P3.4", a.inverse()));
        CHECK(verify_isomorphism(build(w.source), build(w.target), w.g));
    }
    for (Q a : {Q(1), Q(2), Q(7)}) {
        auto w = family_isomorphism("P3.16", a);
        CHECK(verify_isomorphism(build(w.source), build(w.target), w.g));
    }
    CHECK_THROWS_AS(family_isomorphism("P3.4", Q(0)), InputError);
    CHECK_THROWS_AS(family_isomorphism("P3.5", Q(1)), UnknownKey);
}
