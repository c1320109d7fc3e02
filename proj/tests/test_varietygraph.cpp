#include <doctest.h>

#include "poisson/degeneration.hpp"
#include "poisson/varietygraph.hpp"

#include <random>
#include <set>

using namespace poisson;
using Q = Rational;
namespace fs = std::filesystem;

namespace {

BilinearPair<Q> key_pair(const std::string& s) { return build(CatalogKey::parse(s)); }

fs::path figures() { return default_data_dir() / "figures"; }

const Dataset& families()
{
    static const Dataset ds = three_dim_dataset(View::families);
    return ds;
}

const Dataset& algebras()
{
    static const Dataset ds = three_dim_dataset(View::algebras);
    return ds;
}

std::set<int> levels(const DegenerationGraph& g)
{
    std::set<int> out;
    for (auto& n : g.nodes())
        out.insert(n.orbit_dim);
    return out;
}

GraphNode simple(const std::string& key) { return make_node(key, NodeKind::algebra, {CatalogKey::parse(key)}); }

// Closure by repeated relaxation, independent of the library's Floyd-Warshall.
std::set<std::pair<std::string, std::string>> naive_closure(const EdgeList& edges)
{
    std::set<std::pair<std::string, std::string>> c(edges.begin(), edges.end());
    for (bool grew = true; grew;) {
        grew = false;
        auto snap = c;
        for (auto& [a, b] : snap)
            for (auto& [x, y] : snap)
                if (b == x && c.insert({a, y}).second)
                    grew = true;
    }
    return c;
}

}  // namespace


TEST_CASE("trivial graphs")
{
    auto g = build_graph({simple("P3.1")}, {});
    CHECK(maximal_nodes(g) == std::vector<std::string>{"P3.1"});
    CHECK(transitive_reduction(g).empty());
    CHECK(g.non_edges().empty());
    auto dot = emit_dot(g);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("\"P3.1\" [") != std::string::npos);
    CHECK(dot.back() == '\n');
    CHECK(dot == emit_dot(g));
}

TEST_CASE("transitive_reduction on plain edge lists")
{
    EdgeList chain{{"a", "b"}, {"b", "c"}, {"a", "c"}};
    CHECK(transitive_reduction({"a", "b", "c"}, chain) == EdgeList{{"a", "b"}, {"b", "c"}});
    CHECK_THROWS_AS(transitive_reduction({"a", "b", "c"}, EdgeList{{"a", "b"}, {"b", "c"}, {"c", "a"}}),
                    CycleDetected);
    CHECK_THROWS_AS(transitive_reduction({"a"}, EdgeList{{"a", "z"}}), UnknownKey);

    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> coin(0, 2);
    for (int t = 0; t < 100; ++t) {
        std::vector<std::string> nodes;
        for (int i = 0; i < 8; ++i)
            nodes.push_back(std::string(1, static_cast<char>('a' + i)));
        EdgeList edges;
        for (int i = 0; i < 8; ++i)
            for (int j = i + 1; j < 8; ++j)
                if (coin(rng) == 0)
                    edges.emplace_back(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)]);
        auto red = transitive_reduction(nodes, edges);
        auto full = naive_closure(edges);
        CHECK(naive_closure(red) == full);
        for (size_t k = 0; k < red.size(); ++k) {
            EdgeList fewer = red;
            fewer.erase(fewer.begin() + static_cast<long>(k));
            CHECK(naive_closure(fewer) != full);
        }
    }
}

TEST_CASE("build_graph rejects inconsistent evidence")
{
    CHECK_THROWS_AS(build_graph({simple("P3.1"), simple("P3.7")}, {{"P3.1", "P3.7", ""}}), InconsistentEvidence);
    // P3.13 has orbit dimension 4 and P3.2 has 3, but the bracket annihilator grows the wrong way.
    REQUIRE(simple("P3.13").orbit_dim > simple("P3.2").orbit_dim);
    CHECK_FALSE(check_necessary_conditions(key_pair("P3.13"), key_pair("P3.2")).all_pass());
    CHECK_THROWS_AS(build_graph({simple("P3.13"), simple("P3.2")}, {{"P3.13", "P3.2", ""}}), InconsistentEvidence);
    CHECK_THROWS_AS(build_graph({simple("P3.2"), simple("P3.1")}, {{"P3.2", "P3.1", ""}},
                                {{"P3.2", "P3.1", Tier::separating, "made up"}}),
                    InconsistentEvidence);
    CHECK_THROWS_AS(build_graph({simple("P3.2")}, {{"P3.2", "P3.9", ""}}), UnknownKey);
    CHECK_THROWS_AS(build_graph({simple("P3.2"), simple("P3.2")}, {}), InputError);
}

TEST_CASE("the algebras view reproduces the graph of primary degenerations")
{
    auto& ds = algebras();
    CHECK(ds.rejected.empty());
    CHECK(levels(ds.graph) == std::set<int>{9, 8, 7, 6, 5, 4, 3, 0});
    auto fig = load_figure(figures() / "figure1.json");
    CHECK(fig.edges.size() == 32);
    auto cmp = compare_with_figure(ds.graph, fig);
    CHECK(cmp.missing.empty());
    CHECK(cmp.extra.empty());
    CHECK(cmp.level_mismatch.empty());
    auto m = maximal_nodes(ds.graph);
    CHECK(std::set<std::string>(m.begin(), m.end()) == std::set<std::string>(fig.maximal.begin(), fig.maximal.end()));
}

TEST_CASE("the families view reproduces the inclusion graph of orbit closures")
{
    auto& ds = families();
    CHECK(ds.rejected.empty());
    CHECK(ds.graph.nodes().size() == 24);
    auto fig = load_figure(figures() / "figure2.json");
    auto cmp = compare_with_figure(ds.graph, fig);
    CHECK(cmp.ok());
    for (auto& e : cmp.missing)
        MESSAGE("missing " << e.first << " -> " << e.second);
    for (auto& e : cmp.extra)
        MESSAGE("extra " << e.first << " -> " << e.second);
    // The figure also draws P3.16* -> P3.13, which the closure implies.
    CHECK(fig.drawn_redundant == EdgeList{{"P3.16*", "P3.13"}});
    CHECK(ds.graph.reaches("P3.16*", "P3.13"));
    CHECK(ds.graph.node("P3.4*").orbit_dim == 6);
    CHECK(ds.graph.node("P3.16*").orbit_dim == 6);
}

TEST_CASE("six irreducible components")
{
    auto& g = families().graph;
    auto m = maximal_nodes(g);
    CHECK(m.size() == 6);
    CHECK(std::set<std::string>(m.begin(), m.end()) ==
          std::set<std::string>{"P3.5", "P3.7", "P3.18", "P3.20", "P3.4*", "P3.16*"});
    for (auto& c : certify_maximal(g)) {
        INFO(c.node);
        CHECK(c.certified);
        for (auto& d : c.dominators)
            CHECK(d.tier != Tier::unattributed);
    }
    // The Corollary does not separate P3.18 from P3.16*; the separating set does.
    auto ne = g.non_edge("P3.18", "P3.16*");
    REQUIRE(ne);
    CHECK(ne->tier == Tier::separating);
    ne = g.non_edge("P3.20", "P3.16*");
    REQUIRE(ne);
    CHECK(ne->tier == Tier::corollary);
}

TEST_CASE("no verified edge contradicts the Corollary")
{
    for (auto* ds : {&families(), &algebras()}) {
        auto& g = ds->graph;
        int checked = 0;
        for (auto& a : g.nodes())
            for (auto& b : g.nodes()) {
                if (a.id == b.id || !g.reaches(a.id, b.id))
                    continue;
                CHECK(a.orbit_dim > b.orbit_dim);
                if (a.kind != NodeKind::algebra || b.kind != NodeKind::algebra)
                    continue;
                auto rep = check_necessary_conditions(build(a.members.front()), build(b.members.front()));
                INFO(a.id << " -> " << b.id);
                CHECK(rep.all_pass());
                ++checked;
            }
        CHECK(checked > 40);
    }
}

TEST_CASE("non-edge evidence is sound")
{
    auto& g = families().graph;
    std::map<std::string, int> tiers;
    for (auto& e : g.non_edges()) {
        ++tiers[tier_name(e.tier)];
        CHECK_FALSE(g.reaches(e.from, e.to));
        if (e.tier == Tier::dimension)
            CHECK(g.node(e.from).orbit_dim <= g.node(e.to).orbit_dim);
        if (e.tier == Tier::corollary && g.node(e.from).kind == NodeKind::algebra &&
            g.node(e.to).kind == NodeKind::algebra)
            CHECK_FALSE(check_necessary_conditions(build(g.node(e.from).members.front()),
                                                   build(g.node(e.to).members.front()))
                            .all_pass());
    }
    CHECK(tiers["unattributed"] == 0);
    CHECK(tiers["separating-heuristic"] > 0);
    CHECK(tiers["corollary"] > 0);
    size_t n = g.nodes().size();
    size_t reach = 0;
    for (auto& a : g.nodes())
        for (auto& b : g.nodes())
            reach += a.id != b.id && g.reaches(a.id, b.id);
    CHECK(g.non_edges().size() + reach == n * (n - 1));
}

TEST_CASE("filiform graphs")
{
    auto fig = load_figure(figures() / "figure3.json");
    for (int n = 4; n <= 8; ++n) {
        auto ds = filiform_dataset(n);
        INFO("n = " << n);
        CHECK(ds.rejected.empty());
        CHECK(levels(ds.graph) == std::set<int>{n * n - n, n * n - n - 1, n * n - n - 2});
        CHECK(compare_with_figure(ds.graph, fig, n * n - n).ok());
        CHECK(transitive_reduction(ds.graph).size() == 6);
        auto m = maximal_nodes(ds.graph);
        CHECK(std::set<std::string>(m.begin(), m.end()) == std::set<std::string>{"P0", "P1.2", "P1.5"});
    }
    CHECK_THROWS_AS(filiform_dataset(2), BadDimension);
}

TEST_CASE("node mapping")
{
    auto k = [](const std::string& s) { return CatalogKey::parse(s); };
    CHECK(node_for(View::families, k("P3.4(alpha=-1)")) == "P3.4(alpha=-1)");
    CHECK(node_for(View::families, k("P3.4(alpha=2)")) == "P3.4*");
    CHECK(node_for(View::algebras, k("P3.4(alpha=0)")) == "P3.4(alpha!=1)");
    CHECK(node_for(View::algebras, k("P3.4(alpha=1)")) == "P3.4(alpha=1)");
    CHECK(node_for(View::families, k("P3.16(alpha=3)")) == "P3.16*");
    CHECK(node_for(View::algebras, k("P3.16(alpha=0)")) == "P3.16(alpha=0)");
    CHECK(node_for(View::families, k("P3.9")) == "P3.9");
    CHECK_FALSE(node_for(View::families, k("P1.2(n=4)")));
}

TEST_CASE("DOT and JSON output")
{
    auto& g = families().graph;
    auto dot = emit_dot(g);
    CHECK(dot == emit_dot(g));
    for (int lvl : levels(g))
        CHECK(dot.find("{ rank=same; level_" + std::to_string(lvl) + ";") != std::string::npos);
    size_t arrows = 0;
    for (size_t p = dot.find("\" -> \""); p != std::string::npos; p = dot.find("\" -> \"", p + 1))
        ++arrows;
    CHECK(arrows == transitive_reduction(g).size());
    CHECK(dot.find("legend") != std::string::npos);
    CHECK(emit_dot(g, {"all", false}).find("\"P3.16*\" -> \"P3.13\"") != std::string::npos);

    auto j = graph_to_json(g);
    CHECK(j["nodes"].size() == 24);
    CHECK(j["edges"].size() == g.edges().size());
    CHECK(j["non_edges"].size() == g.non_edges().size());
    std::set<std::string> tiers;
    for (auto& e : j["non_edges"])
        tiers.insert(e["tier"].get<std::string>());
    CHECK(tiers.count("separating-heuristic"));
    CHECK(tiers.count("dimension"));
}
