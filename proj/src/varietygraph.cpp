#include "poisson/varietygraph.hpp"

#include "poisson/degeneration.hpp"
#include "poisson/errors.hpp"
#include "poisson/separating.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace poisson {

namespace {

AlgebraType type_of(const BilinearPair<Rational>& p)
{
    if (p.dot.is_zero() && !p.bracket.is_zero())
        return AlgebraType::lie;
    if (p.bracket.is_zero() && !p.dot.is_zero())
        return AlgebraType::associative;
    return AlgebraType::mixed;
}

std::string join_ints(const std::vector<int>& v)
{
    std::string s;
    for (size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

GraphNode make_node(const std::string& id, NodeKind kind, const std::vector<CatalogKey>& members)
{
    if (members.empty())
        throw InputError("graph node " + id + " has no members");
    GraphNode n;
    n.id = id;
    n.kind = kind;
    n.members = members;
    int dim = -1;
    for (auto& k : members) {
        auto p = build(k);
        n.profiles.push_back(invariant_profile(p));
        dim = std::max(dim, n.profiles.back().orbit_dim);
    }
    n.orbit_dim = kind == NodeKind::family ? dim + 1 : dim;
    n.type = type_of(build(members.front()));
    return n;
}

std::string tier_name(Tier t)
{
    switch (t) {
    case Tier::dimension:
        return "dimension";
    case Tier::corollary:
        return "corollary";
    case Tier::separating:
        return "separating-heuristic";
    case Tier::transitivity:
        return "transitivity";
    case Tier::unattributed:
        return "unattributed";
    }
    return "?";
}

int DegenerationGraph::index(const std::string& id) const
{
    auto it = idx_.find(id);
    if (it == idx_.end())
        throw UnknownKey("no graph node " + id);
    return it->second;
}

bool DegenerationGraph::reaches(const std::string& from, const std::string& to) const
{
    return closure_[static_cast<size_t>(index(from))][static_cast<size_t>(index(to))] != 0;
}

std::optional<NonEdge> DegenerationGraph::non_edge(const std::string& from, const std::string& to) const
{
    auto it = non_edge_at_.find({index(from), index(to)});
    if (it == non_edge_at_.end())
        return std::nullopt;
    return non_edges_[it->second];
}

EdgeList DegenerationGraph::edge_pairs() const
{
    EdgeList out;
    for (auto& e : edges_)
        out.emplace_back(e.from, e.to);
    return out;
}

namespace {

// Sound reading of the Corollary for nodes standing for several algebras. A family source
// excludes a target only if every member does (semicontinuity bounds the family by its minimum);
// a family target is excluded as soon as one member is, since the family closure contains every
// member. Merged nodes are treated conservatively on both sides.
std::optional<std::string> corollary_evidence(const GraphNode& a, const GraphNode& b)
{
    std::string evidence;
    for (auto& s : a.profiles) {
        bool any = false, all = true;
        std::string first;
        for (auto& t : b.profiles) {
            auto rep = check_necessary_conditions(s, t);
            bool fails = !rep.all_pass();
            if (fails && first.empty())
                first = "conditions " + join_ints(rep.failing()) + " fail";
            any = any || fails;
            all = all && fails;
        }
        bool excluded = b.kind == NodeKind::family ? any : all;
        if (!excluded)
            return std::nullopt;
        if (evidence.empty())
            evidence = first;
    }
    if (a.profiles.size() > 1 || b.profiles.size() > 1)
        evidence += " (sampled members)";
    return evidence;
}

std::vector<std::vector<char>> closure_of(size_t n, const std::vector<std::pair<int, int>>& edges)
{
    std::vector<std::vector<char>> c(n, std::vector<char>(n, 0));
    for (auto& [a, b] : edges)
        c[static_cast<size_t>(a)][static_cast<size_t>(b)] = 1;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            if (c[i][k])
                for (size_t j = 0; j < n; ++j)
                    if (c[k][j])
                        c[i][j] = 1;
    return c;
}

}  // namespace

DegenerationGraph build_graph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges,
                              std::vector<NonEdge> recorded)
{
    DegenerationGraph g;
    std::sort(nodes.begin(), nodes.end(), [](const GraphNode& a, const GraphNode& b) {
        return std::tie(b.orbit_dim, a.id) < std::tie(a.orbit_dim, b.id);
    });
    g.nodes_ = std::move(nodes);
    for (size_t i = 0; i < g.nodes_.size(); ++i)
        if (!g.idx_.emplace(g.nodes_[i].id, static_cast<int>(i)).second)
            throw InputError("duplicate graph node " + g.nodes_[i].id);

    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const GraphEdge& a, const GraphEdge& b) { return a.from == b.from && a.to == b.to; }),
                edges.end());
    std::vector<std::pair<int, int>> ix;
    for (auto& e : edges) {
        int a = g.index(e.from), b = g.index(e.to);
        if (g.nodes_[static_cast<size_t>(a)].orbit_dim <= g.nodes_[static_cast<size_t>(b)].orbit_dim)
            throw InconsistentEvidence("edge " + e.from + " -> " + e.to + " does not lower the orbit dimension");
        ix.emplace_back(a, b);
    }
    g.edges_ = std::move(edges);
    size_t n = g.nodes_.size();
    g.closure_ = closure_of(n, ix);

    // Strongest available evidence per ordered pair outside the closure.
    std::vector<std::vector<std::optional<NonEdge>>> ne(n, std::vector<std::optional<NonEdge>>(n));
    std::map<std::pair<int, int>, NonEdge> sep;
    for (auto& r : recorded) {
        int a = g.index(r.from), b = g.index(r.to);
        if (g.closure_[static_cast<size_t>(a)][static_cast<size_t>(b)])
            throw InconsistentEvidence("non-edge " + r.from + " -/-> " + r.to + " (" + tier_name(r.tier) + ": " +
                                       r.evidence + ") contradicts a verified degeneration");
        sep.emplace(std::make_pair(a, b), r);
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j)
                continue;
            auto& a = g.nodes_[i];
            auto& b = g.nodes_[j];
            std::optional<NonEdge> best;
            if (a.orbit_dim <= b.orbit_dim) {
                best = NonEdge{a.id, b.id, Tier::dimension,
                               "orbit dimension " + std::to_string(a.orbit_dim) + " <= " + std::to_string(b.orbit_dim)};
            } else if (auto ev = corollary_evidence(a, b)) {
                best = NonEdge{a.id, b.id, Tier::corollary, *ev};
            } else if (auto it = sep.find({static_cast<int>(i), static_cast<int>(j)}); it != sep.end()) {
                best = it->second;
            }
            if (best && g.closure_[i][j])
                throw InconsistentEvidence("verified degeneration " + a.id + " -> " + b.id + " contradicts " +
                                           tier_name(best->tier) + " evidence: " + best->evidence);
            ne[i][j] = best;
        }

    // r ->* p and r -/-> q give p -/-> q; q ->* s and p -/-> s give p -/-> q.
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t p = 0; p < n; ++p)
            for (size_t q = 0; q < n; ++q) {
                if (p == q || ne[p][q] || g.closure_[p][q])
                    continue;
                for (size_t r = 0; r < n && !ne[p][q]; ++r) {
                    if (g.closure_[r][p] && ne[r][q] && ne[r][q]->tier != Tier::unattributed)
                        ne[p][q] = NonEdge{g.nodes_[p].id, g.nodes_[q].id, Tier::transitivity,
                                           g.nodes_[r].id + " -> " + g.nodes_[p].id + " and " + g.nodes_[r].id +
                                               " -/-> " + g.nodes_[q].id};
                    else if (g.closure_[q][r] && ne[p][r] && ne[p][r]->tier != Tier::unattributed)
                        ne[p][q] = NonEdge{g.nodes_[p].id, g.nodes_[q].id, Tier::transitivity,
                                           g.nodes_[q].id + " -> " + g.nodes_[r].id + " and " + g.nodes_[p].id +
                                               " -/-> " + g.nodes_[r].id};
                }
                changed = changed || ne[p][q].has_value();
            }
    }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j || g.closure_[i][j])
                continue;
            if (!ne[i][j])
                ne[i][j] = NonEdge{g.nodes_[i].id, g.nodes_[j].id, Tier::unattributed, ""};
            g.non_edge_at_[{static_cast<int>(i), static_cast<int>(j)}] = g.non_edges_.size();
            g.non_edges_.push_back(*ne[i][j]);
        }
    return g;
}

std::vector<std::string> maximal_nodes(const DegenerationGraph& g)
{
    std::vector<std::string> out;
    for (auto& m : g.nodes()) {
        bool dominated = false;
        for (auto& d : g.nodes())
            if (d.id != m.id && g.reaches(d.id, m.id))
                dominated = true;
        if (!dominated)
            out.push_back(m.id);
    }
    return out;
}

std::vector<MaximalityCertificate> certify_maximal(const DegenerationGraph& g)
{
    std::vector<MaximalityCertificate> out;
    for (auto& id : maximal_nodes(g)) {
        MaximalityCertificate c;
        c.node = id;
        int dim = g.node(id).orbit_dim;
        for (auto& d : g.nodes()) {
            if (d.orbit_dim <= dim)
                continue;
            auto ne = g.non_edge(d.id, id);
            c.dominators.push_back(*ne);
            if (ne->tier == Tier::unattributed)
                c.certified = false;
        }
        out.push_back(std::move(c));
    }
    return out;
}

EdgeList transitive_reduction(const std::vector<std::string>& nodes, const EdgeList& edges)
{
    std::map<std::string, int> idx;
    for (size_t i = 0; i < nodes.size(); ++i)
        idx[nodes[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> ix;
    for (auto& [a, b] : edges) {
        if (!idx.count(a) || !idx.count(b))
            throw UnknownKey("edge " + a + " -> " + b + " uses an unknown node");
        ix.emplace_back(idx[a], idx[b]);
    }
    size_t n = nodes.size();
    auto c = closure_of(n, ix);
    for (size_t i = 0; i < n; ++i)
        if (c[i][i])
            throw CycleDetected("cycle through " + nodes[i]);
    EdgeList out;
    std::set<std::pair<int, int>> seen;
    for (auto& [a, b] : ix) {
        if (!seen.insert({a, b}).second)
            continue;
        bool implied = false;
        for (size_t w = 0; w < n && !implied; ++w)
            implied = static_cast<int>(w) != a && static_cast<int>(w) != b && c[static_cast<size_t>(a)][w] &&
                      c[w][static_cast<size_t>(b)];
        if (!implied)
            out.emplace_back(nodes[static_cast<size_t>(a)], nodes[static_cast<size_t>(b)]);
    }
    std::sort(out.begin(), out.end());
    return out;
}

EdgeList transitive_reduction(const DegenerationGraph& g)
{
    std::vector<std::string> ids;
    for (auto& n : g.nodes())
        ids.push_back(n.id);
    return transitive_reduction(ids, g.edge_pairs());
}

namespace {

std::string quote(const std::string& s)
{
    std::string q = "\"";
    for (char c : s)
        q += (c == '"' || c == '\\') ? std::string("\\") + c : std::string(1, c);
    return q + "\"";
}

}  // namespace

std::string emit_dot(const DegenerationGraph& g, const DotOptions& options)
{
    std::ostringstream os;
    os << "digraph " << quote(options.name) << " {\n";
    os << "  rankdir=TB;\n  node [fontname=\"Helvetica\", fontsize=10];\n";
    std::map<int, std::vector<const GraphNode*>, std::greater<>> levels;
    for (auto& n : g.nodes())
        levels[n.orbit_dim].push_back(&n);
    os << "  subgraph levels {\n    node [shape=plaintext];\n    edge [style=invis];\n";
    std::string prev;
    for (auto& [lvl, ns] : levels) {
        std::string name = "level_" + std::to_string(lvl);
        os << "    " << name << " [label=\"" << lvl << "\"];\n";
        if (!prev.empty())
            os << "    " << prev << " -> " << name << ";\n";
        prev = name;
    }
    os << "  }\n";
    for (auto& [lvl, ns] : levels) {
        os << "  { rank=same; level_" << lvl << ";";
        for (auto* n : ns)
            os << " " << quote(n->id) << ";";
        os << " }\n";
    }
    for (auto& n : g.nodes()) {
        std::string style;
        switch (n.type) {
        case AlgebraType::associative:
            style = "shape=box, style=filled, fillcolor=white";
            break;
        case AlgebraType::lie:
            style = "shape=box, style=filled, fillcolor=gray85";
            break;
        case AlgebraType::mixed:
            style = "shape=box, style=filled, fillcolor=gray60";
            break;
        }
        if (n.kind == NodeKind::family)
            style += ", peripheries=2";
        os << "  " << quote(n.id) << " [" << style << "];\n";
    }
    EdgeList edges = options.reduce ? transitive_reduction(g) : g.edge_pairs();
    for (auto& [a, b] : edges)
        os << "  " << quote(a) << " -> " << quote(b) << ";\n";
    os << "  subgraph cluster_legend {\n    label=\"legend\";\n    node [shape=box, style=filled];\n";
    os << "    legend_assoc [label=\"commutative associative (mu, 0)\", fillcolor=white];\n";
    os << "    legend_lie [label=\"Lie (0, mu)\", fillcolor=gray85];\n";
    os << "    legend_mixed [label=\"Poisson\", fillcolor=gray60];\n";
    os << "    legend_family [label=\"family orbit closure\", fillcolor=white, peripheries=2];\n";
    os << "  }\n}\n";
    return os.str();
}

json graph_to_json(const DegenerationGraph& g)
{
    json j;
    j["nodes"] = json::array();
    for (auto& n : g.nodes()) {
        json m = json::array();
        for (auto& k : n.members)
            m.push_back(k.str());
        static const char* kinds[] = {"algebra", "family", "merged"};
        static const char* types[] = {"associative", "lie", "poisson"};
        j["nodes"].push_back({{"id", n.id},
                              {"kind", kinds[static_cast<int>(n.kind)]},
                              {"type", types[static_cast<int>(n.type)]},
                              {"orbit_dim", n.orbit_dim},
                              {"members", m}});
    }
    j["edges"] = json::array();
    for (auto& e : g.edges())
        j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"witness", e.witness}});
    j["non_edges"] = json::array();
    for (auto& e : g.non_edges())
        j["non_edges"].push_back(
            {{"from", e.from}, {"to", e.to}, {"tier", tier_name(e.tier)}, {"evidence", e.evidence}});
    return j;
}

// ---------------------------------------------------------------- datasets

namespace {

const Rational& alpha_of(const CatalogKey& k) { return k.params.at("alpha"); }

std::vector<CatalogKey> sampled(const std::string& family, const std::vector<Rational>& alphas)
{
    std::vector<CatalogKey> out;
    for (auto& a : alphas) {
        CatalogKey k;
        k.family = family;
        k.params["alpha"] = a;
        out.push_back(k);
    }
    return out;
}

const std::vector<Rational>& generic_alphas()
{
    static const std::vector<Rational> a{Rational(2), Rational(1, 2), Rational(-3), Rational(5, 3)};
    return a;
}

std::string member_id(const std::string& family, int a)
{
    return family + "(alpha=" + std::to_string(a) + ")";
}

}  // namespace

std::optional<std::string> node_for(View view, const CatalogKey& key)
{
    if (key.family == "P3.4" || key.family == "P3.16") {
        auto it = key.params.find("alpha");
        if (it == key.params.end())
            return view == View::families ? std::optional<std::string>(key.family + "*") : std::nullopt;
        const Rational& a = it->second;
        if (key.family == "P3.4") {
            if (view == View::algebras)
                return a == Rational(1) ? member_id("P3.4", 1) : std::string("P3.4(alpha!=1)");
            for (int s : {0, 1, -1})
                if (a == Rational(s))
                    return member_id("P3.4", s);
            return std::string("P3.4*");
        }
        if (a == Rational(0))
            return member_id("P3.16", 0);
        return view == View::algebras ? std::string("P3.16(alpha!=0)") : std::string("P3.16*");
    }
    if (key.family.rfind("P3.", 0) == 0)
        return key.family;
    return std::nullopt;
}

namespace {

std::vector<GraphNode> three_dim_nodes(View view)
{
    std::vector<GraphNode> out;
    for (auto& f : three_dim_poisson_families()) {
        if (f == "P3.4" || f == "P3.16")
            continue;
        out.push_back(make_node(f, NodeKind::algebra, {CatalogKey::parse(f)}));
    }
    auto member = [&](const std::string& family, int a) {
        return make_node(member_id(family, a), NodeKind::algebra, sampled(family, {Rational(a)}));
    };
    out.push_back(member("P3.4", 1));
    out.push_back(member("P3.16", 0));
    if (view == View::algebras) {
        std::vector<Rational> four{Rational(0), Rational(-1)};
        four.insert(four.end(), generic_alphas().begin(), generic_alphas().end());
        out.push_back(make_node("P3.4(alpha!=1)", NodeKind::merged, sampled("P3.4", four)));
        out.push_back(make_node("P3.16(alpha!=0)", NodeKind::merged, sampled("P3.16", generic_alphas())));
    } else {
        out.push_back(member("P3.4", 0));
        out.push_back(member("P3.4", -1));
        out.push_back(make_node("P3.4*", NodeKind::family, sampled("P3.4", generic_alphas())));
        out.push_back(make_node("P3.16*", NodeKind::family, sampled("P3.16", generic_alphas())));
    }
    return out;
}

void add_witness_edges(View view, const std::filesystem::path& dir, std::uint64_t seed,
                       std::vector<GraphEdge>& edges, std::vector<std::string>& rejected,
                       const std::function<bool(const WitnessInstance&)>& keep)
{
    for (auto& w : load_witness_dir(dir))
        for (auto& inst : instantiate(w)) {
            if (!keep(inst))
                continue;
            auto from = node_for(view, inst.source_key);
            auto to = node_for(view, inst.target_key);
            if (!from || !to || *from == *to)
                continue;
            auto res = verify_witness(inst, seed);
            if (!res.check.ok) {
                rejected.push_back(inst.label + ": " + res.check.summary());
                continue;
            }
            edges.push_back({*from, *to, w.path});
        }
}

}  // namespace

Dataset three_dim_dataset(View view, const DatasetOptions& options)
{
    auto data = options.data_dir.empty() ? default_data_dir() : options.data_dir;
    Dataset ds;
    std::vector<GraphEdge> edges;
    auto all = [](const WitnessInstance&) { return true; };
    for (const char* section : {"table2", "trivial"})
        add_witness_edges(view, data / "witnesses" / section, options.seed, edges, ds.rejected, all);
    if (view == View::families)
        for (const char* section : {"table5", "membership"})
            add_witness_edges(view, data / "witnesses" / section, options.seed, edges, ds.rejected, all);

    std::vector<NonEdge> recorded;
    if (options.use_separating) {
        for (auto& row : load_separating_dir(data / "separating")) {
            auto check = check_row(row, options.stability_trials, options.search_trials, options.seed);
            if (!check.ok()) {
                std::string why = !check.self_consistent ? "not self-consistent"
                                  : check.violations     ? "unstable: " + check.first_violation
                                                         : "refuted: " + check.refuted.front();
                ds.rejected.push_back(row.row + ": " + why);
                continue;
            }
            // A merged node stands for members the row does not all name, so it is never a target.
            auto is_merged = [](const std::string& id) { return id.find("!=") != std::string::npos; };
            std::set<std::string> sources, targets;
            if (row.source_family && view == View::families) {
                sources.insert(*row.source_family + "*");
            } else {
                // A non-edge from a generic member says nothing about the whole family.
                for (auto& s : row.sources)
                    for (auto& k : s.expand())
                        if (auto id = node_for(view, k); id && id->back() != '*')
                            sources.insert(*id);
            }
            for (auto& t : row.targets)
                for (auto& k : t.expand())
                    if (auto id = node_for(view, k); id && !is_merged(*id))
                        targets.insert(*id);
            std::ostringstream ev;
            ev << row.row << " (" << check.stability_trials << " stability trials, " << options.search_trials
               << " search trials per target)";
            for (auto& s : sources)
                for (auto& t : targets)
                    if (s != t)
                        recorded.push_back({s, t, Tier::separating, ev.str()});
        }
    }
    ds.graph = build_graph(three_dim_nodes(view), std::move(edges), std::move(recorded));
    return ds;
}

Dataset filiform_dataset(int n, const DatasetOptions& options)
{
    if (n < 3)
        throw BadDimension("filiform dataset needs n >= 3");
    auto data = options.data_dir.empty() ? default_data_dir() : options.data_dir;
    Dataset ds;
    std::vector<GraphNode> nodes;
    for (auto& f : filiform_families()) {
        CatalogKey k;
        k.family = f;
        k.n = n;
        nodes.push_back(make_node(f, NodeKind::algebra, {k}));
    }
    std::vector<GraphEdge> edges;
    for (auto& w : load_witness_dir(data / "witnesses" / "section5"))
        for (auto& inst : instantiate(w)) {
            if (inst.source_key.n != n)
                continue;
            auto res = verify_witness(inst, options.seed);
            if (!res.check.ok) {
                ds.rejected.push_back(inst.label + ": " + res.check.summary());
                continue;
            }
            edges.push_back({inst.source_key.family, inst.target_key.family, w.path});
        }
    ds.graph = build_graph(std::move(nodes), std::move(edges));
    return ds;
}

// ---------------------------------------------------------------- figures

FigureReference load_figure(const std::filesystem::path& path)
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
    FigureReference f;
    f.name = j.value("name", path.stem().string());
    for (auto& [k, v] : j.at("levels").items())
        f.levels[k] = v.get<int>();
    auto pairs = [&](const char* field) {
        EdgeList out;
        for (auto& e : j.value(field, json::array()))
            out.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
        std::sort(out.begin(), out.end());
        return out;
    };
    f.edges = pairs("edges");
    f.drawn_redundant = pairs("drawn_redundant");
    f.maximal = j.value("maximal", std::vector<std::string>{});
    return f;
}

FigureComparison compare_with_figure(const DegenerationGraph& g, const FigureReference& fig, int level_offset)
{
    FigureComparison c;
    auto red = transitive_reduction(g);
    std::set<std::pair<std::string, std::string>> have(red.begin(), red.end()), want(fig.edges.begin(), fig.edges.end());
    for (auto& e : want)
        if (!have.count(e))
            c.missing.push_back(e);
    for (auto& e : have)
        if (!want.count(e))
            c.extra.push_back(e);
    for (auto& [a, b] : fig.drawn_redundant)
        if (!g.has_node(a) || !g.has_node(b) || !g.reaches(a, b))
            c.redundant_not_implied.emplace_back(a, b);
    for (auto& [id, lvl] : fig.levels) {
        if (!g.has_node(id)) {
            c.level_mismatch.push_back(id + ": not a node");
            continue;
        }
        int got = g.node(id).orbit_dim;
        if (got != lvl + level_offset)
            c.level_mismatch.push_back(id + ": orbit dimension " + std::to_string(got) + ", figure level " +
                                       std::to_string(lvl + level_offset));
    }
    for (auto& n : g.nodes())
        if (!fig.levels.count(n.id))
            c.level_mismatch.push_back(n.id + ": not in the figure");
    return c;
}

}  // namespace poisson
