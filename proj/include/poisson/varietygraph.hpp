#pragma once

#include "poisson/algebra_json.hpp"
#include "poisson/catalog.hpp"
#include "poisson/invariants.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace poisson {

// algebra: one isomorphism class. family: the orbit closure of a whole alpha family
// (orbit dimension one more than a generic member). merged: several members drawn as one node.
enum class NodeKind { algebra, family, merged };

// How a node is drawn: embedded commutative associative, embedded Lie, or a genuine Poisson algebra.
enum class AlgebraType { associative, lie, mixed };

struct GraphNode {
    std::string id;
    NodeKind kind = NodeKind::algebra;
    std::vector<CatalogKey> members;  // sampled members for family and merged nodes
    std::vector<InvariantProfile> profiles;
    int orbit_dim = 0;
    AlgebraType type = AlgebraType::mixed;
};

// Profiles, orbit dimension and type filled in from the members.
GraphNode make_node(const std::string& id, NodeKind kind, const std::vector<CatalogKey>& members);

struct GraphEdge {
    std::string from, to;
    std::string witness;
    friend bool operator<(const GraphEdge& a, const GraphEdge& b)
    {
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    }
};

enum class Tier { dimension, corollary, separating, transitivity, unattributed };
std::string tier_name(Tier t);

struct NonEdge {
    std::string from, to;
    Tier tier = Tier::unattributed;
    std::string evidence;
};

using EdgeList = std::vector<std::pair<std::string, std::string>>;

class DegenerationGraph {
public:
    const std::vector<GraphNode>& nodes() const { return nodes_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    // One entry per ordered pair of distinct nodes outside the closure, strongest tier first.
    const std::vector<NonEdge>& non_edges() const { return non_edges_; }

    int index(const std::string& id) const;  // throws UnknownKey
    const GraphNode& node(const std::string& id) const { return nodes_[static_cast<size_t>(index(id))]; }
    bool has_node(const std::string& id) const { return idx_.count(id) > 0; }
    bool reaches(const std::string& from, const std::string& to) const;
    std::optional<NonEdge> non_edge(const std::string& from, const std::string& to) const;
    EdgeList edge_pairs() const;

    friend DegenerationGraph build_graph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges,
                                         std::vector<NonEdge> recorded);

private:
    std::vector<GraphNode> nodes_;
    std::map<std::string, int> idx_;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<char>> closure_;
    std::vector<NonEdge> non_edges_;
    std::map<std::pair<int, int>, size_t> non_edge_at_;
};

// Dimension and Corollary non-edges are computed from the node profiles; `recorded` carries the
// separating-set non-edges. Throws InconsistentEvidence when an edge in the closure contradicts
// a non-edge, or an edge does not lower the orbit dimension.
DegenerationGraph build_graph(std::vector<GraphNode> nodes, std::vector<GraphEdge> edges,
                              std::vector<NonEdge> recorded = {});

// Nodes with no incoming edge in the closure.
std::vector<std::string> maximal_nodes(const DegenerationGraph& g);

struct MaximalityCertificate {
    std::string node;
    std::vector<NonEdge> dominators;  // one per node of larger orbit dimension
    bool certified = true;            // every dominator is excluded with a tier other than unattributed
};

std::vector<MaximalityCertificate> certify_maximal(const DegenerationGraph& g);

EdgeList transitive_reduction(const DegenerationGraph& g);
// Throws CycleDetected.
EdgeList transitive_reduction(const std::vector<std::string>& nodes, const EdgeList& edges);

struct DotOptions {
    std::string name = "degenerations";
    bool reduce = true;  // draw only the transitive reduction
};

std::string emit_dot(const DegenerationGraph& g, const DotOptions& options = {});
json graph_to_json(const DegenerationGraph& g);

// Datasets. The algebras view has one node per algebra as in the graph of primary
// degenerations (P3.4^a for a != 1 and P3.16^a for a != 0 drawn as one node each); the families
// view has the family nodes P3.4* and P3.16* next to their special members, as in the
// inclusion graph of orbit closures.
enum class View { algebras, families };

struct DatasetOptions {
    std::filesystem::path data_dir;  // empty: default_data_dir()
    std::uint64_t seed = 42;
    int stability_trials = 200;
    int search_trials = 200;
    bool use_separating = true;
};

struct Dataset {
    DegenerationGraph graph;
    std::vector<std::string> rejected;  // witnesses or rows that failed verification
};

Dataset three_dim_dataset(View view, const DatasetOptions& options = {});
Dataset filiform_dataset(int n, const DatasetOptions& options = {});

// Node id of a catalog key in a view, or nullopt when the view has no node for it.
std::optional<std::string> node_for(View view, const CatalogKey& key);

struct FigureReference {
    std::string name;
    std::map<std::string, int> levels;  // node -> orbit dimension, relative to n^2 - n for figure3
    EdgeList edges;
    EdgeList drawn_redundant;  // drawn in the figure though implied by other edges
    std::vector<std::string> maximal;
};

FigureReference load_figure(const std::filesystem::path& path);

struct FigureComparison {
    EdgeList missing;     // in the figure, not in the computed reduction
    EdgeList extra;       // computed, not in the figure
    EdgeList redundant_not_implied;  // drawn_redundant edges that are not in the closure
    std::vector<std::string> level_mismatch;
    bool ok() const { return missing.empty() && extra.empty() && redundant_not_implied.empty() && level_mismatch.empty(); }
};

// `level_offset` is added to the reference levels (n^2 - n for the filiform figure).
FigureComparison compare_with_figure(const DegenerationGraph& g, const FigureReference& fig, int level_offset = 0);

}  // namespace poisson
