#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pottszero {

using Vertex = int;
// Colors are 1..q. Zero marks a free (unpinned) vertex.
using Color = int;
inline constexpr Color kFree = 0;

struct Edge {
    Vertex u;
    Vertex v;
    auto operator<=>(const Edge&) const = default;
};

struct Pin {
    Vertex vertex;
    Color color;
    auto operator<=>(const Pin&) const = default;
};

class PartiallyColoredGraph {
public:
    PartiallyColoredGraph() = default;
    PartiallyColoredGraph(int num_vertices, int num_colors);

    static PartiallyColoredGraph from_edges(int num_vertices, int num_colors,
                                            std::span<const Edge> edges,
                                            std::span<const Pin> pins = {});

    Vertex add_vertex(Color pin = kFree);
    void add_edge(Vertex a, Vertex b);
    void set_pin(Vertex v, Color c);
    void clear_pin(Vertex v);

    int num_vertices() const { return static_cast<int>(adj_.size()); }
    int num_colors() const { return q_; }
    int num_edges() const { return num_edges_; }
    std::vector<Edge> edges() const;
    std::vector<Pin> pins() const;

    std::span<const Vertex> neighbors(Vertex v) const { return adj_[check(v)]; }
    bool has_edge(Vertex a, Vertex b) const;
    int degree(Vertex v) const { return static_cast<int>(adj_[check(v)].size()); }
    int max_degree() const;
    int free_degree(Vertex v) const;
    int pinned_degree(Vertex v) const { return degree(v) - free_degree(v); }

    bool is_pinned(Vertex v) const { return pins_[check(v)] != kFree; }
    Color pin(Vertex v) const { return pins_[check(v)]; }
    const std::vector<Color>& pin_map() const { return pins_; }
    int num_free() const;
    std::vector<Vertex> free_vertices() const;

    PartiallyColoredGraph with_num_colors(int q) const;
    // Throws DomainError when some vertex has degree above delta.
    void require_max_degree(int delta) const;

    bool operator==(const PartiallyColoredGraph& other) const;

private:
    Vertex check(Vertex v) const;

    int q_ = 1;
    int num_edges_ = 0;
    std::vector<std::vector<Vertex>> adj_;
    std::vector<Color> pins_;
};

bool is_connected(const PartiallyColoredGraph& g);

// Graph with the given vertices deleted. mapping[old] is the new id, or -1.
struct VertexRemoval {
    PartiallyColoredGraph graph;
    std::vector<Vertex> mapping;
};
VertexRemoval remove_vertices(const PartiallyColoredGraph& g, std::span<const Vertex> doomed);

// Copy of g with v pinned to color c (v may already be pinned).
PartiallyColoredGraph pinned_copy(const PartiallyColoredGraph& g, Vertex v, Color c);

// Compact description, e.g. "4:0-1,1-2,2-3|3=2".
std::string describe(const PartiallyColoredGraph& g);

class RootedGraph {
public:
    RootedGraph(PartiallyColoredGraph g, Vertex root);

    const PartiallyColoredGraph& graph() const { return g_; }
    Vertex root() const { return root_; }
    int num_colors() const { return g_.num_colors(); }

    // Connected, max degree at most delta, every pin a leaf, pins independent.
    bool in_class(int delta) const;

private:
    PartiallyColoredGraph g_;
    Vertex root_;
};

class BlockedColorVector {
public:
    explicit BlockedColorVector(std::vector<int> counts) : counts_(std::move(counts)) {}

    int operator()(Color c) const { return counts_.at(c - 1); }
    int num_colors() const { return static_cast<int>(counts_.size()); }
    const std::vector<int>& counts() const { return counts_; }
    int blocked() const;
    int total() const;

    bool operator==(const BlockedColorVector&) const = default;

private:
    std::vector<int> counts_;
};

PartiallyColoredGraph pin_to_leaves(const PartiallyColoredGraph& g);
BlockedColorVector blocked_color_vector(const RootedGraph& rg);
// The new leaf gets id n (the old vertex count).
PartiallyColoredGraph attach_pinned_leaf(const RootedGraph& rg, Color color);
RootedGraph strip_pinned_neighbors(const RootedGraph& rg);

struct TelescopingTerm {
    RootedGraph hat;  // free leaf hanging off the i-th neighbor
    // Same graph without that leaf. The neighbor may itself be pinned, so this is
    // kept unrooted; reduced_root is the neighbor's id.
    PartiallyColoredGraph reduced;
    Vertex reduced_root;
};

// order lists the neighbors of the root; empty means ascending ids.
std::vector<TelescopingTerm> telescoping_decompose(const RootedGraph& rg, Color l1, Color l2,
                                                   std::span<const Vertex> order = {});

}  // namespace pottszero
