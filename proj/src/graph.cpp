#include "pottszero/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

#include "pottszero/errors.hpp"

namespace pottszero {

PartiallyColoredGraph::PartiallyColoredGraph(int num_vertices, int num_colors)
    : q_(num_colors), adj_(num_vertices), pins_(num_vertices, kFree) {
    if (num_colors < 1) throw DomainError("color count must be positive");
    if (num_vertices < 0) throw DomainError("vertex count must be nonnegative");
}

PartiallyColoredGraph PartiallyColoredGraph::from_edges(int num_vertices, int num_colors,
                                                        std::span<const Edge> edges,
                                                        std::span<const Pin> pins) {
    PartiallyColoredGraph g(num_vertices, num_colors);
    for (const Edge& e : edges) g.add_edge(e.u, e.v);
    for (const Pin& p : pins) g.set_pin(p.vertex, p.color);
    return g;
}

Vertex PartiallyColoredGraph::check(Vertex v) const {
    if (v < 0 || v >= num_vertices())
        throw DomainError("vertex " + std::to_string(v) + " out of range");
    return v;
}

Vertex PartiallyColoredGraph::add_vertex(Color pin) {
    adj_.emplace_back();
    pins_.push_back(kFree);
    Vertex v = num_vertices() - 1;
    if (pin != kFree) set_pin(v, pin);
    return v;
}

void PartiallyColoredGraph::add_edge(Vertex a, Vertex b) {
    check(a);
    check(b);
    if (a == b) throw DomainError("self-loop at vertex " + std::to_string(a));
    if (has_edge(a, b))
        throw DomainError("parallel edge " + std::to_string(a) + "-" + std::to_string(b));
    auto insert = [](std::vector<Vertex>& list, Vertex x) {
        list.insert(std::lower_bound(list.begin(), list.end(), x), x);
    };
    insert(adj_[a], b);
    insert(adj_[b], a);
    ++num_edges_;
}

void PartiallyColoredGraph::set_pin(Vertex v, Color c) {
    check(v);
    if (c < 1 || c > q_)
        throw DomainError("pin color " + std::to_string(c) + " outside 1.." + std::to_string(q_));
    pins_[v] = c;
}

void PartiallyColoredGraph::clear_pin(Vertex v) { pins_[check(v)] = kFree; }

std::vector<Edge> PartiallyColoredGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges_);
    for (Vertex u = 0; u < num_vertices(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.push_back({u, v});
    return out;
}

std::vector<Pin> PartiallyColoredGraph::pins() const {
    std::vector<Pin> out;
    for (Vertex v = 0; v < num_vertices(); ++v)
        if (pins_[v] != kFree) out.push_back({v, pins_[v]});
    return out;
}

bool PartiallyColoredGraph::has_edge(Vertex a, Vertex b) const {
    const auto& list = adj_[check(a)];
    return std::binary_search(list.begin(), list.end(), check(b));
}

int PartiallyColoredGraph::max_degree() const {
    int d = 0;
    for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
    return d;
}

int PartiallyColoredGraph::free_degree(Vertex v) const {
    int f = 0;
    for (Vertex u : adj_[check(v)])
        if (pins_[u] == kFree) ++f;
    return f;
}

int PartiallyColoredGraph::num_free() const {
    return static_cast<int>(std::count(pins_.begin(), pins_.end(), kFree));
}

std::vector<Vertex> PartiallyColoredGraph::free_vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < num_vertices(); ++v)
        if (pins_[v] == kFree) out.push_back(v);
    return out;
}

PartiallyColoredGraph PartiallyColoredGraph::with_num_colors(int q) const {
    if (q < 1) throw DomainError("color count must be positive");
    for (Color c : pins_)
        if (c > q) throw DomainError("existing pin color exceeds new color count");
    PartiallyColoredGraph g = *this;
    g.q_ = q;
    return g;
}

void PartiallyColoredGraph::require_max_degree(int delta) const {
    if (max_degree() > delta)
        throw DomainError("max degree " + std::to_string(max_degree()) + " exceeds " +
                          std::to_string(delta));
}

bool PartiallyColoredGraph::operator==(const PartiallyColoredGraph& other) const {
    return q_ == other.q_ && adj_ == other.adj_ && pins_ == other.pins_;
}

bool is_connected(const PartiallyColoredGraph& g) {
    int n = g.num_vertices();
    if (n == 0) return true;
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        Vertex u = stack.back();
        stack.pop_back();
        for (Vertex v : g.neighbors(u))
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

VertexRemoval remove_vertices(const PartiallyColoredGraph& g, std::span<const Vertex> doomed) {
    std::vector<Vertex> mapping(g.num_vertices(), 0);
    for (Vertex v : doomed) {
        if (v < 0 || v >= g.num_vertices()) throw DomainError("vertex out of range");
        mapping[v] = -1;
    }
    int next = 0;
    for (Vertex& m : mapping)
        if (m == 0) m = next++;
    PartiallyColoredGraph out(next, g.num_colors());
    for (Vertex v = 0; v < g.num_vertices(); ++v)
        if (mapping[v] >= 0 && g.is_pinned(v)) out.set_pin(mapping[v], g.pin(v));
    for (const Edge& e : g.edges())
        if (mapping[e.u] >= 0 && mapping[e.v] >= 0) out.add_edge(mapping[e.u], mapping[e.v]);
    return {std::move(out), std::move(mapping)};
}

PartiallyColoredGraph pinned_copy(const PartiallyColoredGraph& g, Vertex v, Color c) {
    PartiallyColoredGraph out = g;
    out.set_pin(v, c);
    return out;
}

std::string describe(const PartiallyColoredGraph& g) {
    std::ostringstream os;
    os << g.num_vertices() << ':';
    bool first = true;
    for (const Edge& e : g.edges()) {
        os << (first ? "" : ",") << e.u << '-' << e.v;
        first = false;
    }
    auto pins = g.pins();
    if (!pins.empty()) {
        os << '|';
        for (std::size_t i = 0; i < pins.size(); ++i)
            os << (i ? "," : "") << pins[i].vertex << '=' << pins[i].color;
    }
    return os.str();
}

RootedGraph::RootedGraph(PartiallyColoredGraph g, Vertex root) : g_(std::move(g)), root_(root) {
    if (root < 0 || root >= g_.num_vertices())
        throw InvalidRootError("root " + std::to_string(root) + " out of range");
    if (g_.is_pinned(root)) throw InvalidRootError("root " + std::to_string(root) + " is pinned");
}

bool RootedGraph::in_class(int delta) const {
    if (!is_connected(g_) || g_.max_degree() > delta) return false;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
        if (!g_.is_pinned(v)) continue;
        if (g_.degree(v) != 1) return false;
        if (g_.is_pinned(g_.neighbors(v)[0])) return false;
    }
    return true;
}

int BlockedColorVector::blocked() const {
    return static_cast<int>(std::count_if(counts_.begin(), counts_.end(), [](int c) { return c > 0; }));
}

int BlockedColorVector::total() const { return std::accumulate(counts_.begin(), counts_.end(), 0); }

PartiallyColoredGraph pin_to_leaves(const PartiallyColoredGraph& g) {
    // Every pinned vertex keeps its first edge; each further edge gets a fresh pinned copy.
    PartiallyColoredGraph out(g.num_vertices(), g.num_colors());
    for (const Pin& p : g.pins()) out.set_pin(p.vertex, p.color);
    std::vector<char> used(g.num_vertices(), 0);
    auto endpoint = [&](Vertex x) {
        if (!g.is_pinned(x)) return x;
        if (!used[x]) {
            used[x] = 1;
            return x;
        }
        return out.add_vertex(g.pin(x));
    };
    for (const Edge& e : g.edges()) {
        Vertex a = endpoint(e.u);
        Vertex b = endpoint(e.v);
        out.add_edge(a, b);
    }
    return out;
}

BlockedColorVector blocked_color_vector(const RootedGraph& rg) {
    const auto& g = rg.graph();
    std::vector<int> counts(g.num_colors(), 0);
    for (Vertex u : g.neighbors(rg.root()))
        if (g.is_pinned(u)) ++counts[g.pin(u) - 1];
    return BlockedColorVector(std::move(counts));
}

PartiallyColoredGraph attach_pinned_leaf(const RootedGraph& rg, Color color) {
    PartiallyColoredGraph g = rg.graph();
    Vertex leaf = g.add_vertex(color);
    g.add_edge(rg.root(), leaf);
    return g;
}

RootedGraph strip_pinned_neighbors(const RootedGraph& rg) {
    const auto& g = rg.graph();
    std::vector<Vertex> doomed;
    for (Vertex u : g.neighbors(rg.root()))
        if (g.is_pinned(u)) doomed.push_back(u);
    if (doomed.empty()) return rg;
    auto removal = remove_vertices(g, doomed);
    return RootedGraph(std::move(removal.graph), removal.mapping[rg.root()]);
}

std::vector<TelescopingTerm> telescoping_decompose(const RootedGraph& rg, Color l1, Color l2,
                                                   std::span<const Vertex> order) {
    const auto& g = rg.graph();
    const int q = g.num_colors();
    if (l1 == l2) throw DomainError("telescoping colors must differ");
    if (l1 < 1 || l1 > q || l2 < 1 || l2 > q) throw DomainError("telescoping color out of range");

    std::vector<Vertex> nbrs(g.neighbors(rg.root()).begin(), g.neighbors(rg.root()).end());
    if (!order.empty()) {
        std::vector<Vertex> sorted_order(order.begin(), order.end());
        std::sort(sorted_order.begin(), sorted_order.end());
        if (sorted_order != nbrs) throw DomainError("order is not a permutation of the root's neighbors");
        nbrs.assign(order.begin(), order.end());
    }

    Vertex root = rg.root();
    auto removal = remove_vertices(g, std::span<const Vertex>(&root, 1));
    std::vector<TelescopingTerm> terms;
    const int d = static_cast<int>(nbrs.size());
    for (int i = 0; i < d; ++i) {
        PartiallyColoredGraph base = removal.graph;
        Vertex hat_leaf = -1;
        for (int j = 0; j < d; ++j) {
            Vertex vj = removal.mapping[nbrs[j]];
            Vertex leaf = base.add_vertex(j == i ? kFree : (j < i ? l2 : l1));
            base.add_edge(vj, leaf);
            if (j == i) hat_leaf = leaf;
        }
        auto reduced = remove_vertices(base, std::span<const Vertex>(&hat_leaf, 1));
        Vertex vi = removal.mapping[nbrs[i]];
        terms.push_back({RootedGraph(base, hat_leaf), std::move(reduced.graph), reduced.mapping[vi]});
    }
    return terms;
}

}  // namespace pottszero
