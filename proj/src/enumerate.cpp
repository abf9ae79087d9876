#include "pottszero/enumerate.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "pottszero/errors.hpp"

namespace pottszero {

namespace {

using Cells = std::vector<std::vector<int>>;

class Canonizer {
public:
    explicit Canonizer(const PartiallyColoredGraph& g) : n_(g.num_vertices()), adj_(n_, std::vector<char>(n_, 0)) {
        for (const Edge& e : g.edges()) adj_[e.u][e.v] = adj_[e.v][e.u] = 1;
        nbrs_.resize(n_);
        for (int v = 0; v < n_; ++v)
            nbrs_[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    }

    std::string run() {
        Cells start(1);
        for (int v = 0; v < n_; ++v) start[0].push_back(v);
        if (n_ > 0) search(std::move(start));
        return std::to_string(n_) + ":" + best_;
    }

private:
    void refine(Cells& cells) const {
        std::vector<int> cell_of(n_);
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < cells.size(); ++i)
                for (int v : cells[i]) cell_of[v] = static_cast<int>(i);
            Cells next;
            for (const auto& cell : cells) {
                if (cell.size() == 1) {
                    next.push_back(cell);
                    continue;
                }
                std::vector<std::pair<std::vector<int>, int>> sig;
                for (int v : cell) {
                    std::vector<int> counts(cells.size(), 0);
                    for (int u : nbrs_[v]) ++counts[cell_of[u]];
                    sig.emplace_back(std::move(counts), v);
                }
                std::sort(sig.begin(), sig.end());
                std::size_t first = next.size();
                for (std::size_t i = 0; i < sig.size(); ++i) {
                    if (i == 0 || sig[i].first != sig[i - 1].first) next.emplace_back();
                    next.back().push_back(sig[i].second);
                }
                if (next.size() - first > 1) changed = true;
            }
            cells = std::move(next);
        }
    }

    void search(Cells cells) {
        refine(cells);
        auto open = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
        if (open == cells.end()) {
            std::string code;
            code.reserve(n_ * (n_ - 1) / 2);
            for (int i = 0; i < n_; ++i)
                for (int j = i + 1; j < n_; ++j) code.push_back(adj_[cells[i][0]][cells[j][0]] ? '1' : '0');
            if (code > best_) best_ = std::move(code);
            return;
        }
        std::size_t k = static_cast<std::size_t>(open - cells.begin());
        for (int v : cells[k]) {
            Cells child;
            child.reserve(cells.size() + 1);
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i != k) {
                    child.push_back(cells[i]);
                    continue;
                }
                child.push_back({v});
                std::vector<int> rest;
                for (int u : cells[k])
                    if (u != v) rest.push_back(u);
                child.push_back(std::move(rest));
            }
            search(std::move(child));
        }
    }

    int n_;
    std::vector<std::vector<char>> adj_;
    std::vector<std::vector<int>> nbrs_;
    std::string best_;
};

// Restricted growth strings of the given length with at most max_blocks blocks.
void growth_strings(int length, int max_blocks, std::vector<int>& current, int blocks,
                    std::vector<std::vector<int>>& out) {
    if (static_cast<int>(current.size()) == length) {
        out.push_back(current);
        return;
    }
    for (int b = 0; b <= blocks && b < max_blocks; ++b) {
        current.push_back(b);
        growth_strings(length, max_blocks, current, std::max(blocks, b + 1), out);
        current.pop_back();
    }
}

}  // namespace

std::string canonical_form(const PartiallyColoredGraph& g) { return Canonizer(g).run(); }

std::vector<PartiallyColoredGraph> enumerate_connected_graphs(int n_max, int delta, int q) {
    std::vector<PartiallyColoredGraph> out;
    if (n_max < 1) return out;
    std::vector<PartiallyColoredGraph> level{PartiallyColoredGraph(1, q)};
    out = level;
    for (int n = 2; n <= n_max; ++n) {
        std::map<std::string, PartiallyColoredGraph> next;
        for (const auto& g : level) {
            std::vector<int> open;
            for (Vertex v = 0; v < g.num_vertices(); ++v)
                if (g.degree(v) < delta) open.push_back(v);
            const unsigned limit = 1u << open.size();
            for (unsigned mask = 1; mask < limit; ++mask) {
                if (std::popcount(mask) > delta) continue;
                PartiallyColoredGraph h = g;
                Vertex x = h.add_vertex();
                for (std::size_t i = 0; i < open.size(); ++i)
                    if (mask >> i & 1u) h.add_edge(open[i], x);
                auto key = canonical_form(h);
                if (!next.count(key)) next.emplace(std::move(key), std::move(h));
            }
        }
        level.clear();
        for (auto& [key, h] : next) level.push_back(std::move(h));
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

PinPolicy parse_pin_policy(std::string_view name) {
    if (name == "none") return PinPolicy::none;
    if (name == "distinct") return PinPolicy::distinct;
    if (name == "all") return PinPolicy::all;
    if (name == "any") return PinPolicy::any;
    throw DomainError("unknown pin policy '" + std::string(name) + "'");
}

std::string to_string(PinPolicy policy) {
    switch (policy) {
        case PinPolicy::none: return "none";
        case PinPolicy::distinct: return "distinct";
        case PinPolicy::all: return "all";
        case PinPolicy::any: return "any";
    }
    return "?";
}

std::vector<PartiallyColoredGraph> decorate_pins(const PartiallyColoredGraph& g, PinPolicy policy) {
    std::vector<PartiallyColoredGraph> out{g};
    if (policy == PinPolicy::none) return out;
    const int n = g.num_vertices();
    const int q = g.num_colors();
    std::vector<Vertex> candidates;
    for (Vertex v = 0; v < n; ++v)
        if (policy == PinPolicy::any || g.degree(v) == 1) candidates.push_back(v);

    std::map<int, std::vector<std::vector<int>>> patterns;
    const unsigned limit = 1u << candidates.size();
    for (unsigned mask = 1; mask < limit; ++mask) {
        std::vector<Vertex> chosen;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (mask >> i & 1u) chosen.push_back(candidates[i]);
        const int k = static_cast<int>(chosen.size());
        if (k >= n) continue;
        if (policy != PinPolicy::any) {
            bool independent = true;
            for (Vertex a : chosen)
                for (Vertex b : chosen)
                    if (a < b && g.has_edge(a, b)) independent = false;
            if (!independent) continue;
        }
        if (!patterns.count(k)) {
            auto& list = patterns[k];
            if (policy == PinPolicy::distinct) {
                if (k <= q) {
                    std::vector<int> p(k);
                    for (int i = 0; i < k; ++i) p[i] = i;
                    list.push_back(std::move(p));
                }
            } else {
                std::vector<int> current;
                growth_strings(k, q, current, 0, list);
            }
        }
        for (const auto& pattern : patterns[k]) {
            PartiallyColoredGraph h = g;
            for (int i = 0; i < k; ++i) h.set_pin(chosen[i], pattern[i] + 1);
            out.push_back(std::move(h));
        }
    }
    return out;
}

void enumerate_graphs(int n_max, int delta, int q, PinPolicy policy,
                      const std::function<void(const PartiallyColoredGraph&)>& sink) {
    for (const auto& g : enumerate_connected_graphs(n_max, delta, q))
        for (const auto& h : decorate_pins(g, policy)) sink(h);
}

std::vector<PartiallyColoredGraph> enumerate_graphs(int n_max, int delta, int q, PinPolicy policy) {
    std::vector<PartiallyColoredGraph> out;
    enumerate_graphs(n_max, delta, q, policy, [&](const PartiallyColoredGraph& g) { out.push_back(g); });
    return out;
}

FamilyKind parse_family_kind(std::string_view name) {
    if (name == "cycle") return FamilyKind::cycle;
    if (name == "clique") return FamilyKind::clique;
    if (name == "path") return FamilyKind::path;
    if (name == "star") return FamilyKind::star;
    if (name == "random_regular") return FamilyKind::random_regular;
    if (name == "complete_bipartite") return FamilyKind::complete_bipartite;
    if (name == "petersen") return FamilyKind::petersen;
    throw DomainError("unknown family kind '" + std::string(name) + "'");
}

namespace {

PartiallyColoredGraph random_regular(int n, int d, std::uint64_t seed, int q) {
    if (n < 1 || d < 0 || d >= n) throw DomainError("random_regular needs 0 <= d < n");
    if ((static_cast<long>(n) * d) % 2 != 0) throw DomainError("random_regular needs n*d even");
    std::mt19937_64 engine(seed);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        std::vector<int> stubs;
        for (int v = 0; v < n; ++v)
            for (int k = 0; k < d; ++k) stubs.push_back(v);
        PartiallyColoredGraph g(n, q);
        bool ok = true;
        while (!stubs.empty() && ok) {
            // Pair the last stub with a uniformly chosen earlier one.
            std::size_t i = engine() % (stubs.size() - 1);
            int a = stubs.back();
            int b = stubs[i];
            stubs.pop_back();
            stubs.erase(stubs.begin() + static_cast<long>(i));
            if (a == b || g.has_edge(a, b))
                ok = false;
            else
                g.add_edge(a, b);
        }
        if (ok) return g;
    }
    throw DomainError("random_regular: no simple pairing found");
}

}  // namespace

PartiallyColoredGraph generate_family(FamilyKind kind, const FamilyParams& p) {
    const int q = p.q;
    switch (kind) {
        case FamilyKind::cycle: {
            if (p.n < 3) throw DomainError("cycle needs n >= 3");
            PartiallyColoredGraph g(p.n, q);
            for (int i = 0; i < p.n; ++i) g.add_edge(i, (i + 1) % p.n);
            return g;
        }
        case FamilyKind::clique: {
            if (p.n < 1) throw DomainError("clique needs n >= 1");
            PartiallyColoredGraph g(p.n, q);
            for (int i = 0; i < p.n; ++i)
                for (int j = i + 1; j < p.n; ++j) g.add_edge(i, j);
            return g;
        }
        case FamilyKind::path: {
            if (p.n < 1) throw DomainError("path needs n >= 1");
            PartiallyColoredGraph g(p.n, q);
            for (int i = 0; i + 1 < p.n; ++i) g.add_edge(i, i + 1);
            return g;
        }
        case FamilyKind::star: {
            if (p.n < 0) throw DomainError("star needs leaves >= 0");
            PartiallyColoredGraph g(p.n + 1, q);
            for (int i = 1; i <= p.n; ++i) g.add_edge(0, i);
            return g;
        }
        case FamilyKind::random_regular:
            return random_regular(p.n, p.d, p.seed, q);
        case FamilyKind::complete_bipartite: {
            if (p.a < 0 || p.b < 0 || p.a + p.b < 1) throw DomainError("complete_bipartite needs a, b >= 0");
            PartiallyColoredGraph g(p.a + p.b, q);
            for (int i = 0; i < p.a; ++i)
                for (int j = 0; j < p.b; ++j) g.add_edge(i, p.a + j);
            return g;
        }
        case FamilyKind::petersen: {
            PartiallyColoredGraph g(10, q);
            for (int i = 0; i < 5; ++i) {
                g.add_edge(i, (i + 1) % 5);
                g.add_edge(i, i + 5);
                g.add_edge(5 + i, 5 + (i + 2) % 5);
            }
            return g;
        }
    }
    throw DomainError("unhandled family kind");
}

}  // namespace pottszero
