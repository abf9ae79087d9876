#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pottszero/graph.hpp"

namespace pottszero {

// Canonical adjacency string of the underlying unpinned graph; equal strings
// iff the graphs are isomorphic.
std::string canonical_form(const PartiallyColoredGraph& g);

// All connected graphs on 1..n_max vertices with max degree <= delta, one per
// isomorphism class, ordered by vertex count then canonical form. No pins.
std::vector<PartiallyColoredGraph> enumerate_connected_graphs(int n_max, int delta, int q);

enum class PinPolicy {
    none,      // the bare graph only
    distinct,  // subsets of leaves, pinned to pairwise distinct colors 1, 2, ...
    all,       // subsets of leaves, every color pattern up to relabeling
    any,       // any proper vertex subset, every color pattern up to relabeling
};

PinPolicy parse_pin_policy(std::string_view name);
std::string to_string(PinPolicy policy);

// The bare graph followed by its pinned variants. Leaf subsets must be
// independent and leave at least one free vertex.
std::vector<PartiallyColoredGraph> decorate_pins(const PartiallyColoredGraph& g, PinPolicy policy);

void enumerate_graphs(int n_max, int delta, int q, PinPolicy policy,
                      const std::function<void(const PartiallyColoredGraph&)>& sink);
std::vector<PartiallyColoredGraph> enumerate_graphs(int n_max, int delta, int q, PinPolicy policy);

enum class FamilyKind { cycle, clique, path, star, random_regular, complete_bipartite, petersen };

FamilyKind parse_family_kind(std::string_view name);

struct FamilyParams {
    int n = 0;  // vertex count (cycle, clique, path, random_regular); leaves for star
    int d = 0;  // degree for random_regular
    int a = 0;  // complete_bipartite side sizes
    int b = 0;
    std::uint64_t seed = 0;
    int q = 3;
};

PartiallyColoredGraph generate_family(FamilyKind kind, const FamilyParams& params);

}  // namespace pottszero
