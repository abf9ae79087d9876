#pragma once

#include <gmpxx.h>

#include <span>

#include "pottszero/graph.hpp"
#include "pottszero/potts.hpp"

namespace pottszero {

// Result of checking one exact identity on one instance. An instance is
// undefined when a denominator or a measure vanishes at the chosen w.
struct IdentityCheck {
    bool defined = true;
    bool holds = true;
};

// Product over the telescoping terms of Z^{l1}/Z^{l2} at the free leaf equals
// Z^{l1}/Z^{l2} at the root; compared cross-multiplied.
IdentityCheck check_telescoping(const RootedGraph& rg, const mpq_class& w, Color l1, Color l2,
                                std::span<const Vertex> order = {});

// grad F_{w,c}(R) equals the marginal-difference vector, where c is the blocked
// vector of (G, v) and R the log-ratio vector of the stripped graph w.r.t. q.
IdentityCheck check_gradient(const RootedGraph& rg, const mpq_class& w);

// P_G[v=l] = E_l / sum_i E_i for every color l, with E from neighborhood_expectations.
IdentityCheck check_neighborhood_expectation(const PartiallyColoredGraph& g, Vertex v, const mpq_class& w);

// Z(pin_to_leaves(g)) equals Z(g) as polynomials.
IdentityCheck check_pin_to_leaves(const PartiallyColoredGraph& g);

// The stripped root's ratio Z^1/Z^q as the product over telescoping terms of
// first/last leaf sums, in exact form. log_error is the double-precision gap of
// the summed log form (only meaningful when defined).
struct ReconstructionCheck {
    bool defined = true;
    bool holds = true;
    double log_error = 0;
};
ReconstructionCheck check_reconstruction(const RootedGraph& rg, const mpq_class& w);

}  // namespace pottszero
