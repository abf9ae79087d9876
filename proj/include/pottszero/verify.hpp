#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pottszero/enumerate.hpp"
#include "pottszero/graph.hpp"

namespace pottszero {

// Outcome of running one inequality or identity over a family. Slack is the
// margin by which an instance satisfies the statement (negative = violated).
struct BoundReport {
    std::string bound_id;
    std::string family;
    long instances_checked = 0;
    long violations = 0;          // in-regime instances that fail
    long flagged_violations = 0;  // failures where the statement's hypotheses are unmet
    long undefined = 0;           // instances where a measure or ratio does not exist
    double worst_slack = std::numeric_limits<double>::infinity();
    std::string witness;  // instance attaining worst_slack
    bool out_of_regime = false;

    bool passed() const { return violations == 0; }
    // Sums counts and keeps the smaller slack; ties keep this report's witness.
    void merge(const BoundReport& other);
};

nlohmann::json to_json(const BoundReport& r);
std::string csv_header();
std::string to_csv_row(const BoundReport& r);

struct FamilySpec {
    int n_max = 6;
    int delta = 3;
    std::vector<int> qs{6};
    std::optional<PinPolicy> pins;  // unset: the bound's default policy

    std::string describe(PinPolicy policy) const;
};

// k/(points-1) for k = 0..points-1.
std::vector<mpq_class> uniform_grid(int points);

struct VerifyOptions {
    FamilySpec family;
    std::vector<mpq_class> w_grid = uniform_grid(11);
    int jobs = 1;
    bool include_witness = true;  // add the clique-neighborhood instance where it applies
    std::uint64_t seed = 1;
    int samples = 4;             // random vectors per instance for sampled statements
    double eps2 = 0.19634954084936207;  // pi/16, used by induction_statements
};

const std::vector<std::string>& registered_bounds();
PinPolicy default_pin_policy(const std::string& bound_id);

// Throws UnknownBoundError for an unregistered id.
BoundReport verify_bound(const std::string& bound_id, const VerifyOptions& options);

// Root 0 with delta-1 neighbors forming a clique, each carrying a leaf pinned to j.
PartiallyColoredGraph tightness_witness(int q, int delta, Color j);

}  // namespace pottszero
