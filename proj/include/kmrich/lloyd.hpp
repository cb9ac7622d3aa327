#pragma once

#include <variant>
#include <vector>

#include <json.hpp>

#include "kmrich/model.hpp"

namespace kmr {

/// Cluster centers. A cluster that owns no points keeps its previous value
/// and is flagged in `empty`; it still competes in the next assignment.
struct Centroids {
    std::vector<Rational> values;
    std::vector<bool> empty;

    int k() const { return static_cast<int>(values.size()); }
    bool any_empty() const;
    static Centroids from_seeding(const PointSet& points, const Seeding& seeding);

    friend bool operator==(const Centroids&, const Centroids&) = default;
};

enum class TiePolicy { Strict, Branch };

constexpr int kDefaultIterationCap = 10000;

struct LloydStep {
    Centroids centroids;
    Partition partition;  // assignment made against `centroids`
};

struct Converged {
    Partition final_partition;
};

struct TieEncountered {
    int step;  // index of the assignment that tied (not recorded in steps)
    int point;  // 1-based
    std::vector<int> clusters;
};

struct IterationCapExceeded {};

using LloydOutcome = std::variant<Converged, TieEncountered, IterationCapExceeded>;

struct LloydTrace {
    Seeding seeding;
    std::vector<LloydStep> steps;
    LloydOutcome outcome;

    bool converged() const { return std::holds_alternative<Converged>(outcome); }
    bool tied() const { return std::holds_alternative<TieEncountered>(outcome); }
    /// True iff the run converged to exactly `target` (as a block structure).
    bool reached(const Partition& target) const;
    /// Partition sequence in canonical labels.
    std::vector<std::vector<int>> partition_sequence() const;
    /// Whether any step ran with a cluster that owned no points.
    bool touched_empty_cluster() const;
};

/// Nearest-centroid assignment over all k centroids. Throws TieError
/// (step -1) when a point is equidistant from two or more nearest centroids.
Partition assign(const PointSet& points, const Centroids& centroids);

/// Every distinct partition reachable by resolving ties, ordered by
/// preferring lower cluster ids for the leftmost tied points first.
std::vector<Partition> assign_branches(const PointSet& points, const Centroids& centroids);

/// Exact means for non-empty clusters; empty clusters keep `previous`.
Centroids update(const PointSet& points, const Partition& partition, const Centroids& previous);

/// Strict-mode Lloyd iteration from `seeding` until two consecutive
/// partitions coincide. A tie ends the run with a TieEncountered outcome.
LloydTrace run(const PointSet& points, const Seeding& seeding, int cap = kDefaultIterationCap);

/// All tie-resolution paths, deduplicated by partition sequence. Throws
/// std::length_error if more than `max_traces` distinct paths exist.
std::vector<LloydTrace> run_branches(const PointSet& points, const Seeding& seeding,
                                     int cap = kDefaultIterationCap, std::size_t max_traces = 1 << 16);

/// True iff reassigning against the block means reproduces `partition`
/// without ties. Partitions with empty blocks are never fixed points.
bool is_fixed_point(const PointSet& points, const Partition& partition);

/// Within-cluster sum of squared deviations from the block means.
Rational cost(const PointSet& points, const Partition& partition);

nlohmann::ordered_json trace_to_json(const LloydTrace& trace);
nlohmann::ordered_json partition_to_json(const Partition& partition);
std::string outcome_tag(const LloydOutcome& outcome);

}  // namespace kmr
