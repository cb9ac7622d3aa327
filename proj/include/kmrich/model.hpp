#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "kmrich/rational.hpp"

namespace kmr {

/// Distances for 2k collinear points n_1..n_2k: `a[j]` separates the two
/// members of pair j, `p[j]` is the gap between pair j and pair j+1.
class DistanceConfig {
public:
    /// Throws std::invalid_argument on a size mismatch or empty `a`, and
    /// NonPositiveDistanceError if any entry is <= 0.
    DistanceConfig(std::vector<Rational> a, std::vector<Rational> p);

    int k() const { return static_cast<int>(a_.size()); }
    const std::vector<Rational>& a() const { return a_; }
    const std::vector<Rational>& p() const { return p_; }

    /// 1-based accessors matching the usual a_j / p_{j,j+1} indexing.
    const Rational& a_at(int j) const { return a_[j - 1]; }
    const Rational& p_at(int j) const { return p_[j - 1]; }

    DistanceConfig scaled(const Rational& factor) const;

    friend bool operator==(const DistanceConfig&, const DistanceConfig&) = default;

private:
    std::vector<Rational> a_;
    std::vector<Rational> p_;
};

/// Positions of the 2k points, strictly increasing.
using PointSet = std::vector<Rational>;

struct GapIssue {
    int gap;  // 1-based j of p_{j,j+1}
    bool tied;

    friend bool operator==(const GapIssue&, const GapIssue&) = default;
};

struct ValidityReport {
    std::vector<GapIssue> issues;
    bool valid() const { return issues.empty(); }

    friend bool operator==(const ValidityReport&, const ValidityReport&) = default;
};

/// Assignment of points to cluster ids 0..k-1. Equality ignores label
/// identity: two partitions are equal iff their blocks coincide.
class Partition {
public:
    Partition() = default;
    Partition(std::vector<int> labels, int k);

    int k() const { return k_; }
    std::size_t size() const { return labels_.size(); }
    const std::vector<int>& labels() const { return labels_; }

    /// Labels renumbered 0,1,2,... in order of each block's leftmost member.
    std::vector<int> canonical_labels() const;
    Partition canonical() const;
    int block_count() const;
    bool has_empty_blocks() const { return block_count() < k_; }
    /// Blocks as 1-based point indices, ordered by leftmost member.
    std::vector<std::vector<int>> blocks() const;

    friend bool operator==(const Partition& lhs, const Partition& rhs) {
        return lhs.canonical_labels() == rhs.canonical_labels();
    }

private:
    std::vector<int> labels_;
    int k_ = 0;
};

/// Sorted k-subset of 1-based point indices used as initial centroids.
class Seeding {
public:
    Seeding() = default;
    /// Sorts `indices`; throws std::invalid_argument unless they are k
    /// distinct values in 1..2k.
    Seeding(std::vector<int> indices, int k);

    int k() const { return static_cast<int>(indices_.size()); }
    const std::vector<int>& indices() const { return indices_; }
    std::string str() const;  // "{2,4,5,7}"

    friend bool operator==(const Seeding&, const Seeding&) = default;
    friend auto operator<=>(const Seeding& lhs, const Seeding& rhs) { return lhs.indices_ <=> rhs.indices_; }

private:
    std::vector<int> indices_;
};

PointSet embed(const DistanceConfig& cfg);
ValidityReport validate(const DistanceConfig& cfg);
Partition target_partition(int k);

DistanceConfig mirror(const DistanceConfig& cfg);
Seeding mirror_seeding(const Seeding& seeding, int k);
/// Relabels so cluster j becomes k-1-j and reverses the point order.
Partition mirror_partition(const Partition& partition);

/// Text form "a=1,3/2,3,1; p=2,2,2". Throws ParseError or NonPositiveDistanceError.
DistanceConfig parse_config(std::string_view text);
std::string serialize_config(const DistanceConfig& cfg);

/// JSON form {"k": 4, "a": ["1","3/2",...], "p": [...]}.
nlohmann::ordered_json config_to_json(const DistanceConfig& cfg);
DistanceConfig config_from_json(const nlohmann::json& j);

/// Accepts either the text or the JSON form.
DistanceConfig parse_config_any(std::string_view text);

}  // namespace kmr
