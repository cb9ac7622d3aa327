#include "kmrich/lloyd.hpp"

#include <algorithm>
#include <set>

#include "kmrich/errors.hpp"

namespace kmr {

bool Centroids::any_empty() const { return std::find(empty.begin(), empty.end(), true) != empty.end(); }

Centroids Centroids::from_seeding(const PointSet& points, const Seeding& seeding) {
    Centroids c;
    for (int i : seeding.indices()) c.values.push_back(points.at(static_cast<std::size_t>(i - 1)));
    c.empty.assign(c.values.size(), false);
    return c;
}

bool LloydTrace::reached(const Partition& target) const {
    const auto* done = std::get_if<Converged>(&outcome);
    return done != nullptr && done->final_partition == target;
}

std::vector<std::vector<int>> LloydTrace::partition_sequence() const {
    std::vector<std::vector<int>> out;
    out.reserve(steps.size());
    for (const auto& s : steps) out.push_back(s.partition.canonical_labels());
    return out;
}

bool LloydTrace::touched_empty_cluster() const {
    return std::any_of(steps.begin(), steps.end(), [](const LloydStep& s) {
        return s.centroids.any_empty() || s.partition.has_empty_blocks();
    });
}

namespace {

/// Indices of the centroids nearest to x, ascending.
void nearest(const Rational& x, const Centroids& centroids, std::vector<int>& out) {
    out.clear();
    Rational best;
    for (int c = 0; c < centroids.k(); ++c) {
        Rational d = (x - centroids.values[c]).abs();
        if (out.empty() || d < best) {
            best = std::move(d);
            out.assign(1, c);
        } else if (d == best) {
            out.push_back(c);
        }
    }
}

}  // namespace

Partition assign(const PointSet& points, const Centroids& centroids) {
    if (centroids.k() == 0) throw std::invalid_argument("assign needs at least one centroid");
    std::vector<int> labels;
    labels.reserve(points.size());
    std::vector<int> tied;
    for (std::size_t i = 0; i < points.size(); ++i) {
        nearest(points[i], centroids, tied);
        if (tied.size() > 1) throw TieError(-1, static_cast<int>(i) + 1, tied);
        labels.push_back(tied.front());
    }
    return Partition(std::move(labels), centroids.k());
}

std::vector<Partition> assign_branches(const PointSet& points, const Centroids& centroids) {
    if (centroids.k() == 0) throw std::invalid_argument("assign needs at least one centroid");
    std::vector<std::vector<int>> options(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) nearest(points[i], centroids, options[i]);

    std::vector<Partition> out;
    std::vector<std::size_t> choice(points.size(), 0);
    for (;;) {
        std::vector<int> labels(points.size());
        for (std::size_t i = 0; i < points.size(); ++i) labels[i] = options[i][choice[i]];
        out.emplace_back(std::move(labels), centroids.k());
        // Odometer with the rightmost point varying fastest.
        std::size_t i = points.size();
        while (i > 0) {
            --i;
            if (++choice[i] < options[i].size()) break;
            choice[i] = 0;
            if (i == 0) return out;
        }
        if (points.empty()) return out;
    }
}

Centroids update(const PointSet& points, const Partition& partition, const Centroids& previous) {
    const int k = partition.k();
    std::vector<Rational> sums(static_cast<std::size_t>(k));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const int l = partition.labels()[i];
        sums[l] += points[i];
        ++counts[l];
    }
    Centroids next;
    next.values.reserve(sums.size());
    next.empty.assign(sums.size(), false);
    for (int c = 0; c < k; ++c) {
        if (counts[c] == 0) {
            next.values.push_back(previous.values.at(static_cast<std::size_t>(c)));
            next.empty[c] = true;
        } else {
            next.values.push_back(sums[c] / Rational(counts[c]));
        }
    }
    return next;
}

LloydTrace run(const PointSet& points, const Seeding& seeding, int cap) {
    if (cap < 1) throw std::invalid_argument("iteration cap must be at least 1");
    LloydTrace trace;
    trace.seeding = seeding;
    Centroids centroids = Centroids::from_seeding(points, seeding);
    for (int iter = 0; iter < cap; ++iter) {
        Partition partition;
        try {
            partition = assign(points, centroids);
        } catch (const TieError& tie) {
            trace.outcome = TieEncountered{static_cast<int>(trace.steps.size()), tie.point(), tie.clusters()};
            return trace;
        }
        const bool fixed = !trace.steps.empty() && trace.steps.back().partition == partition;
        trace.steps.push_back({centroids, partition});
        if (fixed) {
            trace.outcome = Converged{std::move(partition)};
            return trace;
        }
        centroids = update(points, trace.steps.back().partition, centroids);
    }
    trace.outcome = IterationCapExceeded{};
    return trace;
}

namespace {

struct BranchExplorer {
    const PointSet& points;
    int cap;
    std::size_t max_traces;
    std::vector<LloydTrace> traces;
    std::set<std::vector<std::vector<int>>> seen;

    void emit(LloydTrace trace) {
        if (!seen.insert(trace.partition_sequence()).second) return;
        if (traces.size() >= max_traces) throw std::length_error("too many tie-resolution paths");
        traces.push_back(std::move(trace));
    }

    void explore(LloydTrace& trace, const Centroids& centroids) {
        if (static_cast<int>(trace.steps.size()) >= cap) {
            LloydTrace done = trace;
            done.outcome = IterationCapExceeded{};
            emit(std::move(done));
            return;
        }
        for (auto& partition : assign_branches(points, centroids)) {
            const bool fixed = !trace.steps.empty() && trace.steps.back().partition == partition;
            trace.steps.push_back({centroids, partition});
            if (fixed) {
                LloydTrace done = trace;
                done.outcome = Converged{partition};
                emit(std::move(done));
            } else {
                explore(trace, update(points, partition, centroids));
            }
            trace.steps.pop_back();
        }
    }
};

}  // namespace

std::vector<LloydTrace> run_branches(const PointSet& points, const Seeding& seeding, int cap,
                                     std::size_t max_traces) {
    if (cap < 1) throw std::invalid_argument("iteration cap must be at least 1");
    BranchExplorer explorer{points, cap, max_traces, {}, {}};
    LloydTrace trace;
    trace.seeding = seeding;
    explorer.explore(trace, Centroids::from_seeding(points, seeding));
    return std::move(explorer.traces);
}

bool is_fixed_point(const PointSet& points, const Partition& partition) {
    if (partition.has_empty_blocks()) return false;
    Centroids zero;
    zero.values.assign(static_cast<std::size_t>(partition.k()), Rational{});
    zero.empty.assign(zero.values.size(), false);
    const Centroids means = update(points, partition, zero);
    try {
        return assign(points, means) == partition;
    } catch (const TieError&) {
        return false;
    }
}

Rational cost(const PointSet& points, const Partition& partition) {
    Centroids zero;
    zero.values.assign(static_cast<std::size_t>(partition.k()), Rational{});
    zero.empty.assign(zero.values.size(), false);
    const Centroids means = update(points, partition, zero);
    Rational total;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Rational d = points[i] - means.values[partition.labels()[i]];
        total += d * d;
    }
    return total;
}

nlohmann::ordered_json partition_to_json(const Partition& partition) {
    return nlohmann::ordered_json(partition.labels());
}

std::string outcome_tag(const LloydOutcome& outcome) {
    struct Tag {
        std::string operator()(const Converged&) const { return "converged"; }
        std::string operator()(const TieEncountered&) const { return "tie"; }
        std::string operator()(const IterationCapExceeded&) const { return "cap-exceeded"; }
    };
    return std::visit(Tag{}, outcome);
}

nlohmann::ordered_json trace_to_json(const LloydTrace& trace) {
    nlohmann::ordered_json j;
    j["seeding"] = trace.seeding.indices();
    auto steps = nlohmann::ordered_json::array();
    for (const auto& step : trace.steps) {
        nlohmann::ordered_json s;
        auto cents = nlohmann::ordered_json::array();
        for (const auto& c : step.centroids.values) cents.push_back(c.str());
        s["centroids"] = std::move(cents);
        if (step.centroids.any_empty()) {
            auto empty = nlohmann::ordered_json::array();
            for (int c = 0; c < step.centroids.k(); ++c)
                if (step.centroids.empty[c]) empty.push_back(c);
            s["empty"] = std::move(empty);
        }
        s["labels"] = partition_to_json(step.partition);
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    nlohmann::ordered_json out;
    out["tag"] = outcome_tag(trace.outcome);
    if (const auto* c = std::get_if<Converged>(&trace.outcome)) {
        out["final_labels"] = partition_to_json(c->final_partition);
    } else if (const auto* t = std::get_if<TieEncountered>(&trace.outcome)) {
        out["step"] = t->step;
        out["point"] = t->point;
        out["clusters"] = t->clusters;
    }
    j["outcome"] = std::move(out);
    return j;
}

}  // namespace kmr
