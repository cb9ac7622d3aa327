#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmrich/cases.hpp"
#include "kmrich/lloyd.hpp"
#include "kmrich/model.hpp"

namespace kmr {

/// Sampling region: integer distances in 1..bound divided by `denominator`,
/// rejected until the config is valid, tie-free and matches `target`.
/// An empty `target` accepts any valid config ("all-valid").
struct RegionSpec {
    int k = 4;
    std::optional<CaseLabel> target;
    int bound = 50;
    int denominator = 1;

    std::string name() const;
    bool matches(const CaseLabel& label) const;
    /// "AA", "AB~", "BC", "BD(2)", "UNCLASSIFIED" or "all-valid".
    static RegionSpec parse(std::string_view name, int k, int bound = 50);
};

constexpr int kMaxConsecutiveRejections = 1'000'000;

/// Throws ExhaustionError after kMaxConsecutiveRejections rejected draws.
DistanceConfig sample_config(const RegionSpec& region, std::mt19937_64& rng);

/// The nine k = 4 leaves plus the four reflected end cases.
std::vector<RegionSpec> case_regions4(int bound = 50);
/// BA, BB, BC, BC~, BD, BE for the given k > 4.
std::vector<RegionSpec> case_regions_k(int k, int bound = 50);

std::size_t seeding_count(int k);  // C(2k, k)

struct OracleSummary {
    std::size_t total = 0;
    std::size_t successes = 0;  // converged to the target pairing
    std::size_t tied = 0;
    std::size_t capped = 0;
    std::optional<Seeding> first_failing;  // lexicographically first tie-free non-target run
    std::optional<LloydTrace> witness;     // its trace

    std::size_t counted() const { return total - tied; }
};

/// Runs every C(2k, k) seeding in lexicographic order under Strict ties.
OracleSummary enumerate_seedings(const DistanceConfig& cfg, int cap = kDefaultIterationCap);

/// Fraction of tie-free seedings that converge to the target pairing.
/// Tied seedings are excluded from numerator and denominator. Throws
/// std::domain_error if every seeding ties.
Rational success_probability(const DistanceConfig& cfg);
Rational success_probability(const OracleSummary& oracle);

/// True iff success_probability(cfg) <= 1 - epsilon. Requires 0 < epsilon < 1.
bool richness_violation(const DistanceConfig& cfg, const Rational& epsilon);

enum class Verdict { PlanHolds, PlanViolated, Skipped };
std::string_view verdict_name(Verdict verdict);

struct CandidateRecord {
    std::string name;
    Seeding seeding;
    std::string trace_digest;            // SHA-256 over the serialized trace(s)
    std::optional<Partition> final_partition;
    bool reached_target = false;
    bool tied = false;
    bool touched_empty_cluster = false;
    std::size_t branches = 1;
    std::vector<LloydTrace> traces;      // only kept on request or for violations
};

struct Certificate {
    DistanceConfig config;
    CaseLabel label;
    std::optional<PlanSemantics> semantics;  // absent when the oracle stood in for the plan
    std::vector<CandidateRecord> candidates;
    Verdict verdict = Verdict::Skipped;
    std::string skip_reason;
    std::optional<OracleSummary> oracle;

    /// Whether any recorded run passed through a cluster with no points.
    bool depends_on_empty_cluster_rule() const;
};

struct CheckOptions {
    TiePolicy policy = TiePolicy::Strict;
    int cap = kDefaultIterationCap;
    bool keep_traces = false;
};

/// Runs the case plan for a valid config. Unclassified configs are decided
/// by the exhaustive oracle instead. Throws std::invalid_argument if the
/// config is not valid.
Certificate check_plan(const DistanceConfig& cfg, const CheckOptions& options = {});

/// Oracle-only certificate; PlanViolated iff every tie-free seeding reaches
/// the target pairing.
Certificate exists_failing_seeding(const DistanceConfig& cfg, const CheckOptions& options = {});

struct ProbabilityExtreme {
    Rational probability;
    DistanceConfig config;
};

struct RegionReport {
    RegionSpec region;
    std::size_t requested = 0;
    std::size_t samples = 0;  // evaluated tie-free configs: holds + violations
    std::size_t holds = 0;
    std::size_t violations = 0;
    std::size_t ties_skipped = 0;  // draws discarded because some run tied
    std::size_t oracle_failures_found = 0;
    std::size_t empty_cluster_dependent = 0;
    std::map<std::string, std::size_t> labels;
    std::optional<ProbabilityExtreme> min_success;
    std::optional<ProbabilityExtreme> max_success;
    std::optional<std::string> error;
    std::vector<Certificate> violation_certificates;
};

struct Report {
    std::uint64_t rng_seed = 0;
    std::size_t samples_per_region = 0;
    std::vector<RegionReport> regions;

    std::size_t total_violations() const;
    std::size_t total_samples() const;
};

struct CampaignOptions {
    unsigned threads = 0;  // 0: hardware concurrency
    CheckOptions check;
};

/// Per-sample RNG stream derived from (seed, region index, sample index).
std::mt19937_64 sample_stream(std::uint64_t seed, std::size_t region, std::size_t sample);

Report campaign(const std::vector<RegionSpec>& regions, std::size_t samples_per_region, std::uint64_t seed,
                const CampaignOptions& options = {});

std::string trace_digest(const std::vector<LloydTrace>& traces);

nlohmann::ordered_json certificate_to_json(const Certificate& cert, bool include_traces);
nlohmann::ordered_json report_to_json(const Report& report);
std::string report_to_csv(const Report& report);

struct CertificateCheck {
    bool ok = true;
    std::vector<std::string> problems;
};

/// Re-runs every recorded seeding of a serialized certificate and compares
/// final partitions, reached flags and the verdict.
CertificateCheck check_certificate(const nlohmann::json& cert);

}  // namespace kmr
