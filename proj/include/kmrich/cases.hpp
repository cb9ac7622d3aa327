#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kmrich/model.hpp"

namespace kmr {

enum class CaseTag {
    // k = 4 leaves
    AA, AB, ACA, ACB, ADA, ADB, ADCA, ADCB, ADD,
    // k > 4
    BA, BB, BC, BD, BE,
    Unclassified,
};

/// Region of the adversarial case analysis a config falls into.
///
/// `mirrored` means the region predicate holds for the reversed config and
/// the plan is the reflection of the base plan. `parameter` carries the gap
/// index m for BC (in the reversed config's numbering when mirrored) and
/// the index i of the longest intra-pair distance for BD.
struct CaseLabel {
    CaseTag tag = CaseTag::Unclassified;
    bool mirrored = false;
    std::optional<int> parameter;

    /// "AA", "AB~", "BC(3)", "BC(3)~", "BD(2)", "UNCLASSIFIED".
    std::string str() const;
    static CaseLabel parse(std::string_view text);

    friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

std::string_view tag_name(CaseTag tag);

enum class PlanSemantics { AllMustFail, AnyMustFail };

std::string_view semantics_name(PlanSemantics semantics);

struct PlanCandidate {
    std::string name;  // "S1" etc. for multi-candidate plans, empty otherwise
    Seeding seeding;
};

struct AdversarialPlan {
    CaseLabel label;
    std::vector<PlanCandidate> candidates;
    PlanSemantics semantics = PlanSemantics::AllMustFail;
};

/// k = 4 classifier. Precedence: left end (a1, p12, a2), then the reversed
/// right end (a4, p34, a3), then the middle (a2, p23, a3).
/// Throws RegionTieError if an evaluated comparison is an equality.
CaseLabel classify4(const DistanceConfig& cfg);
AdversarialPlan adversarial_plan4(const DistanceConfig& cfg);

/// k > 4 classifier; may return Unclassified for mixed pit/peak configs.
CaseLabel classify_k(const DistanceConfig& cfg);
/// Throws UnclassifiedError when classify_k yields Unclassified.
AdversarialPlan adversarial_plan_k(const DistanceConfig& cfg);

/// Dispatches on k; k < 4 has no case tree and is always Unclassified.
CaseLabel classify(const DistanceConfig& cfg);
AdversarialPlan adversarial_plan(const DistanceConfig& cfg);

}  // namespace kmr
