#include "kmrich/cases.hpp"

#include <array>
#include <charconv>

#include "kmrich/errors.hpp"

namespace kmr {
namespace {

constexpr std::array<std::pair<CaseTag, std::string_view>, 15> kTagNames{{
    {CaseTag::AA, "AA"},   {CaseTag::AB, "AB"},     {CaseTag::ACA, "ACA"},   {CaseTag::ACB, "ACB"},
    {CaseTag::ADA, "ADA"}, {CaseTag::ADB, "ADB"},   {CaseTag::ADCA, "ADCA"}, {CaseTag::ADCB, "ADCB"},
    {CaseTag::ADD, "ADD"}, {CaseTag::BA, "BA"},     {CaseTag::BB, "BB"},     {CaseTag::BC, "BC"},
    {CaseTag::BD, "BD"},   {CaseTag::BE, "BE"},     {CaseTag::Unclassified, "UNCLASSIFIED"},
}};

/// Strict three-way comparison; equality is a region tie.
int compare(const Rational& lhs, const Rational& rhs, const char* what) {
    const auto c = lhs <=> rhs;
    if (c == 0) throw RegionTieError(std::string("tie in region predicate: ") + what);
    return c < 0 ? -1 : 1;
}

enum class EndShape { Ascending, Descending, Pit, Peak };

EndShape end_shape(const Rational& outer, const Rational& gap, const Rational& inner, const char* what) {
    const int lhs = compare(outer, gap, what);
    const int rhs = compare(gap, inner, what);
    if (lhs < 0 && rhs < 0) return EndShape::Ascending;
    if (lhs > 0 && rhs > 0) return EndShape::Descending;
    if (lhs > 0) return EndShape::Pit;
    return EndShape::Peak;
}

/// Outer-end case for the triple (outer, gap, inner); nullopt when peak-shaped.
std::optional<CaseTag> end_case(const Rational& outer, const Rational& gap, const Rational& inner,
                                const char* what) {
    switch (end_shape(outer, gap, inner, what)) {
        case EndShape::Ascending: return CaseTag::AA;
        case EndShape::Descending: return CaseTag::AB;
        case EndShape::Pit: {
            const Rational threshold = (gap * 2 + inner) / 3;
            return compare(outer, threshold, what) < 0 ? CaseTag::ACA : CaseTag::ACB;
        }
        case EndShape::Peak: return std::nullopt;
    }
    return std::nullopt;
}

Seeding seeds(std::vector<int> indices) {
    const int k = static_cast<int>(indices.size());
    return Seeding(std::move(indices), k);
}

std::vector<PlanCandidate> add_candidates() {
    return {{"S1", seeds({2, 5, 7, 8})},
            {"S2", seeds({1, 2, 4, 7})},
            {"S7", seeds({4, 6, 7, 8})},
            {"S7'", seeds({1, 2, 3, 5})}};
}

Seeding base_seeding4(CaseTag tag) {
    switch (tag) {
        case CaseTag::AA:
        case CaseTag::ACA: return seeds({2, 4, 5, 7});
        case CaseTag::AB:
        case CaseTag::ACB: return seeds({1, 3, 5, 7});
        case CaseTag::ADA:
        case CaseTag::ADCB: return seeds({2, 4, 6, 7});
        case CaseTag::ADB: return mirror_seeding(seeds({2, 4, 6, 7}), 4);
        case CaseTag::ADCA: return seeds({2, 3, 5, 7});
        default: throw std::logic_error("no single seeding for this label");
    }
}

// Gap j (1-based) of a k > 4 config, viewed as a triple (a_j, p_j, a_{j+1}).
std::vector<EndShape> gap_shapes(const DistanceConfig& cfg) {
    std::vector<EndShape> shapes;
    for (int j = 1; j < cfg.k(); ++j) shapes.push_back(end_shape(cfg.a_at(j), cfg.p_at(j), cfg.a_at(j + 1), "gap"));
    return shapes;
}

Seeding bc_seeding(int k, int m) {
    std::vector<int> s;
    for (int j = 1; j <= k; ++j) s.push_back(j <= m + 1 ? 2 * j : 2 * j - 1);
    return Seeding(std::move(s), k);
}

}  // namespace

std::string_view tag_name(CaseTag tag) {
    for (const auto& [t, name] : kTagNames)
        if (t == tag) return name;
    return "?";
}

std::string_view semantics_name(PlanSemantics semantics) {
    return semantics == PlanSemantics::AllMustFail ? "all-must-fail" : "any-must-fail";
}

std::string CaseLabel::str() const {
    std::string out(tag_name(tag));
    if (parameter) out += "(" + std::to_string(*parameter) + ")";
    if (mirrored) out += "~";
    return out;
}

CaseLabel CaseLabel::parse(std::string_view text) {
    CaseLabel label;
    if (!text.empty() && text.back() == '~') {
        label.mirrored = true;
        text.remove_suffix(1);
    }
    const auto open = text.find('(');
    std::string_view name = text.substr(0, open);
    if (open != std::string_view::npos) {
        if (text.back() != ')') throw std::invalid_argument("malformed case label");
        const auto inner = text.substr(open + 1, text.size() - open - 2);
        int value = 0;
        const auto [ptr, ec] = std::from_chars(inner.data(), inner.data() + inner.size(), value);
        if (ec != std::errc{} || ptr != inner.data() + inner.size())
            throw std::invalid_argument("malformed case label parameter");
        label.parameter = value;
    }
    for (const auto& [t, n] : kTagNames) {
        if (n == name) {
            label.tag = t;
            return label;
        }
    }
    throw std::invalid_argument("unknown case label '" + std::string(name) + "'");
}

CaseLabel classify4(const DistanceConfig& cfg) {
    if (cfg.k() != 4) throw std::invalid_argument("classify4 needs k = 4");
    const auto& a = cfg.a();
    const auto& p = cfg.p();
    if (auto left = end_case(a[0], p[0], a[1], "left end")) return {*left, false, std::nullopt};
    if (auto right = end_case(a[3], p[2], a[2], "right end")) return {*right, true, std::nullopt};
    switch (end_shape(a[1], p[1], a[2], "middle")) {
        case EndShape::Ascending: return {CaseTag::ADA, false, std::nullopt};
        case EndShape::Descending: return {CaseTag::ADB, false, std::nullopt};
        case EndShape::Pit: {
            const Rational threshold = (p[1] * 2 + a[2]) / 3;
            return {compare(a[1], threshold, "middle") > 0 ? CaseTag::ADCA : CaseTag::ADCB, false, std::nullopt};
        }
        case EndShape::Peak: return {CaseTag::ADD, false, std::nullopt};
    }
    return {};
}

AdversarialPlan adversarial_plan4(const DistanceConfig& cfg) {
    AdversarialPlan plan;
    plan.label = classify4(cfg);
    if (plan.label.tag == CaseTag::ADD) {
        plan.semantics = PlanSemantics::AnyMustFail;
        plan.candidates = add_candidates();
        return plan;
    }
    Seeding s = base_seeding4(plan.label.tag);
    if (plan.label.mirrored) s = mirror_seeding(s, 4);
    plan.candidates.push_back({"", std::move(s)});
    return plan;
}

CaseLabel classify_k(const DistanceConfig& cfg) {
    const int k = cfg.k();
    if (k <= 4) throw std::invalid_argument("classify_k needs k > 4");
    const auto shapes = gap_shapes(cfg);
    if (shapes[0] == EndShape::Ascending) return {CaseTag::BA, false, std::nullopt};
    if (shapes[0] == EndShape::Descending) return {CaseTag::BB, false, std::nullopt};
    for (int m = 1; m < k; ++m)
        if (shapes[m - 1] == EndShape::Ascending) return {CaseTag::BC, false, m};
    // Smallest ascending gap of the reversed config: original gap k - m'.
    for (int mr = 1; mr < k; ++mr)
        if (shapes[k - mr - 1] == EndShape::Descending) return {CaseTag::BC, true, mr};
    const bool all_pits = std::all_of(shapes.begin(), shapes.end(), [](EndShape s) { return s == EndShape::Pit; });
    if (all_pits) {
        int longest = 1;
        bool tie = false;
        for (int j = 2; j <= k; ++j) {
            const auto c = cfg.a_at(j) <=> cfg.a_at(longest);
            if (c > 0) {
                longest = j;
                tie = false;
            } else if (c == 0) {
                tie = true;
            }
        }
        if (tie) throw RegionTieError("tie in region predicate: longest intra-pair distance is not unique");
        return {CaseTag::BD, false, longest};
    }
    const bool all_peaks = std::all_of(shapes.begin(), shapes.end(), [](EndShape s) { return s == EndShape::Peak; });
    if (all_peaks) return {CaseTag::BE, false, std::nullopt};
    return {CaseTag::Unclassified, false, std::nullopt};
}

AdversarialPlan adversarial_plan_k(const DistanceConfig& cfg) {
    const int k = cfg.k();
    AdversarialPlan plan;
    plan.label = classify_k(cfg);
    std::vector<int> s;
    switch (plan.label.tag) {
        case CaseTag::BA:
            s = {2, 4};
            for (int j = 3; j <= k; ++j) s.push_back(2 * j - 1);
            break;
        case CaseTag::BB:
            for (int j = 1; j <= k; ++j) s.push_back(2 * j - 1);
            break;
        case CaseTag::BC: {
            Seeding base = bc_seeding(k, *plan.label.parameter);
            plan.candidates.push_back({"", plan.label.mirrored ? mirror_seeding(base, k) : base});
            return plan;
        }
        case CaseTag::BD: {
            const int i = *plan.label.parameter;
            for (int j = 1; j <= k; ++j) s.push_back(j <= i ? 2 * j - 1 : 2 * j - 2);
            break;
        }
        case CaseTag::BE:
            plan.semantics = PlanSemantics::AnyMustFail;
            for (auto& c : add_candidates()) {
                std::vector<int> ext = c.seeding.indices();
                for (int j = 5; j <= k; ++j) ext.push_back(2 * j - 1);
                plan.candidates.push_back({c.name, Seeding(std::move(ext), k)});
            }
            return plan;
        default:
            throw UnclassifiedError("config " + serialize_config(cfg) + " falls outside every case region");
    }
    plan.candidates.push_back({"", Seeding(std::move(s), k)});
    return plan;
}

CaseLabel classify(const DistanceConfig& cfg) {
    if (cfg.k() == 4) return classify4(cfg);
    if (cfg.k() > 4) return classify_k(cfg);
    return {};
}

AdversarialPlan adversarial_plan(const DistanceConfig& cfg) {
    if (cfg.k() == 4) return adversarial_plan4(cfg);
    if (cfg.k() > 4) return adversarial_plan_k(cfg);
    throw UnclassifiedError("no case analysis for k = " + std::to_string(cfg.k()));
}

}  // namespace kmr
