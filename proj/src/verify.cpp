#include "kmrich/verify.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

#include "kmrich/errors.hpp"

namespace kmr {

// ---------------------------------------------------------------------------
// Regions and sampling

std::string RegionSpec::name() const { return target ? target->str() : "all-valid"; }

bool RegionSpec::matches(const CaseLabel& label) const {
    if (!target) return true;
    if (target->tag != label.tag || target->mirrored != label.mirrored) return false;
    return !target->parameter || target->parameter == label.parameter;
}

RegionSpec RegionSpec::parse(std::string_view name, int k, int bound) {
    if (bound < 2) throw std::invalid_argument("region bound must be at least 2");
    RegionSpec spec;
    spec.k = k;
    spec.bound = bound;
    if (name != "all-valid") spec.target = CaseLabel::parse(name);
    if (spec.target && spec.target->tag != CaseTag::Unclassified) {
        const bool four = spec.target->tag <= CaseTag::ADD;
        if (four != (k == 4)) throw std::invalid_argument("region " + std::string(name) + " does not exist for k = " + std::to_string(k));
    }
    if (spec.target && k < 4) throw std::invalid_argument("k < 4 only supports the all-valid region");
    return spec;
}

DistanceConfig sample_config(const RegionSpec& region, std::mt19937_64& rng) {
    if (region.bound < 2 || region.denominator < 1 || region.k < 1)
        throw std::invalid_argument("malformed region");
    std::uniform_int_distribution<int> draw(1, region.bound);
    for (int attempt = 0; attempt < kMaxConsecutiveRejections; ++attempt) {
        std::vector<Rational> a, p;
        for (int j = 0; j < region.k; ++j) a.emplace_back(draw(rng), region.denominator);
        for (int j = 1; j < region.k; ++j) p.emplace_back(draw(rng), region.denominator);
        DistanceConfig cfg(std::move(a), std::move(p));
        if (!validate(cfg).valid()) continue;
        CaseLabel label;
        try {
            label = classify(cfg);
        } catch (const RegionTieError&) {
            continue;
        }
        if (region.matches(label)) return cfg;
    }
    throw ExhaustionError("region " + region.name() + " at k = " + std::to_string(region.k) + ", bound " +
                          std::to_string(region.bound) + " exhausted after " +
                          std::to_string(kMaxConsecutiveRejections) + " consecutive rejections");
}

std::vector<RegionSpec> case_regions4(int bound) {
    std::vector<RegionSpec> out;
    for (const char* name : {"AA", "AB", "ACA", "ACB", "ADA", "ADB", "ADCA", "ADCB", "ADD", "AA~", "AB~", "ACA~", "ACB~"})
        out.push_back(RegionSpec::parse(name, 4, bound));
    return out;
}

std::vector<RegionSpec> case_regions_k(int k, int bound) {
    std::vector<RegionSpec> out;
    for (const char* name : {"BA", "BB", "BC", "BC~", "BD", "BE"}) out.push_back(RegionSpec::parse(name, k, bound));
    return out;
}

// ---------------------------------------------------------------------------
// Oracle and probabilities

std::size_t seeding_count(int k) {
    std::size_t c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<std::size_t>(k + i) / static_cast<std::size_t>(i);
    return c;
}

OracleSummary enumerate_seedings(const DistanceConfig& cfg, int cap) {
    const int k = cfg.k();
    const PointSet points = embed(cfg);
    const Partition target = target_partition(k);
    OracleSummary out;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i + 1;
    const int n = 2 * k;
    for (;;) {
        const Seeding seeding(idx, k);
        LloydTrace trace = run(points, seeding, cap);
        ++out.total;
        if (trace.tied()) {
            ++out.tied;
        } else if (!trace.converged()) {
            ++out.capped;
        } else if (trace.reached(target)) {
            ++out.successes;
        } else if (!out.first_failing) {
            out.first_failing = seeding;
            out.witness = std::move(trace);
        }
        // Next k-subset in lexicographic order.
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i + 1) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

Rational success_probability(const OracleSummary& oracle) {
    if (oracle.counted() == 0) throw std::domain_error("every seeding tied; success probability undefined");
    return Rational(static_cast<std::int64_t>(oracle.successes), static_cast<std::int64_t>(oracle.counted()));
}

Rational success_probability(const DistanceConfig& cfg) { return success_probability(enumerate_seedings(cfg)); }

bool richness_violation(const DistanceConfig& cfg, const Rational& epsilon) {
    if (epsilon.sign() <= 0 || epsilon >= Rational(1)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    return success_probability(cfg) <= Rational(1) - epsilon;
}

// ---------------------------------------------------------------------------
// Certificates

std::string_view verdict_name(Verdict verdict) {
    switch (verdict) {
        case Verdict::PlanHolds: return "PlanHolds";
        case Verdict::PlanViolated: return "PlanViolated";
        case Verdict::Skipped: return "Skipped";
    }
    return "?";
}

bool Certificate::depends_on_empty_cluster_rule() const {
    if (std::any_of(candidates.begin(), candidates.end(), [](const CandidateRecord& c) { return c.touched_empty_cluster; }))
        return true;
    return oracle && oracle->witness && oracle->witness->touched_empty_cluster();
}

std::string trace_digest(const std::vector<LloydTrace>& traces) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : traces) arr.push_back(trace_to_json(t));
    const std::string text = traces.size() == 1 ? arr[0].dump() : arr.dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[md[i] >> 4];
        out += kHex[md[i] & 15];
    }
    return out;
}

namespace {

Verdict oracle_verdict(const OracleSummary& oracle) {
    if (oracle.first_failing) return Verdict::PlanHolds;
    if (oracle.counted() == oracle.capped) return Verdict::Skipped;
    return Verdict::PlanViolated;
}

CandidateRecord run_candidate(const PointSet& points, const Partition& target, const PlanCandidate& candidate,
                              const CheckOptions& options) {
    CandidateRecord rec;
    rec.name = candidate.name;
    rec.seeding = candidate.seeding;
    if (options.policy == TiePolicy::Strict) {
        rec.traces.push_back(run(points, candidate.seeding, options.cap));
    } else {
        rec.traces = run_branches(points, candidate.seeding, options.cap);
    }
    rec.branches = rec.traces.size();
    rec.trace_digest = trace_digest(rec.traces);
    for (const auto& t : rec.traces) {
        rec.tied = rec.tied || t.tied();
        rec.touched_empty_cluster = rec.touched_empty_cluster || t.touched_empty_cluster();
        rec.reached_target = rec.reached_target || t.reached(target);
    }
    // Report the final partition of the first trace that avoided the target, if any.
    for (const auto& t : rec.traces) {
        if (const auto* c = std::get_if<Converged>(&t.outcome)) {
            if (!rec.final_partition || *rec.final_partition == target) rec.final_partition = c->final_partition;
        }
    }
    return rec;
}

}  // namespace

Certificate check_plan(const DistanceConfig& cfg, const CheckOptions& options) {
    if (!validate(cfg).valid()) throw std::invalid_argument("config " + serialize_config(cfg) + " violates validity");
    Certificate cert{cfg, {}, std::nullopt, {}, Verdict::Skipped, {}, std::nullopt};
    try {
        cert.label = classify(cfg);
    } catch (const RegionTieError& e) {
        cert.skip_reason = e.what();
        return cert;
    }
    if (cert.label.tag == CaseTag::Unclassified) {
        cert.oracle = enumerate_seedings(cfg, options.cap);
        cert.verdict = oracle_verdict(*cert.oracle);
        if (cert.verdict == Verdict::Skipped) cert.skip_reason = "no tie-free converged seeding";
        return cert;
    }
    const AdversarialPlan plan = adversarial_plan(cfg);
    cert.semantics = plan.semantics;
    const PointSet points = embed(cfg);
    const Partition target = target_partition(cfg.k());
    for (const auto& candidate : plan.candidates) cert.candidates.push_back(run_candidate(points, target, candidate, options));

    const auto tied = std::find_if(cert.candidates.begin(), cert.candidates.end(), [](const CandidateRecord& c) { return c.tied; });
    const auto capped = std::find_if(cert.candidates.begin(), cert.candidates.end(), [](const CandidateRecord& c) {
        return std::any_of(c.traces.begin(), c.traces.end(),
                           [](const LloydTrace& t) { return std::holds_alternative<IterationCapExceeded>(t.outcome); });
    });
    if (tied != cert.candidates.end()) {
        cert.verdict = Verdict::Skipped;
        cert.skip_reason = "tie under strict policy for seeding " + tied->seeding.str();
    } else if (capped != cert.candidates.end()) {
        cert.verdict = Verdict::Skipped;
        cert.skip_reason = "iteration cap exceeded for seeding " + capped->seeding.str();
    } else {
        auto avoids = [](const CandidateRecord& c) { return !c.reached_target; };
        const bool holds = plan.semantics == PlanSemantics::AllMustFail
                               ? std::all_of(cert.candidates.begin(), cert.candidates.end(), avoids)
                               : std::any_of(cert.candidates.begin(), cert.candidates.end(), avoids);
        cert.verdict = holds ? Verdict::PlanHolds : Verdict::PlanViolated;
    }
    if (!options.keep_traces && cert.verdict != Verdict::PlanViolated)
        for (auto& c : cert.candidates) c.traces.clear();
    return cert;
}

Certificate exists_failing_seeding(const DistanceConfig& cfg, const CheckOptions& options) {
    Certificate cert{cfg, {}, std::nullopt, {}, Verdict::Skipped, {}, std::nullopt};
    try {
        cert.label = classify(cfg);
    } catch (const RegionTieError&) {
        cert.label = {};
    }
    cert.oracle = enumerate_seedings(cfg, options.cap);
    cert.verdict = oracle_verdict(*cert.oracle);
    if (cert.verdict == Verdict::Skipped) cert.skip_reason = "no tie-free converged seeding";
    return cert;
}

// ---------------------------------------------------------------------------
// Campaign

std::mt19937_64 sample_stream(std::uint64_t seed, std::size_t region, std::size_t sample) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(region), static_cast<std::uint32_t>(sample)};
    return std::mt19937_64(seq);
}

namespace {

constexpr std::size_t kMaxTiedDraws = 10'000;

struct SampleOutcome {
    Certificate cert;
    Rational probability;
    std::size_t ties_skipped = 0;
};

SampleOutcome run_sample(const RegionSpec& region, std::mt19937_64 rng, const CheckOptions& options) {
    std::size_t ties = 0;
    for (;;) {
        DistanceConfig cfg = sample_config(region, rng);
        Certificate cert = check_plan(cfg, options);
        if (cert.verdict != Verdict::Skipped) {
            OracleSummary oracle = cert.oracle ? *cert.oracle : enumerate_seedings(cfg, options.cap);
            if (oracle.tied == 0 && oracle.capped == 0) {
                Rational prob = success_probability(oracle);
                cert.oracle = std::move(oracle);
                return {std::move(cert), std::move(prob), ties};
            }
        }
        if (++ties >= kMaxTiedDraws)
            throw ExhaustionError("region " + region.name() + " produced " + std::to_string(kMaxTiedDraws) +
                                  " consecutive tied configs");
    }
}

}  // namespace

std::size_t Report::total_violations() const {
    std::size_t n = 0;
    for (const auto& r : regions) n += r.violations;
    return n;
}

std::size_t Report::total_samples() const {
    std::size_t n = 0;
    for (const auto& r : regions) n += r.samples;
    return n;
}

Report campaign(const std::vector<RegionSpec>& regions, std::size_t samples_per_region, std::uint64_t seed,
                const CampaignOptions& options) {
    Report report;
    report.rng_seed = seed;
    report.samples_per_region = samples_per_region;
    if (regions.empty()) return report;
    if (samples_per_region < 1) throw std::invalid_argument("campaign needs at least one sample per region");

    const std::size_t total = regions.size() * samples_per_region;
    std::vector<std::optional<SampleOutcome>> results(total);
    std::vector<std::optional<std::string>> region_errors(regions.size());
    std::vector<std::atomic<bool>> exhausted(regions.size());
    std::mutex error_mutex;
    std::exception_ptr failure;
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            const std::size_t r = task / samples_per_region;
            const std::size_t s = task % samples_per_region;
            if (exhausted[r].load()) continue;
            try {
                results[task] = run_sample(regions[r], sample_stream(seed, r, s), options.check);
            } catch (const ExhaustionError& e) {
                std::lock_guard lock(error_mutex);
                // Keep the message independent of which sample hit it first.
                if (!exhausted[r].exchange(true)) region_errors[r] = "exhausted: " + std::string(e.what());
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!failure) failure = std::current_exception();
                next.store(total);
            }
        }
    };

    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t r = 0; r < regions.size(); ++r) {
        RegionReport rr;
        rr.region = regions[r];
        rr.requested = samples_per_region;
        if (exhausted[r].load()) {
            rr.error = region_errors[r];
            report.regions.push_back(std::move(rr));
            continue;
        }
        for (std::size_t s = 0; s < samples_per_region; ++s) {
            auto& outcome = *results[r * samples_per_region + s];
            ++rr.samples;
            rr.ties_skipped += outcome.ties_skipped;
            ++rr.labels[outcome.cert.label.str()];
            if (outcome.cert.oracle && outcome.cert.oracle->first_failing) ++rr.oracle_failures_found;
            if (outcome.cert.depends_on_empty_cluster_rule()) ++rr.empty_cluster_dependent;
            if (!rr.min_success || outcome.probability < rr.min_success->probability)
                rr.min_success = ProbabilityExtreme{outcome.probability, outcome.cert.config};
            if (!rr.max_success || outcome.probability > rr.max_success->probability)
                rr.max_success = ProbabilityExtreme{outcome.probability, outcome.cert.config};
            if (outcome.cert.verdict == Verdict::PlanHolds) {
                ++rr.holds;
            } else {
                ++rr.violations;
                rr.violation_certificates.push_back(std::move(outcome.cert));
            }
        }
        report.regions.push_back(std::move(rr));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

nlohmann::ordered_json oracle_to_json(const OracleSummary& oracle, bool include_traces) {
    nlohmann::ordered_json j;
    j["total"] = oracle.total;
    j["successes"] = oracle.successes;
    j["tied"] = oracle.tied;
    j["capped"] = oracle.capped;
    if (oracle.counted() > 0) j["success_probability"] = success_probability(oracle).fraction_str();
    if (oracle.first_failing) {
        j["failing_seeding"] = oracle.first_failing->indices();
        const auto& c = std::get<Converged>(oracle.witness->outcome);
        j["failing_final_labels"] = partition_to_json(c.final_partition);
        if (include_traces) j["witness_trace"] = trace_to_json(*oracle.witness);
    } else {
        j["failing_seeding"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json extreme_to_json(const std::optional<ProbabilityExtreme>& e) {
    if (!e) return nullptr;
    nlohmann::ordered_json j;
    j["value"] = e->probability.fraction_str();
    j["config"] = serialize_config(e->config);
    return j;
}

}  // namespace

nlohmann::ordered_json certificate_to_json(const Certificate& cert, bool include_traces) {
    nlohmann::ordered_json j;
    j["config"] = config_to_json(cert.config);
    j["config_text"] = serialize_config(cert.config);
    j["label"] = cert.label.str();
    j["semantics"] = cert.semantics ? nlohmann::ordered_json(semantics_name(*cert.semantics)) : nlohmann::ordered_json(nullptr);
    const bool branch = std::any_of(cert.candidates.begin(), cert.candidates.end(),
                                    [](const CandidateRecord& c) { return c.branches > 1; });
    j["policy"] = branch ? "branch" : "strict";
    auto cands = nlohmann::ordered_json::array();
    for (const auto& c : cert.candidates) {
        nlohmann::ordered_json cj;
        if (!c.name.empty()) cj["name"] = c.name;
        cj["seeding"] = c.seeding.indices();
        cj["trace_digest"] = c.trace_digest;
        cj["final_labels"] = c.final_partition ? partition_to_json(*c.final_partition) : nlohmann::ordered_json(nullptr);
        cj["reached_target"] = c.reached_target;
        cj["tied"] = c.tied;
        if (c.branches > 1) cj["branches"] = c.branches;
        if (!c.traces.empty() && (include_traces || cert.verdict == Verdict::PlanViolated)) {
            auto traces = nlohmann::ordered_json::array();
            for (const auto& t : c.traces) traces.push_back(trace_to_json(t));
            cj["traces"] = std::move(traces);
        }
        cands.push_back(std::move(cj));
    }
    j["candidates"] = std::move(cands);
    j["verdict"] = verdict_name(cert.verdict);
    if (!cert.skip_reason.empty()) j["skip_reason"] = cert.skip_reason;
    j["empty_cluster_rule_used"] = cert.depends_on_empty_cluster_rule();
    j["oracle"] = cert.oracle ? oracle_to_json(*cert.oracle, include_traces) : nlohmann::ordered_json(nullptr);
    return j;
}

nlohmann::ordered_json report_to_json(const Report& report) {
    nlohmann::ordered_json j;
    j["rng_seed"] = report.rng_seed;
    j["samples_per_region"] = report.samples_per_region;
    j["seeding_model"] = "uniform over unordered k-subsets of the data points";
    j["tie_handling"] = "configs with any tied run are redrawn and counted in ties_skipped";
    auto regions = nlohmann::ordered_json::array();
    for (const auto& r : report.regions) {
        nlohmann::ordered_json rj;
        rj["region"] = r.region.name();
        rj["k"] = r.region.k;
        rj["bound"] = r.region.bound;
        rj["denominator"] = r.region.denominator;
        if (r.region.k < 4) rj["note"] = "no theorem claim at k=" + std::to_string(r.region.k);
        rj["requested"] = r.requested;
        rj["samples"] = r.samples;
        rj["holds"] = r.holds;
        rj["violations"] = r.violations;
        rj["ties_skipped"] = r.ties_skipped;
        rj["oracle_failures_found"] = r.oracle_failures_found;
        rj["empty_cluster_dependent"] = r.empty_cluster_dependent;
        nlohmann::ordered_json labels = nlohmann::ordered_json::object();
        for (const auto& [name, count] : r.labels) labels[name] = count;
        rj["labels"] = std::move(labels);
        rj["min_success_probability"] = extreme_to_json(r.min_success);
        rj["max_success_probability"] = extreme_to_json(r.max_success);
        rj["error"] = r.error ? nlohmann::ordered_json(*r.error) : nlohmann::ordered_json(nullptr);
        auto certs = nlohmann::ordered_json::array();
        for (const auto& c : r.violation_certificates) certs.push_back(certificate_to_json(c, true));
        rj["violation_certificates"] = std::move(certs);
        regions.push_back(std::move(rj));
    }
    j["regions"] = std::move(regions);
    j["total_samples"] = report.total_samples();
    j["total_violations"] = report.total_violations();
    return j;
}

std::string report_to_csv(const Report& report) {
    std::ostringstream out;
    out << "region,k,samples,holds,violations,ties,min_success_probability,max_success_probability\n";
    for (const auto& r : report.regions) {
        out << r.region.name() << ',' << r.region.k << ',' << r.samples << ',' << r.holds << ',' << r.violations
            << ',' << r.ties_skipped << ',' << (r.min_success ? r.min_success->probability.fraction_str() : "")
            << ',' << (r.max_success ? r.max_success->probability.fraction_str() : "") << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Independent re-check of a serialized certificate

CertificateCheck check_certificate(const nlohmann::json& cert) {
    CertificateCheck result;
    auto problem = [&](std::string msg) {
        result.ok = false;
        result.problems.push_back(std::move(msg));
    };
    try {
        const DistanceConfig cfg = config_from_json(cert.at("config"));
        const PointSet points = embed(cfg);
        const int k = cfg.k();
        const Partition target = target_partition(k);
        const bool branch = cert.value("policy", std::string("strict")) == "branch";

        std::size_t avoided = 0;
        bool any_tied = false;
        const auto& candidates = cert.at("candidates");
        for (const auto& c : candidates) {
            const Seeding seeding(c.at("seeding").get<std::vector<int>>(), k);
            std::vector<LloydTrace> traces =
                branch ? run_branches(points, seeding) : std::vector<LloydTrace>{run(points, seeding)};
            bool reached = false, tied = false;
            for (const auto& t : traces) {
                reached = reached || t.reached(target);
                tied = tied || t.tied();
            }
            any_tied = any_tied || tied;
            if (!reached) ++avoided;
            if (c.at("reached_target").get<bool>() != reached)
                problem("seeding " + seeding.str() + ": recorded reached_target disagrees with re-run");
            if (c.at("trace_digest").get<std::string>() != trace_digest(traces))
                problem("seeding " + seeding.str() + ": trace digest mismatch");
            if (!c.at("final_labels").is_null() && !branch) {
                const auto* conv = std::get_if<Converged>(&traces.front().outcome);
                const Partition recorded(c.at("final_labels").get<std::vector<int>>(), k);
                if (!conv || !(conv->final_partition == recorded))
                    problem("seeding " + seeding.str() + ": final partition mismatch");
            }
            if (c.contains("traces")) {
                auto rerun = nlohmann::ordered_json::array();
                for (const auto& t : traces) rerun.push_back(trace_to_json(t));
                if (nlohmann::json::parse(rerun.dump()) != c.at("traces"))
                    problem("seeding " + seeding.str() + ": recorded trace differs from re-run");
            }
        }

        const std::string verdict = cert.at("verdict").get<std::string>();
        if (!cert.at("semantics").is_null()) {
            std::string expected;
            if (any_tied) {
                expected = "Skipped";
            } else {
                const bool all = cert.at("semantics").get<std::string>() == "all-must-fail";
                const bool holds = all ? avoided == candidates.size() : avoided > 0;
                expected = holds ? "PlanHolds" : "PlanViolated";
            }
            if (verdict != expected && verdict != "Skipped") problem("verdict " + verdict + " but re-run gives " + expected);
        }

        if (!cert.at("oracle").is_null()) {
            const auto& o = cert.at("oracle");
            const OracleSummary fresh = enumerate_seedings(cfg);
            if (o.at("total").get<std::size_t>() != fresh.total || o.at("successes").get<std::size_t>() != fresh.successes ||
                o.at("tied").get<std::size_t>() != fresh.tied)
                problem("oracle counts differ from re-enumeration");
            if (!o.at("failing_seeding").is_null()) {
                const Seeding s(o.at("failing_seeding").get<std::vector<int>>(), k);
                const LloydTrace t = run(points, s);
                if (!t.converged() || t.reached(target)) problem("oracle witness " + s.str() + " does not avoid the target");
                if (o.contains("witness_trace") &&
                    nlohmann::json::parse(trace_to_json(t).dump()) != o.at("witness_trace"))
                    problem("oracle witness trace differs from re-run");
            } else if (fresh.first_failing) {
                problem("oracle recorded no failing seeding but " + fresh.first_failing->str() + " fails");
            }
            if (cert.at("semantics").is_null()) {
                const std::string expected(verdict_name(oracle_verdict(fresh)));
                if (verdict != expected) problem("verdict " + verdict + " but oracle gives " + expected);
            }
        }
    } catch (const std::exception& e) {
        problem(std::string("malformed certificate: ") + e.what());
    }
    return result;
}

}  // namespace kmr
