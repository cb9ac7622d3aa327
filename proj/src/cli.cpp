#include "kmrich/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kmrich/cases.hpp"
#include "kmrich/errors.hpp"
#include "kmrich/lloyd.hpp"
#include "kmrich/model.hpp"
#include "kmrich/verify.hpp"

namespace kmr::cli {
namespace {

/// Input problem reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigSource {
    std::string text;
    std::string file;

    void add_options(CLI::App& app) {
        app.add_option("-c,--config", text, "config text, e.g. \"a=1,3,3,1; p=2,2,2\", or JSON");
        app.add_option("-f,--config-file", file, "file holding a config in text or JSON form");
    }

    DistanceConfig load() const {
        if (text.empty() == file.empty()) throw UsageError("exactly one of --config or --config-file is required");
        std::string body = text;
        if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw UsageError("cannot read config file " + file);
            std::ostringstream ss;
            ss << in.rdbuf();
            body = ss.str();
        }
        return parse_config_any(body);
    }
};

DistanceConfig load_valid(const ConfigSource& source) {
    DistanceConfig cfg = source.load();
    const ValidityReport report = validate(cfg);
    if (!report.valid()) {
        std::string msg = "config violates |a_j - a_{j+1}| < 2 p_{j,j+1} at gap";
        for (const auto& issue : report.issues)
            msg += " " + std::to_string(issue.gap) + (issue.tied ? " (tied)" : "");
        throw UsageError(msg);
    }
    return cfg;
}

std::string with_decimal(const Rational& r) {
    if (r.is_integer()) return r.str();
    std::ostringstream ss;
    ss << r.str() << " (≈" << std::setprecision(6) << r.to_double() << ")";
    return ss.str();
}

std::string blocks_str(const Partition& partition) {
    std::string out;
    for (const auto& block : partition.blocks()) {
        if (!out.empty()) out += " ";
        out += "{";
        for (std::size_t i = 0; i < block.size(); ++i) out += (i ? ",n" : "n") + std::to_string(block[i]);
        out += "}";
    }
    return out;
}

/// Bracket rendering of a partition on the line, seeds marked with '*'.
std::string figure(const Partition& partition, const Seeding& seeding) {
    const int n = static_cast<int>(partition.size());
    const int k = n / 2;
    auto seeded = [&](int i) {
        const auto& s = seeding.indices();
        return std::find(s.begin(), s.end(), i + 1) != s.end();
    };
    auto gap_name = [&](int i) {
        if (i % 2 == 0) return "a" + std::to_string(i / 2 + 1);
        const int j = (i + 1) / 2;
        return k < 10 ? "p" + std::to_string(j) + std::to_string(j + 1)
                      : "p" + std::to_string(j) + "," + std::to_string(j + 1);
    };
    const auto& labels = partition.labels();
    std::string out = "[";
    for (int i = 0; i < n; ++i) {
        out += seeded(i) ? "*" : "0";
        if (i + 1 == n) break;
        const bool same = labels[i] == labels[i + 1];
        out += same ? " --" + gap_name(i) + "-- " : "]--" + gap_name(i) + "--[";
    }
    return out + "]";
}

std::string plan_str(const AdversarialPlan& plan) {
    std::string out = std::string(semantics_name(plan.semantics)) + " [";
    for (std::size_t i = 0; i < plan.candidates.size(); ++i) {
        if (i) out += ",";
        const auto& c = plan.candidates[i];
        out += c.name.empty() ? c.seeding.str() : c.name + "=" + c.seeding.str();
    }
    return out + "]";
}

nlohmann::ordered_json plan_json(const AdversarialPlan& plan) {
    nlohmann::ordered_json j;
    j["label"] = plan.label.str();
    j["semantics"] = semantics_name(plan.semantics);
    auto cands = nlohmann::ordered_json::array();
    for (const auto& c : plan.candidates) {
        nlohmann::ordered_json cj;
        if (!c.name.empty()) cj["name"] = c.name;
        cj["seeding"] = c.seeding.indices();
        cands.push_back(std::move(cj));
    }
    j["candidates"] = std::move(cands);
    return j;
}

Seeding parse_seeding(const std::string& text, int k) {
    std::vector<int> idx;
    std::string token;
    std::istringstream ss(text);
    while (std::getline(ss, token, ',')) {
        const auto first = token.find_first_not_of(" {}n");
        const auto last = token.find_last_not_of(" {}");
        if (first == std::string::npos) continue;
        try {
            std::size_t used = 0;
            const std::string digits = token.substr(first, last - first + 1);
            idx.push_back(std::stoi(digits, &used));
            if (used != digits.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw UsageError("malformed seeding index '" + token + "'");
        }
    }
    try {
        return Seeding(std::move(idx), k);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::filesystem::path output_path(const std::string& requested, const std::string& fallback_name) {
    const char* dir = std::getenv(kOutputDirEnv);
    std::filesystem::path path = requested.empty() ? std::filesystem::path() : std::filesystem::path(requested);
    if (dir && *dir) {
        if (path.empty()) path = fallback_name;
        if (path.is_relative()) path = std::filesystem::path(dir) / path;
    }
    return path;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path.string());
    out << body;
}

// ---------------------------------------------------------------------------

int cmd_classify(const ConfigSource& source, const std::string& format, std::ostream& out) {
    const DistanceConfig cfg = load_valid(source);
    const CaseLabel label = classify(cfg);
    std::optional<AdversarialPlan> plan;
    if (label.tag != CaseTag::Unclassified) plan = adversarial_plan(cfg);
    if (format == "json") {
        nlohmann::ordered_json j;
        j["config"] = serialize_config(cfg);
        j["label"] = label.str();
        j["plan"] = plan ? plan_json(*plan) : nlohmann::ordered_json(nullptr);
        out << j.dump(2) << '\n';
    } else if (plan) {
        out << label.str() << "; plan: " << plan_str(*plan) << '\n';
    } else {
        out << label.str() << "; plan: none, decided by exhaustive seeding search\n";
    }
    return kOk;
}

void print_trace(const LloydTrace& trace, std::ostream& out) {
    out << "seeding " << trace.seeding.str() << '\n';
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& step = trace.steps[i];
        out << "step " << i << "  centroids:";
        for (int c = 0; c < step.centroids.k(); ++c) {
            out << ' ' << with_decimal(step.centroids.values[c]);
            if (step.centroids.empty[c]) out << "[empty]";
        }
        out << "\n        " << figure(step.partition, trace.seeding) << '\n';
    }
    const Partition target = target_partition(trace.seeding.k());
    if (const auto* c = std::get_if<Converged>(&trace.outcome)) {
        out << "converged after " << trace.steps.size() << " assignments: " << blocks_str(c->final_partition)
            << (c->final_partition == target ? "  (target pairing reached)" : "  (target pairing not reached)")
            << '\n';
    } else if (const auto* t = std::get_if<TieEncountered>(&trace.outcome)) {
        out << "tie at point n" << t->point << " in assignment " << t->step << '\n';
    } else {
        out << "iteration cap exceeded\n";
    }
}

int cmd_simulate(const ConfigSource& source, const std::string& seeding_text, const std::string& tie, int cap,
                 const std::string& format, std::ostream& out, std::ostream& err) {
    const DistanceConfig cfg = source.load();
    if (cap < 1) throw UsageError("--cap must be at least 1");
    const Seeding seeding = parse_seeding(seeding_text, cfg.k());
    const PointSet points = embed(cfg);
    std::vector<LloydTrace> traces;
    if (tie == "branch") {
        traces = run_branches(points, seeding, cap);
    } else {
        traces.push_back(run(points, seeding, cap));
    }
    if (format == "json") {
        if (traces.size() == 1) {
            out << trace_to_json(traces.front()).dump(2) << '\n';
        } else {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& t : traces) arr.push_back(trace_to_json(t));
            out << arr.dump(2) << '\n';
        }
    } else {
        for (std::size_t i = 0; i < traces.size(); ++i) {
            if (traces.size() > 1) out << "--- branch " << i + 1 << " of " << traces.size() << '\n';
            print_trace(traces[i], out);
        }
    }
    if (tie != "branch" && traces.front().tied()) {
        const auto& t = std::get<TieEncountered>(traces.front().outcome);
        err << "error: " << TieError(t.step, t.point, t.clusters).what() << " (strict tie policy)\n";
        return kUsage;
    }
    return kOk;
}

int cmd_probability(const ConfigSource& source, const std::string& format, std::ostream& out) {
    const DistanceConfig cfg = load_valid(source);
    const OracleSummary oracle = enumerate_seedings(cfg);
    if (oracle.counted() == 0) throw UsageError("every seeding ties; probability undefined");
    const Rational prob = success_probability(oracle);
    const std::size_t total = oracle.total;
    const Rational bound = Rational(1) - Rational(1, static_cast<std::int64_t>(total));
    const int k = cfg.k();
    std::string verdict;
    if (k < 4) {
        verdict = "no theorem claim at k=" + std::to_string(k);
    } else if (prob <= bound && oracle.first_failing) {
        verdict = "violates probabilistic " + std::to_string(k) + "-richness";
    } else {
        verdict = "no failing seeding found";
    }
    if (format == "json") {
        nlohmann::ordered_json j;
        j["config"] = serialize_config(cfg);
        j["probability"] = prob.fraction_str();
        j["successes"] = oracle.successes;
        j["counted"] = oracle.counted();
        j["tied"] = oracle.tied;
        j["total"] = total;
        j["bound"] = bound.fraction_str();
        j["within_bound"] = prob <= bound;
        j["failing_seeding"] = oracle.first_failing ? nlohmann::ordered_json(oracle.first_failing->indices())
                                                    : nlohmann::ordered_json(nullptr);
        j["verdict"] = verdict;
        out << j.dump(2) << '\n';
    } else {
        out << "success probability: " << with_decimal(prob) << "  (" << oracle.successes << " of "
            << oracle.counted() << " tie-free seedings; " << oracle.tied << " tied; " << total << " total)\n";
        out << "bound 1-1/C(" << 2 * k << "," << k << ") = " << bound.str() << ": "
            << (prob <= bound ? "within" : "exceeded") << '\n';
        if (oracle.first_failing) out << "failing seeding: " << oracle.first_failing->str() << '\n';
        out << "verdict: " << verdict << '\n';
    }
    return kOk;
}

std::vector<RegionSpec> resolve_regions(int k, const std::string& list, int bound) {
    std::vector<RegionSpec> regions;
    if (list.empty() || list == "all") {
        if (k == 4) return case_regions4(bound);
        if (k > 4) {
            regions = case_regions_k(k, bound);
            regions.push_back(RegionSpec::parse("UNCLASSIFIED", k, bound));
            return regions;
        }
        return {RegionSpec::parse("all-valid", k, bound)};
    }
    std::istringstream ss(list);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        try {
            regions.push_back(RegionSpec::parse(name, k, bound));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    return regions;
}

struct VerifyArgs {
    int k = 4;
    std::string regions = "all";
    std::size_t samples = 100;
    std::uint64_t seed = 0;
    int bound = 50;
    unsigned threads = 0;
    std::string output;
    std::string format = "human";
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    if (args.k < 2) throw UsageError("--k must be at least 2");
    if (args.samples < 1) throw UsageError("--samples must be at least 1");
    if (args.bound < 2) throw UsageError("--bound must be at least 2");
    const auto regions = resolve_regions(args.k, args.regions, args.bound);
    CampaignOptions options;
    options.threads = args.threads;
    const Report report = campaign(regions, args.samples, args.seed, options);

    const std::string json = report_to_json(report).dump(2) + "\n";
    const std::string csv = report_to_csv(report);
    const auto path = output_path(args.output, args.format == "csv" ? "report.csv" : "report.json");
    if (!path.empty()) write_file(path, args.format == "csv" ? csv : json);

    for (const auto& r : report.regions)
        if (r.error) err << "warning: region " << r.region.name() << ": " << *r.error << '\n';

    if (args.format == "json" && path.empty()) {
        out << json;
    } else if (args.format == "csv" && path.empty()) {
        out << csv;
    } else {
        if (args.k < 4) out << "k=" << args.k << ": no theorem claim at k=" << args.k << '\n';
        for (const auto& r : report.regions) {
            out << std::left << std::setw(14) << r.region.name() << " k=" << r.region.k << "  samples " << r.samples
                << "  holds " << r.holds << "  violations " << r.violations << "  ties-skipped " << r.ties_skipped;
            if (r.min_success)
                out << "  success-probability [" << r.min_success->probability.str() << ", "
                    << r.max_success->probability.str() << "]";
            if (r.error) out << "  (exhausted)";
            out << '\n';
        }
        out << "total: " << report.total_samples() << " samples, " << report.total_violations() << " violations\n";
        if (!path.empty()) out << "report written to " << path.string() << '\n';
    }
    return report.total_violations() > 0 ? kViolation : kOk;
}

int cmd_certify(const ConfigSource& source, const std::string& check_file, const std::string& output,
                std::ostream& out) {
    if (!check_file.empty()) {
        std::ifstream in(check_file);
        if (!in) throw UsageError("cannot read certificate " + check_file);
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw UsageError(std::string("malformed certificate JSON: ") + e.what());
        }
        const CertificateCheck result = check_certificate(j);
        if (result.ok) {
            out << "certificate OK\n";
            return kOk;
        }
        for (const auto& p : result.problems) out << "problem: " << p << '\n';
        return kViolation;
    }
    const DistanceConfig cfg = load_valid(source);
    CheckOptions options;
    options.keep_traces = true;
    Certificate cert = check_plan(cfg, options);
    if (!cert.oracle) cert.oracle = enumerate_seedings(cfg);
    const std::string body = certificate_to_json(cert, true).dump(2) + "\n";
    const auto path = output_path(output, "certificate.json");
    if (path.empty()) {
        out << body;
    } else {
        write_file(path, body);
        out << "certificate written to " << path.string() << " (" << verdict_name(cert.verdict) << ")\n";
    }
    return cert.verdict == Verdict::PlanViolated ? kViolation : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Lloyd's k-means verifier for adversarial seedings of paired collinear points", "kmrich"};
    app.require_subcommand(1);

    ConfigSource classify_src, simulate_src, probability_src, certify_src;
    std::string format = "human";
    const std::vector<std::string> formats{"human", "json", "csv"};

    auto* classify_cmd = app.add_subcommand("classify", "print the case region and adversarial plan");
    classify_src.add_options(*classify_cmd);
    classify_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

    std::string seeding, tie = "strict";
    int cap = kDefaultIterationCap;
    auto* simulate_cmd = app.add_subcommand("simulate", "run Lloyd's iteration from a seeding");
    simulate_src.add_options(*simulate_cmd);
    simulate_cmd->add_option("-s,--seeding", seeding, "1-based point indices, e.g. 2,4,5,7")->required();
    simulate_cmd->add_option("--tie", tie)->check(CLI::IsMember({"strict", "branch"}));
    simulate_cmd->add_option("--cap", cap, "iteration cap");
    simulate_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

    auto* probability_cmd = app.add_subcommand("probability", "exact success probability over all seedings");
    probability_src.add_options(*probability_cmd);
    probability_cmd->add_option("--format", format)->check(CLI::IsMember(formats));

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "sample configs per region and check every plan");
    verify_cmd->add_option("-k,--k", verify.k, "number of pairs");
    verify_cmd->add_option("-r,--regions", verify.regions, "comma-separated regions or 'all'");
    verify_cmd->add_option("-n,--samples", verify.samples, "samples per region");
    verify_cmd->add_option("--seed", verify.seed, "root RNG seed");
    verify_cmd->add_option("-B,--bound", verify.bound, "integer distance bound");
    verify_cmd->add_option("-j,--threads", verify.threads, "worker threads (0 = all cores)");
    verify_cmd->add_option("-o,--output", verify.output, "report path");
    verify_cmd->add_option("--format", verify.format)->check(CLI::IsMember(formats));

    std::string check_file, certify_output;
    auto* certify_cmd = app.add_subcommand("certify", "write a full certificate, or re-check one");
    certify_src.add_options(*certify_cmd);
    certify_cmd->add_option("--check", check_file, "re-validate a certificate file");
    certify_cmd->add_option("-o,--output", certify_output, "certificate path");

    std::vector<std::string> argv{"kmrich"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<const char*> raw;
    for (const auto& a : argv) raw.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }

    try {
        if (*classify_cmd) return cmd_classify(classify_src, format, out);
        if (*simulate_cmd) return cmd_simulate(simulate_src, seeding, tie, cap, format, out, err);
        if (*probability_cmd) return cmd_probability(probability_src, format, out);
        if (*verify_cmd) return cmd_verify(verify, out, err);
        if (*certify_cmd) return cmd_certify(certify_src, check_file, certify_output, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const NonPositiveDistanceError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const RegionTieError& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    }
    return kUsage;
}

}  // namespace kmr::cli
