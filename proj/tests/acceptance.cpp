// Acceptance gate: prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kmrich/lloyd.hpp"
#include "kmrich/verify.hpp"
#include "support/generators.hpp"

using namespace kmr;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240917;

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

template <typename F>
void criterion(int number, const char* title, F&& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %d: %s - %s (%s) [%.1fs]\n", number, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(), secs);
    std::fflush(stdout);
}

std::string region_summary(const Report& report) {
    std::ostringstream ss;
    for (const auto& r : report.regions) {
        if (r.error) ss << r.region.name() << " error: " << *r.error << "; ";
        else if (r.violations) ss << r.region.name() << " violations " << r.violations << "; ";
    }
    return ss.str();
}

// Campaign report with every region fully sampled and no violations.
Outcome clean_campaign(const Report& report, std::size_t per_region) {
    std::ostringstream ss;
    bool ok = true;
    for (const auto& r : report.regions) {
        if (r.error || r.samples != per_region || r.holds != per_region || r.violations != 0) ok = false;
    }
    ss << report.regions.size() << " regions, " << report.total_samples() << " samples, "
       << report.total_violations() << " violations";
    const std::string problems = region_summary(report);
    if (!problems.empty()) ss << "; " << problems;
    return {ok, ss.str()};
}

bool contiguous(const std::vector<int>& canonical) {
    for (std::size_t i = 1; i < canonical.size(); ++i)
        if (canonical[i] != canonical[i - 1] && canonical[i] != canonical[i - 1] + 1) return false;
    return true;
}

std::vector<std::vector<int>> mirrored_sequence(const std::vector<std::vector<int>>& seq, int k) {
    std::vector<std::vector<int>> out;
    for (const auto& labels : seq) out.push_back(mirror_partition(Partition(labels, k)).canonical_labels());
    return out;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main() {
    Report k4;

    criterion(1, "k = 4 campaign, 13 regions x 1000 samples, B = 50", [&] {
        k4 = campaign(case_regions4(50), 1000, kSeed);
        return clean_campaign(k4, 1000);
    });

    criterion(2, "k = 4 failing seeding exists and success probability <= 69/70", [&]() -> Outcome {
        if (k4.regions.empty()) return {false, "no campaign report"};
        const Rational bound(69, 70);
        std::size_t failures_found = 0, samples = 0;
        Rational worst(0);
        bool ok = true;
        for (const auto& r : k4.regions) {
            samples += r.samples;
            failures_found += r.oracle_failures_found;
            if (r.oracle_failures_found != r.samples || !r.max_success) {
                ok = false;
                continue;
            }
            if (r.max_success->probability > worst) worst = r.max_success->probability;
            if (r.max_success->probability > bound) ok = false;
            if (!richness_violation(r.max_success->config, Rational(1, 70))) ok = false;
            if (exists_failing_seeding(r.max_success->config).verdict != Verdict::PlanHolds) ok = false;
        }
        std::ostringstream ss;
        ss << failures_found << "/" << samples << " samples with a failing seeding, max success probability "
           << worst.str();
        return {ok && samples > 0, ss.str()};
    });

    criterion(3, "k = 5, 6 campaigns, 500 samples per region including UNCLASSIFIED", [&]() -> Outcome {
        std::ostringstream ss;
        bool ok = true;
        for (int k : {5, 6}) {
            auto regions = case_regions_k(k, 50);
            regions.push_back(RegionSpec::parse("UNCLASSIFIED", k, 50));
            const Report report = campaign(regions, 500, kSeed + static_cast<std::uint64_t>(k));
            const Outcome o = clean_campaign(report, 500);
            ok = ok && o.pass;
            for (const auto& r : report.regions)
                if (r.oracle_failures_found != r.samples) ok = false;
            std::mt19937_64 rng(kSeed);
            const auto oracle = enumerate_seedings(sample_config(regions.back(), rng));
            if (oracle.total != seeding_count(k)) ok = false;
            ss << "k=" << k << ": " << o.detail << ", " << oracle.total << " seedings; ";
        }
        return {ok, ss.str()};
    });

    criterion(4, "Lloyd invariants on 10000 random valid configs", [&]() -> Outcome {
        std::mt19937_64 rng(kSeed + 4);
        std::uniform_int_distribution<int> kdist(2, 6);
        std::size_t tied = 0, checked = 0, bad = 0;
        std::string first_problem;
        auto fail = [&](const std::string& what, const DistanceConfig& c, const Seeding& s) {
            if (bad++ == 0) first_problem = what + " at " + serialize_config(c) + " seeding " + s.str();
        };
        for (int i = 0; i < 10000; ++i) {
            const int k = kdist(rng);
            const DistanceConfig c = testing::random_valid_config(rng, k, 50, 1 + i % 3);
            const Seeding s = testing::random_seeding(rng, k);
            const PointSet xs = embed(c);
            const LloydTrace t = run(xs, s);
            const auto branches = run_branches(xs, s);
            if (t.tied()) {
                ++tied;
                if (branches.size() < 2) fail("strict tie without branches", c, s);
                continue;
            }
            ++checked;
            if (!t.converged()) {
                fail("no convergence within the cap", c, s);
                continue;
            }
            const auto seq = t.partition_sequence();
            Rational previous(-1);
            for (std::size_t step = 0; step < seq.size(); ++step) {
                if (!contiguous(seq[step])) fail("non-contiguous partition", c, s);
                const Rational now = cost(xs, Partition(seq[step], k));
                if (step > 0) {
                    if (now > previous) fail("cost increased", c, s);
                    if (seq[step] != seq[step - 1] && !(now < previous)) fail("cost stalled between partitions", c, s);
                }
                previous = now;
            }
            PointSet shifted = xs;
            const Rational offset(-17, 3);
            for (auto& x : shifted) x += offset;
            if (run(shifted, s).partition_sequence() != seq) fail("translation changed the run", c, s);
            if (run(embed(c.scaled(Rational(5, 7))), s).partition_sequence() != seq) fail("scaling changed the run", c, s);
            if (run(embed(mirror(c)), mirror_seeding(s, k)).partition_sequence() != mirrored_sequence(seq, k))
                fail("mirroring changed the run", c, s);
            if (branches.size() != 1 || branches[0].partition_sequence() != seq) fail("branch and strict disagree", c, s);
        }
        std::ostringstream ss;
        ss << checked << " tie-free runs checked, " << tied << " tied runs excluded, " << bad << " failures";
        if (bad) ss << "; first: " << first_problem;
        return {bad == 0 && checked > 5000, ss.str()};
    });

    criterion(5, "fixed-point characterization on 10000 configs", [&]() -> Outcome {
        std::mt19937_64 rng(kSeed + 5);
        std::uniform_int_distribution<int> kdist(2, 6);
        std::uniform_int_distribution<int> mode_dist(0, 2);
        std::size_t counts[3] = {0, 0, 0}, mismatches = 0;
        for (int i = 0; i < 10000; ++i) {
            const int k = kdist(rng);
            const int mode = mode_dist(rng);
            DistanceConfig c = testing::random_valid_config(rng, k, 40);
            if (mode > 0) {
                // Put one gap exactly on (mode 1) or below (mode 2) the validity boundary.
                std::vector<Rational> a = c.a(), p = c.p();
                std::uniform_int_distribution<int> jdist(0, k - 2);
                const int j = jdist(rng);
                if (a[j] == a[j + 1]) a[j + 1] += Rational(3);
                const Rational half = (a[j] - a[j + 1]).abs() / 2;
                p[j] = mode == 1 ? half : half * Rational(2, 3);
                c = DistanceConfig(a, p);
            }
            const bool valid = validate(c).valid();
            ++counts[valid ? 0 : (mode == 1 ? 1 : 2)];
            if (is_fixed_point(embed(c), target_partition(k)) != valid) ++mismatches;
        }
        std::ostringstream ss;
        ss << counts[0] << " valid, " << counts[1] << " tied, " << counts[2] << " violated, " << mismatches
           << " mismatches";
        return {mismatches == 0 && counts[0] && counts[1] && counts[2], ss.str()};
    });

    criterion(6, "odd seeding reaches the pairing on 1000 well-separated configs", [&]() -> Outcome {
        std::mt19937_64 rng(kSeed + 6);
        std::uniform_int_distribution<int> kdist(2, 6);
        std::uniform_int_distribution<int> draw(1, 50);
        std::size_t bad = 0;
        for (int i = 0; i < 1000; ++i) {
            const int k = kdist(rng);
            std::vector<Rational> a, p;
            for (int j = 0; j < k; ++j) a.emplace_back(draw(rng));
            for (int j = 0; j + 1 < k; ++j) p.push_back(std::max(a[j], a[j + 1]) + Rational(draw(rng), 2));
            const DistanceConfig c(a, p);
            std::vector<int> odd;
            for (int j = 1; j <= k; ++j) odd.push_back(2 * j - 1);
            const LloydTrace t = run(embed(c), Seeding(odd, k));
            const Partition target = target_partition(k);
            const bool one_step = t.converged() && t.steps.size() == 2 && t.steps[0].partition == target &&
                                  t.reached(target);
            const bool bounded = success_probability(c) >= Rational(1, static_cast<std::int64_t>(seeding_count(k)));
            if (!one_step || !bounded) ++bad;
        }
        return {bad == 0, std::to_string(1000 - bad) + "/1000 configs"};
    });

    criterion(7, "verify reports are byte-identical for a fixed seed", [&]() -> Outcome {
        const fs::path dir = fs::temp_directory_path() / "kmrich_acceptance";
        fs::remove_all(dir);
        fs::create_directories(dir);
        std::ostringstream ss;
        bool ok = true;
        const std::string cli = KMRICH_CLI;
        const std::vector<std::pair<std::string, std::string>> runs{
            {"k4", "-k 4 -n 40 --seed 7"}, {"k5", "-k 5 -n 10 --seed 7 --format csv"}};
        for (const auto& [name, args] : runs) {
            std::string bodies[2];
            for (int i = 0; i < 2; ++i) {
                const fs::path file = dir / (name + "_" + std::to_string(i));
                const std::string cmd = "\"" + cli + "\" verify " + args + " -j " + std::to_string(i + 1) + " -o \"" +
                                        file.string() + "\" > /dev/null";
                const int status = std::system(cmd.c_str());
                if (status != 0) ok = false;
                bodies[i] = slurp(file);
            }
            if (bodies[0].empty() || bodies[0] != bodies[1]) ok = false;
            ss << name << " " << bodies[0].size() << " bytes " << (bodies[0] == bodies[1] ? "identical" : "differ")
               << "; ";
        }
        fs::remove_all(dir);
        return {ok, ss.str()};
    });

    std::printf("%s: %d of 7 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
