// Acceptance suite: every criterion prints one PASS/FAIL line and the binary
// exits with the number of failed criteria. Run a single criterion by passing
// its number.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "grounded/bounds.hpp"
#include "grounded/decompose.hpp"
#include "grounded/generators.hpp"
#include "grounded/graph.hpp"
#include "grounded/rng.hpp"
#include "grounded/verify.hpp"

using namespace grounded;

namespace {

struct Criterion {
    int number;
    std::string summary;
    double limit_seconds;
    std::function<bool(std::string&)> run;
};

int worker_threads() { return 4; }

bool run_campaign(const std::string& lemma, int trials, int k, std::string& note) {
    VerifyOptions options;
    options.lemma = lemma;
    options.trials = trials;
    options.seed = 1;
    options.k = k;
    options.jobs = worker_threads();
    VerifyReport report = run_verify(options);
    note = "passed " + std::to_string(report.passed) + "/" + std::to_string(trials);
    for (const auto& [key, value] : report.aggregates)
        note += " " + key + "=" + std::to_string(value);
    return report.failed == 0;
}

bool criterion_bounds(std::string& note) {
    BoundTable t = compute_bounds(6);
    bool ok = t.xi[1].to_string() == "1" && t.beta[2].to_string() == "16" &&
              t.delta[2][1].to_string() == "30" && t.delta[2][0].to_string() == "90" &&
              t.xi[2].to_string() == "1488";
    // independent arithmetic path: GMP evaluation of the same recurrence
    std::vector<mpz_class> xi(7);
    xi[1] = 1;
    for (int k = 2; k <= 6 && ok; ++k) {
        mpz_class prev = xi[std::size_t(k - 1)];
        mpz_class beta = 8 * k * prev * prev;
        std::vector<mpz_class> delta(std::size_t(k) + 1);
        for (int j = k - 1; j >= 0; --j)
            delta[std::size_t(j)] =
                beta + 2 * delta[std::size_t(j) + 1] + 2 * prev * (k * prev + k + 2) + 2;
        mpz_class pow = 1;
        for (int e = 0; e < k + 2; ++e) pow *= 2;
        xi[std::size_t(k)] = pow * (delta[0] + 2 * prev + 1);
        ok = ok && beta.get_str() == t.beta[std::size_t(k)].to_string();
        for (int j = 0; j <= k; ++j)
            ok = ok && delta[std::size_t(j)].get_str() ==
                           t.delta[std::size_t(k)][std::size_t(j)].to_string();
        ok = ok && xi[std::size_t(k)].get_str() == t.xi[std::size_t(k)].to_string();
    }
    note = "xi_2=" + t.xi[2].to_string() + " xi_6 has " +
           std::to_string(t.xi[6].to_string().size()) + " digits, cross-checked";
    return ok;
}

bool criterion_solvers(std::string& note) {
    Rng rng(2026);
    int checked = 0;
    for (int trial = 0; trial < 500; ++trial) {
        int n = 1 + int(rng.below(8));
        std::vector<std::string> ids;
        for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
        std::vector<std::pair<int, int>> edges;
        double p = 0.1 + 0.8 * double(trial % 11) / 10.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng.chance(p)) edges.emplace_back(i, j);
        IntersectionGraph g(ids, edges);
        if (chi_exact(g).chi != chi_oracle(g)) return false;
        if (omega_exact(g).size != omega_oracle(g)) return false;
        ++checked;
    }
    note = "500/500 graphs agree with exhaustive search";
    return checked == 500;
}

bool criterion_reduction(std::string& note) {
    Rng rng(99);
    int done = 0;
    for (std::uint64_t seed = 1; done < 100; ++seed) {
        if (seed > 400) return false;
        PiercedParams params;
        params.n = 4 + int(rng.below(5));
        params.frame = Frame{26, 10};
        PiercedFamily pf;
        try {
            pf = gen_pierced(seed, params);
        } catch (const Error&) {
            continue;
        }
        ReductionPlan plan = reduce_pierced_to_grounded(pf);
        std::vector<PairColoring> per_class;
        for (const auto& cls : plan.classes) {
            PairColoring pc;
            for (int side = 0; side < 2; ++side) {
                const GroundedFamily& fam = side ? cls.lower : cls.upper;
                Coloring coloring = chi_exact(build_graph(fam)).coloring;
                // arbitrary proper coloring: shuffle the color names
                std::vector<int> perm(std::size_t(coloring.palette));
                for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
                for (std::size_t i = perm.size(); i > 1; --i)
                    std::swap(perm[i - 1], perm[rng.below(i)]);
                auto& out = side ? pc.lower : pc.upper;
                for (std::size_t i = 0; i < coloring.ids.size(); ++i)
                    out.emplace_back(coloring.ids[i], perm[std::size_t(coloring.colors[i])]);
            }
            per_class.push_back(std::move(pc));
        }
        CombinedColoring combined = combine_reduction(pf, plan, per_class);
        for (std::size_t i = 0; i < pf.size(); ++i)
            for (std::size_t j = i + 1; j < pf.size(); ++j)
                if (pf.members()[i].region.intersects(pf.members()[j].region) &&
                    combined.colors[i].second == combined.colors[j].second)
                    return false;
        ++done;
    }
    note = "100/100 combined colorings proper";
    return true;
}

bool criterion_smoke(std::string& note) {
    BoundTable bounds = compute_bounds(3);
    Rng rng(7);
    int done = 0, max_chi = 0, capped = 0;
    for (std::uint64_t seed = 1; done < 500; ++seed) {
        if (seed > 5000) return false;
        RandomFamilyParams params;
        params.n = 6 + int(rng.below(10));
        params.frame = Frame{std::max(30, params.n * 4), 14};
        GroundedFamily f;
        try {
            f = gen_random(seed, params);
        } catch (const Error&) {
            continue;
        }
        IntersectionGraph g = build_graph(f);
        int omega = omega_exact(g).size;
        if (omega > 3) {
            ++capped;
            continue;  // outside the smoke-test class
        }
        int chi = chi_exact(g).chi;
        max_chi = std::max(max_chi, chi);
        std::uint64_t xi = 0;
        bounds.xi[std::size_t(omega)].fits_u64(&xi);
        if (std::uint64_t(chi) > xi) return false;
        ++done;
    }
    note = "500 families with omega <= 3; observed max chi = " + std::to_string(max_chi) +
           " (skipped " + std::to_string(capped) + " with larger cliques)";
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "bound recurrence reproduction (xi_1, beta_2..xi_2 chain, independent path)", 1.0,
         criterion_bounds},
        {2, "chi/omega solvers match exhaustive search on 500 graphs", 60.0,
         criterion_solvers},
        {3, "ladder decomposition postconditions on 200 families", 300.0,
         [](std::string& n) { return run_campaign("ladder", 200, 2, n); }},
        {4, "externally supported layers on 200 instances", 300.0,
         [](std::string& n) { return run_campaign("layers", 200, 2, n); }},
        {5, "pillar cut order coloring on 200 scenes", 120.0,
         [](std::string& n) { return run_campaign("pillars", 200, 2, n); }},
        {6, "pillar crossing, interval meeting and clip families on 200 scenes", 600.0,
         [](std::string& n) { return run_campaign("clip", 200, 2, n); }},
        {7, "attach-to-baseline graph isomorphism on 100 floating scenes", 300.0,
         [](std::string& n) { return run_campaign("attach", 100, 2, n); }},
        {8, "planar four-coloring of 100 disjoint-clip families", 300.0,
         [](std::string& n) { return run_campaign("final", 100, 2, n); }},
        {9, "full coloring engine at k=2 stays within beta_2 = 16 on 50 scenes", 600.0,
         [](std::string& n) { return run_campaign("dist2", 50, 2, n); }},
        {10, "pierced-to-grounded combiner proper on 100 families", 120.0,
         criterion_reduction},
        {11, "chromatic numbers of 500 random families stay under xi_omega", 600.0,
         criterion_smoke},
        {12, "corollary falsification: 1000 clique/bracket probes", 300.0,
         [](std::string& n) { return run_campaign("corollaries", 250, 2, n); }},
    };

    int only = argc > 1 ? std::atoi(argv[1]) : 0;
    int failures = 0;
    for (const auto& criterion : criteria) {
        if (only && criterion.number != only) continue;
        std::string note;
        auto start = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = criterion.run(note);
        } catch (const std::exception& e) {
            note = std::string("exception: ") + e.what();
        }
        double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (seconds > criterion.limit_seconds) {
            ok = false;
            note += " [over time limit]";
        }
        std::printf("criterion %2d %s  %s%s%s (%.2fs, limit %.0fs)\n", criterion.number,
                    ok ? "PASS" : "FAIL", criterion.summary.c_str(),
                    note.empty() ? "" : " -- ", note.c_str(), seconds,
                    criterion.limit_seconds);
        if (!ok) ++failures;
    }
    return failures;
}
