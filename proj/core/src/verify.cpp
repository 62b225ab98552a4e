#include "grounded/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <set>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "grounded/decompose.hpp"
#include "grounded/generators.hpp"
#include "grounded/io.hpp"
#include "grounded/pipeline.hpp"
#include "grounded/topology.hpp"

namespace grounded {

namespace {

using Clock = std::chrono::steady_clock;

struct Campaign {
    const VerifyOptions& options;
    InstanceRecord& record;

    void check(bool ok, const std::string& name) {
        if (!ok) {
            record.ok = false;
            record.failed.push_back(name);
        }
    }

    void save_failure(const GroundedFamily& f, const std::string& stem) {
        if (options.save_dir.empty() || record.ok) return;
        std::filesystem::create_directories(options.save_dir);
        record.instance_path = options.save_dir + "/" + stem + ".json";
        save_family(f, record.instance_path);
    }

    void save_failure(const Scene& s, const std::string& stem) {
        if (options.save_dir.empty() || record.ok) return;
        std::filesystem::create_directories(options.save_dir);
        record.instance_path = options.save_dir + "/" + stem + ".json";
        save_scene(s, record.instance_path);
    }
};

int chi_of(const GroundedFamily& f, const ChiOptions& opts) {
    return chi_exact(build_graph(f), opts).chi;
}

// ---- ladder ---------------------------------------------------------------

void run_ladder(Campaign& c, std::uint64_t seed) {
    Rng rng(seed);
    rng.next();
    RandomFamilyParams params;
    params.n = 8 + int(rng.below(18));  // up to 25 members
    params.frame = Frame{std::max(30, params.n * 4), 14};
    params.growth_steps = 6 + int(rng.below(6));
    GroundedFamily f = gen_random(seed, params);
    int chi = chi_of(f, c.options.chi);
    c.record.sizes["n"] = long(f.size());
    c.record.sizes["chi"] = chi;

    // largest applicable (a,b) from a small menu
    int a = 0, b = 0;
    for (auto [ca, cb] : {std::pair{2, 1}, {1, 1}, {2, 0}, {1, 0}, {0, 1}, {0, 0}}) {
        if (chi > 2 * ca * (cb + 1)) {
            a = ca;
            b = cb;
            break;
        }
    }
    LadderResult ladder = ladder_split(f, a, b, c.options.chi);

    GroundedFamily h = subfamily_by_id(f, ladder.h_ids);
    c.check(chi_of(h, c.options.chi) > a, "chi(H) > a");

    std::size_t covered = 0;
    for (std::size_t i = 0; i + 1 < ladder.blocks.size(); ++i)
        c.check(ladder.block_chi[i] == b + 1, "non-final block chi = b+1");
    for (const auto& block : ladder.blocks) covered += block.size();
    c.check(covered == f.size(), "blocks partition F");

    IntersectionGraph hg = build_graph(h);
    for (std::size_t i = 0; i < h.size(); ++i) {
        for (std::size_t j = i + 1; j < h.size(); ++j) {
            if (!hg.adjacent(i, j)) continue;
            GroundedFamily gap = restrict_between(f, h.member(i).id, h.member(j).id);
            c.check(chi_of(gap, c.options.chi) > b, "chi(F(H1,H2)) > b");
        }
    }
    c.save_failure(f, "ladder_" + std::to_string(seed));
}

// ---- layers ---------------------------------------------------------------

void run_layers(Campaign& c, std::uint64_t seed) {
    Rng salt(seed);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 50)
            fail(Errc::generation_budget, "no layered instance found for seed " +
                                              std::to_string(seed));
        std::uint64_t derived = salt.next();
        RandomFamilyParams params;
        params.n = 8 + int(Rng(derived).below(16));
        params.frame = Frame{std::max(30, params.n * 4), 14};
        GroundedFamily f = gen_random(derived, params);
        int chi = chi_of(f, c.options.chi);
        int a = chi >= 3 ? (chi - 1) / 2 : 0;
        LayerResult layer;
        try {
            layer = externally_supported(f, a, c.options.chi);
        } catch (const Error& e) {
            if (e.code() == Errc::no_supported_layer) {
                c.record.regenerations++;
                continue;
            }
            throw;
        }
        c.record.sizes["n"] = long(f.size());
        c.record.sizes["chi"] = chi;
        c.record.sizes["layer"] = long(layer.layer.size());
        c.check(chi_of(layer.layer, c.options.chi) > a, "chi(layer) > a");
        c.check(layer.distance >= 1, "layer distance >= 1");

        CellSet outside = ext(layer.layer.union_cells(), f.frame());
        for (const auto& x : layer.layer.members()) {
            bool supported = false;
            for (const auto& y : f.members()) {
                if (y.id == x.id) continue;
                if (y.region.intersects(x.region) && y.region.intersects(outside)) {
                    supported = true;
                    break;
                }
            }
            c.check(supported, "external supporter exists");
        }
        c.save_failure(f, "layers_" + std::to_string(seed));
        return;
    }
}

// ---- pillars (cut order coloring) ------------------------------------------

void run_pillars(Campaign& c, std::uint64_t seed) {
    Rng rng(seed);
    rng.next();
    PillarFamilyParams params;
    params.pillars = 3 + int(rng.below(3));
    params.arch_height = params.pillars + 2 + int(rng.below(2));
    Scene scene = gen_pillar_family(seed, params);

    std::vector<CellSet> cuts;
    std::vector<std::string> ids;
    for (const auto& r : scene.pillars) {
        cuts.push_back(cut(r, scene.arch));
        ids.push_back(r.id);
    }
    IndexColoring coloring = pillar_order_coloring(cuts);
    c.record.sizes["m"] = long(cuts.size());
    c.record.sizes["palette"] = coloring.palette;

    IntersectionGraph g = build_graph(ids, cuts);
    int omega = omega_exact(g).size;
    c.check(coloring.palette <= omega, "palette <= omega(cut graph)");
    c.check(coloring.palette == chi_exact(g, c.options.chi).chi,
            "palette = chi (perfect order graph)");
    for (std::size_t i = 0; i < cuts.size(); ++i)
        for (std::size_t j = i + 1; j < cuts.size(); ++j)
            if (coloring.colors[i] == coloring.colors[j])
                c.check(cuts[i].disjoint(cuts[j]), "same-color cuts disjoint");
    c.save_failure(scene, "pillars_" + std::to_string(seed));
}

// ---- clip (crossing, intervals, clip families) ------------------------------

Scene scene_for_pipeline(Campaign& c, std::uint64_t seed, const SceneParams& base) {
    Rng salt(seed);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 60)
            fail(Errc::generation_budget,
                 "no pipeline-ready scene for seed " + std::to_string(seed));
        std::uint64_t derived = attempt == 0 ? seed : salt.next();
        try {
            return gen_dist2_scene(derived, base);
        } catch (const Error& e) {
            if (e.code() != Errc::generation_budget) throw;
            c.record.regenerations++;
        }
    }
}

void run_clip(Campaign& c, std::uint64_t seed) {
    Rng rng(seed);
    rng.next();
    SceneParams params;
    params.pillars = 2 + int(rng.below(4));
    params.members = 4 + int(rng.below(7));
    params.clique_bound = c.options.k;
    Scene scene = scene_for_pipeline(c, seed, params);
    c.record.sizes["m"] = params.pillars;
    c.record.sizes["d"] = long(scene.surrounded.size());

    std::vector<CellSet> pillar_regions;
    for (const auto& r : scene.pillars) pillar_regions.push_back(r.region);
    PillarContext ctx = build_pillar_context(scene.arch, pillar_regions, scene.frame);

    c.check(audit_pillar_crossing(ctx), "paths cross intermediate pillars");
    c.check(audit_corridors(ctx), "corridors disjoint from each other and pillars");
    Rng blob_rng(seed ^ 0xabcdef);
    c.check(audit_interval_meeting(ctx, blob_rng, 60), "connected subsets meet an interval");

    ClipView clips = clip(ctx, scene.surrounded);
    std::vector<CellSet> lefts, rights;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < scene.surrounded.size(); ++i) {
        ids.push_back(scene.surrounded[i].id);
        lefts.push_back(clips.items[i].leftclip);
        rights.push_back(clips.items[i].rightclip);
        c.check(is_connected(clips.items[i].leftclip), "leftclip connected");
        c.check(is_connected(clips.items[i].rightclip), "rightclip connected");
    }
    c.check(check_simple(lefts).ok, "leftclips simple");
    c.check(check_simple(rights).ok, "rightclips simple");

    std::vector<GroundedSet> combined(scene.pillars.begin(), scene.pillars.end());
    combined.insert(combined.end(), scene.surrounded.begin(), scene.surrounded.end());
    int scene_omega = omega_exact(build_graph(make_family(combined, scene.frame))).size;
    int left_omega = omega_exact(build_graph(ids, lefts)).size;
    int right_omega = omega_exact(build_graph(ids, rights)).size;
    c.check(left_omega <= scene_omega - 1, "omega(leftclips) <= omega(scene) - 1");
    c.check(right_omega <= scene_omega - 1, "omega(rightclips) <= omega(scene) - 1");
    c.save_failure(scene, "clip_" + std::to_string(seed));
}

// ---- attach -----------------------------------------------------------------

void run_attach(Campaign& c, std::uint64_t seed) {
    Rng salt(seed ^ 0x5eed);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 60)
            fail(Errc::generation_budget,
                 "no attachable scene for seed " + std::to_string(seed));
        std::uint64_t derived = attempt == 0 ? seed : salt.next();
        SceneParams params;
        params.pillars = 3 + int(Rng(derived).below(3));
        params.members = 6 + int(Rng(derived ^ 1).below(5));
        params.clique_bound = c.options.k;
        params.pillar_width = 3;
        params.floating_target = 2;
        Scene scene;
        try {
            scene = gen_dist2_scene(derived, params);
        } catch (const Error& e) {
            if (e.code() != Errc::generation_budget) throw;
            c.record.regenerations++;
            continue;
        }

        std::vector<CellSet> pillar_regions;
        for (const auto& r : scene.pillars) pillar_regions.push_back(r.region);
        PillarContext ctx = build_pillar_context(scene.arch, pillar_regions, scene.frame);
        ClipView clips = clip(ctx, scene.surrounded);

        std::vector<GroundedSet> right_side;
        int floating = 0;
        for (const auto& m : scene.surrounded) {
            CellSet rbase = clips.of(m.id).rightclip.row(0);
            if (!rbase.empty() || clips.of(m.id).leftclip.row(0).empty())
                right_side.push_back(m);
            if (clips.of(m.id).leftclip.row(0).empty()) ++floating;
        }
        if (floating < 2) {
            c.record.regenerations++;
            continue;
        }
        c.record.sizes["d"] = long(scene.surrounded.size());
        c.record.sizes["floating"] = floating;

        AttachResult attach;
        try {
            attach = attach_to_baseline(ctx, right_side, clips);
        } catch (const Error& e) {
            if (e.code() == Errc::routing_failed) {
                c.record.regenerations++;
                continue;
            }
            throw;
        }
        c.check(attach.routed >= 2, "at least two members routed");
        c.check(validate(attach.family).ok, "output family valid");

        std::vector<std::string> ids;
        std::vector<CellSet> lefts;
        for (const auto& m : right_side) {
            ids.push_back(m.id);
            lefts.push_back(clips.of(m.id).leftclip);
        }
        IntersectionGraph before = build_graph(ids, lefts);
        IntersectionGraph after = build_graph(attach.family);
        std::set<std::pair<std::string, std::string>> edges_before, edges_after;
        for (auto [a, b] : before.edges())
            edges_before.insert({std::min(before.ids()[std::size_t(a)], before.ids()[std::size_t(b)]),
                                 std::max(before.ids()[std::size_t(a)], before.ids()[std::size_t(b)])});
        for (auto [a, b] : after.edges())
            edges_after.insert({std::min(after.ids()[std::size_t(a)], after.ids()[std::size_t(b)]),
                                std::max(after.ids()[std::size_t(a)], after.ids()[std::size_t(b)])});
        c.check(edges_before == edges_after, "intersection graph preserved");
        c.save_failure(scene, "attach_" + std::to_string(seed));
        return;
    }
}

// ---- final (four-coloring) ---------------------------------------------------

void run_final(Campaign& c, std::uint64_t seed) {
    Rng salt(seed ^ 0xf17a1);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 60)
            fail(Errc::generation_budget,
                 "no final-stage scene for seed " + std::to_string(seed));
        std::uint64_t derived = attempt == 0 ? seed : salt.next();
        SceneParams params;
        params.pillars = 3 + int(Rng(derived).below(3));
        params.members = 6 + int(Rng(derived ^ 2).below(6));
        params.clique_bound = c.options.k;
        Scene scene;
        try {
            scene = gen_dist2_scene(derived, params);
        } catch (const Error& e) {
            if (e.code() != Errc::generation_budget) throw;
            c.record.regenerations++;
            continue;
        }
        std::vector<CellSet> pillar_regions;
        for (const auto& r : scene.pillars) pillar_regions.push_back(r.region);
        PillarContext ctx = build_pillar_context(scene.arch, pillar_regions, scene.frame);
        ClipView clips = clip(ctx, scene.surrounded);

        // greedy subfamily with pairwise disjoint leftclips and rightclips
        std::vector<GroundedSet> n_family;
        for (const auto& m : scene.surrounded) {
            bool ok = true;
            for (const auto& kept : n_family) {
                if (clips.of(m.id).leftclip.intersects(clips.of(kept.id).leftclip) ||
                    clips.of(m.id).rightclip.intersects(clips.of(kept.id).rightclip))
                    ok = false;
            }
            if (ok) n_family.push_back(m);
        }
        if (n_family.size() < 2) {
            c.record.regenerations++;
            continue;
        }
        c.record.sizes["n"] = long(n_family.size());

        ComponentMap cmap;
        Coloring psi = final_four_color(ctx, n_family, clips, &cmap);
        c.check(psi.palette <= 4, "at most four colors");
        for (std::size_t i = 0; i < n_family.size(); ++i)
            for (std::size_t j = i + 1; j < n_family.size(); ++j)
                if (n_family[i].region.intersects(n_family[j].region))
                    c.check(psi.colors[i] != psi.colors[j], "psi proper");
        IntersectionGraph g(cmap.vertex_names, cmap.edges);
        c.check(planarity_edge_bound(g), "component graph satisfies edge bound");
        c.record.sizes["g_vertices"] = long(g.n());
        c.record.sizes["g_edges"] = long(g.edge_count());
        c.save_failure(scene, "final_" + std::to_string(seed));
        return;
    }
}

// ---- dist2 (full pipeline) ----------------------------------------------------

void run_dist2(Campaign& c, std::uint64_t seed) {
    Rng salt(seed ^ 0xd157);
    BoundTable bounds = compute_bounds(std::max(2, c.options.k));
    std::uint64_t beta = 0;
    bounds.beta[std::size_t(c.options.k)].fits_u64(&beta);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= 60)
            fail(Errc::generation_budget,
                 "no colorable scene for seed " + std::to_string(seed));
        std::uint64_t derived = attempt == 0 ? seed : salt.next();
        SceneParams params;
        params.pillars = 2 + int(Rng(derived).below(4));          // m <= 5
        params.members = 5 + int(Rng(derived ^ 3).below(11));     // |D| <= 15
        params.clique_bound = c.options.k;
        params.pillar_width = 2;
        params.floating_target = int(Rng(derived ^ 4).below(3));
        params.arch_height = 7;
        Scene scene;
        try {
            scene = gen_dist2_scene(derived, params);
        } catch (const Error& e) {
            if (e.code() != Errc::generation_budget) throw;
            c.record.regenerations++;
            continue;
        }
        Dist2Options opts;
        opts.chi = c.options.chi;
        Coloring coloring;
        try {
            coloring = color_dist2(scene, c.options.k, bounds, opts);
        } catch (const Error& e) {
            if (e.code() == Errc::routing_failed) {
                c.record.regenerations++;
                continue;
            }
            throw;
        }
        c.record.sizes["d"] = long(scene.surrounded.size());
        c.record.sizes["palette"] = coloring.palette;
        c.check(std::uint64_t(coloring.palette) <= beta, "palette <= beta_k");
        for (std::size_t i = 0; i < scene.surrounded.size(); ++i)
            for (std::size_t j = i + 1; j < scene.surrounded.size(); ++j)
                if (scene.surrounded[i].region.intersects(scene.surrounded[j].region))
                    c.check(coloring.colors[i] != coloring.colors[j], "coloring proper");
        c.save_failure(scene, "dist2_" + std::to_string(seed));
        return;
    }
}

// ---- corollaries ----------------------------------------------------------------

void run_corollaries(Campaign& c, std::uint64_t seed) {
    Rng rng(seed);
    rng.next();
    int k = 2 + int(rng.below(2));
    Frame frame{2 * k + 10, k + 9};
    auto [family, sketch] = gen_bracket(k, frame);

    std::vector<GroundedSet> clique;
    for (const auto& id : sketch.clique_ids) clique.push_back(family.member(*family.index_of(id)));
    const GroundedSet& support = family.member(*family.index_of(sketch.support_id));

    // random probe: a stem with one or two arms, anywhere inside the frame
    for (int probe = 0; probe < 4; ++probe) {
        std::vector<Cell> cells;
        int bx = 1 + int(rng.below(std::uint64_t(frame.width - 2)));
        int h = 1 + int(rng.below(std::uint64_t(frame.height - 3)));
        for (int y = 0; y <= h; ++y) cells.push_back({bx, y});
        int arms = 1 + int(rng.below(2));
        int ax = bx, ay = h;
        for (int s = 0; s < arms; ++s) {
            bool right = rng.chance(0.5);
            int len = 1 + int(rng.below(6));
            int end = right ? std::min(frame.width - 2, ax + len)
                            : std::max(1, ax - len);
            for (int x = std::min(ax, end); x <= std::max(ax, end); ++x)
                cells.push_back({x, ay});
            ax = end;
            if (s + 1 < arms) {
                int ny = std::min(frame.height - 2, ay + 1 + int(rng.below(3)));
                for (int y = ay; y <= ny; ++y) cells.push_back({ax, y});
                ay = ny;
            }
        }
        GroundedSet x = make_grounded("X", CellSet(std::move(cells)));

        // the corollaries assume the probe is simple with the bracket members
        std::vector<CellSet> together{x.region};
        for (const auto& m : family.members()) together.push_back(m.region);
        if (!check_simple(together).ok) continue;

        PiercingVerdict clique_verdict = check_cor_clique(x, clique, frame);
        c.check(!(clique_verdict.hypotheses_hold && !clique_verdict.conclusion_holds),
                "clique corollary");
        PiercingVerdict bracket_verdict = check_cor_bracket(x, clique, support, frame);
        c.check(!(bracket_verdict.hypotheses_hold && !bracket_verdict.conclusion_holds),
                "bracket corollary");
        if (clique_verdict.hypotheses_hold) c.record.sizes["clique_hyp"]++;
        if (bracket_verdict.hypotheses_hold) c.record.sizes["bracket_hyp"]++;
    }
    c.save_failure(family, "corollaries_" + std::to_string(seed));
}

}  // namespace

bool known_lemma(const std::string& name) {
    static const char* names[] = {"ladder", "layers",  "pillars", "clip",
                                  "attach", "final", "dist2",   "corollaries"};
    for (const char* n : names)
        if (name == n) return true;
    return false;
}

VerifyReport run_verify(const VerifyOptions& options) {
    if (!known_lemma(options.lemma))
        fail(Errc::validation, "unknown lemma '" + options.lemma + "'");
    VerifyReport report;
    report.lemma = options.lemma;
    report.records.assign(std::size_t(options.trials), {});

    auto run_one = [&](int i) {
        InstanceRecord& record = report.records[std::size_t(i)];
        record.seed = options.seed + std::uint64_t(i);
        Campaign campaign{options, record};
        auto start = Clock::now();
        try {
            if (options.lemma == "ladder") run_ladder(campaign, record.seed);
            else if (options.lemma == "layers") run_layers(campaign, record.seed);
            else if (options.lemma == "pillars") run_pillars(campaign, record.seed);
            else if (options.lemma == "clip") run_clip(campaign, record.seed);
            else if (options.lemma == "attach") run_attach(campaign, record.seed);
            else if (options.lemma == "final") run_final(campaign, record.seed);
            else if (options.lemma == "dist2") run_dist2(campaign, record.seed);
            else if (options.lemma == "corollaries") run_corollaries(campaign, record.seed);
        } catch (const Error& e) {
            record.ok = false;
            record.failed.push_back(std::string("exception: ") + e.what());
        }
        record.millis =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    };

    int jobs = std::max(1, options.jobs);
    if (jobs == 1) {
        for (int i = 0; i < options.trials; ++i) run_one(i);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&] {
                for (int i = next.fetch_add(1); i < options.trials; i = next.fetch_add(1))
                    run_one(i);
            });
        for (auto& t : pool) t.join();
    }

    for (const auto& record : report.records) {
        (record.ok ? report.passed : report.failed)++;
        for (const auto& [key, value] : record.sizes) {
            auto& agg = report.aggregates["max_" + key];
            agg = std::max(agg, value);
        }
    }
    return report;
}

std::string VerifyReport::to_jsonl() const {
    using nlohmann::json;
    std::string out;
    for (const auto& record : records) {
        json j;
        j["lemma"] = lemma;
        j["seed"] = record.seed;
        j["ok"] = record.ok;
        j["ms"] = record.millis;
        if (record.regenerations) j["regenerations"] = record.regenerations;
        if (!record.failed.empty()) j["failed"] = record.failed;
        if (!record.sizes.empty()) j["sizes"] = record.sizes;
        if (!record.instance_path.empty()) j["instance"] = record.instance_path;
        out += j.dump() + "\n";
    }
    json summary;
    summary["lemma"] = lemma;
    summary["passed"] = passed;
    summary["failed"] = failed;
    summary["aggregates"] = aggregates;
    out += summary.dump() + "\n";
    return out;
}

}  // namespace grounded
