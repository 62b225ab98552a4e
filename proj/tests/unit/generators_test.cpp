#include <doctest.h>

#include "grounded/generators.hpp"
#include "grounded/graph.hpp"
#include "grounded/io.hpp"
#include "grounded/topology.hpp"

using namespace grounded;

TEST_CASE("gen_random: outputs validate and are deterministic") {
    RandomFamilyParams params;
    params.n = 12;
    GroundedFamily a = gen_random(7, params);
    GroundedFamily b = gen_random(7, params);
    CHECK(validate(a).ok);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.member(i).region == b.member(i).region);

    params.n = 1;
    CHECK(validate(gen_random(1, params)).ok);
}

TEST_CASE("gen_clique: the pinned twin-arch fixture") {
    auto [family, witness] = gen_clique(2, Frame{8, 6});
    REQUIRE(family.size() == 2);
    CHECK(family.member(0).region == CellSet({{1, 0}, {1, 1}, {1, 2}, {2, 2}, {3, 2}}));
    CHECK(family.member(1).region == CellSet({{5, 0}, {5, 1}, {5, 2}, {4, 2}, {3, 2}}));
    CHECK((family.member(0).region & family.member(1).region) == CellSet({{3, 2}}));
    CHECK(witness.clique_ids == std::vector<std::string>({"K1", "K2"}));
}

TEST_CASE("gen_clique: members form a clique and the family is simple") {
    for (int k = 2; k <= 6; ++k) {
        Frame frame{2 * k + 6, k + 6};
        auto [family, witness] = gen_clique(k, frame);
        CHECK(validate(family).ok);
        CHECK(omega_exact(build_graph(family)).size == k);
        CHECK(int(witness.clique_ids.size()) == k);
    }
    CHECK_THROWS_AS(gen_clique(3, Frame{5, 5}), Error);
}

TEST_CASE("gen_bracket: support reaches the clique interior") {
    auto [family, sketch] = gen_bracket(2, Frame{12, 10});
    CHECK(validate(family).ok);
    auto support_index = family.index_of(sketch.support_id);
    REQUIRE(support_index.has_value());
    std::vector<GroundedSet> clique;
    for (const auto& id : sketch.clique_ids) clique.push_back(family.member(*family.index_of(id)));
    CellSet interior = clique_interior(clique, family.frame());
    CHECK(family.member(*support_index).region.intersects(interior));
}

TEST_CASE("gen_pillars: the canonical scene is accepted by the context builder") {
    Scene scene = gen_pillars(3, Frame{20, 8});
    std::vector<CellSet> pillars;
    for (const auto& r : scene.pillars) pillars.push_back(r.region);
    PillarContext ctx = build_pillar_context(scene.arch, pillars, scene.frame);
    CHECK(ctx.pillar_count() == 3);
    CHECK(ctx.corridors[1].size() > 0);
    CHECK(ctx.corridors[2].size() > 0);
    // exactly two baseline anchors
    CHECK(scene.arch.row(0).size() == 2);
}

TEST_CASE("gen_dist2_scene: hypotheses hold by construction") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SceneParams params;
        params.pillars = 3;
        params.members = 7;
        params.clique_bound = 2;
        params.floating_target = 1;
        Scene scene = gen_dist2_scene(seed, params);
        REQUIRE(scene.surrounded.size() == 7);

        std::vector<GroundedSet> combined(scene.pillars.begin(), scene.pillars.end());
        combined.insert(combined.end(), scene.surrounded.begin(), scene.surrounded.end());
        GroundedFamily family = make_family(combined, scene.frame);
        CHECK(omega_exact(build_graph(family)).size <= 2);

        for (const auto& r : scene.pillars) {
            CHECK(surrounded_by(r.base, scene.arch, scene.frame));
            CHECK(r.region.intersects(scene.arch));
        }
        CellSet cut_union;
        for (const auto& r : scene.pillars) cut_union = cut_union | cut(r, scene.arch);
        for (const auto& d : scene.surrounded) {
            CHECK(surrounded_by(d.region, scene.arch, scene.frame));
            CHECK(d.region.intersects(cut_union));
        }
    }
}

TEST_CASE("gen_dist2_scene: deterministic per seed") {
    SceneParams params;
    params.pillars = 3;
    params.members = 6;
    Scene a = gen_dist2_scene(3, params);
    Scene b = gen_dist2_scene(3, params);
    CHECK(a.arch == b.arch);
    REQUIRE(a.surrounded.size() == b.surrounded.size());
    for (std::size_t i = 0; i < a.surrounded.size(); ++i)
        CHECK(a.surrounded[i].region == b.surrounded[i].region);
    CHECK(scene_to_json(a) == scene_to_json(b));
}

TEST_CASE("gen_pillar_family: valid scene with intersecting pillars") {
    int intersecting = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        PillarFamilyParams params;
        params.pillars = 4;
        params.arch_height = 6;
        Scene scene = gen_pillar_family(seed, params);
        GroundedFamily family =
            make_family({scene.pillars.begin(), scene.pillars.end()}, scene.frame);
        CHECK(validate(family).ok);
        if (build_graph(family).edge_count() > 0) ++intersecting;
    }
    CHECK(intersecting > 6);  // arms make most instances non-trivial
}

TEST_CASE("gen_pierced: valid, simple, deterministic") {
    PiercedParams params;
    params.n = 6;
    params.frame = Frame{26, 10};
    PiercedFamily a = gen_pierced(17, params);
    PiercedFamily b = gen_pierced(17, params);
    REQUIRE(a.size() == 6);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a.members()[i].region == b.members()[i].region);
    std::vector<CellSet> regions;
    bool dips = false;
    for (const auto& m : a.members()) {
        regions.push_back(m.region);
        if (m.region.bbox().min_y < 0) dips = true;
    }
    CHECK(check_simple(regions).ok);
    CHECK(dips);
}
