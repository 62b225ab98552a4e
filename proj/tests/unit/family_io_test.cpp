#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "grounded/generators.hpp"
#include "grounded/graph.hpp"
#include "grounded/io.hpp"
#include "grounded/rng.hpp"

using namespace grounded;

namespace {

GroundedSet column(const std::string& id, int x, int height) {
    std::vector<Cell> cells;
    for (int y = 0; y <= height; ++y) cells.push_back({x, y});
    return make_grounded(id, CellSet(std::move(cells)));
}

GroundedSet run(const std::string& id, int x0, int x1) {
    std::vector<Cell> cells;
    for (int x = x0; x <= x1; ++x) cells.push_back({x, 0});
    return make_grounded(id, CellSet(std::move(cells)));
}

std::string temp_path(const char* stem) {
    return std::string("unit_") + stem + ".json";
}

}  // namespace

TEST_CASE("grounded set validation") {
    CHECK_THROWS_AS(make_grounded("A", CellSet{}), Error);
    // floating region
    CHECK_THROWS_AS(make_grounded("A", CellSet({{1, 1}})), Error);
    // disconnected
    CHECK_THROWS_AS(make_grounded("A", CellSet({{1, 0}, {3, 0}})), Error);
    // base not contiguous (connected through the top)
    CHECK_THROWS_AS(
        make_grounded("A", CellSet({{1, 0}, {1, 1}, {2, 1}, {3, 1}, {3, 0}})), Error);
    // cells below the baseline
    CHECK_THROWS_AS(make_grounded("A", CellSet({{1, 0}, {1, -1}})), Error);
}

TEST_CASE("precedes") {
    auto a = run("A", 0, 2);
    auto b = run("B", 4, 5);
    auto c = run("C", 3, 3);
    CHECK(precedes(a, b));
    CHECK_FALSE(precedes(b, a));
    CHECK(precedes(a, c));  // adjacent bases, disjointness suffices
    CHECK_THROWS_AS(precedes(a, run("D", 2, 4)), Error);
}

TEST_CASE("restrict_between") {
    std::vector<GroundedSet> members;
    for (int i = 0; i < 5; ++i) members.push_back(column("M" + std::to_string(i + 1), 2 + 3 * i, 1));
    GroundedFamily f = make_family(members, Frame{20, 5});

    CHECK(restrict_between(f, std::nullopt, std::nullopt).size() == 5);
    CHECK(restrict_between(f, "M5", std::nullopt).empty());
    auto mid = restrict_between(f, "M2", "M5");
    CHECK(mid.ids() == std::vector<std::string>({"M3", "M4"}));
}

TEST_CASE("family validation catches overlapping bases and broken simplicity") {
    Frame f{20, 8};
    CHECK_THROWS_AS(make_family({run("A", 1, 3), run("B", 3, 5)}, f), Error);

    // U-shape and bar: pairwise intersection disconnected
    CellSet u = CellSet({{2, 0}, {2, 1}, {2, 2}, {3, 2}, {4, 2}, {4, 1}});
    CellSet bar({{6, 0}, {6, 1}, {5, 1}, {4, 1}, {3, 1}, {2, 1}});
    bool threw = false;
    try {
        make_family({make_grounded("U", u), make_grounded("B", bar)}, f);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.code() == Errc::validation);
    }
    CHECK(threw);
}

TEST_CASE("interval base coloring") {
    Frame f{30, 6};
    // disjoint bases: one color
    GroundedFamily disjoint = make_family({run("A", 1, 2), run("B", 5, 6)}, f);
    CHECK(interval_base_coloring(disjoint).palette == 1);

    // staircase with pairwise overlap depth 2 (as a pierced family)
    std::vector<PiercedMember> stairs;
    stairs.push_back(make_pierced_member("A", CellSet({{1, 0}, {2, 0}, {3, 0}})));
    stairs.push_back(make_pierced_member("B", CellSet({{3, 0}, {4, 0}, {5, 0}})));
    stairs.push_back(make_pierced_member("C", CellSet({{5, 0}, {6, 0}, {7, 0}})));
    PiercedFamily pf(stairs, f);
    Coloring coloring = interval_base_coloring(pf);
    CHECK(coloring.palette == 2);

    // palette equals chi of the base-interval graph
    std::vector<CellSet> bases;
    std::vector<std::string> ids;
    for (const auto& m : pf.members()) {
        ids.push_back(m.id);
        bases.push_back(m.region.row(0));
    }
    CHECK(coloring.palette == chi_exact(build_graph(ids, bases)).chi);
}

TEST_CASE("pierced reduction: class structure") {
    Frame f{30, 8};
    SUBCASE("disjoint bases collapse to one class") {
        std::vector<PiercedMember> ms;
        ms.push_back(make_pierced_member("A", CellSet({{2, 0}, {2, 1}})));
        ms.push_back(make_pierced_member("B", CellSet({{6, 0}, {6, -1}})));
        ReductionPlan plan = reduce_pierced_to_grounded(PiercedFamily(ms, f));
        CHECK(plan.classes.size() == 1);
    }
    SUBCASE("pairwise overlapping bases need one class each") {
        std::vector<PiercedMember> ms;
        ms.push_back(make_pierced_member("A", CellSet({{2, 0}, {3, 0}, {4, 0}})));
        ms.push_back(make_pierced_member("B", CellSet({{3, 0}, {4, 0}, {5, 0}})));
        ms.push_back(make_pierced_member("C", CellSet({{4, 0}, {5, 0}, {6, 0}})));
        ReductionPlan plan = reduce_pierced_to_grounded(PiercedFamily(ms, f));
        CHECK(plan.classes.size() == 3);
    }
    SUBCASE("base intervals forming a path split into two classes") {
        std::vector<PiercedMember> ms;
        int start = 1;
        for (int i = 0; i < 6; ++i) {
            std::vector<Cell> cells;
            for (int x = start; x <= start + 3; ++x) cells.push_back({x, 0});
            ms.push_back(make_pierced_member("P" + std::to_string(i), CellSet(std::move(cells))));
            start += 3;  // consecutive intervals overlap in one cell
        }
        PiercedFamily pf(ms, f);
        ReductionPlan plan = reduce_pierced_to_grounded(pf);
        CHECK(plan.classes.size() == 2);
        // exhaustive oracle: the base-interval graph is a path, chi = 2
        std::vector<CellSet> bases;
        std::vector<std::string> ids;
        for (const auto& m : pf.members()) {
            ids.push_back(m.id);
            bases.push_back(m.region.row(0));
        }
        CHECK(chi_oracle(build_graph(ids, bases)) == 2);
    }
}

TEST_CASE("pierced reduction: combiner is proper for arbitrary per-class colorings") {
    Rng rng(31);
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        PiercedParams params;
        params.n = 5 + int(rng.below(4));
        params.frame = Frame{26, 10};
        PiercedFamily pf = gen_pierced(seed, params);
        ReductionPlan plan = reduce_pierced_to_grounded(pf);

        // arbitrary proper per-class colorings: exact colorings with colors
        // shuffled by a random permutation
        std::vector<PairColoring> per_class;
        for (const auto& cls : plan.classes) {
            PairColoring pc;
            for (int side = 0; side < 2; ++side) {
                const GroundedFamily& fam = side ? cls.lower : cls.upper;
                Coloring coloring = chi_exact(build_graph(fam)).coloring;
                std::vector<int> perm(std::size_t(coloring.palette));
                for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
                for (std::size_t i = perm.size(); i > 1; --i)
                    std::swap(perm[i - 1], perm[rng.below(i)]);
                auto& out = side ? pc.lower : pc.upper;
                for (std::size_t i = 0; i < coloring.ids.size(); ++i)
                    out.emplace_back(coloring.ids[i],
                                     perm[std::size_t(coloring.colors[i])]);
            }
            per_class.push_back(std::move(pc));
        }
        CombinedColoring combined = combine_reduction(pf, plan, per_class);
        for (std::size_t i = 0; i < pf.size(); ++i) {
            for (std::size_t j = i + 1; j < pf.size(); ++j) {
                if (!pf.members()[i].region.intersects(pf.members()[j].region)) continue;
                CHECK(combined.colors[i].second != combined.colors[j].second);
            }
        }
    }
}

TEST_CASE("reduction: class bases are pairwise disjoint and families validate") {
    PiercedParams params;
    params.n = 7;
    params.frame = Frame{26, 10};
    PiercedFamily pf = gen_pierced(77, params);
    ReductionPlan plan = reduce_pierced_to_grounded(pf);
    for (const auto& cls : plan.classes) {
        CHECK(validate(cls.upper).ok);
        CHECK(validate(cls.lower).ok);
    }
}

TEST_CASE("save/load round trip on canonical form") {
    RandomFamilyParams params;
    params.n = 8;
    GroundedFamily f = gen_random(11, params);
    std::string path = temp_path("roundtrip");
    save_family(f, path);
    LoadedFamily loaded = load_family(path);
    REQUIRE(std::holds_alternative<GroundedFamily>(loaded));
    const auto& g = std::get<GroundedFamily>(loaded);
    REQUIRE(g.size() == f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        CHECK(g.member(i).id == f.member(i).id);
        CHECK(g.member(i).region == f.member(i).region);
    }
    // canonical: saving the loaded family reproduces the bytes
    std::string again = temp_path("roundtrip2");
    save_family(g, again);
    std::ifstream a(path), b(again);
    std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
    std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
    CHECK(sa == sb);
    std::remove(path.c_str());
    std::remove(again.c_str());
}

TEST_CASE("load: validation failures carry the first violated invariant") {
    std::string path = temp_path("bad");
    {
        std::ofstream out(path);
        out << R"({"frame": {"width": 10, "height": 5}, "pierced": false,
                   "sets": [{"id": "A", "cells": [[1,0],[2,0]]},
                            {"id": "B", "cells": [[2,0],[3,0]]}]})";
    }
    bool threw = false;
    try {
        load_family(path);
    } catch (const Error& e) {
        threw = true;
        CHECK(e.code() == Errc::bases_overlap);
        CHECK(std::string(e.what()).find("A,B") != std::string::npos);
    }
    CHECK(threw);
    {
        std::ofstream out(path);
        out << R"({"frame": {"width": 10, "height": 5}, "pierced": false,
                   "sets": [{"id": "A", "cells": [[1,0],[1,1],[2,1],[3,1],[3,0]]}]})";
    }
    CHECK_THROWS_AS(load_family(path), Error);
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    bool parse_threw = false;
    try {
        load_family(path);
    } catch (const Error& e) {
        parse_threw = true;
        CHECK(e.code() == Errc::parse_error);
    }
    CHECK(parse_threw);
    std::remove(path.c_str());
}

TEST_CASE("scene files round trip with roles") {
    Scene scene = gen_pillars(3, Frame{20, 8});
    std::string path = temp_path("scene");
    save_scene(scene, path);
    CHECK(is_scene_file(path));
    Scene loaded = load_scene(path);
    CHECK(loaded.arch == scene.arch);
    REQUIRE(loaded.pillars.size() == scene.pillars.size());
    for (std::size_t i = 0; i < scene.pillars.size(); ++i)
        CHECK(loaded.pillars[i].region == scene.pillars[i].region);
    std::remove(path.c_str());
}
