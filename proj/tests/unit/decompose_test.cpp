#include <doctest.h>

#include "grounded/decompose.hpp"
#include "grounded/generators.hpp"
#include "grounded/topology.hpp"

using namespace grounded;

namespace {

GroundedSet shape(const std::string& id, std::vector<Cell> cells) {
    return make_grounded(id, CellSet(std::move(cells)));
}

std::vector<Cell> column(int x, int y0, int y1) {
    std::vector<Cell> cells;
    for (int y = y0; y <= y1; ++y) cells.push_back({x, y});
    return cells;
}

std::vector<Cell> hrun(int x0, int x1, int y) {
    std::vector<Cell> cells;
    for (int x = x0; x <= x1; ++x) cells.push_back({x, y});
    return cells;
}

std::vector<Cell> glue(std::initializer_list<std::vector<Cell>> parts) {
    std::vector<Cell> cells;
    for (const auto& p : parts) cells.insert(cells.end(), p.begin(), p.end());
    return cells;
}

// six-member chain: consecutive members intersect, nothing else does
GroundedFamily chain6() {
    std::vector<GroundedSet> members;
    for (int i = 0; i < 6; ++i)
        members.push_back(shape("L" + std::to_string(i + 1),
                                glue({column(3 * i + 1, 0, 1), hrun(3 * i + 1, 3 * i + 4, 1)})));
    return make_family(std::move(members), Frame{24, 5});
}

}  // namespace

TEST_CASE("ladder: six-member chain with a=b=0 keeps the even positions") {
    GroundedFamily f = chain6();
    LadderResult ladder = ladder_split(f, 0, 0);
    CHECK(ladder.parity == 0);
    CHECK(ladder.h_ids == std::vector<std::string>({"L1", "L3", "L5"}));
    CHECK(ladder.blocks.size() == 6);  // singleton blocks
}

TEST_CASE("ladder: precondition failure") {
    GroundedFamily f = chain6();  // chi = 2
    CHECK_THROWS_AS(ladder_split(f, 1, 0), Error);  // needs chi > 2
}

TEST_CASE("ladder: postconditions on a chi-3 instance") {
    auto [f, witness] = gen_clique(3, Frame{12, 8});
    LadderResult ladder = ladder_split(f, 1, 0);
    GroundedFamily h = subfamily_by_id(f, ladder.h_ids);
    CHECK(chi_exact(build_graph(h)).chi > 1);
    IntersectionGraph hg = build_graph(h);
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = i + 1; j < h.size(); ++j)
            if (hg.adjacent(i, j)) {
                GroundedFamily gap = restrict_between(f, h.member(i).id, h.member(j).id);
                CHECK(chi_exact(build_graph(gap)).chi > 0);
            }
}

TEST_CASE("layers: chain gives the first layer, singleton has none") {
    LayerResult layer = externally_supported(chain6(), 0);
    CHECK(layer.distance == 1);
    CHECK(layer.layer.ids() == std::vector<std::string>({"L2"}));

    GroundedFamily single = make_family({shape("A", column(2, 0, 2))}, Frame{8, 6});
    CHECK_THROWS_AS(externally_supported(single, 0), Error);
}

TEST_CASE("layers: the max-chi component wins") {
    // a 3-clique on the left, a 2-clique far right
    GroundedFamily triangle = gen_clique(3, Frame{34, 9}).first;
    std::vector<GroundedSet> members(triangle.members().begin(), triangle.members().end());
    auto [twin, w2] = gen_clique(2, Frame{10, 6});
    for (const auto& m : twin.members())
        members.push_back(make_grounded(m.id + "R", m.region.translated(20, 0)));
    GroundedFamily f = make_family(std::move(members), Frame{34, 9});

    LayerResult layer = externally_supported(f, 1);
    CHECK(layer.distance == 1);
    // layer comes from the triangle component, supported by its first member
    for (const auto& id : layer.layer.ids()) CHECK(id.back() != 'R');
    CHECK(chi_exact(build_graph(layer.layer)).chi > 1);
}

TEST_CASE("clique interior: twin arch") {
    auto [f, witness] = gen_clique(2, Frame{11, 6});
    std::vector<GroundedSet> clique(f.members().begin(), f.members().end());
    CellSet interior = clique_interior(clique, f.frame());
    CHECK(interior == CellSet({{2, 0}, {3, 0}, {4, 0}, {2, 1}, {3, 1}, {4, 1}}));
}

TEST_CASE("clique interior: adjacent bases give the empty region") {
    auto m1 = shape("A", {{1, 0}, {2, 0}, {2, 1}, {3, 1}});
    auto m2 = shape("B", {{3, 0}, {4, 0}, {3, 1}});
    CHECK(m1.region.intersects(m2.region));
    CHECK(clique_interior({m1, m2}, Frame{8, 5}).empty());
}

TEST_CASE("clique interior: invariants over canonical cliques") {
    for (int k = 2; k <= 5; ++k) {
        Frame frame{2 * k + 6, k + 6};
        auto [f, witness] = gen_clique(k, frame);
        std::vector<GroundedSet> clique(f.members().begin(), f.members().end());
        CellSet interior = clique_interior(clique, frame);
        REQUIRE_FALSE(interior.empty());
        CellSet all = f.union_cells();
        CHECK(interior.disjoint(all));
        CHECK(interior.disjoint(ext(all, frame)));
        CHECK(interior.contains({2, 0}));
    }
    CHECK_THROWS_AS(clique_interior({shape("A", column(1, 0, 2))}, Frame{8, 5}), Error);
}

TEST_CASE("find_bracket: generator roles are recovered") {
    for (int k = 2; k <= 4; ++k) {
        Frame frame{2 * k + 8, k + 8};
        auto [f, sketch] = gen_bracket(k, frame);
        auto witness = find_bracket(f, k);
        REQUIRE(witness.has_value());
        CHECK(witness->clique_ids == sketch.clique_ids);
        CHECK(witness->support_id == sketch.support_id);
        CHECK(witness->clique_before_support);
        CHECK_FALSE(witness->int_clique.empty());
        CHECK_FALSE(witness->int_bracket.empty());
        // interior invariants
        CellSet all = f.union_cells();
        CHECK(witness->int_bracket.disjoint(all));
        CHECK(witness->int_bracket.disjoint(ext(all, frame)));
        CHECK(witness->int_bracket.disjoint(witness->int_clique));
    }
}

TEST_CASE("find_bracket: none without a clique or a reaching support") {
    std::vector<GroundedSet> disjoint;
    for (int i = 0; i < 4; ++i)
        disjoint.push_back(shape("D" + std::to_string(i), column(2 * i + 1, 0, 1)));
    CHECK_FALSE(find_bracket(make_family(disjoint, Frame{12, 5}), 2).has_value());

    // twin arch plus a member outside that never reaches the interior
    auto [twin, witness] = gen_clique(2, Frame{12, 6});
    std::vector<GroundedSet> members(twin.members().begin(), twin.members().end());
    members.push_back(shape("Z", column(8, 0, 2)));
    CHECK_FALSE(find_bracket(make_family(members, Frame{12, 6}), 2).has_value());
}

namespace {

// Bracket fixture with a wide interior: a probe can reach the exterior while
// avoiding the support.
struct CorFixture {
    GroundedSet k1 = shape("K1", glue({column(1, 0, 4), hrun(1, 5, 4)}));
    GroundedSet k2 = shape("K2", glue({column(7, 0, 4), hrun(3, 7, 4)}));
    GroundedSet support = shape("S", glue({column(9, 0, 6), hrun(2, 9, 6), column(2, 2, 5)}));
    GroundedSet probe = shape(
        "X", glue({column(8, 0, 5), hrun(6, 7, 5), column(6, 1, 4), hrun(2, 5, 1),
                   column(1, 1, 7), {{2, 7}}}));
    Frame frame{12, 10};
};

}  // namespace

TEST_CASE("corollaries: constructed piercing instance") {
    CorFixture fx;
    // fixture sanity: a valid simple family, probe avoids the support
    make_family({fx.k1, fx.k2, fx.support, fx.probe}, fx.frame);
    CHECK(fx.probe.region.disjoint(fx.support.region));

    PiercingVerdict bracket = check_cor_bracket(fx.probe, {fx.k1, fx.k2}, fx.support, fx.frame);
    CHECK(bracket.hypotheses_hold);
    CHECK(bracket.conclusion_holds);

    PiercingVerdict clique = check_cor_clique(fx.probe, {fx.k1, fx.k2}, fx.frame);
    CHECK(clique.hypotheses_hold);
    CHECK(clique.conclusion_holds);
}

TEST_CASE("corollaries: vacuous and error cases") {
    CorFixture fx;
    GroundedSet inside = shape("I", {{4, 0}, {4, 1}});
    PiercingVerdict v = check_cor_clique(inside, {fx.k1, fx.k2}, fx.frame);
    CHECK_FALSE(v.hypotheses_hold);

    GroundedSet impostor = shape("K1", column(3, 0, 1));
    CHECK_THROWS_AS(check_cor_clique(impostor, {fx.k1, fx.k2}, fx.frame), Error);
    CHECK_THROWS_AS(check_cor_bracket(impostor, {fx.k1, fx.k2}, fx.support, fx.frame), Error);
}

namespace {

// Bootstrap fixture: the canonical 5-clique with two loose members in the
// baseline gaps.
GroundedFamily bootstrap_family() {
    auto [clique, witness] = gen_clique(5, Frame{14, 9});
    std::vector<GroundedSet> members(clique.members().begin(), clique.members().end());
    members.push_back(shape("g1", {{4, 0}}));
    members.push_back(shape("g2", {{8, 0}}));
    return make_family(std::move(members), Frame{14, 9});
}

// Step fixture: two big intersecting arches enclose a twin arch, an inner
// member, a connector reaching the inner member, and padding on both flanks;
// one support enters from the right.
struct StepFixture {
    GroundedSet a1 = shape("A1", glue({column(1, 0, 8), hrun(1, 25, 8)}));
    GroundedSet a2 = shape("A2", glue({column(27, 0, 9), hrun(2, 27, 9), column(2, 8, 9)}));
    GroundedSet pad1 = shape("pad1", glue({column(4, 0, 1), hrun(4, 8, 1)}));
    GroundedSet t1 = shape("T1", glue({column(8, 0, 2), hrun(8, 11, 2)}));
    GroundedSet inner = shape("P", {{9, 0}, {10, 0}, {9, 1}, {10, 1}});
    GroundedSet t2 = shape("C", glue({column(12, 0, 2), {{11, 2}}}));
    GroundedSet connector =
        shape("C2", glue({column(14, 0, 4), hrun(10, 14, 4), column(10, 1, 3)}));
    GroundedSet pad2 = shape("pad2", glue({column(16, 0, 1), hrun(14, 16, 1)}));
    GroundedSet support = shape(
        "S1", glue({column(30, 0, 11), hrun(26, 30, 11), column(26, 5, 10), hrun(9, 25, 5),
                    column(9, 1, 4)}));
    Frame frame{33, 14};

    GroundedFamily full() const {
        return make_family({a1, a2, pad1, t1, inner, t2, connector, pad2, support}, frame);
    }
};

}  // namespace

TEST_CASE("scaffold bootstrap on a clique-heavy fixture") {
    GroundedFamily f0 = bootstrap_family();
    CHECK(chi_exact(build_graph(f0)).chi == 5);

    ScaffoldThresholds t;
    t.ladder_a = 1;
    t.ladder_b = 1;
    t.chi_output_min = 0;
    ScaffoldState state = scaffold_bootstrap(f0, t);
    CHECK(state.scaffold_ids == std::vector<std::string>({"K1", "K5"}));
    CHECK(state.working_ids == std::vector<std::string>({"g1", "g2"}));

    ScaffoldAudit audit = audit_scaffold(state, f0, t);
    CHECK(audit.surrounded);
    CHECK(audit.chi_ok);
    CHECK(audit.all());
}

TEST_CASE("scaffold step completes on the crafted fixture") {
    StepFixture fx;
    GroundedFamily full = fx.full();
    CHECK(omega_exact(build_graph(full)).size == 2);

    ScaffoldState state;
    state.level = 0;
    state.scaffold_ids = {"A1", "A2"};
    state.working_ids = {"pad1", "T1", "P", "C", "C2", "pad2"};

    ScaffoldThresholds t;
    t.chi_input_min = 0;
    t.chi_output_min = 0;
    t.removal_bound = 16;
    t.edge_target = 1;
    t.ladder_a = 0;
    t.ladder_b = 0;

    ScaffoldState next = scaffold_step(state, full, full, 2, t);
    CHECK(next.level == 1);
    CHECK(next.support_ids == std::vector<std::string>({"S1"}));
    CHECK(next.working_ids == std::vector<std::string>({"pad2"}));
    // scaffold grew by the clique and the support
    std::vector<std::string> expected{"A1", "A2", "T1", "C", "S1"};
    CHECK(next.scaffold_ids == expected);

    ScaffoldAudit audit = audit_scaffold(next, full, t);
    CHECK(audit.surrounded);
    CHECK(audit.chi_ok);
    CHECK(audit.supports_intersect);
    CHECK(audit.piercing_ok);

    // provenance records every stage
    std::string log = provenance_to_jsonl(next.log);
    for (const char* stage : {"cuts", "component", "split", "ladder", "clique", "inner",
                              "support", "emit"})
        CHECK(log.find(std::string("\"stage\": \"") + stage + "\"") != std::string::npos);
}

TEST_CASE("scaffold step: infeasible stages are reported, not fabricated") {
    StepFixture fx;
    GroundedFamily full = fx.full();
    ScaffoldState state;
    state.scaffold_ids = {"A1", "A2"};
    state.working_ids = {"pad1", "T1", "P", "C", "C2", "pad2"};

    ScaffoldThresholds t;
    t.edge_target = 1;
    t.chi_input_min = 7;  // unreachable chi precondition
    bool threw = false;
    try {
        scaffold_step(state, full, full, 2, t);
    } catch (const Error& e) {
        threw = e.code() == Errc::step_infeasible &&
                std::string(e.what()).find("precondition") != std::string::npos;
    }
    CHECK(threw);

    t.chi_input_min = 0;
    t.edge_target = 3;  // flanks can never reach chi 3
    bool threw_split = false;
    try {
        scaffold_step(state, full, full, 2, t);
    } catch (const Error& e) {
        threw_split = e.code() == Errc::step_infeasible;
    }
    CHECK(threw_split);
}

TEST_CASE("thresholds derive from the bound table") {
    BoundTable table = compute_bounds(3);
    ScaffoldThresholds t0 = thresholds_from_bounds(table, 2, 0);
    CHECK(t0.ladder_a == 1);
    CHECK(t0.ladder_b == 90 + 2 * 1);  // delta_{2,0} + 2 xi_1
    CHECK(t0.chi_output_min == 90);

    ScaffoldThresholds t1 = thresholds_from_bounds(table, 2, 1);
    CHECK(t1.chi_input_min == 90);
    CHECK(t1.chi_output_min == 30);
    CHECK(t1.ladder_a == 1);
    CHECK(t1.ladder_b == 2);
    CHECK(t1.edge_target == 30 + 3 * 1 + 1);
    CHECK(t1.removal_bound == 16);
}
