#include <doctest.h>

#include <gmpxx.h>

#include "grounded/bounds.hpp"
#include "grounded/generators.hpp"
#include "grounded/graph.hpp"
#include "grounded/rng.hpp"

using namespace grounded;

namespace {

IntersectionGraph random_graph(Rng& rng, int n, double p) {
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.chance(p)) edges.emplace_back(i, j);
    return IntersectionGraph(std::move(ids), std::move(edges));
}

IntersectionGraph cycle(int n) {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        ids.push_back(std::to_string(i));
        edges.emplace_back(i, (i + 1) % n);
    }
    return IntersectionGraph(std::move(ids), std::move(edges));
}

IntersectionGraph complete(int n) {
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) {
        ids.push_back(std::to_string(i));
        for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return IntersectionGraph(std::move(ids), std::move(edges));
}

}  // namespace

TEST_CASE("build_graph on families") {
    auto [twin, witness] = gen_clique(2, Frame{8, 6});
    IntersectionGraph g = build_graph(twin);
    CHECK(g.edge_count() == 1);

    RandomFamilyParams params;
    params.n = 12;
    GroundedFamily fam = gen_random(7, params);
    IntersectionGraph built = build_graph(fam);
    // brute-force cell-sharing oracle
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
            bool share = false;
            for (const Cell& c : fam.member(i).region.cells())
                if (fam.member(j).region.contains(c)) share = true;
            CHECK(built.adjacent(i, j) == share);
        }
}

TEST_CASE("omega_exact: examples") {
    CHECK(omega_exact(IntersectionGraph{}).size == 0);
    CHECK(omega_exact(complete(4)).size == 4);
    auto five = omega_exact(cycle(5));
    CHECK(five.size == 2);
    CHECK(omega_oracle(cycle(5)) == 2);
    // witness is a clique
    IntersectionGraph k4 = complete(4);
    auto w = omega_exact(k4);
    for (std::size_t i = 0; i < w.indices.size(); ++i)
        for (std::size_t j = i + 1; j < w.indices.size(); ++j)
            CHECK(k4.adjacent(w.indices[i], w.indices[j]));
}

TEST_CASE("chi_exact: examples") {
    CHECK(chi_exact(IntersectionGraph{}).chi == 0);
    CHECK(chi_exact(complete(4)).chi == 4);
    CHECK(chi_exact(cycle(5)).chi == 3);
    ChiResult r = chi_exact(cycle(5));
    CHECK(r.coloring.proper_on(cycle(5)));
}

TEST_CASE("solvers agree with exhaustive oracles on random graphs") {
    Rng rng(42);
    for (int trial = 0; trial < 150; ++trial) {
        int n = 1 + int(rng.below(8));
        IntersectionGraph g = random_graph(rng, n, 0.15 + 0.7 * double(trial % 10) / 10);
        CHECK(chi_exact(g).chi == chi_oracle(g));
        CHECK(omega_exact(g).size == omega_oracle(g));
        CHECK(chi_exact(g).chi >= omega_exact(g).size);
    }
}

TEST_CASE("chi budget can be exhausted") {
    Rng rng(9);
    IntersectionGraph g = random_graph(rng, 30, 0.5);
    ChiOptions opts;
    opts.node_budget = 3;
    bool threw = false;
    try {
        chi_exact(g, opts);
    } catch (const Error& e) {
        threw = e.code() == Errc::budget_exceeded;
    }
    CHECK(threw);
}

TEST_CASE("pillar order coloring") {
    auto strip = [](int x, int w, int h) {
        std::vector<Cell> cells;
        for (int i = 0; i < w; ++i)
            for (int y = 0; y <= h; ++y) cells.push_back({x + i, y});
        return CellSet(std::move(cells));
    };
    SUBCASE("pairwise disjoint cuts take one color") {
        IndexColoring c = pillar_order_coloring({strip(0, 1, 3), strip(4, 1, 3), strip(8, 1, 3)});
        CHECK(c.palette == 1);
    }
    SUBCASE("pairwise intersecting cuts form an antichain") {
        // columns with long arms at distinct heights, all overlapping
        std::vector<CellSet> cuts;
        for (int i = 0; i < 3; ++i) {
            std::vector<Cell> cells;
            for (int y = 0; y <= 4; ++y) cells.push_back({2 * i, y});
            for (int x = 0; x <= 6; ++x) cells.push_back({x, 2 + i});
            cuts.push_back(CellSet(std::move(cells)));
        }
        IndexColoring c = pillar_order_coloring(cuts);
        CHECK(c.palette == 3);
    }
    SUBCASE("order violations are detected") {
        // R1 < R2 and R2 < R3 but R1 meets R3 (no full-height column between)
        CellSet r1({{0, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}, {4, 1}});
        CellSet r2({{2, 0}});
        CellSet r3({{4, 0}, {4, 1}});
        CHECK_THROWS_AS(pillar_order_coloring({r1, r2, r3}), Error);
    }
}

TEST_CASE("pillar order coloring matches the exact chromatic number on scenes") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        PillarFamilyParams params;
        params.pillars = 3 + int(seed % 3);
        params.arch_height = params.pillars + 2;
        Scene scene = gen_pillar_family(seed, params);
        std::vector<CellSet> cuts;
        std::vector<std::string> ids;
        for (const auto& r : scene.pillars) {
            cuts.push_back(cut(r, scene.arch));
            ids.push_back(r.id);
        }
        IndexColoring coloring = pillar_order_coloring(cuts);
        IntersectionGraph g = build_graph(ids, cuts);
        CHECK(coloring.palette == chi_exact(g).chi);
        CHECK(coloring.palette <= omega_exact(g).size);
    }
}

TEST_CASE("planar_color: examples") {
    // path of five vertices: two colors
    IntersectionGraph path({"a", "b", "c", "d", "e"}, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(planar_color(path).palette == 2);
    CHECK(planar_color(complete(4)).palette == 4);

    // dodecahedron graph as the generalized Petersen graph GP(10,2)
    std::vector<std::string> ids;
    for (int i = 0; i < 20; ++i) ids.push_back(std::to_string(i));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 10; ++i) {
        edges.emplace_back(i, (i + 1) % 10);            // outer cycle
        edges.emplace_back(i, 10 + i);                  // spokes
        edges.emplace_back(10 + i, 10 + (i + 2) % 10);  // inner star
    }
    IntersectionGraph dodeca(ids, edges);
    Coloring c = planar_color(dodeca);
    CHECK(c.palette <= 4);
    CHECK(c.proper_on(dodeca));
}

TEST_CASE("planar_color: defensive checks") {
    CHECK_THROWS_AS(planar_color(complete(5)), Error);  // K5 minor
    // K3,3: passes the edge bound but not the minor search
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 6; ++j) edges.emplace_back(i, j);
    IntersectionGraph k33({"0", "1", "2", "3", "4", "5"}, edges);
    bool threw = false;
    try {
        planar_color(k33);
    } catch (const Error& e) {
        threw = e.code() == Errc::not_planar;
    }
    CHECK(threw);
}

TEST_CASE("bound table: paper-stated and derived values") {
    BoundTable t = compute_bounds(4);
    CHECK(t.xi[1].to_string() == "1");
    CHECK(t.beta[2].to_string() == "16");
    CHECK(t.delta[2][2].to_string() == "0");
    CHECK(t.delta[2][1].to_string() == "30");
    CHECK(t.delta[2][0].to_string() == "90");
    CHECK(t.xi[2].to_string() == "1488");
    for (int k = 2; k <= 4; ++k) CHECK(t.delta[std::size_t(k)][std::size_t(k)].is_zero());
    for (int k = 2; k <= 4; ++k) CHECK(t.xi[std::size_t(k - 1)] < t.xi[std::size_t(k)]);
}

TEST_CASE("bound table reproduces under an independent arithmetic path") {
    // GMP evaluation of the same recurrence
    int k_max = 6;
    BoundTable t = compute_bounds(k_max);
    std::vector<mpz_class> xi(std::size_t(k_max) + 1);
    xi[1] = 1;
    for (int k = 2; k <= k_max; ++k) {
        mpz_class prev = xi[std::size_t(k - 1)];
        mpz_class beta = 8 * k * prev * prev;
        CHECK(beta.get_str() == t.beta[std::size_t(k)].to_string());
        std::vector<mpz_class> delta(std::size_t(k) + 1);
        delta[std::size_t(k)] = 0;
        for (int j = k - 1; j >= 0; --j)
            delta[std::size_t(j)] = beta + 2 * delta[std::size_t(j) + 1] +
                                    2 * prev * (k * prev + k + 2) + 2;
        for (int j = 0; j <= k; ++j)
            CHECK(delta[std::size_t(j)].get_str() ==
                  t.delta[std::size_t(k)][std::size_t(j)].to_string());
        mpz_class xi_k = (delta[0] + 2 * prev + 1);
        mpz_class pow = 1;
        for (int e = 0; e < k + 2; ++e) pow *= 2;
        xi[std::size_t(k)] = pow * xi_k;
        CHECK(xi[std::size_t(k)].get_str() == t.xi[std::size_t(k)].to_string());
    }
}

TEST_CASE("big integer arithmetic against native wide integers") {
    Rng rng(8);
    for (int trial = 0; trial < 200; ++trial) {
        std::uint64_t a = rng.next() >> (trial % 32);
        std::uint64_t b = rng.next() >> (trial % 32);
        unsigned __int128 sum = (unsigned __int128)a + b;
        unsigned __int128 prod = (unsigned __int128)a * b;
        auto to_string_128 = [](unsigned __int128 v) {
            if (!v) return std::string("0");
            std::string s;
            while (v) {
                s.insert(s.begin(), char('0' + int(v % 10)));
                v /= 10;
            }
            return s;
        };
        CHECK((BigInt(a) + BigInt(b)).to_string() == to_string_128(sum));
        CHECK((BigInt(a) * BigInt(b)).to_string() == to_string_128(prod));
        CHECK((BigInt(a) < BigInt(b)) == (a < b));
    }
    CHECK(BigInt::from_decimal("340282366920938463463374607431768211455").to_string() ==
          "340282366920938463463374607431768211455");
}

TEST_CASE("DOT export names every vertex and edge") {
    auto [twin, witness] = gen_clique(2, Frame{8, 6});
    std::string dot = to_dot(build_graph(twin));
    CHECK(dot.find("\"K1\"") != std::string::npos);
    CHECK(dot.find("\"K1\" -- \"K2\"") != std::string::npos);
}
