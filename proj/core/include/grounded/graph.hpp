#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "grounded/family.hpp"

namespace grounded {

/// Intersection graph over family member ids, kept in the base order.
class IntersectionGraph {
public:
    IntersectionGraph() = default;
    IntersectionGraph(std::vector<std::string> ids, std::vector<std::pair<int, int>> edges);

    std::size_t n() const { return ids_.size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    bool adjacent(std::size_t i, std::size_t j) const { return adj_[i][j] != 0; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    IntersectionGraph induced(const std::vector<std::size_t>& vertices) const;

private:
    std::vector<std::string> ids_;
    std::vector<std::vector<char>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

IntersectionGraph build_graph(const GroundedFamily& f);
IntersectionGraph build_graph(const std::vector<std::string>& ids,
                              const std::vector<CellSet>& regions);

struct Coloring {
    std::vector<std::string> ids;
    std::vector<int> colors;
    int palette = 0;

    int color_of(const std::string& id) const;
    bool proper_on(const IntersectionGraph& g) const;
};

struct CliqueResult {
    int size = 0;
    std::vector<std::string> witness;
    std::vector<std::size_t> indices;
};

/// Exact maximum clique (branch and bound with pivoting and coloring bound).
CliqueResult omega_exact(const IntersectionGraph& g);

struct ChiOptions {
    std::uint64_t node_budget = 4'000'000;
};

struct ChiResult {
    int chi = 0;
    Coloring coloring;
};

/// Exact chromatic number: saturation-greedy upper bound, clique lower bound,
/// then iterative-deepening branch and bound. chi of the empty graph is 0.
/// Throws BudgetExceeded when the node budget runs out.
ChiResult chi_exact(const IntersectionGraph& g, const ChiOptions& opts = {});

/// Left-endpoint greedy coloring of the base intervals; the palette equals
/// the maximum point load, i.e. the clique number of the interval graph.
Coloring interval_base_coloring(const GroundedFamily& f);
Coloring interval_base_coloring(const PiercedFamily& f);

struct IndexColoring {
    std::vector<int> colors;
    int palette = 0;
};

/// Colors cuts so that same-colored cuts are pairwise disjoint, using a
/// minimum chain cover of the strict order (left-of and disjoint). Palette is
/// bounded by the clique number of the cut intersection graph. Throws
/// OrderViolation if the relation is not transitive.
IndexColoring pillar_order_coloring(const std::vector<CellSet>& cuts);

/// Proper coloring with at most four colors by exact search. A defensive
/// planarity check (edge bound, plus a K5/K3,3 minor search on small graphs)
/// runs first. Throws NotPlanar or NotFourColorable.
Coloring planar_color(const IntersectionGraph& g);

/// Defensive planarity check only; true when nothing contradicts planarity.
bool planarity_edge_bound(const IntersectionGraph& g);

std::string to_dot(const IntersectionGraph& g);

// Exhaustive oracles for small graphs; independent of the solvers above.
int chi_oracle(const IntersectionGraph& g);    // independent-set DP, n <= 20
int omega_oracle(const IntersectionGraph& g);  // subset enumeration, n <= 20

}  // namespace grounded
