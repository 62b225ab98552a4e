#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "grounded/cells.hpp"

namespace grounded {

/// Maximal 4-connected subsets of r, ordered by least cell in row-major order.
std::vector<CellSet> connected_components(const CellSet& r);

bool is_connected(const CellSet& r);

/// The 4-connected component of r containing seed. seed must lie in r.
CellSet component_of(const CellSet& r, Cell seed);

/// The unique 4-connected component of the frame complement of r touching the
/// frame boundary (left/right column or top row) — the discrete stand-in for
/// the unbounded component of the upper halfplane. Requires the margin
/// invariant, which makes that component unique.
CellSet ext(const CellSet& r, const Frame& f);

/// True iff x is disjoint from s and from ext(s, f).
bool surrounded_by(const CellSet& x, const CellSet& s, const Frame& f);

/// The 4-connected component of region \ barrier containing the base run.
/// Grid components are already closed, so no closure step is taken. Throws
/// BaseNotSurrounded when the barrier covers base cells; full surroundedness
/// of the base is the caller's precondition (it needs a frame to decide).
CellSet cut_region(const CellSet& region, const CellSet& base, const CellSet& barrier);

/// A simple 4-path from a to b inside x whose intersection with each
/// constraint set is a contiguous stretch of the path. Mirrors the rerouting
/// construction: start from a shortest path, then for each constraint set
/// replace the stretch between the first and last hit by a path inside the
/// common region.
std::vector<Cell> simple_arc(const CellSet& x, Cell a, Cell b, const std::vector<CellSet>& ys);

struct SimplicityReport {
    bool ok = true;
    std::vector<std::size_t> witness;  // indices of the smallest violating subfamily
    CellSet intersection;              // its disconnected common intersection
};

/// Verifies that every subfamily with a nonempty common intersection has a
/// 4-connected intersection. Enumeration is restricted to subsets of maximal
/// cliques of the pairwise intersection graph.
SimplicityReport check_simple(const std::vector<CellSet>& sets);

/// Naive all-subfamilies oracle, exponential in |sets|; used to cross-check
/// check_simple on small families.
SimplicityReport check_simple_naive(const std::vector<CellSet>& sets);

/// Shortest 4-path between a and b inside region, or nullopt.
std::optional<std::vector<Cell>> shortest_path(const CellSet& region, Cell a, Cell b);

/// True when some cell of from can reach some cell of to inside region.
bool reachable(const CellSet& region, const CellSet& from, const CellSet& to);

}  // namespace grounded
