#include "grounded/topology.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

namespace grounded {

namespace {

// Index map for flood fills over arbitrary cell sets.
struct CellIndex {
    explicit CellIndex(const CellSet& s) {
        map.reserve(s.size() * 2);
        for (std::size_t i = 0; i < s.cells().size(); ++i) map.emplace(s.cells()[i], i);
    }
    std::unordered_map<Cell, std::size_t, CellHash> map;

    int find(Cell c) const {
        auto it = map.find(c);
        return it == map.end() ? -1 : int(it->second);
    }
};

// BFS from the given seed indices; marks visited; returns visited cells sorted.
CellSet flood(const CellSet& domain, const CellIndex& index, std::vector<char>& visited,
              std::deque<std::size_t> frontier) {
    std::vector<Cell> out;
    for (std::size_t i : frontier) {
        if (!visited[i]) {
            visited[i] = 1;
            out.push_back(domain.cells()[i]);
        }
    }
    // out currently holds seeds; grow breadth-first.
    std::size_t head = 0;
    while (head < out.size()) {
        Cell c = out[head++];
        for (Cell nb : neighbors4(c)) {
            int j = index.find(nb);
            if (j >= 0 && !visited[j]) {
                visited[j] = 1;
                out.push_back(nb);
            }
        }
    }
    return CellSet(std::move(out));
}

}  // namespace

std::vector<CellSet> connected_components(const CellSet& r) {
    std::vector<CellSet> parts;
    if (r.empty()) return parts;
    CellIndex index(r);
    std::vector<char> visited(r.size(), 0);
    // Cells are row-major sorted, so scanning in order yields components
    // ordered by their least cell.
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (visited[i]) continue;
        parts.push_back(flood(r, index, visited, {i}));
    }
    return parts;
}

bool is_connected(const CellSet& r) {
    if (r.empty()) return false;
    CellIndex index(r);
    std::vector<char> visited(r.size(), 0);
    return flood(r, index, visited, {0}).size() == r.size();
}

CellSet component_of(const CellSet& r, Cell seed) {
    CellIndex index(r);
    int i = index.find(seed);
    if (i < 0) fail(Errc::validation, "component seed not in set");
    std::vector<char> visited(r.size(), 0);
    return flood(r, index, visited, {std::size_t(i)});
}

CellSet ext(const CellSet& r, const Frame& f) {
    if (!f.valid()) fail(Errc::frame_too_small, "empty frame");
    if (!f.margin_ok(r))
        fail(Errc::frame_too_small,
             "set does not keep a 1-cell margin inside frame " + f.describe());
    std::vector<Cell> free_cells;
    free_cells.reserve(std::size_t(f.width) * f.height - r.size());
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            if (!r.contains({x, y})) free_cells.push_back({x, y});
    CellSet complement(std::move(free_cells));

    CellIndex index(complement);
    std::vector<char> visited(complement.size(), 0);
    std::deque<std::size_t> seeds;
    for (std::size_t i = 0; i < complement.size(); ++i) {
        Cell c = complement.cells()[i];
        // The halfplane is unbounded to the left, right and top only.
        if (c.x == 0 || c.x == f.width - 1 || c.y == f.height - 1) seeds.push_back(i);
    }
    return flood(complement, index, visited, std::move(seeds));
}

bool surrounded_by(const CellSet& x, const CellSet& s, const Frame& f) {
    if (!f.margin_ok(x))
        fail(Errc::frame_too_small, "query set does not fit frame " + f.describe());
    if (x.intersects(s)) return false;
    return !x.intersects(ext(s, f));
}

CellSet cut_region(const CellSet& region, const CellSet& base, const CellSet& barrier) {
    if (base.empty()) fail(Errc::base_not_surrounded, "region has no base");
    if (base.intersects(barrier))
        fail(Errc::base_not_surrounded, "barrier covers base cells");
    CellSet remainder = region - barrier;
    return component_of(remainder, base.cells().front());
}

namespace {

std::optional<std::vector<Cell>> bfs_path(const CellSet& region, Cell a, Cell b) {
    CellIndex index(region);
    int ia = index.find(a), ib = index.find(b);
    if (ia < 0 || ib < 0) return std::nullopt;
    std::vector<int> parent(region.size(), -2);
    std::deque<std::size_t> queue{std::size_t(ia)};
    parent[ia] = -1;
    while (!queue.empty()) {
        std::size_t i = queue.front();
        queue.pop_front();
        if (int(i) == ib) break;
        for (Cell nb : neighbors4(region.cells()[i])) {
            int j = index.find(nb);
            if (j >= 0 && parent[j] == -2) {
                parent[j] = int(i);
                queue.push_back(std::size_t(j));
            }
        }
    }
    if (parent[ib] == -2) return std::nullopt;
    std::vector<Cell> path;
    for (int i = ib; i != -1; i = parent[i]) path.push_back(region.cells()[i]);
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace

std::optional<std::vector<Cell>> shortest_path(const CellSet& region, Cell a, Cell b) {
    return bfs_path(region, a, b);
}

bool reachable(const CellSet& region, const CellSet& from, const CellSet& to) {
    if (from.empty() || to.empty()) return false;
    CellIndex index(region);
    std::vector<char> visited(region.size(), 0);
    std::deque<std::size_t> seeds;
    for (const Cell& c : from.cells()) {
        int i = index.find(c);
        if (i >= 0) seeds.push_back(std::size_t(i));
    }
    if (seeds.empty()) return false;
    CellSet reached = flood(region, index, visited, std::move(seeds));
    return reached.intersects(to);
}

std::vector<Cell> simple_arc(const CellSet& x, Cell a, Cell b, const std::vector<CellSet>& ys) {
    if (!x.contains(a) || !x.contains(b))
        fail(Errc::validation, "simple_arc endpoints must lie in the host set");

    std::vector<CellSet> restricted;
    restricted.reserve(ys.size());
    for (const CellSet& y : ys) restricted.push_back(x & y);
    for (std::size_t i = 0; i < restricted.size(); ++i) {
        if (restricted[i].empty()) continue;
        if (!is_connected(restricted[i]))
            throw Error(Errc::simplicity_violated,
                        "constraint set " + std::to_string(i) +
                            " meets the host in a disconnected region");
        for (std::size_t j = i + 1; j < restricted.size(); ++j)
            if (restricted[i].intersects(restricted[j]))
                throw Error(Errc::simplicity_violated,
                            "constraint sets " + std::to_string(i) + " and " +
                                std::to_string(j) + " overlap inside the host");
    }

    auto path = bfs_path(x, a, b);
    if (!path) fail(Errc::not_connected, "no path between the endpoints inside the host set");
    std::vector<Cell> arc = *path;

    for (const CellSet& region : restricted) {
        if (region.empty()) continue;
        int first = -1, last = -1;
        for (std::size_t i = 0; i < arc.size(); ++i) {
            if (region.contains(arc[i])) {
                if (first < 0) first = int(i);
                last = int(i);
            }
        }
        if (first < 0 || first == last) continue;
        auto mid = bfs_path(region, arc[first], arc[last]);
        // region is 4-connected (checked above), so a path exists.
        std::vector<Cell> next(arc.begin(), arc.begin() + first);
        next.insert(next.end(), mid->begin(), mid->end());
        next.insert(next.end(), arc.begin() + last + 1, arc.end());
        arc = std::move(next);
    }
    return arc;
}

namespace {

bool subfamily_ok(const std::vector<CellSet>& sets, const std::vector<std::size_t>& idx,
                  CellSet* bad_intersection) {
    CellSet common = sets[idx[0]];
    for (std::size_t i = 1; i < idx.size() && !common.empty(); ++i) common = common & sets[idx[i]];
    if (common.empty() || is_connected(common)) return true;
    if (bad_intersection) *bad_intersection = common;
    return false;
}

std::vector<std::vector<std::size_t>> maximal_cliques(const std::vector<std::vector<char>>& adj) {
    std::size_t n = adj.size();
    std::vector<std::vector<std::size_t>> cliques;
    std::vector<std::size_t> r, p(n), x;
    for (std::size_t i = 0; i < n; ++i) p[i] = i;

    // Bron-Kerbosch with greedy pivoting; candidate lists stay sorted, so the
    // output order is deterministic.
    std::function<void(std::vector<std::size_t>&, std::vector<std::size_t>,
                       std::vector<std::size_t>)>
        expand = [&](std::vector<std::size_t>& rr, std::vector<std::size_t> pp,
                     std::vector<std::size_t> xx) {
            if (pp.empty() && xx.empty()) {
                cliques.push_back(rr);
                return;
            }
            std::size_t pivot = 0, best = 0;
            bool have = false;
            for (std::size_t u : pp) {
                std::size_t deg = 0;
                for (std::size_t v : pp) deg += adj[u][v];
                if (!have || deg > best) have = true, best = deg, pivot = u;
            }
            for (std::size_t u : xx) {
                std::size_t deg = 0;
                for (std::size_t v : pp) deg += adj[u][v];
                if (!have || deg > best) have = true, best = deg, pivot = u;
            }
            std::vector<std::size_t> candidates;
            for (std::size_t v : pp)
                if (!adj[pivot][v]) candidates.push_back(v);
            for (std::size_t v : candidates) {
                std::vector<std::size_t> p2, x2;
                for (std::size_t w : pp)
                    if (adj[v][w]) p2.push_back(w);
                for (std::size_t w : xx)
                    if (adj[v][w]) x2.push_back(w);
                rr.push_back(v);
                expand(rr, std::move(p2), std::move(x2));
                rr.pop_back();
                pp.erase(std::find(pp.begin(), pp.end(), v));
                xx.insert(std::lower_bound(xx.begin(), xx.end(), v), v);
            }
        };
    expand(r, std::move(p), std::move(x));
    return cliques;
}

}  // namespace

SimplicityReport check_simple(const std::vector<CellSet>& sets) {
    SimplicityReport report;
    std::size_t n = sets.size();
    // Singleton subfamilies: each nonempty member must itself be connected.
    for (std::size_t i = 0; i < n; ++i) {
        if (!sets[i].empty() && !is_connected(sets[i])) {
            report.ok = false;
            report.witness = {i};
            report.intersection = sets[i];
            return report;
        }
    }
    if (n < 2) return report;

    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (sets[i].intersects(sets[j])) adj[i][j] = adj[j][i] = 1;

    // Any subfamily with a common cell is a clique of the pairwise graph, so
    // subsets of maximal cliques cover everything that can fail.
    auto cliques = maximal_cliques(adj);
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t size = 2;; ++size) {
        bool any = false;
        for (const auto& clique : cliques) {
            if (clique.size() < size) continue;
            any = true;
            std::vector<std::size_t> pick(size);
            std::function<bool(std::size_t, std::size_t)> combos = [&](std::size_t start,
                                                                       std::size_t depth) {
                if (depth == size) {
                    auto key = pick;
                    std::sort(key.begin(), key.end());
                    if (!seen.insert(key).second) return true;
                    CellSet bad;
                    if (!subfamily_ok(sets, key, &bad)) {
                        report.ok = false;
                        report.witness = key;
                        report.intersection = bad;
                        return false;
                    }
                    return true;
                }
                for (std::size_t i = start; i + (size - depth) <= clique.size(); ++i) {
                    pick[depth] = clique[i];
                    if (!combos(i + 1, depth + 1)) return false;
                }
                return true;
            };
            if (!combos(0, 0)) return report;
        }
        if (!any) break;
    }
    return report;
}

SimplicityReport check_simple_naive(const std::vector<CellSet>& sets) {
    SimplicityReport report;
    std::size_t n = sets.size();
    for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t(1) << i)) idx.push_back(i);
        if (idx.size() == 1 && sets[idx[0]].empty()) continue;
        CellSet bad;
        if (!subfamily_ok(sets, idx, &bad)) {
            if (report.ok || idx.size() < report.witness.size()) {
                report.ok = false;
                report.witness = idx;
                report.intersection = bad;
            }
        }
    }
    return report;
}

}  // namespace grounded
