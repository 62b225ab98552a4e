#include "grounded/graph.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <sstream>

namespace grounded {

namespace {

constexpr std::size_t kMaskLimit = 64;

using Mask = std::uint64_t;

std::vector<Mask> adjacency_masks(const IntersectionGraph& g) {
    if (g.n() > kMaskLimit)
        fail(Errc::solver_too_large, "solver supports at most 64 vertices, got " +
                                         std::to_string(g.n()));
    std::vector<Mask> adj(g.n(), 0);
    for (auto [a, b] : g.edges()) {
        adj[a] |= Mask(1) << b;
        adj[b] |= Mask(1) << a;
    }
    return adj;
}

}  // namespace

IntersectionGraph::IntersectionGraph(std::vector<std::string> ids,
                                     std::vector<std::pair<int, int>> edges)
    : ids_(std::move(ids)), edges_(std::move(edges)) {
    adj_.assign(ids_.size(), std::vector<char>(ids_.size(), 0));
    for (auto& [a, b] : edges_) {
        if (a > b) std::swap(a, b);
        adj_[a][b] = adj_[b][a] = 1;
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

IntersectionGraph IntersectionGraph::induced(const std::vector<std::size_t>& vertices) const {
    std::vector<std::size_t> vs = vertices;
    std::sort(vs.begin(), vs.end());
    std::vector<std::string> ids;
    ids.reserve(vs.size());
    for (std::size_t v : vs) ids.push_back(ids_[v]);
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            if (adjacent(vs[i], vs[j])) edges.emplace_back(int(i), int(j));
    return IntersectionGraph(std::move(ids), std::move(edges));
}

IntersectionGraph build_graph(const GroundedFamily& f) {
    return build_graph(f.ids(), f.regions());
}

IntersectionGraph build_graph(const std::vector<std::string>& ids,
                              const std::vector<CellSet>& regions) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < regions.size(); ++i)
        for (std::size_t j = i + 1; j < regions.size(); ++j)
            if (regions[i].intersects(regions[j])) edges.emplace_back(int(i), int(j));
    return IntersectionGraph(ids, std::move(edges));
}

int Coloring::color_of(const std::string& id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return colors[i];
    fail(Errc::validation, "no color for id '" + id + "'");
}

bool Coloring::proper_on(const IntersectionGraph& g) const {
    if (ids != g.ids() || colors.size() != g.n()) return false;
    int max_used = -1;
    for (int c : colors) {
        if (c < 0) return false;
        max_used = std::max(max_used, c);
    }
    if (!g.n()) return palette == 0;
    if (palette != max_used + 1) return false;
    for (auto [a, b] : g.edges())
        if (colors[a] == colors[b]) return false;
    return true;
}

CliqueResult omega_exact(const IntersectionGraph& g) {
    CliqueResult result;
    if (!g.n()) return result;
    auto adj = adjacency_masks(g);
    std::size_t n = g.n();

    std::vector<int> best;
    std::vector<int> current;

    // Tomita-style branch and bound with a greedy coloring bound.
    std::function<void(Mask)> expand = [&](Mask candidates) {
        std::vector<int> order;
        std::vector<int> color_number;
        Mask rest = candidates;
        int color = 0;
        while (rest) {
            ++color;
            Mask avail = rest;
            while (avail) {
                int v = std::countr_zero(avail);
                order.push_back(v);
                color_number.push_back(color);
                rest &= ~(Mask(1) << v);
                avail &= ~(Mask(1) << v);
                avail &= ~adj[v];
            }
        }
        Mask pool = candidates;
        for (int i = int(order.size()) - 1; i >= 0; --i) {
            if (int(current.size()) + color_number[i] <= int(best.size())) return;
            int v = order[i];
            current.push_back(v);
            Mask next = pool & adj[v];
            if (next)
                expand(next);
            else if (current.size() > best.size())
                best = current;
            current.pop_back();
            pool &= ~(Mask(1) << v);
        }
    };
    Mask all = n == kMaskLimit ? ~Mask(0) : (Mask(1) << n) - 1;
    expand(all);

    result.size = int(best.size());
    std::sort(best.begin(), best.end());
    for (int v : best) {
        result.indices.push_back(std::size_t(v));
        result.witness.push_back(g.ids()[std::size_t(v)]);
    }
    return result;
}

namespace {

// Saturation-degree greedy; returns a proper coloring, the usual upper bound.
std::vector<int> dsatur(const std::vector<Mask>& adj, std::size_t n, int* palette) {
    std::vector<int> colors(n, -1);
    std::vector<Mask> neighbor_colors(n, 0);
    int used = 0;
    for (std::size_t step = 0; step < n; ++step) {
        int pick = -1, sat = -1, deg = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (colors[v] >= 0) continue;
            int s = std::popcount(neighbor_colors[v]);
            int d = std::popcount(adj[v]);
            if (s > sat || (s == sat && d > deg)) {
                pick = int(v);
                sat = s;
                deg = d;
            }
        }
        Mask taken = neighbor_colors[pick];
        int c = std::countr_one(taken);
        colors[pick] = c;
        used = std::max(used, c + 1);
        Mask bit = Mask(1) << pick;
        for (std::size_t v = 0; v < n; ++v)
            if (adj[v] & bit) neighbor_colors[v] |= Mask(1) << c;
    }
    if (palette) *palette = used;
    return colors;
}

struct ColorSearch {
    const std::vector<Mask>& adj;
    std::size_t n;
    int target;
    std::uint64_t budget;
    std::uint64_t nodes = 0;
    std::vector<int> colors;

    bool run(const std::vector<std::size_t>& clique) {
        colors.assign(n, -1);
        int c = 0;
        for (std::size_t v : clique) colors[v] = c++;
        if (c > target) return false;
        return assign(c);
    }

    // Dynamic saturation order; colors capped at one beyond those in use.
    bool assign(int used) {
        if (++nodes > budget)
            fail(Errc::budget_exceeded,
                 "chromatic search exceeded node budget " + std::to_string(budget));
        int pick = -1, sat = -1, deg = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (colors[v] >= 0) continue;
            Mask seen = 0;
            for (std::size_t u = 0; u < n; ++u)
                if ((adj[v] >> u) & 1 && colors[u] >= 0) seen |= Mask(1) << colors[u];
            int s = std::popcount(seen);
            int d = std::popcount(adj[v]);
            if (s > sat || (s == sat && d > deg)) {
                pick = int(v);
                sat = s;
                deg = d;
            }
        }
        if (pick < 0) return true;
        Mask seen = 0;
        for (std::size_t u = 0; u < n; ++u)
            if ((adj[pick] >> u) & 1 && colors[u] >= 0) seen |= Mask(1) << colors[u];
        int limit = std::min(target - 1, used);
        for (int c = 0; c <= limit; ++c) {
            if ((seen >> c) & 1) continue;
            colors[pick] = c;
            if (assign(std::max(used, c + 1))) return true;
            colors[pick] = -1;
        }
        return false;
    }
};

}  // namespace

ChiResult chi_exact(const IntersectionGraph& g, const ChiOptions& opts) {
    ChiResult result;
    result.coloring.ids = g.ids();
    if (!g.n()) return result;

    auto adj = adjacency_masks(g);
    int greedy_palette = 0;
    std::vector<int> greedy = dsatur(adj, g.n(), &greedy_palette);
    CliqueResult clique = omega_exact(g);

    int chi = greedy_palette;
    std::vector<int> best = greedy;
    for (int t = clique.size; t < greedy_palette; ++t) {
        ColorSearch search{adj, g.n(), t, opts.node_budget};
        if (search.run(clique.indices)) {
            chi = t;
            best = search.colors;
            break;
        }
    }
    result.chi = chi;
    result.coloring.colors = std::move(best);
    result.coloring.palette = chi;
    return result;
}

Coloring interval_base_coloring(const GroundedFamily& f) {
    std::vector<std::pair<int, int>> intervals;
    for (const auto& m : f.members()) intervals.emplace_back(m.base_min_x, m.base_max_x);
    Coloring out;
    out.ids = f.ids();
    out.colors = interval_greedy_colors(intervals, &out.palette);
    return out;
}

Coloring interval_base_coloring(const PiercedFamily& f) {
    std::vector<std::pair<int, int>> intervals;
    Coloring out;
    for (const auto& m : f.members()) {
        intervals.emplace_back(m.base_min_x, m.base_max_x);
        out.ids.push_back(m.id);
    }
    out.colors = interval_greedy_colors(intervals, &out.palette);
    return out;
}

IndexColoring pillar_order_coloring(const std::vector<CellSet>& cuts) {
    std::size_t n = cuts.size();
    IndexColoring out;
    out.colors.assign(n, -1);
    if (!n) return out;

    std::vector<std::pair<int, int>> base_span(n);
    for (std::size_t i = 0; i < n; ++i) {
        CellSet run = cuts[i].row(0);
        if (cuts[i].empty() || run.empty())
            fail(Errc::order_violation, "cut " + std::to_string(i) + " has no base cells");
        base_span[i] = {run.cells().front().x, run.cells().back().x};
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (base_span[i].first <= base_span[j].second &&
                base_span[j].first <= base_span[i].second)
                fail(Errc::order_violation, "cut bases overlap");

    auto left_of = [&](std::size_t a, std::size_t b) {
        return base_span[a].second < base_span[b].first;
    };
    std::vector<std::vector<char>> before(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && left_of(i, j) && cuts[i].disjoint(cuts[j])) before[i][j] = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (before[i][j] && before[j][k] && !before[i][k])
                    fail(Errc::order_violation,
                         "cut order is not transitive; scene is not a valid pillar cut family");

    // Minimum chain cover (Dilworth): maximum matching on the comparability
    // DAG; chains become color classes, so same-colored cuts are comparable
    // and hence pairwise disjoint.
    std::vector<int> match_right(n, -1), match_left(n, -1);
    std::function<bool(std::size_t, std::vector<char>&)> augment =
        [&](std::size_t u, std::vector<char>& seen) {
            for (std::size_t v = 0; v < n; ++v) {
                if (!before[u][v] || seen[v]) continue;
                seen[v] = 1;
                if (match_right[v] < 0 || augment(std::size_t(match_right[v]), seen)) {
                    match_right[v] = int(u);
                    match_left[u] = int(v);
                    return true;
                }
            }
            return false;
        };
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<char> seen(n, 0);
        augment(u, seen);
    }

    int color = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (match_right[i] >= 0) continue;  // not a chain head
        for (int v = int(i); v >= 0; v = match_left[std::size_t(v)]) out.colors[std::size_t(v)] = color;
        ++color;
    }
    out.palette = color;
    return out;
}

namespace {

// Exact H-minor test by contraction recursion; only run on tiny graphs.
struct MinorSearch {
    std::map<std::vector<std::uint16_t>, bool> memo;

    static bool k5_subgraph(const std::vector<std::uint16_t>& adj) {
        std::size_t n = adj.size();
        std::vector<std::size_t> pick;
        std::function<bool(std::size_t)> rec = [&](std::size_t start) {
            if (pick.size() == 5) return true;
            for (std::size_t v = start; v < n; ++v) {
                bool ok = true;
                for (std::size_t u : pick)
                    if (!((adj[u] >> v) & 1)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                pick.push_back(v);
                if (rec(v + 1)) return true;
                pick.pop_back();
            }
            return false;
        };
        return rec(0);
    }

    static bool k33_subgraph(const std::vector<std::uint16_t>& adj) {
        std::size_t n = adj.size();
        if (n < 6) return false;
        std::vector<std::size_t> six;
        std::function<bool(std::size_t)> pick6 = [&](std::size_t start) {
            if (six.size() == 6) {
                for (int mask = 0; mask < 64; ++mask) {
                    if (std::popcount(unsigned(mask)) != 3) continue;
                    bool ok = true;
                    for (int a = 0; a < 6 && ok; ++a)
                        for (int b = 0; b < 6 && ok; ++b) {
                            bool cross = ((mask >> a) & 1) != ((mask >> b) & 1);
                            if (cross && !((adj[six[a]] >> six[b]) & 1)) ok = false;
                        }
                    if (ok) return true;
                }
                return false;
            }
            for (std::size_t v = start; v < n; ++v) {
                six.push_back(v);
                if (pick6(v + 1)) return true;
                six.pop_back();
            }
            return false;
        };
        return pick6(0);
    }

    bool has_minor(std::vector<std::uint16_t> adj, bool k33) {
        std::size_t n = adj.size();
        std::size_t need_v = k33 ? 6 : 5;
        std::size_t need_e = k33 ? 9 : 10;
        std::size_t edges = 0;
        for (std::size_t v = 0; v < n; ++v) edges += std::popcount(adj[v]);
        edges /= 2;
        if (n < need_v || edges < need_e) return false;
        auto key = adj;
        key.push_back(k33 ? 1 : 0);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool found = k33 ? k33_subgraph(adj) : k5_subgraph(adj);
        for (std::size_t u = 0; u < n && !found; ++u) {
            for (std::size_t v = u + 1; v < n && !found; ++v) {
                if (!((adj[u] >> v) & 1)) continue;
                // contract v into u
                std::vector<std::uint16_t> next;
                next.reserve(n - 1);
                auto remap = [&](std::uint16_t row) {
                    std::uint16_t out = 0;
                    for (std::size_t w = 0; w < n; ++w) {
                        if (w == v) continue;
                        std::size_t idx = w < v ? w : w - 1;
                        if ((row >> w) & 1) out |= std::uint16_t(1) << idx;
                    }
                    return out;
                };
                for (std::size_t w = 0; w < n; ++w) {
                    if (w == v) continue;
                    std::uint16_t row = adj[w];
                    if (w == u) row |= adj[v];
                    next.push_back(remap(row));
                }
                std::size_t iu = u < v ? u : u - 1;
                next[iu] &= std::uint16_t(~(std::uint16_t(1) << iu));
                found = has_minor(std::move(next), k33);
            }
        }
        memo.emplace(std::move(key), found);
        return found;
    }
};

}  // namespace

bool planarity_edge_bound(const IntersectionGraph& g) {
    if (g.n() < 3) return true;
    return g.edge_count() <= 3 * g.n() - 6;
}

Coloring planar_color(const IntersectionGraph& g) {
    if (!planarity_edge_bound(g))
        fail(Errc::not_planar, "edge count exceeds 3n-6");
    if (g.n() >= 5 && g.n() <= 10) {
        std::vector<std::uint16_t> adj(g.n(), 0);
        for (auto [a, b] : g.edges()) {
            adj[std::size_t(a)] |= std::uint16_t(1) << b;
            adj[std::size_t(b)] |= std::uint16_t(1) << a;
        }
        MinorSearch search;
        if (search.has_minor(adj, false) || search.has_minor(adj, true))
            fail(Errc::not_planar, "K5 or K3,3 minor found");
    }

    Coloring out;
    out.ids = g.ids();
    if (!g.n()) return out;
    auto adj = adjacency_masks(g);
    for (int target = 1; target <= 4; ++target) {
        ColorSearch search{adj, g.n(), target, 50'000'000ull};
        if (search.run({})) {
            out.colors = search.colors;
            out.palette = 1 + *std::max_element(out.colors.begin(), out.colors.end());
            return out;
        }
    }
    fail(Errc::not_four_colorable,
         "no 4-coloring exists; the upstream planarity construction is broken");
}

std::string to_dot(const IntersectionGraph& g) {
    std::ostringstream os;
    os << "graph family {\n";
    for (const auto& id : g.ids()) os << "  \"" << id << "\";\n";
    for (auto [a, b] : g.edges())
        os << "  \"" << g.ids()[std::size_t(a)] << "\" -- \"" << g.ids()[std::size_t(b)]
           << "\";\n";
    os << "}\n";
    return os.str();
}

int chi_oracle(const IntersectionGraph& g) {
    std::size_t n = g.n();
    if (!n) return 0;
    if (n > 16) fail(Errc::solver_too_large, "chi oracle supports at most 16 vertices");
    auto adj = adjacency_masks(g);
    std::size_t full = (std::size_t(1) << n) - 1;
    std::vector<char> independent(full + 1, 0);
    independent[0] = 1;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        std::size_t v = std::size_t(std::countr_zero(mask));
        std::size_t rest = mask & (mask - 1);
        independent[mask] = independent[rest] && !(adj[v] & rest);
    }
    std::vector<int> dp(full + 1, int(n) + 1);
    dp[0] = 0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        std::size_t v = std::size_t(std::countr_zero(mask));
        // enumerate subsets of mask containing v
        std::size_t sub = mask;
        while (true) {
            if ((sub >> v) & 1 && independent[sub]) dp[mask] = std::min(dp[mask], dp[mask ^ sub] + 1);
            if (!sub) break;
            sub = (sub - 1) & mask;
        }
    }
    return dp[full];
}

int omega_oracle(const IntersectionGraph& g) {
    std::size_t n = g.n();
    if (n > 20) fail(Errc::solver_too_large, "omega oracle supports at most 20 vertices");
    auto adj = adjacency_masks(g);
    int best = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        bool clique = true;
        for (std::size_t v = 0; v < n && clique; ++v)
            if ((mask >> v) & 1)
                if ((adj[v] & mask) != (mask & ~(std::size_t(1) << v))) clique = false;
        if (clique) best = std::max(best, std::popcount(mask));
    }
    return best;
}

}  // namespace grounded
