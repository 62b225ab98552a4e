#include "grounded/decompose.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <sstream>

#include "grounded/topology.hpp"

namespace grounded {

namespace {

int chi_of(const GroundedFamily& f, const ChiOptions& opts) {
    return chi_exact(build_graph(f), opts).chi;
}

std::vector<std::vector<std::size_t>> graph_components(const IntersectionGraph& g) {
    std::vector<std::vector<std::size_t>> comps;
    std::vector<char> seen(g.n(), 0);
    for (std::size_t i = 0; i < g.n(); ++i) {
        if (seen[i]) continue;
        std::vector<std::size_t> comp{i};
        seen[i] = 1;
        std::size_t head = 0;
        while (head < comp.size()) {
            std::size_t v = comp[head++];
            for (std::size_t u = 0; u < g.n(); ++u)
                if (!seen[u] && g.adjacent(v, u)) {
                    seen[u] = 1;
                    comp.push_back(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (const auto& id : ids) out += (out.empty() ? "" : ",") + id;
    return out;
}

}  // namespace

LadderResult ladder_split(const GroundedFamily& f, int a, int b, const ChiOptions& opts) {
    if (a < 0 || b < 0) fail(Errc::validation, "ladder parameters must be nonnegative");
    int chi_f = chi_of(f, opts);
    long long threshold = 2ll * a * (b + 1);
    if (chi_f <= threshold)
        fail(Errc::precondition_failed, "chi(F)=" + std::to_string(chi_f) +
                                            " does not exceed 2a(b+1)=" +
                                            std::to_string(threshold));

    LadderResult result;
    // base-order prefix blocks with chromatic number exactly b+1
    std::vector<std::size_t> block;
    std::vector<std::vector<std::size_t>> blocks_idx;
    for (std::size_t i = 0; i < f.size(); ++i) {
        block.push_back(i);
        if (chi_of(subfamily(f, block), opts) == b + 1) {
            blocks_idx.push_back(block);
            block.clear();
        }
    }
    if (!block.empty()) blocks_idx.push_back(block);

    for (const auto& idx : blocks_idx) {
        GroundedFamily bf = subfamily(f, idx);
        result.blocks.push_back(bf.ids());
        result.block_chi.push_back(chi_of(bf, opts));
    }

    auto parity_family = [&](int parity) {
        std::vector<std::size_t> idx;
        for (std::size_t bi = parity ? 1 : 0; bi < blocks_idx.size(); bi += 2)
            idx.insert(idx.end(), blocks_idx[bi].begin(), blocks_idx[bi].end());
        return subfamily(f, idx);
    };
    int chi0 = chi_of(parity_family(0), opts);
    int chi1 = chi_of(parity_family(1), opts);
    result.parity = chi1 > chi0 ? 1 : 0;

    // proper (b+1)-coloring per chosen block induces the classes
    std::vector<std::vector<std::string>> classes(std::size_t(b) + 1);
    for (std::size_t bi = std::size_t(result.parity); bi < blocks_idx.size(); bi += 2) {
        GroundedFamily bf = subfamily(f, blocks_idx[bi]);
        ChiResult colored = chi_exact(build_graph(bf), opts);
        result.block_colorings.push_back(colored.coloring);
        for (std::size_t v = 0; v < bf.size(); ++v)
            classes[std::size_t(colored.coloring.colors[v])].push_back(bf.member(v).id);
    }
    int best_chi = -1;
    for (std::size_t j = 0; j < classes.size(); ++j) {
        int c = classes[j].empty() ? 0 : chi_of(subfamily_by_id(f, classes[j]), opts);
        if (c > best_chi) {
            best_chi = c;
            result.chosen_class = int(j);
            result.h_ids = classes[j];
        }
    }
    return result;
}

LayerResult externally_supported(const GroundedFamily& f, int a, const ChiOptions& opts) {
    if (a < 0) fail(Errc::validation, "layer parameter must be nonnegative");
    int chi_f = chi_of(f, opts);
    if (chi_f <= 2 * a)
        fail(Errc::precondition_failed,
             "chi(F)=" + std::to_string(chi_f) + " does not exceed 2a=" + std::to_string(2 * a));

    IntersectionGraph g = build_graph(f);
    auto comps = graph_components(g);
    int best_chi = -1;
    std::size_t best = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        int chi = chi_of(subfamily(f, comps[c]), opts);
        if (chi > best_chi) {
            best_chi = chi;
            best = c;
        }
    }
    const auto& comp = comps[best];

    // breadth-first layers from the base-least member of the component
    std::vector<int> dist(f.size(), -1);
    std::deque<std::size_t> queue{comp.front()};
    dist[comp.front()] = 0;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t u : comp)
            if (dist[u] < 0 && g.adjacent(v, u)) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    int max_d = 0;
    for (std::size_t u : comp) max_d = std::max(max_d, dist[u]);
    for (int d = 1; d <= max_d; ++d) {
        std::vector<std::size_t> layer;
        for (std::size_t u : comp)
            if (dist[u] == d) layer.push_back(u);
        GroundedFamily lf = subfamily(f, layer);
        if (chi_of(lf, opts) > a) {
            LayerResult out;
            out.layer = std::move(lf);
            out.distance = d;
            out.component_ids = subfamily(f, comp).ids();
            return out;
        }
    }
    fail(Errc::no_supported_layer, "no layer at distance >= 1 exceeds the target");
}

namespace {

void require_clique(const std::vector<GroundedSet>& clique) {
    if (clique.size() < 2) fail(Errc::not_a_clique, "need at least two members");
    for (std::size_t i = 0; i < clique.size(); ++i)
        for (std::size_t j = i + 1; j < clique.size(); ++j)
            if (!clique[i].region.intersects(clique[j].region))
                fail(Errc::not_a_clique,
                     clique[i].id + " and " + clique[j].id + " do not intersect");
}

CellSet gap_component(const CellSet& blocker, int gap_lo, int gap_hi, const Frame& f) {
    Cell seed{-1, -1};
    for (int x = gap_lo; x <= gap_hi; ++x) {
        if (!blocker.contains({x, 0})) {
            seed = {x, 0};
            break;
        }
    }
    if (seed.x < 0) return {};
    std::vector<Cell> free_cells;
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            if (!blocker.contains({x, y})) free_cells.push_back({x, y});
    return component_of(CellSet(std::move(free_cells)), seed);
}

}  // namespace

CellSet clique_interior(const std::vector<GroundedSet>& clique, const Frame& f) {
    require_clique(clique);
    std::vector<const GroundedSet*> by_base;
    for (const auto& m : clique) by_base.push_back(&m);
    std::sort(by_base.begin(), by_base.end(), [](const GroundedSet* a, const GroundedSet* b) {
        return a->base_min_x < b->base_min_x;
    });
    int gap_lo = by_base[0]->base_max_x + 1;
    int gap_hi = by_base[1]->base_min_x - 1;
    if (gap_lo > gap_hi) return {};
    std::vector<CellSet> regions;
    for (const auto& m : clique) regions.push_back(m.region);
    return gap_component(union_all(regions), gap_lo, gap_hi, f);
}

CellSet bracket_interior(const std::vector<GroundedSet>& clique, const GroundedSet& support,
                         const Frame& f) {
    require_clique(clique);
    int clique_lo = INT_MAX, clique_hi = INT_MIN;
    for (const auto& m : clique) {
        clique_lo = std::min(clique_lo, m.base_min_x);
        clique_hi = std::max(clique_hi, m.base_max_x);
    }
    int gap_lo, gap_hi;
    if (support.base_min_x > clique_hi) {
        gap_lo = clique_hi + 1;
        gap_hi = support.base_min_x - 1;
    } else if (support.base_max_x < clique_lo) {
        gap_lo = support.base_max_x + 1;
        gap_hi = clique_lo - 1;
    } else {
        fail(Errc::validation, "support base lies inside the clique base span");
    }
    std::vector<CellSet> regions;
    for (const auto& m : clique) regions.push_back(m.region);
    regions.push_back(support.region);
    return gap_component(union_all(regions), gap_lo, gap_hi, f);
}

std::optional<BracketWitness> find_bracket(const GroundedFamily& f, int k) {
    if (k < 2 || f.size() < std::size_t(k) + 1) return std::nullopt;
    IntersectionGraph g = build_graph(f);

    std::vector<std::size_t> pick;
    std::optional<BracketWitness> found;
    std::function<bool(std::size_t)> search = [&](std::size_t start) {
        if (int(pick.size()) == k) {
            std::vector<GroundedSet> clique;
            for (std::size_t v : pick) clique.push_back(f.member(v));
            CellSet interior = clique_interior(clique, f.frame());
            if (interior.empty()) return false;
            for (std::size_t s = 0; s < f.size(); ++s) {
                if (std::find(pick.begin(), pick.end(), s) != pick.end()) continue;
                bool before = s < pick.front();
                bool after = s > pick.back();
                if (!before && !after) continue;  // base order is the index order
                if (!f.member(s).region.intersects(interior)) continue;
                BracketWitness w;
                for (std::size_t v : pick) w.clique_ids.push_back(f.member(v).id);
                w.support_id = f.member(s).id;
                w.clique_before_support = after;
                w.int_clique = interior;
                w.int_bracket = bracket_interior(clique, f.member(s), f.frame());
                found = std::move(w);
                return true;
            }
            return false;
        }
        for (std::size_t v = start; v < f.size(); ++v) {
            bool ok = true;
            for (std::size_t u : pick)
                if (!g.adjacent(u, v)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            pick.push_back(v);
            if (search(v + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    search(0);
    return found;
}

namespace {

// True when two cells of probe lie in different components of domain.
bool separated_within(const CellSet& domain, const CellSet& probe) {
    if (probe.size() < 2) return false;
    auto comps = connected_components(domain);
    int first_comp = -1;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        if (comps[c].intersects(probe)) {
            if (first_comp < 0)
                first_comp = int(c);
            else
                return true;
        }
    }
    return false;
}

}  // namespace

PiercingVerdict check_cor_clique(const GroundedSet& x, const std::vector<GroundedSet>& clique,
                                 const Frame& f) {
    for (const auto& m : clique)
        if (m.id == x.id)
            fail(Errc::input_overlap, "probe set '" + x.id + "' is a clique member");
    require_clique(clique);
    std::vector<CellSet> regions;
    for (const auto& m : clique) regions.push_back(m.region);
    CellSet interior = clique_interior(clique, f);
    CellSet exterior = ext(union_all(regions), f);

    PiercingVerdict verdict;
    bool hyp_inside = separated_within(x.region - exterior, x.region & interior);
    bool hyp_outside = separated_within(x.region - interior, x.region & exterior);
    verdict.hypotheses_hold = hyp_inside || hyp_outside;
    verdict.conclusion_holds = true;
    for (const auto& m : clique)
        if (!x.region.intersects(m.region)) verdict.conclusion_holds = false;
    return verdict;
}

PiercingVerdict check_cor_bracket(const GroundedSet& x, const std::vector<GroundedSet>& clique,
                                  const GroundedSet& support, const Frame& f) {
    if (x.id == support.id) fail(Errc::input_overlap, "probe set is the support");
    for (const auto& m : clique)
        if (m.id == x.id)
            fail(Errc::input_overlap, "probe set '" + x.id + "' is a clique member");
    require_clique(clique);

    std::vector<CellSet> regions;
    for (const auto& m : clique) regions.push_back(m.region);
    regions.push_back(support.region);
    CellSet interior = bracket_interior(clique, support, f);
    CellSet exterior = ext(union_all(regions), f);

    PiercingVerdict verdict;
    verdict.hypotheses_hold =
        x.region.intersects(interior) && x.region.intersects(exterior);
    bool hits_all = true;
    for (const auto& m : clique)
        if (!x.region.intersects(m.region)) hits_all = false;
    verdict.conclusion_holds = x.region.intersects(support.region) || hits_all;
    return verdict;
}

ScaffoldThresholds thresholds_from_bounds(const BoundTable& t, int k, int level) {
    if (k < 2 || k > t.k_max) fail(Errc::validation, "bound table does not cover k");
    if (level < 0 || level > k) fail(Errc::validation, "scaffold level out of range");
    auto to_u64 = [](const BigInt& v) {
        std::uint64_t out = 0;
        return v.fits_u64(&out) ? out : ~0ull;
    };
    auto to_int = [](std::uint64_t v) { return v > std::uint64_t(INT_MAX) ? INT_MAX : int(v); };
    ScaffoldThresholds th;
    std::uint64_t xi_prev = to_u64(t.xi[std::size_t(k - 1)]);
    const auto& delta = t.delta[std::size_t(k)];
    th.removal_bound = to_u64(t.beta[std::size_t(k)]);
    if (level == 0) {
        th.chi_input_min = 0;
        th.chi_output_min = to_u64(delta[0]);
        th.ladder_a = 1;
        th.ladder_b = to_int(to_u64(delta[0]) + 2 * xi_prev);
        th.edge_target = 0;
    } else {
        th.chi_input_min = to_u64(delta[std::size_t(level - 1)]);
        th.chi_output_min = to_u64(delta[std::size_t(level)]);
        th.ladder_a = to_int(xi_prev);
        th.ladder_b = to_int(std::uint64_t(k) * xi_prev);
        th.edge_target =
            to_int(to_u64(delta[std::size_t(level)]) + std::uint64_t(k + 1) * xi_prev + 1);
    }
    return th;
}

namespace {

[[noreturn]] void step_fail(const std::string& stage, const std::string& why) {
    fail(Errc::step_infeasible, stage + ": " + why);
}

std::vector<std::string> disjoint_members(const GroundedFamily& pool, const CellSet& blocker) {
    std::vector<std::string> ids;
    for (const auto& m : pool.members())
        if (!m.region.intersects(blocker)) ids.push_back(m.id);
    return ids;
}

}  // namespace

ScaffoldState scaffold_bootstrap(const GroundedFamily& level0, const ScaffoldThresholds& t,
                                 const ChiOptions& opts) {
    ScaffoldState state;
    LadderResult ladder = ladder_split(level0, t.ladder_a, t.ladder_b, opts);
    state.log.push_back({"ladder", "H={" + join_ids(ladder.h_ids) + "}"});

    GroundedFamily h = subfamily_by_id(level0, ladder.h_ids);
    IntersectionGraph hg = build_graph(h);
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    for (std::size_t i = 0; i < h.size() && !pair; ++i)
        for (std::size_t j = i + 1; j < h.size() && !pair; ++j)
            if (hg.adjacent(i, j)) pair = {i, j};
    if (!pair) step_fail("pair", "no intersecting pair in the extracted subfamily");

    const GroundedSet& left = h.member(pair->first);
    const GroundedSet& right = h.member(pair->second);
    state.scaffold_ids = {left.id, right.id};
    GroundedFamily between = restrict_between(level0, left.id, right.id);
    state.working_ids = disjoint_members(between, left.region | right.region);
    state.support_ids = {};
    state.level = 0;
    state.log.push_back({"scaffold", left.id + "," + right.id});
    state.log.push_back({"working", "{" + join_ids(state.working_ids) + "}"});
    return state;
}

ScaffoldState scaffold_step(const ScaffoldState& state, const GroundedFamily& next_level,
                            const GroundedFamily& full, int k, const ScaffoldThresholds& t,
                            const ChiOptions& opts) {
    const Frame& frame = full.frame();
    ScaffoldState out = state;
    out.level = state.level + 1;

    GroundedFamily working = subfamily_by_id(full, state.working_ids);
    int chi_working = chi_of(working, opts);
    if (std::uint64_t(chi_working) <= t.chi_input_min)
        step_fail("precondition", "chi of working family is " + std::to_string(chi_working));

    std::vector<CellSet> scaffold_regions;
    for (const auto& id : state.scaffold_ids)
        scaffold_regions.push_back(full.member(*full.index_of(id)).region);
    CellSet scaffold_union = union_all(scaffold_regions);

    // members whose base is surrounded by the scaffold and that reach it
    std::vector<CellSet> cuts;
    std::vector<std::string> cut_owner;
    for (const auto& m : full.members()) {
        if (!m.region.intersects(scaffold_union)) continue;
        if (!surrounded_by(m.base, scaffold_union, frame)) continue;
        cuts.push_back(cut(m, scaffold_union));
        cut_owner.push_back(m.id);
    }
    CellSet cut_union = union_all(cuts);
    out.log.push_back({"cuts", "{" + join_ids(cut_owner) + "}"});

    std::vector<std::string> removed, kept;
    for (const auto& id : state.working_ids) {
        const GroundedSet& m = full.member(*full.index_of(id));
        (m.region.intersects(cut_union) ? removed : kept).push_back(id);
    }
    if (!removed.empty()) {
        int chi_removed = chi_of(subfamily_by_id(full, removed), opts);
        if (std::uint64_t(chi_removed) > t.removal_bound)
            fail(Errc::audit_failed, "removed family exceeds the coloring bound: chi=" +
                                         std::to_string(chi_removed));
        out.log.push_back({"removed", "{" + join_ids(removed) + "} chi=" +
                                          std::to_string(chi_removed)});
    }

    GroundedFamily rest = subfamily_by_id(full, kept);
    if (rest.empty()) step_fail("component", "nothing left after the cut removal");
    auto comps = graph_components(build_graph(rest));
    int best_chi = -1;
    std::size_t best = 0;
    for (std::size_t c = 0; c < comps.size(); ++c) {
        int chi = chi_of(subfamily(rest, comps[c]), opts);
        if (chi > best_chi) {
            best_chi = chi;
            best = c;
        }
    }
    GroundedFamily connected = subfamily(rest, comps[best]);
    out.log.push_back({"component", "{" + join_ids(connected.ids()) + "} chi=" +
                                        std::to_string(best_chi)});

    // flank split: shortest prefix and suffix with chi exactly edge_target
    std::size_t prefix_end = 0;  // exclusive
    {
        std::vector<std::size_t> idx;
        while (chi_of(subfamily(connected, idx), opts) < t.edge_target) {
            if (prefix_end == connected.size()) step_fail("split", "prefix never reaches target");
            idx.push_back(prefix_end++);
        }
    }
    std::size_t suffix_begin = connected.size();  // inclusive
    {
        std::vector<std::size_t> idx;
        while (chi_of(subfamily(connected, idx), opts) < t.edge_target) {
            if (suffix_begin == 0) step_fail("split", "suffix never reaches target");
            idx.push_back(--suffix_begin);
        }
    }
    if (prefix_end > suffix_begin) step_fail("split", "flanks overlap");
    std::vector<std::size_t> left_idx, middle_idx, right_idx;
    for (std::size_t i = 0; i < prefix_end; ++i) left_idx.push_back(i);
    for (std::size_t i = prefix_end; i < suffix_begin; ++i) middle_idx.push_back(i);
    for (std::size_t i = suffix_begin; i < connected.size(); ++i) right_idx.push_back(i);
    GroundedFamily left_flank = subfamily(connected, left_idx);
    GroundedFamily middle = subfamily(connected, middle_idx);
    GroundedFamily right_flank = subfamily(connected, right_idx);
    out.log.push_back({"split", "left=" + std::to_string(left_idx.size()) + " middle=" +
                                    std::to_string(middle_idx.size()) + " right=" +
                                    std::to_string(right_idx.size())});

    LadderResult ladder;
    try {
        ladder = ladder_split(middle, t.ladder_a, t.ladder_b, opts);
    } catch (const Error& e) {
        if (e.code() == Errc::precondition_failed) step_fail("ladder", e.what());
        throw;
    }
    GroundedFamily h = subfamily_by_id(middle, ladder.h_ids);
    out.log.push_back({"ladder", "H={" + join_ids(ladder.h_ids) + "}"});

    // deterministic first k-clique inside H
    IntersectionGraph hg = build_graph(h);
    std::vector<std::size_t> clique_idx;
    {
        std::vector<std::size_t> pick;
        std::function<bool(std::size_t)> search = [&](std::size_t start) {
            if (int(pick.size()) == k) {
                clique_idx = pick;
                return true;
            }
            for (std::size_t v = start; v < h.size(); ++v) {
                bool ok = true;
                for (std::size_t u : pick)
                    if (!hg.adjacent(u, v)) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                pick.push_back(v);
                if (search(v + 1)) return true;
                pick.pop_back();
            }
            return false;
        };
        if (!search(0)) step_fail("clique", "no clique of size " + std::to_string(k));
    }
    std::vector<GroundedSet> clique;
    std::vector<std::string> clique_ids;
    for (std::size_t v : clique_idx) {
        clique.push_back(h.member(v));
        clique_ids.push_back(h.member(v).id);
    }
    out.log.push_back({"clique", join_ids(clique_ids)});

    CellSet interior = clique_interior(clique, frame);
    const GroundedSet* inner = nullptr;
    for (const auto& m : middle.members()) {
        if ((m.region & interior) == m.region && !m.region.empty()) {
            inner = &m;
            break;
        }
    }
    if (!inner) step_fail("inner member", "no middle member inside the clique interior");
    out.log.push_back({"inner", inner->id});

    CellSet scaffold_ext = ext(scaffold_union, frame);
    const GroundedSet* support = nullptr;
    for (const auto& s : next_level.members()) {
        if (!s.region.intersects(inner->region)) continue;
        if (!s.region.intersects(scaffold_ext)) continue;
        support = &s;
        break;
    }
    if (!support) step_fail("support", "no next-level member meets the inner member and the exterior");
    out.log.push_back({"support", support->id});

    int connected_lo = connected.member(0).base_min_x;
    int connected_hi = connected.member(connected.size() - 1).base_max_x;
    bool support_left = support->base_max_x < connected_lo;
    bool support_right = support->base_min_x > connected_hi;
    if (!support_left && !support_right)
        step_fail("side", "support base falls inside the working span");

    std::vector<CellSet> new_regions{support->region};
    for (const auto& m : clique) new_regions.push_back(m.region);
    CellSet new_union = union_all(new_regions);
    const GroundedFamily& flank = support_left ? left_flank : right_flank;
    out.working_ids = disjoint_members(flank, new_union);
    out.scaffold_ids = state.scaffold_ids;
    for (const auto& id : clique_ids)
        if (std::find(out.scaffold_ids.begin(), out.scaffold_ids.end(), id) ==
            out.scaffold_ids.end())
            out.scaffold_ids.push_back(id);
    if (std::find(out.scaffold_ids.begin(), out.scaffold_ids.end(), support->id) ==
        out.scaffold_ids.end())
        out.scaffold_ids.push_back(support->id);
    out.support_ids = state.support_ids;
    out.support_ids.push_back(support->id);
    out.log.push_back({"emit", "scaffold={" + join_ids(out.scaffold_ids) + "} working={" +
                                   join_ids(out.working_ids) + "}"});
    return out;
}

ScaffoldAudit audit_scaffold(const ScaffoldState& state, const GroundedFamily& full,
                             const ScaffoldThresholds& t, const ChiOptions& opts) {
    ScaffoldAudit audit;
    const Frame& frame = full.frame();
    std::vector<CellSet> scaffold_regions;
    for (const auto& id : state.scaffold_ids)
        scaffold_regions.push_back(full.member(*full.index_of(id)).region);
    CellSet scaffold_union = union_all(scaffold_regions);

    GroundedFamily working = subfamily_by_id(full, state.working_ids);
    for (const auto& m : working.members())
        if (!surrounded_by(m.region, scaffold_union, frame)) audit.surrounded = false;

    audit.working_chi = chi_of(working, opts);
    audit.chi_ok = std::uint64_t(audit.working_chi) > t.chi_output_min;

    for (std::size_t i = 0; i < state.support_ids.size(); ++i)
        for (std::size_t j = i + 1; j < state.support_ids.size(); ++j) {
            const auto& a = full.member(*full.index_of(state.support_ids[i]));
            const auto& b = full.member(*full.index_of(state.support_ids[j]));
            if (!a.region.intersects(b.region)) audit.supports_intersect = false;
        }

    CellSet outside = ext(scaffold_union, frame);
    for (const auto& x : full.members()) {
        if (!x.region.intersects(outside)) continue;
        bool meets_working = false;
        for (const auto& w : working.members())
            if (x.region.intersects(w.region)) {
                meets_working = true;
                break;
            }
        if (!meets_working) continue;
        for (const auto& sid : state.support_ids) {
            const auto& s = full.member(*full.index_of(sid));
            if (!x.region.intersects(s.region)) audit.piercing_ok = false;
        }
    }
    return audit;
}

std::string provenance_to_jsonl(const std::vector<ProvenanceRecord>& log) {
    auto escape = [](const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out;
    };
    std::ostringstream os;
    for (const auto& rec : log)
        os << "{\"stage\": \"" << escape(rec.stage) << "\", \"detail\": \"" << escape(rec.detail)
           << "\"}\n";
    return os.str();
}

}  // namespace grounded
