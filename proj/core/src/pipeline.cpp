#include "grounded/pipeline.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include <json.hpp>

#include "grounded/topology.hpp"

namespace grounded {

namespace {

void require_disjoint_crossings(const PillarContext& ctx,
                                const std::vector<GroundedSet>& members) {
    for (std::size_t p = 0; p < ctx.pillar_count(); ++p) {
        for (std::size_t i = 0; i < members.size(); ++i) {
            CellSet a = members[i].region & ctx.pillars[p];
            if (a.empty()) continue;
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                CellSet b = members[j].region & ctx.pillars[p];
                if (a.intersects(b))
                    fail(Errc::validation, "members '" + members[i].id + "' and '" +
                                               members[j].id +
                                               "' overlap inside a pillar");
            }
        }
    }
}

Coloring oracle_coloring(const IntersectionGraph& g, int k, ClipOracle oracle,
                         const ChiOptions& opts) {
    if (oracle == ClipOracle::trivial_disjoint) {
        if (k != 2)
            fail(Errc::validation,
                 "the trivial clip oracle realizes the k=2 case only; use the exact oracle");
        if (g.edge_count() != 0)
            fail(Errc::clique_bound_violated,
                 "clips intersect although the clique bound promises disjointness");
        Coloring c;
        c.ids = g.ids();
        c.colors.assign(g.n(), 0);
        c.palette = g.n() ? 1 : 0;
        return c;
    }
    ChiResult r = chi_exact(g, opts);
    return r.coloring;
}

}  // namespace

Coloring color_rightclips(const PillarContext& ctx, const std::vector<GroundedSet>& members,
                          const ClipView& clips, int k, ClipOracle oracle,
                          const ChiOptions& opts) {
    (void)ctx;
    std::vector<std::string> ids;
    std::vector<CellSet> regions;
    for (const auto& m : members) {
        ids.push_back(m.id);
        regions.push_back(clips.of(m.id).rightclip);
    }
    IntersectionGraph g = build_graph(ids, regions);
    int omega = omega_exact(g).size;
    if (omega > k - 1)
        fail(Errc::clique_bound_violated,
             "rightclip family has clique number " + std::to_string(omega) +
                 ", expected at most " + std::to_string(k - 1));
    return oracle_coloring(g, k, oracle, opts);
}

AttachResult attach_to_baseline(const PillarContext& ctx,
                                const std::vector<GroundedSet>& members, const ClipView& clips) {
    require_disjoint_crossings(ctx, members);

    struct Piece {
        const GroundedSet* member = nullptr;
        int first = 0;
        CellSet body;  // leftclip minus the first pillar (kept fully when first == 0)
        bool floating = false;
    };
    std::vector<Piece> pieces;
    for (const auto& m : members) {
        const ClipInfo& info = clips.of(m.id);
        Piece piece;
        piece.member = &m;
        piece.first = info.first;
        piece.body = info.first == 0 ? info.leftclip
                                     : info.leftclip - ctx.pillars[std::size_t(info.first)];
        piece.floating = info.leftclip.row(0).empty();
        if (!piece.body.empty() && connected_components(piece.body).size() > 1)
            fail(Errc::routing_failed, "member '" + m.id +
                                           "' falls apart when its first pillar is removed");
        pieces.push_back(std::move(piece));
    }

    // Free routing space per pillar: pillar cells not used by any body.
    std::vector<CellSet> bodies;
    for (const auto& p : pieces) bodies.push_back(p.body);
    CellSet occupied = union_all(bodies);

    int routed = 0;
    for (std::size_t pi = 0; pi < ctx.pillar_count(); ++pi) {
        CellSet free = ctx.pillars[pi] - occupied;
        // floats attached through this pillar, lowest attachment first
        std::vector<std::pair<int, std::size_t>> queue;
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            if (!pieces[i].floating || pieces[i].first != int(pi)) continue;
            const CellSet& anchor =
                pieces[i].body.empty() ? clips.of(pieces[i].member->id).leftclip
                                       : pieces[i].body;
            int att = INT_MAX;
            for (const Cell& c : free.cells())
                for (Cell nb : neighbors4(c))
                    if (anchor.contains(nb)) att = std::min(att, c.y);
            queue.emplace_back(att, i);
        }
        std::sort(queue.begin(), queue.end());
        for (auto [att, i] : queue) {
            const CellSet& anchor =
                pieces[i].body.empty() ? clips.of(pieces[i].member->id).leftclip
                                       : pieces[i].body;
            // multi-source shortest path to the baseline inside the free space
            std::vector<Cell> frontier;
            std::unordered_map<Cell, Cell, CellHash> parent;
            for (const Cell& c : free.cells()) {
                bool seed = false;
                for (Cell nb : neighbors4(c))
                    if (anchor.contains(nb)) seed = true;
                if (seed) {
                    frontier.push_back(c);
                    parent.emplace(c, c);
                }
            }
            std::optional<Cell> landing;
            std::size_t head = 0;
            while (head < frontier.size() && !landing) {
                Cell c = frontier[head++];
                if (c.y == 0) {
                    landing = c;
                    break;
                }
                for (Cell nb : neighbors4(c)) {
                    if (!free.contains(nb) || parent.count(nb)) continue;
                    parent.emplace(nb, c);
                    frontier.push_back(nb);
                }
            }
            if (!landing)
                fail(Errc::routing_failed,
                     "pillar " + std::to_string(pi) + " is too narrow to attach member '" +
                         pieces[i].member->id + "'");
            std::vector<Cell> tail;
            for (Cell c = *landing;; c = parent.at(c)) {
                tail.push_back(c);
                if (parent.at(c) == c) break;
            }
            CellSet tail_cells{std::vector<Cell>(tail)};
            pieces[i].body = pieces[i].body | tail_cells;
            free = free - tail_cells;
            ++routed;
        }
    }

    std::vector<GroundedSet> final_members;
    AttachResult result;
    for (const auto& p : pieces) {
        final_members.push_back(make_grounded(p.member->id, p.body));
        result.iso.emplace_back(p.member->id, p.member->id);
    }
    result.family = make_family(std::move(final_members), ctx.frame);
    result.routed = routed;
    return result;
}

namespace {

struct Panels {
    std::vector<CellSet> spines;              // one per pillar
    std::unordered_map<Cell, int, CellHash> panel_of;  // region cell -> panel index
    std::size_t count = 0;                    // m + 1
};

Panels build_panels(const PillarContext& ctx, const std::vector<GroundedSet>& members) {
    Panels panels;
    std::size_t m = ctx.pillar_count();
    std::vector<CellSet> regions;
    for (const auto& x : members) regions.push_back(x.region);

    std::vector<int> spine_base_x;
    for (std::size_t i = 0; i < m; ++i) {
        Cell base = ctx.bases[i].cells().front();
        Cell top{-1, -1};
        CellSet on_arch = ctx.pillars[i] & ctx.arch;
        if (!on_arch.empty()) {
            top = on_arch.cells().front();
        } else {
            for (const Cell& c : ctx.pillars[i].cells()) {
                bool adj = false;
                for (Cell nb : neighbors4(c))
                    if (ctx.arch.contains(nb)) adj = true;
                if (adj) {
                    top = c;
                    break;
                }
            }
        }
        if (top.x < 0) fail(Errc::pillar_misses_arch, "pillar has no arch contact");
        std::vector<Cell> path = simple_arc(ctx.pillars[i], base, top, regions);
        panels.spines.push_back(CellSet(std::move(path)));
        spine_base_x.push_back(base.x);
    }

    CellSet spine_union = union_all(panels.spines);
    CellSet free = ctx.region - spine_union;
    auto comps = connected_components(free);
    panels.count = m + 1;
    for (const auto& comp : comps) {
        CellSet run = comp.row(0);
        int probe_x = run.empty() ? comp.cells().front().x : run.cells().front().x;
        int index = 0;
        for (int bx : spine_base_x)
            if (bx < probe_x) ++index;
        for (const Cell& c : comp.cells()) panels.panel_of.emplace(c, index);
    }
    return panels;
}

CellSet member_in_closed_panel(const CellSet& region, const Panels& panels, std::size_t panel) {
    std::vector<Cell> cells;
    for (const Cell& c : region.cells()) {
        auto it = panels.panel_of.find(c);
        bool inside = it != panels.panel_of.end() && it->second == int(panel);
        if (!inside && panel > 0 && panels.spines[panel - 1].contains(c)) inside = true;
        if (!inside && panel < panels.spines.size() && panels.spines[panel].contains(c))
            inside = true;
        if (inside) cells.push_back(c);
    }
    return CellSet(std::move(cells));
}

}  // namespace

Coloring final_four_color(const PillarContext& ctx, const std::vector<GroundedSet>& members,
                          const ClipView& clips, ComponentMap* map_out) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (clips.of(members[i].id).leftclip.intersects(clips.of(members[j].id).leftclip))
                fail(Errc::clip_disjointness_violated,
                     "leftclips of '" + members[i].id + "' and '" + members[j].id +
                         "' intersect");
            if (clips.of(members[i].id).rightclip.intersects(clips.of(members[j].id).rightclip))
                fail(Errc::clip_disjointness_violated,
                     "rightclips of '" + members[i].id + "' and '" + members[j].id +
                         "' intersect");
        }
    }

    Coloring psi;
    for (const auto& m : members) psi.ids.push_back(m.id);
    psi.colors.assign(members.size(), -1);
    if (members.empty()) return psi;

    struct Residues {
        bool left = false, right = false;
        std::size_t left_panel = 0, right_panel = 0;
        CellSet left_cells, right_cells;
    };
    std::vector<Residues> residues(members.size());
    for (std::size_t i = 0; i < members.size(); ++i) {
        const ClipInfo& info = clips.of(members[i].id);
        CellSet lcells = members[i].region & ctx.corridors[std::size_t(info.first)];
        CellSet rcells = members[i].region & ctx.corridors[std::size_t(info.last) + 1];
        residues[i].left = !lcells.empty();
        residues[i].right = !rcells.empty();
        residues[i].left_panel = std::size_t(info.first);
        residues[i].right_panel = std::size_t(info.last) + 1;
        residues[i].left_cells = std::move(lcells);
        residues[i].right_cells = std::move(rcells);
    }

    Panels panels = build_panels(ctx, members);

    // Component families per panel, over the members whose residue lives there.
    std::vector<std::vector<CellSet>> panel_comps(panels.count);
    {
        std::vector<std::vector<CellSet>> panel_parts(panels.count);
        for (std::size_t i = 0; i < members.size(); ++i) {
            if (residues[i].left)
                panel_parts[residues[i].left_panel].push_back(
                    member_in_closed_panel(members[i].region, panels, residues[i].left_panel));
            if (residues[i].right)
                panel_parts[residues[i].right_panel].push_back(
                    member_in_closed_panel(members[i].region, panels, residues[i].right_panel));
        }
        for (std::size_t p = 0; p < panels.count; ++p)
            panel_comps[p] = connected_components(union_all(panel_parts[p]));
    }

    std::map<std::pair<std::size_t, std::size_t>, int> vertex_of;
    ComponentMap cmap;
    auto vertex_for = [&](std::size_t panel, const CellSet& probe) {
        for (std::size_t c = 0; c < panel_comps[panel].size(); ++c) {
            if (panel_comps[panel][c].intersects(probe)) {
                auto key = std::make_pair(panel, c);
                auto it = vertex_of.find(key);
                if (it != vertex_of.end()) return it->second;
                int id = int(cmap.vertex_names.size());
                vertex_of.emplace(key, id);
                cmap.vertex_names.push_back("panel" + std::to_string(panel) + "#" +
                                            std::to_string(c));
                return id;
            }
        }
        fail(Errc::audit_failed, "clip residue missing from its panel components");
    };

    std::vector<int> left_vertex(members.size(), -1), right_vertex(members.size(), -1);
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (residues[i].left) {
            left_vertex[i] = vertex_for(residues[i].left_panel, residues[i].left_cells);
            cmap.member_left.emplace_back(members[i].id,
                                          cmap.vertex_names[std::size_t(left_vertex[i])]);
        }
        if (residues[i].right) {
            right_vertex[i] = vertex_for(residues[i].right_panel, residues[i].right_cells);
            cmap.member_right.emplace_back(members[i].id,
                                           cmap.vertex_names[std::size_t(right_vertex[i])]);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < members.size(); ++i)
        if (left_vertex[i] >= 0 && right_vertex[i] >= 0)
            edges.emplace_back(left_vertex[i], right_vertex[i]);
    cmap.edges = edges;

    IntersectionGraph g(cmap.vertex_names, edges);
    Coloring phi = planar_color(g);

    for (std::size_t i = 0; i < members.size(); ++i) {
        if (left_vertex[i] >= 0) {
            psi.colors[i] = phi.colors[std::size_t(left_vertex[i])];
        } else if (right_vertex[i] >= 0) {
            int banned = phi.colors[std::size_t(right_vertex[i])];
            psi.colors[i] = banned == 0 ? 1 : 0;
        } else {
            psi.colors[i] = 0;
        }
    }
    psi.palette = 1 + *std::max_element(psi.colors.begin(), psi.colors.end());

    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (members[i].region.intersects(members[j].region) &&
                psi.colors[i] == psi.colors[j])
                fail(Errc::audit_failed, "final coloring is improper on '" + members[i].id +
                                             "' and '" + members[j].id + "'");
    if (map_out) *map_out = std::move(cmap);
    return psi;
}

namespace {

struct SideOutcome {
    // member id -> (rightclip class, leftclip class, planar color)
    std::map<std::string, std::array<int, 3>> tuple_of;
    int right_palette = 0;
    std::vector<int> left_palettes;
    std::vector<ComponentMap> component_maps;
};

SideOutcome color_side(const PillarContext& ctx, const std::vector<GroundedSet>& members,
                       int k, ClipOracle oracle, const ChiOptions& chi) {
    SideOutcome out;
    if (members.empty()) return out;
    ClipView clips = clip(ctx, members);
    Coloring phi_r = color_rightclips(ctx, members, clips, k, oracle, chi);
    out.right_palette = phi_r.palette;

    for (int rc = 0; rc < phi_r.palette; ++rc) {
        std::vector<GroundedSet> same_right;
        for (std::size_t i = 0; i < members.size(); ++i)
            if (phi_r.colors[i] == rc) same_right.push_back(members[i]);
        if (same_right.empty()) continue;

        AttachResult attach = attach_to_baseline(ctx, same_right, clips);
        Coloring phi_l = oracle_coloring(build_graph(attach.family), k, oracle, chi);
        out.left_palettes.push_back(phi_l.palette);

        for (int lc = 0; lc < phi_l.palette; ++lc) {
            std::vector<GroundedSet> cell_members;
            for (const auto& m : same_right)
                if (phi_l.color_of(m.id) == lc) cell_members.push_back(m);
            if (cell_members.empty()) continue;
            ComponentMap cmap;
            Coloring psi = final_four_color(ctx, cell_members, clips, &cmap);
            out.component_maps.push_back(std::move(cmap));
            for (std::size_t i = 0; i < cell_members.size(); ++i)
                out.tuple_of[cell_members[i].id] = {rc, lc, psi.colors[i]};
        }
    }
    return out;
}

Scene mirrored_scene(const CellSet& arch, const std::vector<CellSet>& pillar_cuts,
                     const std::vector<GroundedSet>& members, const Frame& frame) {
    Scene flipped;
    flipped.frame = frame;
    int pivot = frame.width - 1;
    flipped.arch = arch.mirrored_x(pivot);
    for (std::size_t i = 0; i < pillar_cuts.size(); ++i)
        flipped.pillars.push_back(make_grounded("R" + std::to_string(i + 1),
                                                pillar_cuts[i].mirrored_x(pivot)));
    for (const auto& m : members)
        flipped.surrounded.push_back(make_grounded(m.id, m.region.mirrored_x(pivot)));
    return flipped;
}

}  // namespace

Coloring color_dist2(const Scene& scene, int k, const BoundTable& bounds,
                     const Dist2Options& options) {
    const Frame& frame = scene.frame;
    if (k < 2 || k > bounds.k_max)
        fail(Errc::validation, "clique bound must be covered by the bound table");

    Coloring result;
    for (const auto& d : scene.surrounded) result.ids.push_back(d.id);
    result.colors.assign(scene.surrounded.size(), -1);
    if (scene.surrounded.empty()) return result;

    // The five scene hypotheses, each audited before any work happens.
    std::vector<GroundedSet> combined(scene.pillars.begin(), scene.pillars.end());
    combined.insert(combined.end(), scene.surrounded.begin(), scene.surrounded.end());
    GroundedFamily combined_family = make_family(combined, frame);
    for (const auto& r : scene.pillars) {
        if (!surrounded_by(r.base, scene.arch, frame))
            fail(Errc::hypothesis_violated, "pillar base of '" + r.id +
                                                "' is not surrounded by the support");
        if (!r.region.intersects(scene.arch))
            fail(Errc::hypothesis_violated, "pillar '" + r.id + "' misses the support");
    }
    for (const auto& d : scene.surrounded)
        if (!surrounded_by(d.region, scene.arch, frame))
            fail(Errc::hypothesis_violated,
                 "member '" + d.id + "' is not surrounded by the support");
    {
        std::vector<CellSet> cuts0;
        for (const auto& r : scene.pillars) cuts0.push_back(cut(r, scene.arch));
        CellSet cut_union = union_all(cuts0);
        for (const auto& d : scene.surrounded)
            if (!d.region.intersects(cut_union))
                fail(Errc::hypothesis_violated,
                     "member '" + d.id + "' misses every pillar cut");
    }
    {
        int omega = omega_exact(build_graph(combined_family)).size;
        if (omega > k)
            fail(Errc::hypothesis_violated, "scene clique number " + std::to_string(omega) +
                                                " exceeds the bound " + std::to_string(k));
    }

    // Minimal enclosing arc, then pillar cut classes.
    CellSet protect;
    {
        std::vector<CellSet> parts;
        for (const auto& d : scene.surrounded) parts.push_back(d.region);
        for (const auto& r : scene.pillars) parts.push_back(r.base);
        protect = union_all(parts);
    }
    CellSet arc = shrink_support(scene.arch, protect, frame);
    if (options.trace) {
        options.trace->support_cells_before = scene.arch.size();
        options.trace->support_cells_after = arc.size();
    }

    // Discrete closure of each cut: the base component plus its contact cells
    // on the arc. Without the contact cells the arc-adjacent layer of the
    // region would be an open corridor above every pillar.
    std::vector<CellSet> cuts;
    for (const auto& r : scene.pillars) {
        CellSet open_cut = cut(r, arc);
        CellSet contact = r.region & arc;
        std::vector<Cell> seal;
        for (const Cell& c : contact.cells())
            for (Cell nb : neighbors4(c))
                if (open_cut.contains(nb)) {
                    seal.push_back(c);
                    break;
                }
        cuts.push_back(open_cut | CellSet(std::move(seal)));
    }
    IndexColoring pillar_colors = pillar_order_coloring(cuts);
    if (options.trace) options.trace->pillar_palette = pillar_colors.palette;

    std::vector<int> member_class(scene.surrounded.size(), -1);
    for (std::size_t i = 0; i < scene.surrounded.size(); ++i) {
        for (int c = 0; c < pillar_colors.palette && member_class[i] < 0; ++c) {
            for (std::size_t p = 0; p < cuts.size(); ++p)
                if (pillar_colors.colors[p] == c &&
                    scene.surrounded[i].region.intersects(cuts[p])) {
                    member_class[i] = c;
                    break;
                }
        }
        if (member_class[i] < 0)
            fail(Errc::hypothesis_violated, "member '" + scene.surrounded[i].id +
                                                "' misses every pillar cut of the arc");
    }

    // Per class and side, gather (class, side, r, l, psi) tuples.
    std::map<std::string, std::array<int, 5>> tuple_of;
    int max_oracle_palette = 1;
    for (int c = 0; c < pillar_colors.palette; ++c) {
        std::vector<CellSet> class_cuts;
        std::vector<std::string> class_pillar_ids;
        for (std::size_t p = 0; p < cuts.size(); ++p)
            if (pillar_colors.colors[p] == c) {
                class_cuts.push_back(cuts[p]);
                class_pillar_ids.push_back(scene.pillars[p].id);
            }
        std::vector<GroundedSet> class_members;
        for (std::size_t i = 0; i < scene.surrounded.size(); ++i)
            if (member_class[i] == c) class_members.push_back(scene.surrounded[i]);
        if (class_members.empty()) continue;

        PillarContext ctx = build_pillar_context(arc, class_cuts, frame);
        ClipView clips = clip(ctx, class_members);

        std::vector<GroundedSet> right_side, left_side;
        for (const auto& m : class_members)
            (clips.of(m.id).rightclip.row(0).empty() ? left_side : right_side).push_back(m);

        Dist2ClassTrace class_trace;
        class_trace.pillar_color = c;
        class_trace.pillar_ids = class_pillar_ids;
        for (const auto& m : class_members) {
            class_trace.member_ids.push_back(m.id);
            class_trace.left_boxes[m.id] = clips.of(m.id).leftclip.bbox();
            class_trace.right_boxes[m.id] = clips.of(m.id).rightclip.bbox();
        }
        for (std::size_t i = 1; i < ctx.pillar_count(); ++i)
            class_trace.corridors.push_back(ctx.corridors[i]);

        SideOutcome right = color_side(ctx, right_side, k, options.oracle, options.chi);
        for (const auto& [id, t] : right.tuple_of) tuple_of[id] = {c, 0, t[0], t[1], t[2]};
        max_oracle_palette = std::max(max_oracle_palette, right.right_palette);
        for (int lp : right.left_palettes) max_oracle_palette = std::max(max_oracle_palette, lp);

        SideOutcome left;
        if (!left_side.empty()) {
            Scene flipped = mirrored_scene(arc, class_cuts, left_side, frame);
            std::vector<CellSet> flipped_cuts;
            for (const auto& r : flipped.pillars) flipped_cuts.push_back(r.region);
            PillarContext flipped_ctx = build_pillar_context(flipped.arch, flipped_cuts, frame);
            left = color_side(flipped_ctx, flipped.surrounded, k, options.oracle, options.chi);
            for (const auto& [id, t] : left.tuple_of) tuple_of[id] = {c, 1, t[0], t[1], t[2]};
            max_oracle_palette = std::max(max_oracle_palette, left.right_palette);
            for (int lp : left.left_palettes)
                max_oracle_palette = std::max(max_oracle_palette, lp);
        }
        if (options.trace) {
            class_trace.right_palette = right.right_palette;
            class_trace.left_palettes = right.left_palettes;
            for (auto& m : right.component_maps)
                class_trace.component_maps.push_back(std::move(m));
            for (auto& m : left.component_maps)
                class_trace.component_maps.push_back(std::move(m));
            options.trace->classes.push_back(std::move(class_trace));
        }
    }

    // Flatten the tuples into a compact palette, deterministically.
    std::set<std::array<int, 5>> used;
    for (const auto& [id, t] : tuple_of) used.insert(t);
    std::map<std::array<int, 5>, int> flat;
    for (const auto& t : used) flat.emplace(t, int(flat.size()));
    for (std::size_t i = 0; i < scene.surrounded.size(); ++i) {
        auto it = tuple_of.find(scene.surrounded[i].id);
        if (it == tuple_of.end())
            fail(Errc::audit_failed,
                 "member '" + scene.surrounded[i].id + "' left uncolored by the pipeline");
        result.colors[i] = flat.at(it->second);
    }
    result.palette = int(flat.size());

    long long cap = 8ll * k * max_oracle_palette * max_oracle_palette;
    if (result.palette > cap)
        fail(Errc::audit_failed, "palette " + std::to_string(result.palette) +
                                     " exceeds 8*k*p^2 = " + std::to_string(cap));

    for (std::size_t i = 0; i < scene.surrounded.size(); ++i)
        for (std::size_t j = i + 1; j < scene.surrounded.size(); ++j)
            if (scene.surrounded[i].region.intersects(scene.surrounded[j].region) &&
                result.colors[i] == result.colors[j])
                fail(Errc::audit_failed, "pipeline coloring is improper on '" +
                                             scene.surrounded[i].id + "' and '" +
                                             scene.surrounded[j].id + "'");
    if (options.trace) options.trace->final_palette = result.palette;
    return result;
}

std::string Dist2Trace::to_json() const {
    using nlohmann::json;
    json out;
    out["support_cells_before"] = support_cells_before;
    out["support_cells_after"] = support_cells_after;
    out["pillar_palette"] = pillar_palette;
    out["final_palette"] = final_palette;
    json classes_json = json::array();
    for (const auto& cls : classes) {
        json c;
        c["pillar_color"] = cls.pillar_color;
        c["pillars"] = cls.pillar_ids;
        c["members"] = cls.member_ids;
        json corridors_json = json::array();
        for (const auto& corridor : cls.corridors) {
            json cells = json::array();
            for (const Cell& cell : corridor.cells())
                cells.push_back(json::array({cell.x, cell.y}));
            corridors_json.push_back(cells);
        }
        c["corridors"] = corridors_json;
        auto boxes = [](const std::map<std::string, BBox>& m) {
            json out_boxes = json::object();
            for (const auto& [id, b] : m)
                out_boxes[id] = b.empty ? json::array()
                                        : json::array({b.min_x, b.min_y, b.max_x, b.max_y});
            return out_boxes;
        };
        c["leftclip_boxes"] = boxes(cls.left_boxes);
        c["rightclip_boxes"] = boxes(cls.right_boxes);
        c["right_palette"] = cls.right_palette;
        c["left_palettes"] = cls.left_palettes;
        json maps = json::array();
        for (const auto& m : cls.component_maps) {
            json mj;
            mj["vertices"] = m.vertex_names;
            json ej = json::array();
            for (auto [a, b] : m.edges) ej.push_back(json::array({a, b}));
            mj["edges"] = ej;
            json lj = json::object(), rj = json::object();
            for (const auto& [id, v] : m.member_left) lj[id] = v;
            for (const auto& [id, v] : m.member_right) rj[id] = v;
            mj["left"] = lj;
            mj["right"] = rj;
            maps.push_back(mj);
        }
        c["component_maps"] = maps;
        classes_json.push_back(c);
    }
    out["classes"] = classes_json;
    return out.dump(2) + "\n";
}

}  // namespace grounded
