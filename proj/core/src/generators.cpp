#include "grounded/generators.hpp"

#include <algorithm>
#include <set>

#include "grounded/graph.hpp"
#include "grounded/topology.hpp"

namespace grounded {

namespace {

void add_run_x(std::vector<Cell>& cells, int x0, int x1, int y) {
    for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x) cells.push_back({x, y});
}

void add_run_y(std::vector<Cell>& cells, int x, int y0, int y1) {
    for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y) cells.push_back({x, y});
}

std::string member_name(const std::string& prefix, int i) {
    return prefix + std::to_string(i + 1);
}

}  // namespace

GroundedFamily gen_random(std::uint64_t seed, const RandomFamilyParams& params,
                          GenerationInfo* info) {
    if (params.n <= 0 || !params.frame.valid())
        fail(Errc::validation, "gen_random needs positive n and a valid frame");
    const Frame& f = params.frame;
    int usable = f.width - 2;
    if (usable < params.n * 2)
        fail(Errc::validation, "frame too narrow for " + std::to_string(params.n) + " bases");

    Rng master(seed);
    for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
        Rng rng = master.fork(std::uint64_t(attempt) + 1);
        std::vector<GroundedSet> members;
        members.reserve(std::size_t(params.n));
        // disjoint base slots with at least one empty column in between
        int slot = usable / params.n;
        bool ok = true;
        for (int i = 0; i < params.n && ok; ++i) {
            int slot_lo = 1 + i * slot;
            int slot_hi = (i + 1 == params.n) ? f.width - 2 : slot_lo + slot - 2;
            if (slot_hi < slot_lo) {
                ok = false;
                break;
            }
            int width = 1 + int(rng.below(2));
            width = std::min(width, slot_hi - slot_lo + 1);
            int bx = rng.range(slot_lo, slot_hi - width + 1);

            std::vector<Cell> cells;
            add_run_x(cells, bx, bx + width - 1, 0);
            int top = f.height - 2;
            int x = rng.range(bx, bx + width - 1);
            int h = 1;
            while (h < top && rng.chance(params.attach_bias)) ++h;
            add_run_y(cells, x, 0, h);
            // one or two horizontal arms joined by a short riser; later
            // attempts fall back to plain L-shapes, which are always simple
            bool tame = attempt * 2 > params.max_attempts;
            int segments = (!tame && rng.chance(0.3)) ? 2 : 1;
            int ax = x, ay = h;
            for (int s = 0; s < segments; ++s) {
                bool right = rng.chance(0.78);
                int max_len = right ? (f.width - 2 - ax) : (ax - 1);
                if (max_len <= 0) break;
                int len = 1 + int(rng.below(std::uint64_t(
                                  std::min(max_len, std::max(1, params.growth_steps)))));
                int end = right ? ax + len : ax - len;
                add_run_x(cells, ax, end, ay);
                ax = end;
                if (s + 1 < segments && ay + 2 <= top) {
                    int rise = 1 + int(rng.below(std::uint64_t(top - ay)));
                    add_run_y(cells, ax, ay, ay + rise);
                    ay += rise;
                }
            }
            members.push_back(make_grounded(member_name("F", i), CellSet(std::move(cells))));
        }
        if (!ok) continue;
        try {
            return make_family(std::move(members), f);
        } catch (const Error&) {
            if (info) info->rejections++;
        }
    }
    fail(Errc::generation_budget,
         "no simple family found in " + std::to_string(params.max_attempts) + " attempts");
}

std::pair<GroundedFamily, CliqueWitness> gen_clique(int k, const Frame& frame) {
    if (k < 2) fail(Errc::validation, "clique size must be at least 2");
    int need_w = 2 * k + 4;
    int need_h = k + 4;
    if (frame.width < need_w || frame.height < need_h)
        fail(Errc::frame_too_small, "clique of size " + std::to_string(k) + " needs at least " +
                                        std::to_string(need_w) + "x" + std::to_string(need_h));
    std::vector<GroundedSet> members;
    CliqueWitness witness;
    {
        // left arch: column at x=1 up to the apex row, arm right to the apex
        std::vector<Cell> cells;
        add_run_y(cells, 1, 0, 2);
        add_run_x(cells, 1, 3, 2);
        members.push_back(make_grounded("K1", CellSet(std::move(cells))));
    }
    for (int i = 1; i < k; ++i) {
        // right arches, one per height, all dropping onto the apex (3,2)
        std::vector<Cell> cells;
        int bx = 2 * i + 3;
        add_run_y(cells, bx, 0, i + 1);
        add_run_x(cells, 3, bx, i + 1);
        add_run_y(cells, 3, 2, i + 1);
        members.push_back(make_grounded(member_name("K", i), CellSet(std::move(cells))));
    }
    for (const auto& m : members) witness.clique_ids.push_back(m.id);
    return {make_family(std::move(members), frame), witness};
}

std::pair<GroundedFamily, BracketSketch> gen_bracket(int k, const Frame& frame) {
    int need_w = 2 * k + 6;
    int need_h = k + 6;
    if (frame.width < need_w || frame.height < need_h)
        fail(Errc::frame_too_small, "bracket of size " + std::to_string(k) + " needs at least " +
                                        std::to_string(need_w) + "x" + std::to_string(need_h));
    auto [clique, cw] = gen_clique(k, frame);
    std::vector<GroundedSet> members(clique.members().begin(), clique.members().end());
    {
        // support to the right of the clique, reaching over everything and
        // dropping through the left arch's arm into the clique interior
        std::vector<Cell> cells;
        int bx = 2 * k + 3;
        int top = k + 3;
        add_run_y(cells, bx, 0, top);
        add_run_x(cells, 2, bx, top);
        add_run_y(cells, 2, 1, top);
        members.push_back(make_grounded("S", CellSet(std::move(cells))));
    }
    BracketSketch sketch;
    sketch.clique_ids = cw.clique_ids;
    sketch.support_id = "S";
    sketch.clique_before_support = true;
    return {make_family(std::move(members), frame), sketch};
}

Scene gen_pillars(int m, const Frame& frame) {
    if (m < 1) fail(Errc::validation, "need at least one pillar");
    int arch_right = 2 * m + 3;
    int arch_top = std::min(frame.height - 2, 5);
    if (frame.width < arch_right + 2 || arch_top < 3)
        fail(Errc::frame_too_small, "pillar scene needs at least " +
                                        std::to_string(arch_right + 2) + "x5");
    Scene scene;
    scene.frame = frame;
    {
        std::vector<Cell> cells;
        add_run_y(cells, 1, 0, arch_top);
        add_run_x(cells, 1, arch_right, arch_top);
        add_run_y(cells, arch_right, 0, arch_top);
        scene.arch = CellSet(std::move(cells));
    }
    for (int i = 0; i < m; ++i) {
        std::vector<Cell> cells;
        add_run_y(cells, 2 * i + 3, 0, arch_top);  // shares its top cell with the arch
        scene.pillars.push_back(make_grounded(member_name("R", i), CellSet(std::move(cells))));
    }
    return scene;
}

namespace {

struct SceneLayout {
    int arch_left = 1;
    int arch_right = 0;
    int arch_top = 0;
    std::vector<std::pair<int, int>> pillar_span;  // [lo, hi] columns per pillar
    std::vector<std::pair<int, int>> corridor_span;  // free column ranges, size m+1
};

SceneLayout layout_scene(Rng& rng, const SceneParams& p) {
    SceneLayout lay;
    // corridors must offer enough base columns and arm heights for the
    // requested member count
    int per_corridor = (p.members + p.pillars) / (p.pillars + 1) + 1;
    int gap_base = std::max(p.min_gap, per_corridor);
    lay.arch_top = std::max(p.arch_height, per_corridor + 2);
    int x = 2;  // first free column right of the left wall
    for (int i = 0; i <= p.pillars; ++i) {
        int gap = gap_base + int(rng.below(2));
        lay.corridor_span.emplace_back(x, x + gap - 1);
        x += gap;
        if (i < p.pillars) {
            lay.pillar_span.emplace_back(x, x + p.pillar_width - 1);
            x += p.pillar_width;
        }
    }
    lay.arch_right = x;
    return lay;
}

}  // namespace

Scene gen_dist2_scene(std::uint64_t seed, const SceneParams& p, GenerationInfo* info) {
    if (p.pillars < 1 || p.members < 0)
        fail(Errc::validation, "scene needs at least one pillar");
    Rng master(seed);
    for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
        Rng rng = master.fork(std::uint64_t(attempt) + 1);
        SceneLayout lay = layout_scene(rng, p);
        Frame frame{lay.arch_right + 2, lay.arch_top + 3};

        Scene scene;
        scene.frame = frame;
        {
            std::vector<Cell> cells;
            add_run_y(cells, lay.arch_left, 0, lay.arch_top);
            add_run_x(cells, lay.arch_left, lay.arch_right, lay.arch_top);
            add_run_y(cells, lay.arch_right, 0, lay.arch_top);
            scene.arch = CellSet(std::move(cells));
        }
        for (int i = 0; i < p.pillars; ++i) {
            std::vector<Cell> cells;
            for (int x = lay.pillar_span[std::size_t(i)].first;
                 x <= lay.pillar_span[std::size_t(i)].second; ++x)
                add_run_y(cells, x, 0, lay.arch_top - 1);
            // one shared cell with the arch, at the left column of the pillar
            cells.push_back({lay.pillar_span[std::size_t(i)].first, lay.arch_top});
            scene.pillars.push_back(
                make_grounded(member_name("R", i), CellSet(std::move(cells))));
        }

        std::set<int> used_base;
        for (const auto& r : scene.pillars)
            for (const Cell& c : r.base.cells()) used_base.insert(c.x);
        std::set<std::pair<int, int>> used_heights;  // (corridor, height)

        bool ok = true;
        std::vector<GroundedSet> dwellers;
        std::vector<std::set<int>> crossed;  // pillar indices per accepted member
        for (int i = 0; i < p.members && ok; ++i) {
            bool want_float = i < p.floating_target && p.pillars >= 2;
            bool placed = false;
            for (int tries = 0; tries < 16 && !placed; ++tries) {
                int corridor = want_float ? rng.range(1, p.pillars - 1)
                                          : rng.range(0, p.pillars);
                auto [clo, chi_] = lay.corridor_span[std::size_t(corridor)];
                int sx = rng.range(clo, chi_);
                if (used_base.count(sx)) continue;
                int h = rng.range(1, lay.arch_top - 1);
                if (used_heights.count({corridor, h})) continue;
                bool right = want_float
                                 ? true
                                 : (corridor == 0
                                        ? true
                                        : (corridor == p.pillars ? false : rng.chance(0.5)));
                int avail = right ? p.pillars - corridor : corridor;
                if (avail < 1) continue;
                int crossings = 1 + int(rng.below(std::uint64_t(std::min(avail, 2))));
                int end_pillar = right ? corridor + crossings - 1 : corridor - crossings;
                int end_x;
                if (right) {
                    end_x = lay.pillar_span[std::size_t(end_pillar)].second;
                    if (rng.chance(0.4) && end_pillar + 1 <= p.pillars)
                        end_x = std::min(lay.corridor_span[std::size_t(end_pillar + 1)].second,
                                         end_x + 1 + int(rng.below(2)));
                } else {
                    end_x = lay.pillar_span[std::size_t(end_pillar)].first;
                    if (rng.chance(0.4))
                        end_x = std::max(lay.corridor_span[std::size_t(end_pillar)].first,
                                         end_x - 1 - int(rng.below(2)));
                }
                std::vector<Cell> cells;
                add_run_y(cells, sx, 0, h);
                add_run_x(cells, sx, end_x, h);
                CellSet region(std::move(cells));
                std::set<int> my_pillars;
                for (int q = 0; q < p.pillars; ++q)
                    if (region.intersects(scene.pillars[std::size_t(q)].region))
                        my_pillars.insert(q);
                // avoid triangles: no intersecting pair may share a pillar
                bool clash = false;
                for (std::size_t j = 0; j < dwellers.size() && !clash; ++j) {
                    if (!region.intersects(dwellers[j].region)) continue;
                    for (int q : my_pillars)
                        if (crossed[j].count(q)) clash = true;
                }
                if (clash) continue;
                used_base.insert(sx);
                used_heights.insert({corridor, h});
                dwellers.push_back(make_grounded(member_name("D", i), region));
                crossed.push_back(std::move(my_pillars));
                placed = true;
            }
            if (!placed) ok = false;
        }
        if (!ok) {
            if (info) info->rejections++;
            continue;
        }

        // validate the combined grounded family and the clique bound
        std::vector<GroundedSet> combined(scene.pillars.begin(), scene.pillars.end());
        combined.insert(combined.end(), dwellers.begin(), dwellers.end());
        GroundedFamily fam;
        try {
            fam = make_family(std::move(combined), frame);
        } catch (const Error&) {
            if (info) info->rejections++;
            continue;
        }
        if (omega_exact(build_graph(fam)).size > p.clique_bound) {
            if (info) info->rejections++;
            continue;
        }
        if (p.floating_target > 0) {
            PillarContext ctx = build_pillar_context(
                scene.arch, [&] {
                    std::vector<CellSet> rs;
                    for (const auto& r : scene.pillars) rs.push_back(r.region);
                    return rs;
                }(), frame);
            ClipView clips = clip(ctx, dwellers);
            int floating = 0;
            for (const auto& item : clips.items)
                if (item.leftclip.row(0).empty()) ++floating;
            if (floating < p.floating_target) {
                if (info) info->rejections++;
                continue;
            }
        }
        scene.surrounded = std::move(dwellers);
        return scene;
    }
    fail(Errc::generation_budget, "no valid scene found in " +
                                      std::to_string(p.max_attempts) + " attempts");
}

Scene gen_pillar_family(std::uint64_t seed, const PillarFamilyParams& p) {
    if (p.pillars < 1) fail(Errc::validation, "need at least one pillar");
    if (p.arch_height - 1 < p.pillars)
        fail(Errc::validation, "arch too low for pairwise distinct arm heights");
    Rng rng(seed);
    rng.next();
    int top = p.arch_height;
    int arch_right = 3 * p.pillars + 3;
    Scene scene;
    scene.frame = Frame{arch_right + 2, top + 3};
    {
        std::vector<Cell> cells;
        add_run_y(cells, 1, 0, top);
        add_run_x(cells, 1, arch_right, top);
        add_run_y(cells, arch_right, 0, top);
        scene.arch = CellSet(std::move(cells));
    }
    // pairwise distinct arm heights keep member intersections single cells
    std::vector<int> heights;
    for (int h = 1; h < top; ++h) heights.push_back(h);
    for (std::size_t i = heights.size(); i > 1; --i)
        std::swap(heights[i - 1], heights[rng.below(i)]);

    for (int i = 0; i < p.pillars; ++i) {
        int x = 3 + 3 * i;
        std::vector<Cell> cells;
        add_run_y(cells, x, 0, top);
        if (rng.chance(p.arm_prob)) {
            int h = heights[std::size_t(i)];
            bool right = i == 0 ? true : (i == p.pillars - 1 ? false : rng.chance(0.5));
            int reach = 1 + int(rng.below(2));
            int target = right ? std::min(p.pillars - 1, i + reach)
                               : std::max(0, i - reach);
            add_run_x(cells, x, 3 + 3 * target, h);
        }
        scene.pillars.push_back(make_grounded(member_name("R", i), CellSet(std::move(cells))));
    }
    return scene;
}

PiercedFamily gen_pierced(std::uint64_t seed, const PiercedParams& p, GenerationInfo* info) {
    if (p.n <= 0 || !p.frame.valid())
        fail(Errc::invalid_pierced, "gen_pierced needs positive n and a valid frame");
    Rng master(seed);
    const Frame& f = p.frame;
    for (int attempt = 0; attempt < p.max_attempts; ++attempt) {
        Rng rng = master.fork(std::uint64_t(attempt) + 1);
        std::vector<PiercedMember> members;
        std::vector<CellSet> regions;
        for (int i = 0; i < p.n; ++i) {
            int width = 1 + int(rng.below(3));
            int bx = rng.range(1, f.width - 1 - width);
            std::vector<Cell> cells;
            add_run_x(cells, bx, bx + width - 1, 0);
            int top = f.height - 2;
            for (int side = 0; side < 2; ++side) {
                if (side == 1 && rng.chance(0.35)) continue;  // some members stay upper-only
                int x = rng.range(bx, bx + width - 1);
                int h = 1;
                while (h < top && rng.chance(0.55)) ++h;
                int sign = side == 0 ? 1 : -1;
                add_run_y(cells, x, 0, sign * h);
                if (rng.chance(0.5)) {
                    bool right = rng.chance(0.5);
                    int max_len = right ? (f.width - 2 - x) : (x - 1);
                    if (max_len > 0) {
                        int len = 1 + int(rng.below(std::uint64_t(std::min(max_len, 6))));
                        add_run_x(cells, x, right ? x + len : x - len, sign * h);
                    }
                }
            }
            CellSet region(std::move(cells));
            regions.push_back(region);
            members.push_back(make_pierced_member(member_name("P", i), region));
        }
        if (!check_simple(regions).ok) {
            if (info) info->rejections++;
            continue;
        }
        try {
            return PiercedFamily(std::move(members), f);
        } catch (const Error&) {
            if (info) info->rejections++;
        }
    }
    fail(Errc::generation_budget, "no simple pierced family found in " +
                                      std::to_string(p.max_attempts) + " attempts");
}

}  // namespace grounded
