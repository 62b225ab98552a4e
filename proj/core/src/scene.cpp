#include "grounded/scene.hpp"

#include <algorithm>
#include <unordered_set>

#include "grounded/topology.hpp"

namespace grounded {

const ClipInfo& ClipView::of(const std::string& id) const {
    for (std::size_t i = 0; i < ids.size(); ++i)
        if (ids[i] == id) return items[i];
    fail(Errc::validation, "no clip entry for id '" + id + "'");
}

CellSet shrink_support(const CellSet& s, const CellSet& protect, const Frame& f) {
    if (protect.intersects(s))
        fail(Errc::not_surrounded, "protected cells lie on the support itself");
    if (protect.intersects(ext(s, f)))
        fail(Errc::not_surrounded, "protected cells are not surrounded by the support");
    CellSet current = s;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Cell& c : current.cells()) {
            CellSet candidate = current - CellSet::single(c);
            if (!protect.intersects(ext(candidate, f))) {
                current = candidate;
                changed = true;
                break;  // restart the row-major pass after each removal
            }
        }
    }
    return current;
}

namespace {

CellSet frame_complement(const CellSet& s, const Frame& f) {
    std::vector<Cell> cells;
    for (int y = 0; y < f.height; ++y)
        for (int x = 0; x < f.width; ++x)
            if (!s.contains({x, y})) cells.push_back({x, y});
    return CellSet(std::move(cells));
}

CellSet adjacent_cells(const CellSet& of, const CellSet& in) {
    std::vector<Cell> out;
    for (const Cell& c : in.cells()) {
        for (Cell nb : neighbors4(c))
            if (of.contains(nb)) {
                out.push_back(c);
                break;
            }
    }
    return CellSet(std::move(out));
}

std::pair<int, int> base_run(const CellSet& s, const std::string& what) {
    CellSet run = s.row(0);
    if (run.empty()) fail(Errc::validation, what + " does not meet the baseline");
    int lo = run.cells().front().x;
    int hi = run.cells().back().x;
    if (int(run.size()) != hi - lo + 1)
        fail(Errc::validation, what + " has a non-contiguous base");
    return {lo, hi};
}

}  // namespace

PillarContext build_pillar_context(const CellSet& arch, const std::vector<CellSet>& pillars,
                                   const Frame& f) {
    if (pillars.empty()) fail(Errc::validation, "scene has no pillars");
    PillarContext ctx;
    ctx.frame = f;
    ctx.arch = arch;

    for (std::size_t i = 0; i < pillars.size(); ++i) {
        if (pillars[i].empty())
            fail(Errc::validation, "pillar " + std::to_string(i) + " is empty");
        for (std::size_t j = i + 1; j < pillars.size(); ++j)
            if (pillars[i].intersects(pillars[j]))
                fail(Errc::pillars_not_disjoint,
                     "pillars " + std::to_string(i) + " and " + std::to_string(j) +
                         " share a cell");
    }

    CellSet outside = ext(arch, f);
    std::vector<std::pair<int, int>> runs;
    for (std::size_t i = 0; i < pillars.size(); ++i) {
        auto run = base_run(pillars[i], "pillar " + std::to_string(i));
        runs.push_back(run);
        CellSet base = pillars[i].row(0);
        if (base.intersects(arch) || base.intersects(outside))
            fail(Errc::not_surrounded,
                 "base of pillar " + std::to_string(i) + " is not surrounded by the arch");
    }

    CellSet complement = frame_complement(arch, f);
    Cell seed{runs[0].first, 0};
    ctx.enclosed = component_of(complement, seed);
    for (std::size_t i = 0; i < pillars.size(); ++i) {
        CellSet base = pillars[i].row(0);
        for (const Cell& c : base.cells())
            if (!ctx.enclosed.contains(c))
                fail(Errc::not_surrounded,
                     "pillar bases lie in different enclosure pockets");
    }

    ctx.region = ctx.enclosed | adjacent_cells(ctx.enclosed, arch);

    CellSet run0 = ctx.enclosed.row(0);
    ctx.p = Cell{run0.cells().front().x - 1, 0};
    ctx.q = Cell{run0.cells().back().x + 1, 0};
    if (!arch.contains(ctx.p) || !arch.contains(ctx.q))
        fail(Errc::not_surrounded, "enclosure baseline is not flanked by arch anchors");

    // Trim pillars to the region (base component); order by base.
    std::vector<std::size_t> order(pillars.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return runs[a].first < runs[b].first; });
    for (std::size_t i : order) {
        CellSet inside = pillars[i] & ctx.region;
        CellSet trimmed = component_of(inside, Cell{runs[i].first, 0});
        bool touches_arch = trimmed.intersects(arch) || adjacent_cells(trimmed, arch).size() > 0;
        if (!touches_arch)
            fail(Errc::pillar_misses_arch,
                 "pillar " + std::to_string(i) + " does not reach the arch");
        ctx.pillars.push_back(trimmed);
        ctx.bases.push_back(trimmed.row(0));
    }

    std::size_t m = ctx.pillars.size();
    for (std::size_t i = 0; i < m; ++i) {
        CellSet domain = ctx.region;
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) domain = domain - ctx.pillars[j];
        std::vector<Cell> frontier;
        for (const Cell& c : ctx.pillars[i].cells())
            if (domain.contains(c)) frontier.push_back(c);
        std::unordered_set<Cell, CellHash> seen(frontier.begin(), frontier.end());
        std::size_t head = 0;
        while (head < frontier.size()) {
            Cell c = frontier[head++];
            for (Cell nb : neighbors4(c))
                if (domain.contains(nb) && seen.insert(nb).second) frontier.push_back(nb);
        }
        ctx.neighbors.push_back(CellSet(std::move(frontier)));
    }

    ctx.corridors.assign(m + 1, CellSet());
    for (std::size_t i = 1; i < m; ++i)
        ctx.corridors[i] = ctx.neighbors[i - 1] & ctx.neighbors[i];

    // Claim-level consistency: each region cell may neighbor at most two
    // pillars, and only consecutive ones.
    for (const Cell& c : ctx.region.cells()) {
        int first = -1, last = -1, count = 0;
        for (std::size_t i = 0; i < m; ++i) {
            if (ctx.neighbors[i].contains(c)) {
                if (first < 0) first = int(i);
                last = int(i);
                ++count;
            }
        }
        if (count > 2 || (count == 2 && last != first + 1))
            fail(Errc::hypothesis_violated,
                 "a region cell neighbors non-consecutive pillars; not a valid pillar scene");
    }
    return ctx;
}

ClipView clip(const PillarContext& ctx, const std::vector<GroundedSet>& members) {
    ClipView view;
    std::size_t m = ctx.pillar_count();
    for (const auto& member : members) {
        ClipInfo info;
        for (std::size_t i = 0; i < m; ++i) {
            if (member.region.intersects(ctx.pillars[i])) {
                if (info.first < 0) info.first = int(i);
                info.last = int(i);
            }
        }
        if (info.first < 0)
            fail(Errc::member_misses_pillars,
                 "member '" + member.id + "' meets no pillar");
        info.leftclip = member.region - ctx.corridors[std::size_t(info.first)];
        info.rightclip = member.region - ctx.corridors[std::size_t(info.last) + 1];
        view.ids.push_back(member.id);
        view.items.push_back(std::move(info));
    }
    return view;
}

bool audit_pillar_crossing(const PillarContext& ctx) {
    std::size_t m = ctx.pillar_count();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 2; j < m; ++j) {
            for (std::size_t mid = i + 1; mid < j; ++mid) {
                CellSet domain = ctx.region - ctx.pillars[mid];
                if (reachable(domain, ctx.pillars[i], ctx.pillars[j])) return false;
            }
        }
    }
    return true;
}

bool audit_interval_meeting(const PillarContext& ctx, Rng& rng, int samples) {
    std::size_t m = ctx.pillar_count();
    const auto& cells = ctx.region.cells();
    if (cells.empty()) return true;
    for (int s = 0; s < samples; ++s) {
        // random connected blob grown inside the region
        std::vector<Cell> blob{cells[rng.below(cells.size())]};
        CellSet seen(blob);
        int target = rng.range(1, 30);
        for (int grow = 0; grow < target; ++grow) {
            Cell at = blob[rng.below(blob.size())];
            Cell nb = neighbors4(at)[rng.below(4)];
            if (ctx.region.contains(nb) && !seen.contains(nb)) {
                blob.push_back(nb);
                seen = seen | CellSet::single(nb);
            }
        }
        // positions: 2i for pillar i, 2i+1 for corridor i+1 (between i, i+1)
        std::vector<int> met;
        for (std::size_t i = 0; i < m; ++i) {
            if (seen.intersects(ctx.pillars[i])) met.push_back(int(2 * i));
            if (i + 1 < m && seen.intersects(ctx.corridors[i + 1])) met.push_back(int(2 * i + 1));
        }
        if (met.empty()) continue;
        for (int pos = met.front(); pos <= met.back(); ++pos)
            if (std::find(met.begin(), met.end(), pos) == met.end()) return false;
    }
    return true;
}

bool audit_corridors(const PillarContext& ctx) {
    std::size_t m = ctx.pillar_count();
    for (std::size_t i = 1; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j)
            if (ctx.corridors[i].intersects(ctx.corridors[j])) return false;
        for (std::size_t p = 0; p < m; ++p)
            if (ctx.corridors[i].intersects(ctx.pillars[p])) return false;
    }
    return true;
}

}  // namespace grounded
