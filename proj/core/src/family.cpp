#include "grounded/family.hpp"

#include <algorithm>
#include <map>

namespace grounded {

namespace {

// Returns the contiguous run on row y, or fails with the given error code.
std::pair<int, int> contiguous_run(const CellSet& region, int y, Errc code,
                                   const std::string& id) {
    CellSet run = region.row(y);
    if (run.empty()) fail(code, "member '" + id + "' does not meet the baseline");
    int lo = run.cells().front().x;
    int hi = run.cells().back().x;
    if (int(run.size()) != hi - lo + 1)
        fail(code, "member '" + id + "' has a non-contiguous base");
    return {lo, hi};
}

}  // namespace

GroundedSet make_grounded(std::string id, CellSet region) {
    if (region.empty()) fail(Errc::validation, "member '" + id + "' is empty");
    if (region.bbox().min_y < 0)
        fail(Errc::validation, "member '" + id + "' has cells below the baseline");
    if (!is_connected(region))
        fail(Errc::validation, "member '" + id + "' is not 4-connected");
    auto [lo, hi] = contiguous_run(region, 0, Errc::validation, id);
    GroundedSet g;
    g.id = std::move(id);
    g.base = region.row(0);
    g.region = std::move(region);
    g.base_min_x = lo;
    g.base_max_x = hi;
    return g;
}

bool precedes(const GroundedSet& a, const GroundedSet& b) {
    if (a.base_min_x <= b.base_max_x && b.base_min_x <= a.base_max_x)
        fail(Errc::bases_overlap, "bases overlap: " + a.id + "," + b.id);
    return a.base_max_x < b.base_min_x;
}

std::optional<std::size_t> GroundedFamily::index_of(const std::string& id) const {
    for (std::size_t i = 0; i < members_.size(); ++i)
        if (members_[i].id == id) return i;
    return std::nullopt;
}

std::vector<std::string> GroundedFamily::ids() const {
    std::vector<std::string> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.id);
    return out;
}

CellSet GroundedFamily::union_cells() const {
    std::vector<CellSet> regions;
    regions.reserve(members_.size());
    for (const auto& m : members_) regions.push_back(m.region);
    return union_all(regions);
}

std::vector<CellSet> GroundedFamily::regions() const {
    std::vector<CellSet> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.region);
    return out;
}

GroundedFamily make_family(std::vector<GroundedSet> members, Frame frame,
                           bool verify_simplicity) {
    std::sort(members.begin(), members.end(),
              [](const GroundedSet& a, const GroundedSet& b) {
                  return a.base_min_x < b.base_min_x;
              });
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
        if (!precedes(members[i], members[i + 1]))
            fail(Errc::bases_overlap,
                 "bases overlap: " + members[i].id + "," + members[i + 1].id);
    }
    for (const auto& m : members) {
        if (!frame.margin_ok(m.region))
            fail(Errc::validation,
                 "member '" + m.id + "' does not fit frame " + frame.describe() +
                     " with margin");
    }
    if (verify_simplicity) {
        std::vector<CellSet> regions;
        regions.reserve(members.size());
        for (const auto& m : members) regions.push_back(m.region);
        SimplicityReport rep = check_simple(regions);
        if (!rep.ok) {
            std::string who;
            for (std::size_t i : rep.witness) who += (who.empty() ? "" : ",") + members[i].id;
            fail(Errc::validation, "family is not simple; witness subfamily {" + who + "}");
        }
    }
    GroundedFamily f;
    f.members_ = std::move(members);
    f.frame_ = frame;
    return f;
}

GroundedFamily subfamily(const GroundedFamily& f, const std::vector<std::size_t>& indices) {
    std::vector<std::size_t> idx = indices;
    std::sort(idx.begin(), idx.end());
    GroundedFamily out;
    out.frame_ = f.frame();
    out.members_.reserve(idx.size());
    for (std::size_t i : idx) out.members_.push_back(f.member(i));
    return out;
}

GroundedFamily subfamily_by_id(const GroundedFamily& f, const std::vector<std::string>& ids) {
    std::vector<std::size_t> idx;
    idx.reserve(ids.size());
    for (const auto& id : ids) {
        auto i = f.index_of(id);
        if (!i) fail(Errc::validation, "unknown member id '" + id + "'");
        idx.push_back(*i);
    }
    return subfamily(f, idx);
}

FamilyIssue validate(const GroundedFamily& f) {
    try {
        auto members = f.members();
        for (auto& m : members) m = make_grounded(m.id, m.region);
        make_family(std::move(members), f.frame(), true);
    } catch (const Error& e) {
        return {false, e.what()};
    }
    return {};
}

GroundedFamily restrict_between(const GroundedFamily& f, const std::optional<std::string>& lo,
                                const std::optional<std::string>& hi) {
    std::size_t begin = 0, end = f.size();
    if (lo) {
        auto i = f.index_of(*lo);
        if (!i) fail(Errc::validation, "unknown member id '" + *lo + "'");
        begin = *i + 1;
    }
    if (hi) {
        auto i = f.index_of(*hi);
        if (!i) fail(Errc::validation, "unknown member id '" + *hi + "'");
        end = *i;
    }
    std::vector<std::size_t> idx;
    for (std::size_t i = begin; i < end && i < f.size(); ++i) idx.push_back(i);
    return subfamily(f, idx);
}

CellSet cut(const GroundedSet& r, const CellSet& barrier) {
    return cut_region(r.region, r.base, barrier);
}

std::vector<CellSet> cut_family(const std::vector<GroundedSet>& rs, const CellSet& barrier) {
    std::vector<CellSet> out;
    out.reserve(rs.size());
    for (const auto& r : rs) out.push_back(cut(r, barrier));
    return out;
}

PiercedMember make_pierced_member(std::string id, CellSet region) {
    if (region.empty()) fail(Errc::invalid_pierced, "member '" + id + "' is empty");
    if (!is_connected(region))
        fail(Errc::invalid_pierced, "member '" + id + "' is not 4-connected");
    auto [lo, hi] = contiguous_run(region, 0, Errc::invalid_pierced, id);
    PiercedMember m;
    m.id = std::move(id);
    m.region = std::move(region);
    m.base_min_x = lo;
    m.base_max_x = hi;
    return m;
}

PiercedFamily::PiercedFamily(std::vector<PiercedMember> members, Frame frame)
    : members_(std::move(members)), frame_(frame) {
    std::sort(members_.begin(), members_.end(),
              [](const PiercedMember& a, const PiercedMember& b) {
                  if (a.base_min_x != b.base_min_x) return a.base_min_x < b.base_min_x;
                  return a.id < b.id;
              });
    for (const auto& m : members_) {
        CellSet upper_half;
        {
            std::vector<Cell> cells;
            for (const Cell& c : m.region.cells())
                cells.push_back({c.x, c.y < 0 ? -c.y : c.y});
            upper_half = CellSet(std::move(cells));
        }
        if (!frame_.margin_ok(upper_half))
            fail(Errc::invalid_pierced,
                 "member '" + m.id + "' does not fit frame " + frame_.describe() +
                     " with margin (after mirroring)");
    }
}

std::vector<int> interval_greedy_colors(const std::vector<std::pair<int, int>>& intervals,
                                        int* palette) {
    std::vector<std::size_t> order(intervals.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (intervals[a].first != intervals[b].first)
            return intervals[a].first < intervals[b].first;
        return intervals[a].second < intervals[b].second;
    });
    std::vector<int> colors(intervals.size(), -1);
    int used = 0;
    for (std::size_t i : order) {
        std::vector<char> taken(used + 1, 0);
        for (std::size_t j : order) {
            if (colors[j] < 0 || j == i) continue;
            if (intervals[j].second >= intervals[i].first &&
                intervals[i].second >= intervals[j].first)
                taken[colors[j]] = 1;
        }
        int c = 0;
        while (c < used && taken[c]) ++c;
        colors[i] = c;
        used = std::max(used, c + 1);
    }
    if (palette) *palette = used;
    return colors;
}

namespace {

CellSet upper_part(const CellSet& region) {
    std::vector<Cell> cells;
    for (const Cell& c : region.cells())
        if (c.y >= 0) cells.push_back(c);
    return CellSet(std::move(cells));
}

CellSet lower_part_mirrored(const CellSet& region) {
    std::vector<Cell> cells;
    for (const Cell& c : region.cells())
        if (c.y <= 0) cells.push_back({c.x, -c.y});
    return CellSet(std::move(cells));
}

}  // namespace

ReductionPlan reduce_pierced_to_grounded(const PiercedFamily& p) {
    ReductionPlan plan;
    std::vector<std::pair<int, int>> intervals;
    intervals.reserve(p.size());
    for (const auto& m : p.members()) intervals.emplace_back(m.base_min_x, m.base_max_x);
    int palette = 0;
    plan.base_color = interval_greedy_colors(intervals, &palette);

    for (int c = 0; c < palette; ++c) {
        ReductionClass cls;
        cls.color = c;
        std::vector<GroundedSet> upper, lower;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (plan.base_color[i] != c) continue;
            const auto& m = p.members()[i];
            cls.ids.push_back(m.id);
            upper.push_back(make_grounded(m.id, upper_part(m.region)));
            lower.push_back(make_grounded(m.id, lower_part_mirrored(m.region)));
        }
        cls.upper = make_family(std::move(upper), p.frame());
        cls.lower = make_family(std::move(lower), p.frame());
        plan.classes.push_back(std::move(cls));
    }
    return plan;
}

CombinedColoring combine_reduction(const PiercedFamily& p, const ReductionPlan& plan,
                                   const std::vector<PairColoring>& per_class) {
    if (per_class.size() != plan.classes.size())
        fail(Errc::validation, "combiner needs one pair coloring per class");
    int max_up = 1, max_lo = 1;
    std::map<std::string, std::pair<int, int>> pair_of;
    for (std::size_t c = 0; c < per_class.size(); ++c) {
        for (const auto& [id, col] : per_class[c].upper) {
            pair_of[id].first = col;
            max_up = std::max(max_up, col + 1);
        }
        for (const auto& [id, col] : per_class[c].lower) {
            pair_of[id].second = col;
            max_lo = std::max(max_lo, col + 1);
        }
    }
    CombinedColoring out;
    out.palette = int(plan.classes.size()) * max_up * max_lo;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const auto& id = p.members()[i].id;
        auto it = pair_of.find(id);
        if (it == pair_of.end()) fail(Errc::validation, "member '" + id + "' not colored");
        int c = plan.base_color[i];
        out.colors.emplace_back(id, c * max_up * max_lo + it->second.first * max_lo +
                                        it->second.second);
    }
    return out;
}

}  // namespace grounded
