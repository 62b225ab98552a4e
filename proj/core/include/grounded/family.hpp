#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grounded/cells.hpp"
#include "grounded/topology.hpp"

namespace grounded {

/// A nonempty 4-connected region in the upper halfplane whose baseline
/// footprint is one contiguous run (the base).
struct GroundedSet {
    std::string id;
    CellSet region;
    CellSet base;  // derived: region on row 0
    int base_min_x = 0;
    int base_max_x = 0;
};

/// Validates the invariants and derives the base. Throws ValidationError.
GroundedSet make_grounded(std::string id, CellSet region);

/// True iff base(a) lies entirely to the left of base(b). Throws BasesOverlap.
bool precedes(const GroundedSet& a, const GroundedSet& b);

class GroundedFamily {
public:
    GroundedFamily() = default;

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<GroundedSet>& members() const { return members_; }
    const GroundedSet& member(std::size_t i) const { return members_[i]; }
    const Frame& frame() const { return frame_; }

    std::optional<std::size_t> index_of(const std::string& id) const;
    std::vector<std::string> ids() const;
    CellSet union_cells() const;
    std::vector<CellSet> regions() const;

    friend GroundedFamily make_family(std::vector<GroundedSet> members, Frame frame,
                                      bool verify_simplicity);
    friend GroundedFamily subfamily(const GroundedFamily& f,
                                    const std::vector<std::size_t>& indices);

private:
    std::vector<GroundedSet> members_;  // sorted by the base order
    Frame frame_;
};

/// Sorts by the base order, checks pairwise-disjoint bases, frame margins and
/// (optionally) simplicity. Subfamilies of a simple family are simple, so
/// internal callers skip the recheck via subfamily().
GroundedFamily make_family(std::vector<GroundedSet> members, Frame frame,
                           bool verify_simplicity = true);

/// Subfamily by member indices (any order); invariants are inherited.
GroundedFamily subfamily(const GroundedFamily& f, const std::vector<std::size_t>& indices);
GroundedFamily subfamily_by_id(const GroundedFamily& f, const std::vector<std::string>& ids);

struct FamilyIssue {
    bool ok = true;
    std::string what;
};

/// Re-checks every GroundedFamily invariant; reports the first violation.
FamilyIssue validate(const GroundedFamily& f);

/// Members strictly between lo and hi in the base order. Sentinels (nullopt)
/// mean minus/plus infinity. Throws ValidationError for unknown ids.
GroundedFamily restrict_between(const GroundedFamily& f, const std::optional<std::string>& lo,
                                const std::optional<std::string>& hi);

/// The base-containing component of r minus the barrier.
CellSet cut(const GroundedSet& r, const CellSet& barrier);
std::vector<CellSet> cut_family(const std::vector<GroundedSet>& rs, const CellSet& barrier);

/// A member of a family pierced by the baseline: 4-connected, may dip below
/// row 0, and meets row 0 in one contiguous run.
struct PiercedMember {
    std::string id;
    CellSet region;
    int base_min_x = 0;
    int base_max_x = 0;
};

PiercedMember make_pierced_member(std::string id, CellSet region);

class PiercedFamily {
public:
    PiercedFamily() = default;
    PiercedFamily(std::vector<PiercedMember> members, Frame frame);

    std::size_t size() const { return members_.size(); }
    const std::vector<PiercedMember>& members() const { return members_; }
    const Frame& frame() const { return frame_; }

private:
    std::vector<PiercedMember> members_;  // sorted by min base x
    Frame frame_;
};

struct ReductionClass {
    int color = 0;
    std::vector<std::string> ids;
    GroundedFamily upper;
    GroundedFamily lower;  // mirrored to the upper halfplane
};

/// The reduction from pierced to grounded families: a proper interval
/// coloring of the base runs, and per color class the upper and mirrored
/// lower grounded families. The combiner reassembles a proper coloring of the
/// pierced family from arbitrary proper per-class pair colorings.
struct ReductionPlan {
    std::vector<ReductionClass> classes;
    std::vector<int> base_color;  // parallel to the pierced family members
};

ReductionPlan reduce_pierced_to_grounded(const PiercedFamily& p);

/// Left-endpoint greedy proper coloring of closed integer intervals; the
/// palette equals the maximum point load.
std::vector<int> interval_greedy_colors(const std::vector<std::pair<int, int>>& intervals,
                                        int* palette);

struct PairColoring {
    // id -> color maps for the upper and lower family of one class.
    std::vector<std::pair<std::string, int>> upper;
    std::vector<std::pair<std::string, int>> lower;
};

struct CombinedColoring {
    std::vector<std::pair<std::string, int>> colors;
    int palette = 0;
};

/// Combines per-class (upper, lower) colorings into one coloring of the
/// pierced family with palette num_classes * max_upper * max_lower.
CombinedColoring combine_reduction(const PiercedFamily& p, const ReductionPlan& plan,
                                   const std::vector<PairColoring>& per_class);

}  // namespace grounded
