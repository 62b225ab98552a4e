#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grounded/bounds.hpp"
#include "grounded/graph.hpp"
#include "grounded/scene.hpp"

namespace grounded {

/// Stand-in for the induction hypothesis when coloring clipped families:
/// exact solves with the chromatic-number solver, trivial handles the k = 2
/// case where clips are pairwise disjoint (the k-1 = 1 coloring).
enum class ClipOracle { exact, trivial_disjoint };

/// Colors members so that same-colored rightclips are disjoint. The clipped
/// family must have clique number at most k-1 (audited; CliqueBoundViolated
/// otherwise).
Coloring color_rightclips(const PillarContext& ctx, const std::vector<GroundedSet>& members,
                          const ClipView& clips, int k, ClipOracle oracle = ClipOracle::exact,
                          const ChiOptions& opts = {});

struct AttachResult {
    GroundedFamily family;
    std::vector<std::pair<std::string, std::string>> iso;  // input id -> output id
    int routed = 0;                                        // members that needed a tail
};

/// Builds a grounded family whose intersection graph is isomorphic to that of
/// the leftclips: members keep their leftclip minus their first pillar (the
/// pillar crossings are pairwise disjoint, so no adjacency is gained or
/// lost), and floating members are attached to the baseline by pairwise
/// disjoint paths routed through their first pillar, lowest attachment first.
/// Throws RoutingFailed when a tail cannot be routed or a trimmed member
/// falls apart (the caller regenerates with a wider scene).
AttachResult attach_to_baseline(const PillarContext& ctx,
                                const std::vector<GroundedSet>& members, const ClipView& clips);

struct ComponentMap {
    std::vector<std::string> vertex_names;  // "panel<i>#<j>"
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<std::string, std::string>> member_left;
    std::vector<std::pair<std::string, std::string>> member_right;
};

/// Final stage: members with pairwise disjoint leftclips and pairwise
/// disjoint rightclips are properly colored with at most four colors via the
/// component graph over spine panels and an exact planar coloring.
Coloring final_four_color(const PillarContext& ctx, const std::vector<GroundedSet>& members,
                          const ClipView& clips, ComponentMap* map_out = nullptr);

struct Dist2ClassTrace {
    int pillar_color = 0;
    std::vector<std::string> pillar_ids;
    std::vector<std::string> member_ids;
    std::vector<CellSet> corridors;
    std::map<std::string, BBox> left_boxes;
    std::map<std::string, BBox> right_boxes;
    int right_palette = 0;
    std::vector<int> left_palettes;
    std::vector<ComponentMap> component_maps;
};

struct Dist2Trace {
    std::size_t support_cells_before = 0;
    std::size_t support_cells_after = 0;
    int pillar_palette = 0;
    std::vector<Dist2ClassTrace> classes;
    int final_palette = 0;

    std::string to_json() const;
};

struct Dist2Options {
    ClipOracle oracle = ClipOracle::exact;
    ChiOptions chi;
    Dist2Trace* trace = nullptr;
};

/// The full coloring engine: audits the five scene hypotheses, shrinks the
/// support to a minimal enclosing arc, colors the pillar cuts, partitions the
/// surrounded family by cut class, and per class runs clip -> rightclip
/// coloring -> attach -> leftclip coloring -> planar four-coloring, with the
/// left side handled by horizontal reflection. The palette is at most
/// 8 * k * p^2 where p is the largest oracle palette.
Coloring color_dist2(const Scene& scene, int k, const BoundTable& bounds,
                     const Dist2Options& options = {});

}  // namespace grounded
