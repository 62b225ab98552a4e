#pragma once

#include <string>
#include <vector>

#include "grounded/family.hpp"
#include "grounded/rng.hpp"

namespace grounded {

/// One pillar scene: an arch S anchored on the baseline at two cells, pillars
/// spanning baseline to arch, and the surrounded family to be colored.
struct Scene {
    CellSet arch;
    std::vector<GroundedSet> pillars;
    std::vector<GroundedSet> surrounded;
    Frame frame;
};

/// Deterministic peel of a support set down to a minimal subset that still
/// surrounds every protected cell: repeatedly drop cells (row-major passes)
/// whose removal keeps the exterior away from protect.
CellSet shrink_support(const CellSet& s, const CellSet& protect, const Frame& f);

/// The computed geometry of a pillar scene. Pillars are trimmed to the
/// enclosed region (their base component, including arch cells adjacent to
/// the enclosure) and sorted by base. corridors[i] is the region between
/// pillars i and i+1 in 1-based counting; corridors[0] and corridors[m] stay
/// empty.
struct PillarContext {
    Frame frame;
    CellSet arch;
    CellSet enclosed;  // bounded complement component carrying the pillar bases
    CellSet region;    // enclosed plus arch cells adjacent to it
    Cell p, q;         // baseline anchors flanking the enclosure
    std::vector<CellSet> pillars;
    std::vector<CellSet> bases;
    std::vector<CellSet> neighbors;  // per pillar: reachable avoiding the others
    std::vector<CellSet> corridors;  // size m+1

    std::size_t pillar_count() const { return pillars.size(); }
};

PillarContext build_pillar_context(const CellSet& arch, const std::vector<CellSet>& pillars,
                                   const Frame& f);

struct ClipInfo {
    int first = -1;  // 0-based index of the first pillar met
    int last = -1;
    CellSet leftclip;
    CellSet rightclip;
};

struct ClipView {
    std::vector<std::string> ids;
    std::vector<ClipInfo> items;

    const ClipInfo& of(const std::string& id) const;
};

/// Per-member first/last pillar and the clipped regions: leftclip drops the
/// corridor before the first pillar, rightclip the corridor after the last.
ClipView clip(const PillarContext& ctx, const std::vector<GroundedSet>& members);

/// Every path between two pillars inside the region must cross all pillars
/// between them; verified by reachability probes with each intermediate
/// pillar removed.
bool audit_pillar_crossing(const PillarContext& ctx);

/// Connected subsets of the region meet a contiguous stretch of the sequence
/// pillar 1, corridor 1, pillar 2, ...; verified on sampled random blobs.
bool audit_interval_meeting(const PillarContext& ctx, Rng& rng, int samples);

/// Corridors pairwise disjoint and disjoint from the pillars.
bool audit_corridors(const PillarContext& ctx);

}  // namespace grounded
