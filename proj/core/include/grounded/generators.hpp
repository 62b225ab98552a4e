#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grounded/family.hpp"
#include "grounded/scene.hpp"

namespace grounded {

struct RandomFamilyParams {
    int n = 8;
    Frame frame{48, 14};
    int growth_steps = 8;      // arm length budget
    double attach_bias = 0.6;  // probability of continuing to grow a stem upward
    int max_attempts = 200;
};

struct GenerationInfo {
    int rejections = 0;
};

/// Seeded random grounded family. Members are stem-and-arm walks grown from
/// disjoint base runs; candidates failing the simplicity check are rejected
/// and regrown (the rejection count is reported). Deterministic per seed.
GroundedFamily gen_random(std::uint64_t seed, const RandomFamilyParams& params,
                          GenerationInfo* info = nullptr);

struct CliqueWitness {
    std::vector<std::string> clique_ids;
};

/// Canonical nested-arch clique of k pairwise intersecting members: a left
/// arch plus k-1 right arches anchored on a common apex cell. k = 2 is the
/// twin-arch fixture.
std::pair<GroundedFamily, CliqueWitness> gen_clique(int k, const Frame& frame);

struct BracketSketch {
    std::vector<std::string> clique_ids;
    std::string support_id;
    bool clique_before_support = true;
};

/// Canonical bracket: the nested-arch clique plus a support arch on the right
/// reaching over everything and dropping into the clique interior.
std::pair<GroundedFamily, BracketSketch> gen_bracket(int k, const Frame& frame);

/// Canonical pillar scene: a rectangular arch with exactly two baseline
/// anchors and m disjoint pillar columns from the baseline to the arch.
Scene gen_pillars(int m, const Frame& frame);

struct SceneParams {
    int pillars = 3;
    int members = 6;
    int clique_bound = 2;
    int pillar_width = 2;
    int min_gap = 2;          // free columns between pillars
    int arch_height = 6;
    int floating_target = 0;  // members whose base sits in a corridor
    int max_attempts = 400;
};

/// Seeded random pillar scene whose surrounded family satisfies every
/// pipeline hypothesis: members are corridor stems with arms crossing
/// pillars, the combined clique number is at most clique_bound, and at least
/// floating_target members float. Deterministic per seed.
Scene gen_dist2_scene(std::uint64_t seed, const SceneParams& params,
                      GenerationInfo* info = nullptr);

struct PillarFamilyParams {
    int pillars = 4;
    double arm_prob = 0.7;
    int arch_height = 6;
};

/// Pillar scene in which the pillars may intersect each other: full-height
/// columns to the arch plus sideways arms at pairwise distinct heights. The
/// cut family of such a scene exercises the order coloring non-trivially.
Scene gen_pillar_family(std::uint64_t seed, const PillarFamilyParams& params);

struct PiercedParams {
    int n = 6;
    Frame frame{44, 12};
    int max_attempts = 200;
};

/// Seeded random simple pierced family; bases may overlap, members may dip
/// below the baseline.
PiercedFamily gen_pierced(std::uint64_t seed, const PiercedParams& params,
                          GenerationInfo* info = nullptr);

}  // namespace grounded
