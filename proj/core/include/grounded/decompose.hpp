#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "grounded/bounds.hpp"
#include "grounded/family.hpp"
#include "grounded/graph.hpp"

namespace grounded {

struct LadderResult {
    std::vector<std::vector<std::string>> blocks;  // consecutive base-order blocks
    std::vector<int> block_chi;                    // exact chromatic number per block
    std::vector<Coloring> block_colorings;         // proper coloring per chosen-parity block
    int parity = 0;
    int chosen_class = 0;
    std::vector<std::string> h_ids;  // the extracted subfamily
};

/// Ladder decomposition: under chi(F) > 2a(b+1), extracts H with chi(H) > a
/// such that the gap family between any intersecting pair of H exceeds b.
/// Construction: grow base-order prefix blocks to chromatic number exactly
/// b+1, pick the parity whose union has the larger chromatic number, color
/// each block with b+1 colors and keep the best color class.
LadderResult ladder_split(const GroundedFamily& f, int a, int b,
                          const ChiOptions& opts = {});

struct LayerResult {
    GroundedFamily layer;
    int distance = 0;                        // graph distance from the anchor member
    std::vector<std::string> component_ids;  // the max-chi component searched
};

/// Externally supported layer: restricts to the max-chi connected component,
/// peels breadth-first layers from its base-least member, and returns the
/// first layer at distance >= 1 with chi > a. Every member of the result has
/// a supporter intersecting it and reaching the layer's exterior.
LayerResult externally_supported(const GroundedFamily& f, int a, const ChiOptions& opts = {});

/// The complement component at the baseline gap between the two base-least
/// clique members; empty when the bases are adjacent.
CellSet clique_interior(const std::vector<GroundedSet>& clique, const Frame& f);

struct BracketWitness {
    std::vector<std::string> clique_ids;
    std::string support_id;
    bool clique_before_support = true;  // side flag
    CellSet int_clique;
    CellSet int_bracket;
};

/// Interior of a bracket: the complement component at the baseline gap
/// between the clique and its support.
CellSet bracket_interior(const std::vector<GroundedSet>& clique, const GroundedSet& support,
                         const Frame& f);

/// Searches all k-cliques and candidate supports in deterministic order;
/// returns the first bracket found.
std::optional<BracketWitness> find_bracket(const GroundedFamily& f, int k);

struct PiercingVerdict {
    bool hypotheses_hold = false;
    bool conclusion_holds = false;
};

/// Clique piercing check: if two cells of X inside the clique interior (or
/// exterior) are separated in X by the exterior (interior), then X must meet
/// every clique member.
PiercingVerdict check_cor_clique(const GroundedSet& x, const std::vector<GroundedSet>& clique,
                                 const Frame& f);

/// Bracket piercing check: if X meets both the bracket interior and exterior,
/// it must meet the support or every clique member.
PiercingVerdict check_cor_bracket(const GroundedSet& x, const std::vector<GroundedSet>& clique,
                                  const GroundedSet& support, const Frame& f);

struct ProvenanceRecord {
    std::string stage;
    std::string detail;
};

/// Inductive thresholds. Real values come from the bound table; the scaled
/// mode (desk-scale instances) overrides them while keeping the construction
/// identical.
struct ScaffoldThresholds {
    std::uint64_t chi_input_min = 0;   // required of the incoming working family
    std::uint64_t chi_output_min = 0;  // required of the emitted working family
    std::uint64_t removal_bound = 0;   // audit bound on the removed subfamily
    int edge_target = 0;               // chi of the flank families at the split
    int ladder_a = 1;
    int ladder_b = 0;
};

/// Thresholds for the step into the given level (level 0 = the bootstrap).
ScaffoldThresholds thresholds_from_bounds(const BoundTable& t, int k, int level);

/// State of the inductive scaffold construction at one level.
struct ScaffoldState {
    int level = 0;
    std::vector<std::string> scaffold_ids;  // the surrounding family
    std::vector<std::string> working_ids;   // the surrounded working family
    std::vector<std::string> support_ids;   // supports chosen so far
    std::vector<ProvenanceRecord> log;
};

struct ScaffoldAudit {
    bool surrounded = true;
    bool chi_ok = true;
    bool supports_intersect = true;
    bool piercing_ok = true;
    int working_chi = 0;

    bool all() const { return surrounded && chi_ok && supports_intersect && piercing_ok; }
};

/// Base case: ladder on the level-0 family, base-least intersecting pair in H
/// becomes the scaffold, members strictly between them and clear of both form
/// the working family.
ScaffoldState scaffold_bootstrap(const GroundedFamily& level0, const ScaffoldThresholds& t,
                                 const ChiOptions& opts = {});

/// One inductive step: removes members reachable through cuts of surrounded
/// supports, takes the max-chi component, splits off flank families, ladders
/// the middle, finds a k-clique, a member inside its interior and a support
/// from the next level, and emits the new state.
/// Throws StepInfeasible(stage, reason) when a stage cannot complete; at desk
/// scale this is an expected outcome, not a bug.
ScaffoldState scaffold_step(const ScaffoldState& state, const GroundedFamily& next_level,
                            const GroundedFamily& full, int k, const ScaffoldThresholds& t,
                            const ChiOptions& opts = {});

/// Audits the four state properties as literal geometric and chromatic
/// assertions against the full family.
ScaffoldAudit audit_scaffold(const ScaffoldState& state, const GroundedFamily& full,
                             const ScaffoldThresholds& t, const ChiOptions& opts = {});

std::string provenance_to_jsonl(const std::vector<ProvenanceRecord>& log);

}  // namespace grounded
