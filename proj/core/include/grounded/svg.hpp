#pragma once

#include <optional>
#include <string>

#include "grounded/family.hpp"
#include "grounded/scene.hpp"

namespace grounded {

/// One SVG per family: baseline rule, one translucent cell-union group per
/// member with an id label. Deterministic output (fixed palette, fixed
/// ordering); the only non-data line is a version comment.
std::string render_family_svg(const GroundedFamily& f);
std::string render_family_svg(const PiercedFamily& f);

/// Scene rendering: the arch dashed, pillars shaded, surrounded members
/// colored. When a pipeline trace (JSON) is given, its corridor regions and
/// clip boxes are drawn as hatched overlay layers.
std::string render_scene_svg(const Scene& s, const std::optional<std::string>& trace_json);

}  // namespace grounded
