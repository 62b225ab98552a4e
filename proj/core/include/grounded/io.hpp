#pragma once

#include <string>
#include <variant>

#include "grounded/bounds.hpp"
#include "grounded/family.hpp"
#include "grounded/graph.hpp"
#include "grounded/scene.hpp"

namespace grounded {

using LoadedFamily = std::variant<GroundedFamily, PiercedFamily>;

/// Family file format (JSON, UTF-8):
///   { "frame": {"width": W, "height": H},
///     "pierced": true|false,
///     "sets": [ {"id": "A", "cells": [[x,y], ...]} ... ] }
/// Scene files additionally tag each set with "role": "S"|"pillar"|"D".
/// Canonical form sorts cells row-major and members by the base order.
LoadedFamily load_family(const std::string& path);
void save_family(const GroundedFamily& f, const std::string& path);
void save_family(const PiercedFamily& f, const std::string& path);

bool is_scene_file(const std::string& path);
Scene load_scene(const std::string& path);
void save_scene(const Scene& s, const std::string& path);

std::string family_to_json(const GroundedFamily& f);
std::string family_to_json(const PiercedFamily& f);
std::string scene_to_json(const Scene& s);

std::string coloring_to_json(const Coloring& c);
std::string bounds_to_json(const BoundTable& t);

}  // namespace grounded
