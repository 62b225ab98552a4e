#include <doctest.h>

#include "grounded/generators.hpp"
#include "grounded/pipeline.hpp"
#include "grounded/svg.hpp"

using namespace grounded;

namespace {

std::size_t count_occurrences(const std::string& text, const std::string& needle) {
    std::size_t count = 0, pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("family svg: one group per member plus the baseline") {
    auto [twin, witness] = gen_clique(2, Frame{8, 6});
    std::string svg = render_family_svg(twin);
    CHECK(count_occurrences(svg, "<g ") == 2);
    CHECK(count_occurrences(svg, "data-id=\"K1\"") == 1);
    CHECK(count_occurrences(svg, "<line ") == 1);
    CHECK(count_occurrences(svg, "<rect ") == 10);  // five cells per member
    CHECK(svg.find("grounded-svg") != std::string::npos);
}

TEST_CASE("family svg is deterministic") {
    RandomFamilyParams params;
    params.n = 6;
    GroundedFamily f = gen_random(3, params);
    CHECK(render_family_svg(f) == render_family_svg(f));
}

TEST_CASE("scene svg: roles are tagged, arch is dashed") {
    Scene scene = gen_pillars(3, Frame{20, 8});
    std::string svg = render_scene_svg(scene, std::nullopt);
    CHECK(count_occurrences(svg, "data-role=\"pillar\"") == 3);
    CHECK(count_occurrences(svg, "data-role=\"S\"") == 1);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
}

TEST_CASE("scene svg: trace overlays appear per stage") {
    SceneParams params;
    params.pillars = 3;
    params.members = 6;
    Scene scene = gen_dist2_scene(5, params);
    BoundTable bounds = compute_bounds(2);
    Dist2Trace trace;
    Dist2Options options;
    options.trace = &trace;
    color_dist2(scene, 2, bounds, options);

    std::string svg = render_scene_svg(scene, trace.to_json());
    std::size_t corridor_overlays = count_occurrences(svg, "data-overlay=\"corridor\"");
    std::size_t clip_overlays = count_occurrences(svg, "data-overlay=\"leftclip\"");
    std::size_t expected_corridors = 0, expected_boxes = 0;
    for (const auto& cls : trace.classes) {
        expected_corridors += cls.corridors.size();
        expected_boxes += cls.left_boxes.size();
    }
    CHECK(corridor_overlays == expected_corridors);
    CHECK(clip_overlays == expected_boxes);
    CHECK(count_occurrences(svg, "data-role=\"D\"") == scene.surrounded.size());
}

TEST_CASE("pierced svg renders below the baseline") {
    PiercedParams params;
    params.n = 5;
    params.frame = Frame{26, 10};
    PiercedFamily f = gen_pierced(17, params);
    std::string svg = render_family_svg(f);
    CHECK(count_occurrences(svg, "<g ") == 5);
}
