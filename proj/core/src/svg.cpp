#include "grounded/svg.hpp"

#include <sstream>

#include <json.hpp>

namespace grounded {

namespace {

constexpr int kScale = 16;
constexpr const char* kVersionComment = "<!-- grounded-svg 1 -->\n";

const char* kPalette[] = {"#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
                          "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac"};

struct Canvas {
    std::ostringstream body;
    int min_x = 0, max_x = 0, min_y = 0, max_y = 0;

    void grow(const CellSet& s) {
        if (s.empty()) return;
        const BBox& b = s.bbox();
        min_x = std::min(min_x, b.min_x);
        max_x = std::max(max_x, b.max_x);
        min_y = std::min(min_y, b.min_y);
        max_y = std::max(max_y, b.max_y);
    }

    // grid -> svg coordinates: y grows upward on the grid, downward in svg
    int sx(int x) const { return (x - min_x + 1) * kScale; }
    int sy(int y) const { return (max_y - y + 1) * kScale; }

    void cells(const CellSet& s, const std::string& attrs) {
        body << "  <g " << attrs << ">\n";
        for (const Cell& c : s.cells())
            body << "    <rect x=\"" << sx(c.x) << "\" y=\"" << sy(c.y) << "\" width=\""
                 << kScale << "\" height=\"" << kScale << "\"/>\n";
        body << "  </g>\n";
    }

    void label(const std::string& text, int x, int y, const char* fill) {
        body << "  <text x=\"" << sx(x) + kScale / 2 << "\" y=\"" << sy(y) + kScale - 4
             << "\" font-size=\"10\" font-family=\"monospace\" text-anchor=\"middle\" fill=\""
             << fill << "\">" << text << "</text>\n";
    }

    void baseline() {
        int y = sy(0) + kScale;
        body << "  <line x1=\"0\" y1=\"" << y << "\" x2=\"" << sx(max_x) + 2 * kScale
             << "\" y2=\"" << y << "\" stroke=\"#222\" stroke-width=\"2\"/>\n";
    }

    std::string finish() const {
        int w = (max_x - min_x + 3) * kScale;
        int h = (max_y - min_y + 3) * kScale;
        std::ostringstream os;
        os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
           << "\" viewBox=\"0 0 " << w << " " << h << "\">\n"
           << kVersionComment
           << "  <defs>\n"
              "    <pattern id=\"hatch\" width=\"6\" height=\"6\" "
              "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n"
              "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#555\" "
              "stroke-width=\"1.5\"/>\n"
              "    </pattern>\n"
              "  </defs>\n"
           << body.str() << "</svg>\n";
        return os.str();
    }
};

std::string member_attrs(std::size_t index) {
    std::ostringstream os;
    os << "fill=\"" << kPalette[index % (sizeof(kPalette) / sizeof(kPalette[0]))]
       << "\" fill-opacity=\"0.55\" stroke=\"none\"";
    return os.str();
}

}  // namespace

std::string render_family_svg(const GroundedFamily& f) {
    Canvas canvas;
    for (const auto& m : f.members()) canvas.grow(m.region);
    for (std::size_t i = 0; i < f.size(); ++i)
        canvas.cells(f.member(i).region, member_attrs(i) + " data-id=\"" + f.member(i).id + "\"");
    for (std::size_t i = 0; i < f.size(); ++i)
        canvas.label(f.member(i).id, f.member(i).base_min_x, 0, "#111");
    canvas.baseline();
    return canvas.finish();
}

std::string render_family_svg(const PiercedFamily& f) {
    Canvas canvas;
    for (const auto& m : f.members()) canvas.grow(m.region);
    for (std::size_t i = 0; i < f.size(); ++i)
        canvas.cells(f.members()[i].region,
                     member_attrs(i) + " data-id=\"" + f.members()[i].id + "\"");
    for (std::size_t i = 0; i < f.size(); ++i)
        canvas.label(f.members()[i].id, f.members()[i].base_min_x, 0, "#111");
    canvas.baseline();
    return canvas.finish();
}

std::string render_scene_svg(const Scene& s, const std::optional<std::string>& trace_json) {
    Canvas canvas;
    canvas.grow(s.arch);
    for (const auto& r : s.pillars) canvas.grow(r.region);
    for (const auto& d : s.surrounded) canvas.grow(d.region);

    canvas.cells(s.arch,
                 "fill=\"#dddddd\" stroke=\"#333\" stroke-width=\"1\" "
                 "stroke-dasharray=\"3 2\" data-role=\"S\"");
    for (std::size_t i = 0; i < s.pillars.size(); ++i)
        canvas.cells(s.pillars[i].region,
                     "fill=\"#6b4c9a\" fill-opacity=\"0.5\" stroke=\"none\" data-role=\"pillar\" "
                     "data-id=\"" +
                         s.pillars[i].id + "\"");
    for (std::size_t i = 0; i < s.surrounded.size(); ++i)
        canvas.cells(s.surrounded[i].region, member_attrs(i) + " data-role=\"D\" data-id=\"" +
                                                 s.surrounded[i].id + "\"");

    if (trace_json) {
        nlohmann::json trace;
        try {
            trace = nlohmann::json::parse(*trace_json);
        } catch (const nlohmann::json::parse_error& e) {
            fail(Errc::parse_error, std::string("trace: ") + e.what());
        }
        for (const auto& cls : trace.value("classes", nlohmann::json::array())) {
            for (const auto& corridor : cls.value("corridors", nlohmann::json::array())) {
                std::vector<Cell> cells;
                for (const auto& c : corridor)
                    cells.push_back({c[0].get<int>(), c[1].get<int>()});
                canvas.cells(CellSet(std::move(cells)),
                             "fill=\"url(#hatch)\" data-overlay=\"corridor\"");
            }
            const nlohmann::json left_boxes =
                cls.value("leftclip_boxes", nlohmann::json::object());
            for (const auto& [id, box] : left_boxes.items()) {
                if (!box.is_array() || box.size() != 4) continue;
                int x0 = box[0].get<int>(), y0 = box[1].get<int>();
                int x1 = box[2].get<int>(), y1 = box[3].get<int>();
                canvas.body << "  <rect x=\"" << canvas.sx(x0) << "\" y=\"" << canvas.sy(y1)
                            << "\" width=\"" << (x1 - x0 + 1) * kScale << "\" height=\""
                            << (y1 - y0 + 1) * kScale
                            << "\" fill=\"none\" stroke=\"#2a7\" stroke-width=\"1\" "
                               "data-overlay=\"leftclip\" data-id=\""
                            << id << "\"/>\n";
            }
        }
    }
    for (const auto& r : s.pillars) canvas.label(r.id, r.base_min_x, 0, "#fff");
    for (const auto& d : s.surrounded) canvas.label(d.id, d.base_min_x, 0, "#111");
    canvas.baseline();
    return canvas.finish();
}

}  // namespace grounded
