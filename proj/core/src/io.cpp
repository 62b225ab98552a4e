#include "grounded/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace grounded {

namespace {

using nlohmann::json;

json cells_to_json(const CellSet& s) {
    json out = json::array();
    for (const Cell& c : s.cells()) out.push_back(json::array({c.x, c.y}));
    return out;
}

CellSet cells_from_json(const json& j, const std::string& where) {
    if (!j.is_array()) fail(Errc::parse_error, where + ": \"cells\" must be an array");
    std::vector<Cell> cells;
    cells.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            fail(Errc::parse_error, where + ": each cell must be [x, y] with integers");
        cells.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return CellSet(std::move(cells));
}

json frame_to_json(const Frame& f) {
    return json{{"width", f.width}, {"height", f.height}};
}

Frame frame_from_json(const json& j) {
    if (!j.is_object() || !j.contains("width") || !j.contains("height"))
        fail(Errc::parse_error, "\"frame\" must carry integer width and height");
    Frame f{j.at("width").get<int>(), j.at("height").get<int>()};
    if (!f.valid()) fail(Errc::parse_error, "frame dimensions must be positive");
    return f;
}

json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(Errc::parse_error, path + ": " + e.what());
    }
    if (!j.is_object()) fail(Errc::parse_error, path + ": top level must be an object");
    return j;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(Errc::validation, "cannot write '" + path + "'");
    out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string family_to_json(const GroundedFamily& f) {
    json sets = json::array();
    for (const auto& m : f.members())
        sets.push_back(json{{"id", m.id}, {"cells", cells_to_json(m.region)}});
    return dump(json{{"frame", frame_to_json(f.frame())}, {"pierced", false}, {"sets", sets}});
}

std::string family_to_json(const PiercedFamily& f) {
    json sets = json::array();
    for (const auto& m : f.members())
        sets.push_back(json{{"id", m.id}, {"cells", cells_to_json(m.region)}});
    return dump(json{{"frame", frame_to_json(f.frame())}, {"pierced", true}, {"sets", sets}});
}

std::string scene_to_json(const Scene& s) {
    json sets = json::array();
    sets.push_back(json{{"id", "S"}, {"role", "S"}, {"cells", cells_to_json(s.arch)}});
    for (const auto& r : s.pillars)
        sets.push_back(json{{"id", r.id}, {"role", "pillar"}, {"cells", cells_to_json(r.region)}});
    for (const auto& d : s.surrounded)
        sets.push_back(json{{"id", d.id}, {"role", "D"}, {"cells", cells_to_json(d.region)}});
    return dump(json{{"frame", frame_to_json(s.frame)}, {"pierced", false}, {"sets", sets}});
}

LoadedFamily load_family(const std::string& path) {
    json j = parse_file(path);
    if (!j.contains("frame")) fail(Errc::parse_error, path + ": missing \"frame\"");
    if (!j.contains("sets") || !j.at("sets").is_array())
        fail(Errc::parse_error, path + ": missing \"sets\" array");
    Frame frame = frame_from_json(j.at("frame"));
    bool pierced = j.value("pierced", false);

    if (pierced) {
        std::vector<PiercedMember> members;
        for (const auto& e : j.at("sets")) {
            if (!e.contains("id") || !e.at("id").is_string())
                fail(Errc::parse_error, path + ": every set needs a string \"id\"");
            std::string id = e.at("id").get<std::string>();
            members.push_back(
                make_pierced_member(id, cells_from_json(e.value("cells", json::array()),
                                                        path + ":" + id)));
        }
        return PiercedFamily(std::move(members), frame);
    }
    std::vector<GroundedSet> members;
    for (const auto& e : j.at("sets")) {
        if (!e.contains("id") || !e.at("id").is_string())
            fail(Errc::parse_error, path + ": every set needs a string \"id\"");
        std::string id = e.at("id").get<std::string>();
        members.push_back(
            make_grounded(id, cells_from_json(e.value("cells", json::array()), path + ":" + id)));
    }
    return make_family(std::move(members), frame);
}

void save_family(const GroundedFamily& f, const std::string& path) {
    write_file(path, family_to_json(f));
}

void save_family(const PiercedFamily& f, const std::string& path) {
    write_file(path, family_to_json(f));
}

bool is_scene_file(const std::string& path) {
    json j = parse_file(path);
    if (!j.contains("sets") || !j.at("sets").is_array()) return false;
    for (const auto& e : j.at("sets"))
        if (e.contains("role")) return true;
    return false;
}

Scene load_scene(const std::string& path) {
    json j = parse_file(path);
    if (!j.contains("frame")) fail(Errc::parse_error, path + ": missing \"frame\"");
    Scene scene;
    scene.frame = frame_from_json(j.at("frame"));
    bool have_arch = false;
    for (const auto& e : j.at("sets")) {
        std::string id = e.value("id", "");
        std::string role = e.value("role", "");
        CellSet cells = cells_from_json(e.value("cells", json::array()), path + ":" + id);
        if (role == "S") {
            if (have_arch) fail(Errc::parse_error, path + ": more than one arch set");
            scene.arch = cells;
            have_arch = true;
        } else if (role == "pillar") {
            scene.pillars.push_back(make_grounded(id, cells));
        } else if (role == "D") {
            scene.surrounded.push_back(make_grounded(id, cells));
        } else {
            fail(Errc::parse_error, path + ":" + id + ": role must be \"S\", \"pillar\" or \"D\"");
        }
    }
    if (!have_arch) fail(Errc::parse_error, path + ": scene has no arch (role \"S\")");
    auto by_base = [](const GroundedSet& a, const GroundedSet& b) {
        return a.base_min_x < b.base_min_x;
    };
    std::sort(scene.pillars.begin(), scene.pillars.end(), by_base);
    std::sort(scene.surrounded.begin(), scene.surrounded.end(), by_base);
    return scene;
}

void save_scene(const Scene& s, const std::string& path) { write_file(path, scene_to_json(s)); }

std::string coloring_to_json(const Coloring& c) {
    json colors = json::object();
    for (std::size_t i = 0; i < c.ids.size(); ++i) colors[c.ids[i]] = c.colors[i];
    return dump(json{{"colors", colors}, {"palette", c.palette}});
}

std::string bounds_to_json(const BoundTable& t) {
    json out;
    out["k_max"] = t.k_max;
    json xi = json::object();
    for (int k = 1; k <= t.k_max; ++k) xi[std::to_string(k)] = t.xi[std::size_t(k)].to_string();
    out["xi"] = xi;
    json beta = json::object(), delta = json::object();
    for (int k = 2; k <= t.k_max; ++k) {
        beta[std::to_string(k)] = t.beta[std::size_t(k)].to_string();
        json row = json::object();
        for (int j = 0; j <= k; ++j)
            row[std::to_string(j)] = t.delta[std::size_t(k)][std::size_t(j)].to_string();
        delta[std::to_string(k)] = row;
    }
    out["beta"] = beta;
    out["delta"] = delta;
    return dump(out);
}

}  // namespace grounded
