#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "grounded/decompose.hpp"
#include "grounded/generators.hpp"
#include "grounded/io.hpp"
#include "grounded/pipeline.hpp"
#include "grounded/svg.hpp"
#include "grounded/verify.hpp"

namespace {

using namespace grounded;

constexpr int kExitAuditFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGenerationBudget = 3;
constexpr int kExitSolverBudget = 4;

ChiOptions chi_options_from_env() {
    ChiOptions opts;
    if (const char* env = std::getenv("GROUNDED_CHI_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) opts.node_budget = v;
    }
    return opts;
}

Frame parse_frame(const std::string& text) {
    auto sep = text.find('x');
    if (sep == std::string::npos)
        fail(Errc::validation, "frame must look like WIDTHxHEIGHT");
    return Frame{std::atoi(text.substr(0, sep).c_str()),
                 std::atoi(text.substr(sep + 1).c_str())};
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(Errc::validation, "cannot write '" + path + "'");
    out << text;
}

struct GenArgs {
    std::string kind = "random";
    std::string out;
    std::string frame_text;
    std::uint64_t seed = 1;
    int n = 10;
    int k = 2;
    int m = 3;
    int members = 6;
    int floating = 0;
    int growth = 8;
    double bias = 0.6;
};

int cmd_gen(const GenArgs& args) {
    GenerationInfo info;
    std::ostringstream provenance;
    provenance << "kind=" << args.kind << " seed=" << args.seed;
    if (args.kind == "random") {
        RandomFamilyParams params;
        params.n = args.n;
        params.growth_steps = args.growth;
        params.attach_bias = args.bias;
        if (!args.frame_text.empty()) params.frame = parse_frame(args.frame_text);
        else params.frame = Frame{std::max(30, args.n * 4), 14};
        GroundedFamily family = gen_random(args.seed, params, &info);
        save_family(family, args.out);
        provenance << " n=" << family.size();
    } else if (args.kind == "clique") {
        Frame frame = args.frame_text.empty() ? Frame{2 * args.k + 4, args.k + 4}
                                              : parse_frame(args.frame_text);
        save_family(gen_clique(args.k, frame).first, args.out);
        provenance << " k=" << args.k;
    } else if (args.kind == "bracket") {
        Frame frame = args.frame_text.empty() ? Frame{2 * args.k + 6, args.k + 6}
                                              : parse_frame(args.frame_text);
        save_family(gen_bracket(args.k, frame).first, args.out);
        provenance << " k=" << args.k;
    } else if (args.kind == "pillars") {
        Frame frame = args.frame_text.empty() ? Frame{2 * args.m + 5, 8}
                                              : parse_frame(args.frame_text);
        save_scene(gen_pillars(args.m, frame), args.out);
        provenance << " m=" << args.m;
    } else if (args.kind == "dist2") {
        SceneParams params;
        params.pillars = args.m;
        params.members = args.members;
        params.clique_bound = args.k;
        params.floating_target = args.floating;
        Scene scene = gen_dist2_scene(args.seed, params, &info);
        save_scene(scene, args.out);
        provenance << " m=" << args.m << " members=" << scene.surrounded.size();
    } else if (args.kind == "pierced") {
        PiercedParams params;
        params.n = args.n;
        if (!args.frame_text.empty()) params.frame = parse_frame(args.frame_text);
        PiercedFamily family = gen_pierced(args.seed, params, &info);
        save_family(family, args.out);
        provenance << " n=" << family.size();
    } else {
        fail(Errc::validation, "unknown kind '" + args.kind + "'");
    }
    provenance << " rejections=" << info.rejections << " -> " << args.out;
    std::cout << provenance.str() << "\n";
    return 0;
}

struct AnalyzeArgs {
    std::string file;
    bool as_json = false;
    std::string trace_out;
    int k = 2;
};

int cmd_analyze(const AnalyzeArgs& args) {
    nlohmann::json j;
    bool budget_hit = false;
    ChiOptions chi_opts = chi_options_from_env();

    if (!args.trace_out.empty()) {
        // scene analysis: run the coloring engine and emit its trace
        Scene scene = load_scene(args.file);
        BoundTable bounds = compute_bounds(std::max(2, args.k));
        Dist2Trace trace;
        Dist2Options opts;
        opts.chi = chi_opts;
        opts.trace = &trace;
        Coloring coloring = color_dist2(scene, args.k, bounds, opts);
        write_text(args.trace_out, trace.to_json());
        std::cout << "scene colored: members=" << scene.surrounded.size()
                  << " palette=" << coloring.palette << " trace -> " << args.trace_out << "\n";
        return 0;
    }

    LoadedFamily loaded = load_family(args.file);
    std::vector<std::string> ids;
    std::vector<CellSet> regions;
    bool pierced = std::holds_alternative<PiercedFamily>(loaded);
    if (pierced) {
        const auto& f = std::get<PiercedFamily>(loaded);
        for (const auto& m : f.members()) {
            ids.push_back(m.id);
            regions.push_back(m.region);
        }
    } else {
        const auto& f = std::get<GroundedFamily>(loaded);
        ids = f.ids();
        regions = f.regions();
    }
    IntersectionGraph g = build_graph(ids, regions);
    CliqueResult omega = omega_exact(g);
    SimplicityReport simple = check_simple(regions);

    j["members"] = ids.size();
    j["pierced"] = pierced;
    j["edges"] = g.edge_count();
    j["omega"] = omega.size;
    j["omega_witness"] = omega.witness;
    j["order"] = ids;
    j["simple"] = simple.ok;
    try {
        ChiResult chi = chi_exact(g, chi_opts);
        j["chi"] = chi.chi;
    } catch (const Error& e) {
        if (e.code() != Errc::budget_exceeded) throw;
        j["chi"] = nullptr;
        budget_hit = true;
    }

    if (args.as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "members: " << ids.size() << (pierced ? " (pierced)" : "") << "\n"
                  << "edges:   " << g.edge_count() << "\n"
                  << "omega:   " << omega.size << "\n";
        if (j["chi"].is_null())
            std::cout << "chi:     (node budget exceeded)\n";
        else
            std::cout << "chi:     " << j["chi"].get<int>() << "\n";
        std::cout << "order:  ";
        for (const auto& id : ids) std::cout << " " << id;
        std::cout << "\nsimple:  " << (simple.ok ? "yes" : "no") << "\n";
    }
    return budget_hit ? kExitSolverBudget : 0;
}

struct VerifyArgs {
    std::string lemma;
    int trials = 100;
    std::uint64_t seed = 1;
    int k = 2;
    int jobs = 1;
    std::string report;
    std::string save_dir;
};

int cmd_verify(const VerifyArgs& args) {
    VerifyOptions options;
    options.lemma = args.lemma;
    options.trials = args.trials;
    options.seed = args.seed;
    options.k = args.k;
    options.jobs = args.jobs;
    options.save_dir = args.save_dir;
    options.chi = chi_options_from_env();
    VerifyReport report = run_verify(options);
    if (!args.report.empty()) write_text(args.report, report.to_jsonl());
    std::cout << "lemma=" << report.lemma << " trials=" << args.trials
              << " passed=" << report.passed << " failed=" << report.failed;
    for (const auto& [key, value] : report.aggregates) std::cout << " " << key << "=" << value;
    std::cout << "\n";
    for (const auto& record : report.records) {
        if (record.ok) continue;
        std::cout << "  seed=" << record.seed;
        for (const auto& f : record.failed) std::cout << " [" << f << "]";
        if (!record.instance_path.empty()) std::cout << " instance=" << record.instance_path;
        std::cout << "\n";
    }
    return report.failed ? kExitAuditFailure : 0;
}

struct BoundsArgs {
    int k = 2;
    bool as_json = false;
};

int cmd_bounds(const BoundsArgs& args) {
    BoundTable table = compute_bounds(args.k);
    std::cout << (args.as_json ? bounds_to_json(table) : table.to_text());
    return 0;
}

struct RenderArgs {
    std::string file;
    std::string out;
    std::string trace;
};

int cmd_render(const RenderArgs& args) {
    std::string svg;
    if (is_scene_file(args.file)) {
        std::optional<std::string> trace_json;
        if (!args.trace.empty()) {
            std::ifstream in(args.trace);
            if (!in) fail(Errc::parse_error, "cannot open trace '" + args.trace + "'");
            std::ostringstream buffer;
            buffer << in.rdbuf();
            trace_json = buffer.str();
        }
        svg = render_scene_svg(load_scene(args.file), trace_json);
    } else {
        LoadedFamily loaded = load_family(args.file);
        svg = std::holds_alternative<PiercedFamily>(loaded)
                  ? render_family_svg(std::get<PiercedFamily>(loaded))
                  : render_family_svg(std::get<GroundedFamily>(loaded));
    }
    write_text(args.out, svg);
    std::cout << args.file << " -> " << args.out << "\n";
    return 0;
}

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Errc::parse_error:
        case Errc::validation:
        case Errc::invalid_pierced:
        case Errc::frame_too_small:
            return kExitUsage;
        case Errc::generation_budget:
            return kExitGenerationBudget;
        case Errc::budget_exceeded:
            return kExitSolverBudget;
        default:
            return kExitAuditFailure;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grounded families: generation, analysis, lemma verification, rendering"};
    app.require_subcommand(1);

    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate families and scenes");
    gen->add_option("--kind", gen_args.kind, "random|clique|bracket|pillars|dist2|pierced");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("--n", gen_args.n, "member count (random/pierced)");
    gen->add_option("--k", gen_args.k, "clique size / clique bound");
    gen->add_option("--m", gen_args.m, "pillar count");
    gen->add_option("--members", gen_args.members, "surrounded member count (dist2)");
    gen->add_option("--floating", gen_args.floating, "floating member target (dist2)");
    gen->add_option("--growth", gen_args.growth, "growth step budget (random)");
    gen->add_option("--bias", gen_args.bias, "upward growth bias (random)");
    gen->add_option("--frame", gen_args.frame_text, "frame as WIDTHxHEIGHT");
    gen->add_option("-o,--out", gen_args.out, "output file")->required();

    AnalyzeArgs analyze_args;
    CLI::App* analyze = app.add_subcommand("analyze", "family statistics and solver results");
    analyze->add_option("file", analyze_args.file, "family or scene file")->required();
    analyze->add_flag("--json", analyze_args.as_json, "machine-readable output");
    analyze->add_option("--trace", analyze_args.trace_out,
                        "run the coloring engine on a scene and write its trace");
    analyze->add_option("--k", analyze_args.k, "clique bound for the coloring engine");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "seeded verification campaigns");
    verify->add_option("--lemma", verify_args.lemma,
                       "ladder|layers|pillars|clip|attach|final|dist2|corollaries")
        ->required();
    verify->add_option("--trials", verify_args.trials, "instance count");
    verify->add_option("--seed", verify_args.seed, "base seed");
    verify->add_option("--k", verify_args.k, "clique bound");
    verify->add_option("--jobs", verify_args.jobs, "worker threads");
    verify->add_option("--report", verify_args.report, "write a JSON-lines report");
    verify->add_option("--save-dir", verify_args.save_dir, "directory for failing instances");

    BoundsArgs bounds_args;
    CLI::App* bounds = app.add_subcommand("bounds", "print the bound recurrence table");
    bounds->add_option("--k", bounds_args.k, "largest clique number")->required();
    bounds->add_flag("--json", bounds_args.as_json, "machine-readable output");

    RenderArgs render_args;
    CLI::App* render = app.add_subcommand("render", "render a family or scene as SVG");
    render->add_option("file", render_args.file, "family or scene file")->required();
    render->add_option("-o,--out", render_args.out, "output SVG")->required();
    render->add_option("--trace", render_args.trace, "overlay a pipeline trace");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) return cmd_gen(gen_args);
        if (*analyze) return cmd_analyze(analyze_args);
        if (*verify) return cmd_verify(verify_args);
        if (*bounds) return cmd_bounds(bounds_args);
        if (*render) return cmd_render(render_args);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitAuditFailure;
    }
    return kExitUsage;
}
