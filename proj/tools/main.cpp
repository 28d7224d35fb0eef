// editgate: black-box knowledge-editing middleware and evaluation harness.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "editgate/augment.hpp"
#include "editgate/core_types.hpp"
#include "editgate/edit_memory.hpp"
#include "editgate/errors.hpp"
#include "editgate/eval_harness.hpp"
#include "editgate/gateway.hpp"
#include "editgate/metrics.hpp"

using namespace editgate;

namespace {

// Loads a scripted mock from JSON: {"role": {"rules": [{"match": "substring",
// "pattern": p, "response": r}...], "default": d}}. Used for offline runs.
std::shared_ptr<ModelClient> make_client(const std::string& mock_path, const std::string& role,
                                         bool have_endpoint, bool warn = true) {
    if (mock_path.empty()) {
        if (!have_endpoint && warn)
            std::cerr << "warning: no endpoint configured for role " << role << "\n";
        return std::make_shared<HttpModelClient>();
    }
    std::ifstream in(mock_path);
    if (!in) throw IoError("cannot open mock script: " + mock_path);
    nlohmann::json spec = nlohmann::json::parse(in);
    auto mock = std::make_shared<MockModelClient>();
    if (spec.contains(role)) {
        const auto& section = spec[role];
        for (const auto& rule : section.value("rules", nlohmann::json::array())) {
            std::string match = rule.value("match", "substring");
            MatchKind kind = match == "exact" ? MatchKind::Exact : MatchKind::Substring;
            mock->register_script(kind, rule.at("pattern").get<std::string>(),
                                  rule.at("response").get<std::string>());
        }
        if (section.contains("default"))
            mock->set_default(section["default"].get<std::string>());
    }
    return mock;
}

std::shared_ptr<EmbeddingProvider> make_embedder(const GatewayConfig& config, bool offline) {
    if (!offline && !config.embed_url.empty())
        return std::make_shared<HttpEmbedder>(config.embed_url);
    return std::make_shared<HashEmbedder>(384);
}

std::unique_ptr<NliProvider> make_nli(const GatewayConfig& config, bool offline) {
    if (!offline && !config.nli_url.empty())
        return std::make_unique<HttpNli>(config.nli_url);
    return std::make_unique<SubstringNli>();
}

std::shared_ptr<EditMemory> open_memory(const GatewayConfig& config,
                                        std::shared_ptr<EmbeddingProvider> embedder) {
    if (config.memory_path) {
        std::ifstream probe(*config.memory_path);
        if (probe)
            return std::make_shared<EditMemory>(
                EditMemory::load(*config.memory_path, embedder));
    }
    return std::make_shared<EditMemory>(embedder);
}

int fail(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Black-box knowledge-editing middleware and evaluation harness"};
    app.require_subcommand(1);

    std::string mock_path;
    app.add_option("--mock-models", mock_path,
                   "JSON script file replacing all model endpoints (offline mode)");

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP middleware service");
    std::string bind = "127.0.0.1";
    int port = 8080;
    bool strict = false;
    std::string editor_name = "";
    serve_cmd->add_option("--bind", bind, "Bind address");
    serve_cmd->add_option("--port", port, "Port");
    serve_cmd->add_flag("--strict", strict, "Fail fast on unreachable endpoints");
    serve_cmd->add_option("--editor", editor_name, "Editor kind");

    // edits
    auto* edits_cmd = app.add_subcommand("edits", "Manage the edit memory");
    edits_cmd->require_subcommand(1);
    auto* edits_add = edits_cmd->add_subcommand("add", "Add one edit (old >> new || prompt)");
    std::string raw_edit;
    edits_add->add_option("edit", raw_edit, "Raw edit string")->required();
    auto* edits_list = edits_cmd->add_subcommand("list", "List stored edits");
    auto* edits_import = edits_cmd->add_subcommand("import", "Import edits from a file");
    std::string import_path;
    edits_import->add_option("file", import_path, "Persistence file")->required();
    auto* edits_export = edits_cmd->add_subcommand("export", "Export edits to a file");
    std::string export_path;
    edits_export->add_option("file", export_path, "Destination file")->required();

    // respond
    auto* respond_cmd = app.add_subcommand("respond", "Answer one query through an editor");
    std::string query;
    std::string respond_editor = "";
    respond_cmd->add_option("-q,--query", query, "User query")->required();
    respond_cmd->add_option("--editor", respond_editor, "Editor kind");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Evaluation harness");
    eval_cmd->require_subcommand(1);
    std::string dataset_path, eval_editor = "postedit", out_dir = "";
    uint64_t seed = 0;
    std::vector<size_t> sizes{1, 10, 100, 1000};
    std::optional<size_t> memory_size;
    size_t memory_size_raw = 0;
    auto* eval_run_cmd = eval_cmd->add_subcommand("run", "Run one editor over a dataset");
    eval_run_cmd->add_option("--dataset", dataset_path, "Dataset JSONL file")->required();
    eval_run_cmd->add_option("--editor", eval_editor, "Editor kind");
    auto* mem_opt =
        eval_run_cmd->add_option("--memory-size", memory_size_raw, "Distractor memory size");
    eval_run_cmd->add_option("--seed", seed, "Subset sampling seed");
    eval_run_cmd->add_option("--out", out_dir, "Run directory for report + traces");
    auto* eval_scaling_cmd =
        eval_cmd->add_subcommand("memory-scaling", "Evaluate across memory sizes");
    eval_scaling_cmd->add_option("--dataset", dataset_path, "Dataset JSONL file")->required();
    eval_scaling_cmd->add_option("--editor", eval_editor, "Editor kind");
    eval_scaling_cmd->add_option("--sizes", sizes, "Memory sizes")->delimiter(',');
    eval_scaling_cmd->add_option("--seed", seed, "Subset sampling seed");
    eval_scaling_cmd->add_option("--out", out_dir, "Run directory for reports");
    auto* eval_compare_cmd = eval_cmd->add_subcommand("compare", "Compare several editors");
    std::vector<std::string> kinds{"postedit", "prompt", "ike", "serac"};
    eval_compare_cmd->add_option("--dataset", dataset_path, "Dataset JSONL file")->required();
    eval_compare_cmd->add_option("--editors", kinds, "Editor kinds to compare")->delimiter(',');
    eval_compare_cmd->add_option("--seed", seed, "Subset sampling seed");

    // augment
    auto* augment_cmd = app.add_subcommand("augment", "Training-data augmentation pipeline");
    std::string aug_dataset, run_dir = ".", stage = "export";
    augment_cmd->add_option("--dataset", aug_dataset, "Dataset JSONL file")->required();
    augment_cmd->add_option("--run-dir", run_dir, "Run directory");
    augment_cmd
        ->add_option("--stage", stage, "Pipeline stage: original|edited|filter|export")
        ->check(CLI::IsMember({"original", "edited", "filter", "export"}));

    double serac_threshold = 0.7;
    size_t ike_demos = 32;
    app.add_option("--serac-threshold", serac_threshold, "SERAC scope threshold");
    app.add_option("--ike-demos", ike_demos, "IKE demonstration count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        GatewayConfig config = GatewayConfig::from_env();
        config.serac_threshold = serac_threshold;
        config.ike_demo_count = ike_demos;
        bool offline = !mock_path.empty();

        auto embedder = make_embedder(config, offline);
        auto nli = make_nli(config, offline);
        auto memory = open_memory(config, embedder);
        bool needs_models = !*edits_cmd;  // edit administration never calls a model
        auto base = make_client(mock_path, "base", !config.base_ref.endpoint.empty(), needs_models);
        auto post_editor = make_client(mock_path, "post_editor",
                                       !config.post_editor_ref.endpoint.empty(), needs_models);
        auto surrogate = post_editor;

        if (*serve_cmd) {
            config.bind_address = bind;
            config.port = port;
            config.strict = strict && !offline;
            if (!editor_name.empty()) config.editor = editor_kind_from_string(editor_name);
            GatewayService service(config, memory, base, post_editor, surrogate);
            std::cerr << "listening on " << bind << ":" << port << "\n";
            return service.serve();
        }

        if (*edits_cmd) {
            if (!config.memory_path)
                return fail("EG_MEMORY_PATH must be set for edit administration");
            GatewayService service(config, memory, base, post_editor, surrogate);
            if (*edits_add) {
                std::cout << service.add_edit(raw_edit) << "\n";
            } else if (*edits_list) {
                for (const auto& e : service.list_edits())
                    std::cout << e.edit_id << "\t" << e.raw << "\n";
            } else if (*edits_import) {
                EditMemory imported = EditMemory::load(import_path, embedder);
                for (const auto& e : imported.edits()) memory->add_edit(e);
                memory->save(*config.memory_path);
                std::cout << memory->size() << " edits\n";
            } else if (*edits_export) {
                memory->save(export_path);
                std::cout << memory->size() << " edits\n";
            }
            return 0;
        }

        if (*respond_cmd) {
            GatewayService service(config, memory, base, post_editor, surrogate);
            std::optional<EditorKind> kind;
            if (!respond_editor.empty()) kind = editor_kind_from_string(respond_editor);
            auto result = service.respond(query, kind);
            std::cout << result.response << "\n";
            return 0;
        }

        if (*eval_cmd) {
            auto dataset = parse_dataset_file(dataset_path);
            HarnessContext hctx;
            hctx.retrieval_embedder = embedder;
            hctx.metric_embedder = embedder.get();
            hctx.nli = nli.get();
            hctx.base_client = base.get();
            hctx.post_editor_client = post_editor.get();
            hctx.surrogate_client = surrogate.get();
            hctx.base_ref = config.base_ref;
            hctx.post_editor_ref = config.post_editor_ref;
            hctx.surrogate_ref = config.surrogate_ref;
            hctx.ike_demos = build_ike_demos(dataset);
            hctx.ike_demo_count = config.ike_demo_count;
            hctx.serac_threshold = config.serac_threshold;

            EvalConfig econfig;
            econfig.seed = seed;

            if (*eval_run_cmd) {
                econfig.editor = editor_kind_from_string(eval_editor);
                if (mem_opt->count() > 0) econfig.memory_size = memory_size_raw;
                if (!out_dir.empty()) econfig.trace_path = out_dir + "/trace.jsonl";
                EvalRun run = run_eval(dataset, hctx, econfig);
                std::cout << format_report_table(run.report, eval_editor);
                if (!out_dir.empty()) {
                    std::ofstream out(out_dir + "/report.json");
                    out << report_to_json(run.report) << "\n";
                }
            } else if (*eval_scaling_cmd) {
                econfig.editor = editor_kind_from_string(eval_editor);
                auto runs = run_memory_scaling(dataset, hctx, econfig, sizes);
                std::cout << format_scaling(runs);
                if (!out_dir.empty()) {
                    std::ofstream out(out_dir + "/scaling.json");
                    out << scaling_to_json(runs) << "\n";
                }
            } else if (*eval_compare_cmd) {
                std::vector<EditorKind> editor_kinds;
                for (const auto& k : kinds) editor_kinds.push_back(editor_kind_from_string(k));
                auto cells = compare_editors(dataset, hctx, econfig, editor_kinds);
                std::cout << format_comparison(cells);
            }
            return 0;
        }

        if (*augment_cmd) {
            auto dataset = parse_dataset_file(aug_dataset);
            auto records = wrap_records(dataset);
            auto augmenter =
                make_client(mock_path, "augmenter", !config.augmenter_ref.endpoint.empty());
            AugmentPipeline pipeline(*base, config.base_ref, *augmenter, config.augmenter_ref,
                                     *nli, *embedder);
            AugmentStats stats;
            stats = pipeline.augment_original(records);
            if (stage == "original") {
                std::cout << "filled=" << stats.filled << " skipped=" << stats.skipped
                          << " failed=" << stats.failed << "\n";
                return 0;
            }
            pipeline.augment_edited(records);
            if (stage == "edited") return 0;
            stats = pipeline.filter(records);
            if (stage == "filter") {
                std::cout << "kept=" << stats.kept << " dropped=" << stats.dropped << "\n";
                return 0;
            }
            size_t written = export_sft(records, run_dir + "/kept.jsonl");
            write_manifest(run_dir + "/manifest.json", stats, config.base_ref.model_name,
                           config.augmenter_ref.model_name, 0.5);
            std::cout << written << " records exported\n";
            return 0;
        }
    } catch (const Error& e) {
        return fail(e.what());
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return 0;
}
