#include "editgate/gateway.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "editgate/errors.hpp"

namespace editgate {

using nlohmann::json;

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

}  // namespace

GatewayConfig GatewayConfig::from_env() {
    GatewayConfig c;
    c.base_ref.endpoint = env_or("EG_BASE_URL", "");
    c.base_ref.api_key = env_or("EG_BASE_KEY", "");
    c.base_ref.model_name = env_or("EG_BASE_MODEL", "");
    c.post_editor_ref.endpoint = env_or("EG_POSTEDITOR_URL", "");
    c.post_editor_ref.api_key = env_or("EG_POSTEDITOR_KEY", "");
    c.post_editor_ref.model_name = env_or("EG_POSTEDITOR_MODEL", "");
    c.augmenter_ref.endpoint = env_or("EG_AUGMENTER_URL", "");
    c.augmenter_ref.api_key = env_or("EG_AUGMENTER_KEY", "");
    c.augmenter_ref.model_name = env_or("EG_AUGMENTER_MODEL", "");
    c.surrogate_ref = c.post_editor_ref;
    c.surrogate_ref.role = ModelRole::Surrogate;
    c.embed_url = env_or("EG_EMBED_URL", "");
    c.nli_url = env_or("EG_NLI_URL", "");
    std::string memory_path = env_or("EG_MEMORY_PATH", "");
    if (!memory_path.empty()) c.memory_path = memory_path;
    c.editor = editor_kind_from_string(env_or("EG_EDITOR", "postedit"));
    return c;
}

GatewayService::GatewayService(GatewayConfig config, std::shared_ptr<EditMemory> memory,
                               std::shared_ptr<ModelClient> base_client,
                               std::shared_ptr<ModelClient> post_editor_client,
                               std::shared_ptr<ModelClient> surrogate_client)
    : config_(std::move(config)), memory_(std::move(memory)),
      base_client_(std::move(base_client)), post_editor_client_(std::move(post_editor_client)),
      surrogate_client_(std::move(surrogate_client)) {}

EditorContext GatewayService::make_editor_context() {
    EditorContext ctx;
    ctx.memory = memory_.get();
    ctx.base_client = base_client_.get();
    ctx.post_editor_client = post_editor_client_.get();
    ctx.surrogate_client = surrogate_client_.get();
    ctx.base_ref = config_.base_ref;
    ctx.post_editor_ref = config_.post_editor_ref;
    ctx.surrogate_ref = config_.surrogate_ref;
    ctx.ike_demos = &ike_demos_;
    ctx.ike_demo_count = config_.ike_demo_count;
    ctx.serac_threshold = config_.serac_threshold;
    return ctx;
}

GatewayService::RespondResult GatewayService::respond(const std::string& query,
                                                      std::optional<EditorKind> editor_kind) {
    auto editor = make_editor(editor_kind.value_or(config_.editor), make_editor_context());
    EditorDecision decision = editor->respond(query);

    RespondResult result;
    result.response = decision.response.edited;
    result.edited = decision.response.was_edited;
    result.edit_id = decision.response.was_edited ? decision.response.matched_edit_id
                                                  : std::nullopt;
    {
        std::lock_guard lock(mutex_);
        result.trace_id = "t" + std::to_string(++trace_counter_);
    }
    return result;
}

int64_t GatewayService::add_edit(const std::string& raw_edit) {
    Edit edit = parse_edit_string(raw_edit);
    if (edit.edit_id == 0) {
        // Assign the next free id when the raw form carries none.
        int64_t max_id = 0;
        for (const auto& e : memory_->edits()) max_id = std::max(max_id, e.edit_id);
        edit.edit_id = max_id + 1;
    }
    memory_->add_edit(edit);
    if (config_.memory_path) memory_->save(*config_.memory_path);
    return edit.edit_id;
}

std::vector<Edit> GatewayService::list_edits() const { return memory_->edits(); }

bool GatewayService::delete_edit(int64_t edit_id) {
    bool removed = memory_->remove_edit(edit_id);
    if (removed && config_.memory_path) memory_->save(*config_.memory_path);
    return removed;
}

namespace {

void send_error(httplib::Response& res, int status, const std::string& message) {
    res.status = status;
    res.set_content(json{{"error", message}}.dump(), "application/json");
}

}  // namespace

void GatewayService::install_routes(httplib::Server& server) {
    auto authorized = [this](const httplib::Request& req) {
        if (!config_.admin_token) return true;
        return req.get_header_value("Authorization") == "Bearer " + *config_.admin_token;
    };

    server.Get("/healthz", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(json{{"status", "ok"}}.dump(), "application/json");
    });

    server.Post("/v1/respond", [this](const httplib::Request& req, httplib::Response& res) {
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.contains("query") || !body["query"].is_string())
            return send_error(res, 400, "body must carry a string 'query'");
        std::optional<EditorKind> kind;
        try {
            if (body.contains("editor"))
                kind = editor_kind_from_string(body["editor"].get<std::string>());
            RespondResult r = respond(body["query"].get<std::string>(), kind);
            json out{{"response", r.response}, {"edited", r.edited}, {"trace_id", r.trace_id}};
            if (r.edit_id) out["edit_id"] = *r.edit_id;
            res.set_content(out.dump(), "application/json");
        } catch (const EmptyMemory&) {
            send_error(res, 409, "edit memory is empty");
        } catch (const Error& e) {
            send_error(res, 502, e.what());
        }
    });

    server.Post("/v1/edits", [this, authorized](const httplib::Request& req,
                                                httplib::Response& res) {
        if (!authorized(req)) return send_error(res, 401, "unauthorized");
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded() || !body.contains("edit") || !body["edit"].is_string())
            return send_error(res, 400, "body must carry a string 'edit'");
        try {
            int64_t id = add_edit(body["edit"].get<std::string>());
            res.set_content(json{{"edit_id", id}}.dump(), "application/json");
        } catch (const MalformedEdit& e) {
            send_error(res, 400, e.what());
        }
    });

    server.Get("/v1/edits", [this, authorized](const httplib::Request& req,
                                               httplib::Response& res) {
        if (!authorized(req)) return send_error(res, 401, "unauthorized");
        json out = json::array();
        for (const auto& e : list_edits())
            out.push_back({{"edit_id", e.edit_id}, {"edit", e.raw}});
        res.set_content(out.dump(), "application/json");
    });

    server.Delete(R"(/v1/edits/(\d+))", [this, authorized](const httplib::Request& req,
                                                           httplib::Response& res) {
        if (!authorized(req)) return send_error(res, 401, "unauthorized");
        int64_t id = std::stoll(req.matches[1]);
        if (delete_edit(id)) {
            res.set_content(json{{"deleted", id}}.dump(), "application/json");
        } else {
            send_error(res, 404, "no such edit");
        }
    });
}

int GatewayService::serve() {
    if (config_.strict) {
        // Fail fast when a required endpoint does not answer /healthz-style
        // probes. Lazy mode defers errors to the first request.
        for (const ModelRef* ref : {&config_.base_ref, &config_.post_editor_ref}) {
            if (ref->endpoint.empty())
                throw Error(std::string("missing endpoint for role ") + to_string(ref->role));
            httplib::Client probe(ref->endpoint);
            probe.set_connection_timeout(2, 0);
            if (!probe.Get("/")) throw Error("unreachable endpoint: " + ref->endpoint);
        }
    }
    httplib::Server server;
    install_routes(server);
    return server.listen(config_.bind_address, config_.port) ? 0 : 1;
}

}  // namespace editgate
