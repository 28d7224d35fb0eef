#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "editgate/edit_memory.hpp"
#include "editgate/editors.hpp"
#include "editgate/model_client.hpp"

namespace httplib {
class Server;
}

namespace editgate {

/// Runtime configuration; `from_env` reads the EG_* variables.
struct GatewayConfig {
    ModelRef base_ref{ModelRole::Base};
    ModelRef post_editor_ref{ModelRole::PostEditor};
    ModelRef augmenter_ref{ModelRole::Augmenter};
    ModelRef surrogate_ref{ModelRole::Surrogate};
    std::string embed_url;
    std::string nli_url;
    std::optional<std::string> memory_path;
    EditorKind editor = EditorKind::PostEdit;
    double serac_threshold = 0.7;
    size_t ike_demo_count = 32;
    std::string bind_address = "127.0.0.1";
    int port = 8080;
    std::optional<std::string> admin_token;  // bearer auth for /v1/edits when set
    bool strict = false;                     // fail fast on unreachable endpoints

    static GatewayConfig from_env();
};

/// The middleware service: query answering with transparent post-editing and
/// edit administration. Model clients are injected so tests run fully offline.
class GatewayService {
public:
    GatewayService(GatewayConfig config, std::shared_ptr<EditMemory> memory,
                   std::shared_ptr<ModelClient> base_client,
                   std::shared_ptr<ModelClient> post_editor_client,
                   std::shared_ptr<ModelClient> surrogate_client);

    struct RespondResult {
        std::string response;
        bool edited = false;
        std::optional<int64_t> edit_id;
        std::string trace_id;
    };

    /// Handles one query with the configured (or per-request) editor.
    RespondResult respond(const std::string& query, std::optional<EditorKind> editor = {});

    int64_t add_edit(const std::string& raw_edit);
    std::vector<Edit> list_edits() const;
    bool delete_edit(int64_t edit_id);

    EditMemory& memory() { return *memory_; }

    /// Registers all routes on an httplib server. Blocking `serve` wraps this.
    void install_routes(httplib::Server& server);
    /// Blocks serving on config's bind address/port.
    int serve();

private:
    EditorContext make_editor_context();

    GatewayConfig config_;
    std::shared_ptr<EditMemory> memory_;
    std::shared_ptr<ModelClient> base_client_;
    std::shared_ptr<ModelClient> post_editor_client_;
    std::shared_ptr<ModelClient> surrogate_client_;
    std::vector<IkeDemo> ike_demos_;
    uint64_t trace_counter_ = 0;
    std::mutex mutex_;

public:
    void set_ike_demos(std::vector<IkeDemo> demos) { ike_demos_ = std::move(demos); }
};

}  // namespace editgate
