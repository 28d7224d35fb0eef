#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "editgate/core_types.hpp"
#include "editgate/embedding.hpp"

namespace editgate {

struct MemoryEntry {
    Edit edit;
    EmbeddingVector vector;
    std::chrono::system_clock::time_point inserted_at;
};

struct RetrievalResult {
    Edit edit;
    double score = 0.0;
    size_t index = 0;
};

/// Which text of an edit is embedded as its retrieval key.
enum class KeyPolicy { RawEdit, PromptOnly };

/// Stores edits with their embeddings; exact linear-scan argmax retrieval
/// under dot-product similarity. Ties break toward the earliest insertion.
/// Readers share, writers are exclusive.
class EditMemory {
public:
    explicit EditMemory(std::shared_ptr<EmbeddingProvider> provider,
                        KeyPolicy key_policy = KeyPolicy::RawEdit);

    EditMemory(EditMemory&& other) noexcept;
    EditMemory& operator=(EditMemory&& other) noexcept;

    /// Inserts (or, for a duplicate edit_id, replaces) an edit. Returns the
    /// edit_id. Visible to retrieval immediately.
    int64_t add_edit(const Edit& edit);

    bool remove_edit(int64_t edit_id);

    RetrievalResult retrieve(const std::string& query) const;

    size_t size() const;
    std::vector<Edit> edits() const;
    std::optional<Edit> find(int64_t edit_id) const;

    /// One edit per line: `edit_id<TAB>raw_edit_string`.
    void save(const std::string& path) const;
    static EditMemory load(const std::string& path, std::shared_ptr<EmbeddingProvider> provider,
                           KeyPolicy key_policy = KeyPolicy::RawEdit);

    /// Deterministic random subset of `size` edits for a given seed; any edit
    /// marked via set_target is always included.
    EditMemory subset(size_t size, uint64_t seed) const;

    void set_target(std::optional<int64_t> edit_id) { target_edit_id_ = edit_id; }

    const EmbeddingProvider& provider() const { return *provider_; }
    std::string key_text(const Edit& edit) const;

private:
    std::shared_ptr<EmbeddingProvider> provider_;
    KeyPolicy key_policy_;
    std::optional<int64_t> target_edit_id_;
    std::vector<MemoryEntry> entries_;
    mutable std::shared_mutex mutex_;
};

}  // namespace editgate
