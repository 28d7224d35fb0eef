#include "editgate/edit_memory.hpp"

#include <algorithm>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "editgate/errors.hpp"

namespace editgate {

EditMemory::EditMemory(std::shared_ptr<EmbeddingProvider> provider, KeyPolicy key_policy)
    : provider_(std::move(provider)), key_policy_(key_policy) {}

EditMemory::EditMemory(EditMemory&& other) noexcept {
    std::unique_lock lock(other.mutex_);
    provider_ = std::move(other.provider_);
    key_policy_ = other.key_policy_;
    target_edit_id_ = other.target_edit_id_;
    entries_ = std::move(other.entries_);
}

EditMemory& EditMemory::operator=(EditMemory&& other) noexcept {
    if (this != &other) {
        std::scoped_lock lock(mutex_, other.mutex_);
        provider_ = std::move(other.provider_);
        key_policy_ = other.key_policy_;
        target_edit_id_ = other.target_edit_id_;
        entries_ = std::move(other.entries_);
    }
    return *this;
}

std::string EditMemory::key_text(const Edit& edit) const {
    return key_policy_ == KeyPolicy::RawEdit ? edit.raw : edit.prompt;
}

int64_t EditMemory::add_edit(const Edit& edit) {
    MemoryEntry entry{edit, provider_->embed(key_text(edit)), std::chrono::system_clock::now()};
    std::unique_lock lock(mutex_);
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const MemoryEntry& e) { return e.edit.edit_id == edit.edit_id; });
    if (it != entries_.end()) {
        *it = std::move(entry);
    } else {
        entries_.push_back(std::move(entry));
    }
    return edit.edit_id;
}

bool EditMemory::remove_edit(int64_t edit_id) {
    std::unique_lock lock(mutex_);
    auto it = std::find_if(entries_.begin(), entries_.end(),
                           [&](const MemoryEntry& e) { return e.edit.edit_id == edit_id; });
    if (it == entries_.end()) return false;
    entries_.erase(it);
    return true;
}

RetrievalResult EditMemory::retrieve(const std::string& query) const {
    EmbeddingVector q = provider_->embed(query);
    std::shared_lock lock(mutex_);
    if (entries_.empty()) throw EmptyMemory();
    size_t best = 0;
    double best_score = similarity(q, entries_[0].vector, SimilarityKind::Dot);
    for (size_t i = 1; i < entries_.size(); ++i) {
        double score = similarity(q, entries_[i].vector, SimilarityKind::Dot);
        if (score > best_score) {  // strict: ties keep the earlier index
            best_score = score;
            best = i;
        }
    }
    return RetrievalResult{entries_[best].edit, best_score, best};
}

size_t EditMemory::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::vector<Edit> EditMemory::edits() const {
    std::shared_lock lock(mutex_);
    std::vector<Edit> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.edit);
    return out;
}

std::optional<Edit> EditMemory::find(int64_t edit_id) const {
    std::shared_lock lock(mutex_);
    for (const auto& e : entries_)
        if (e.edit.edit_id == edit_id) return e.edit;
    return std::nullopt;
}

void EditMemory::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    std::shared_lock lock(mutex_);
    for (const auto& e : entries_) out << e.edit.edit_id << '\t' << e.edit.raw << '\n';
    if (!out) throw IoError("write failed: " + path);
}

EditMemory EditMemory::load(const std::string& path, std::shared_ptr<EmbeddingProvider> provider,
                            KeyPolicy key_policy) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);
    EditMemory memory(std::move(provider), key_policy);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        size_t tab = line.find('\t');
        if (tab == std::string::npos) throw ParseError("missing tab separator", line_no);
        int64_t id = 0;
        try {
            id = std::stoll(line.substr(0, tab));
        } catch (const std::exception&) {
            throw ParseError("invalid edit_id", line_no);
        }
        Edit edit;
        try {
            edit = parse_edit_string(line.substr(tab + 1));
        } catch (const MalformedEdit& e) {
            throw ParseError(e.what(), line_no);
        }
        edit.edit_id = id;
        memory.add_edit(edit);
    }
    return memory;
}

EditMemory EditMemory::subset(size_t size, uint64_t seed) const {
    std::shared_lock lock(mutex_);
    if (size < 1 || size > entries_.size())
        throw SizeOutOfRange("subset size " + std::to_string(size) + " not in [1, " +
                             std::to_string(entries_.size()) + "]");

    std::vector<size_t> pool;
    std::optional<size_t> target_index;
    for (size_t i = 0; i < entries_.size(); ++i) {
        if (target_edit_id_ && entries_[i].edit.edit_id == *target_edit_id_) {
            target_index = i;
        } else {
            pool.push_back(i);
        }
    }

    std::vector<size_t> chosen;
    if (target_index) chosen.push_back(*target_index);
    std::mt19937_64 rng(seed);
    std::shuffle(pool.begin(), pool.end(), rng);
    for (size_t i = 0; i < pool.size() && chosen.size() < size; ++i) chosen.push_back(pool[i]);
    std::sort(chosen.begin(), chosen.end());  // keep insertion order

    EditMemory result(provider_, key_policy_);
    result.target_edit_id_ = target_edit_id_;
    for (size_t i : chosen) result.add_edit(entries_[i].edit);
    return result;
}

}  // namespace editgate
