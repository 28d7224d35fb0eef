#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace editgate {

/// One knowledge update: the question realizing subject+relation, the old
/// answer object and the new one. `raw` keeps the serialized
/// `old >> new || prompt` form verbatim.
struct Edit {
    int64_t edit_id = 0;
    std::string prompt;
    std::string old_object;
    std::string new_object;
    std::string raw;

    bool operator==(const Edit&) const = default;
};

enum class QueryType { Simple, Rephrase, Oos };

enum class ScopeLabel { Ins, Oos };

ScopeLabel scope_of(QueryType t);

const char* to_string(QueryType t);
QueryType query_type_from_string(const std::string& s);  // case-insensitive

/// A test/train query bound to an edit. Responses are optional until the
/// corresponding pipeline stage fills them in.
struct QueryRecord {
    Edit edit;
    std::string query;
    QueryType query_type = QueryType::Simple;
    std::optional<std::string> original_response;
    std::optional<std::string> edited_response;
    std::map<std::string, std::string> extra;  // unknown fields, passed through

    bool has_both_responses() const {
        return original_response.has_value() && edited_response.has_value();
    }
};

/// Final output of an editor for one query.
struct ResponsePair {
    std::string original;
    std::string edited;
    bool was_edited = false;
    std::optional<int64_t> matched_edit_id;
    double latency_ms = 0.0;
};

/// Parses `old >> new || prompt`. Throws MalformedEdit on missing/duplicated
/// separators, empty fields, or old == new.
Edit parse_edit_string(const std::string& raw);

/// Parses a JSONL dataset file (one record per line, Appendix-style field
/// names; `original_response_by_*` accepted as alias of `original_response`).
std::vector<QueryRecord> parse_dataset_file(const std::string& path);

/// Same, from an already-loaded string (used by tests and the gateway).
std::vector<QueryRecord> parse_dataset_text(const std::string& text);

std::string trim(const std::string& s);

}  // namespace editgate
