#include "editgate/core_types.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "editgate/errors.hpp"

namespace editgate {

using nlohmann::json;

ScopeLabel scope_of(QueryType t) {
    return t == QueryType::Oos ? ScopeLabel::Oos : ScopeLabel::Ins;
}

const char* to_string(QueryType t) {
    switch (t) {
        case QueryType::Simple: return "simple";
        case QueryType::Rephrase: return "rephrase";
        case QueryType::Oos: return "oos";
    }
    return "simple";
}

QueryType query_type_from_string(const std::string& s) {
    std::string lower = s;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "simple") return QueryType::Simple;
    if (lower == "rephrase") return QueryType::Rephrase;
    if (lower == "oos") return QueryType::Oos;
    throw UnknownQueryType("unknown query_type: " + s);
}

std::string trim(const std::string& s) {
    size_t begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    size_t end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

namespace {

// Finds the single occurrence of `sep` in `s`; throws if absent or repeated.
size_t find_unique(const std::string& s, const std::string& sep, const std::string& raw) {
    size_t first = s.find(sep);
    if (first == std::string::npos)
        throw MalformedEdit("missing '" + sep + "' separator in edit: " + raw);
    if (s.find(sep, first + sep.size()) != std::string::npos)
        throw MalformedEdit("duplicated '" + sep + "' separator in edit: " + raw);
    return first;
}

}  // namespace

Edit parse_edit_string(const std::string& raw) {
    size_t bar = find_unique(raw, "||", raw);
    std::string head = raw.substr(0, bar);
    std::string prompt = trim(raw.substr(bar + 2));
    size_t arrow = find_unique(head, ">>", raw);

    Edit edit;
    edit.old_object = trim(head.substr(0, arrow));
    edit.new_object = trim(head.substr(arrow + 2));
    edit.prompt = prompt;
    edit.raw = raw;

    if (edit.old_object.empty() || edit.new_object.empty() || edit.prompt.empty())
        throw MalformedEdit("empty field in edit: " + raw);
    if (edit.old_object == edit.new_object)
        throw MalformedEdit("old and new object are identical in edit: " + raw);
    return edit;
}

namespace {

QueryRecord record_from_json(const json& obj, size_t line_no) {
    QueryRecord rec;
    if (!obj.is_object()) throw ParseError("record is not an object", line_no);
    if (!obj.contains("edit") || !obj["edit"].is_string())
        throw ParseError("missing string field 'edit'", line_no);
    if (!obj.contains("query") || !obj["query"].is_string())
        throw ParseError("missing string field 'query'", line_no);
    if (!obj.contains("query_type") || !obj["query_type"].is_string())
        throw ParseError("missing string field 'query_type'", line_no);

    try {
        rec.edit = parse_edit_string(obj["edit"].get<std::string>());
    } catch (const MalformedEdit& e) {
        throw ParseError(e.what(), line_no);
    }
    if (obj.contains("edit_id")) rec.edit.edit_id = obj["edit_id"].get<int64_t>();
    rec.query = obj["query"].get<std::string>();
    rec.query_type = query_type_from_string(obj["query_type"].get<std::string>());

    for (auto& [key, value] : obj.items()) {
        if (key == "edit_id" || key == "edit" || key == "query" || key == "query_type") continue;
        if (key == "original_response" || key.rfind("original_response_by_", 0) == 0) {
            rec.original_response = value.get<std::string>();
        } else if (key == "edited_response" || key.rfind("edited_response_by_", 0) == 0) {
            rec.edited_response = value.get<std::string>();
        } else {
            rec.extra[key] = value.is_string() ? value.get<std::string>() : value.dump();
        }
    }
    return rec;
}

}  // namespace

std::vector<QueryRecord> parse_dataset_text(const std::string& text) {
    std::vector<QueryRecord> records;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json obj = json::parse(line, nullptr, false);
        if (obj.is_discarded()) throw ParseError("invalid JSON", line_no);
        records.push_back(record_from_json(obj, line_no));
    }
    return records;
}

std::vector<QueryRecord> parse_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset_text(buf.str());
}

}  // namespace editgate
