#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace flg {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kVersion = "0.1.0";

enum class Format { Text, Json };

// Structured result of one CLI operation plus provenance. The JSON document
// lists the result fields first, then a "provenance" object; scans emit their
// records as JSON lines ahead of that document.
struct Report {
  std::string command;
  Json parameters = Json::object();
  Json result = Json::object();
  std::vector<Json> records;
  std::optional<double> runtime_ms;  // only when timing was requested
  std::vector<std::string> text;     // human-readable rendering, not serialized

  friend bool operator==(const Report& a, const Report& b) {
    return a.command == b.command && a.parameters == b.parameters && a.result == b.result &&
           a.records == b.records && a.runtime_ms == b.runtime_ms;
  }
};

Json to_json(const Report& r);
Report report_from_json(const Json& document);

// Rendered output, newline-terminated.
std::string emit_report(const Report& r, Format format);
// Inverse of emit_report(r, Format::Json), text lines excepted.
Report parse_report(std::string_view emitted);

}  // namespace flg
