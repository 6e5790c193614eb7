#include "flg/report.hpp"

#include <sstream>

#include "flg/error.hpp"

namespace flg {

Json to_json(const Report& r) {
  Json doc = r.result;
  Json prov = Json::object();
  prov["command"] = r.command;
  prov["parameters"] = r.parameters;
  prov["version"] = kVersion;
  if (r.runtime_ms) prov["runtime_ms"] = *r.runtime_ms;
  doc["provenance"] = std::move(prov);
  return doc;
}

Report report_from_json(const Json& document) {
  if (!document.is_object() || !document.contains("provenance")) {
    throw Error(ErrorKind::SyntaxError, "report document without provenance");
  }
  Report r;
  const Json& prov = document.at("provenance");
  r.command = prov.at("command").get<std::string>();
  r.parameters = prov.at("parameters");
  if (prov.contains("runtime_ms")) r.runtime_ms = prov.at("runtime_ms").get<double>();
  for (auto it = document.begin(); it != document.end(); ++it) {
    if (it.key() != "provenance") r.result[it.key()] = it.value();
  }
  return r;
}

std::string emit_report(const Report& r, Format format) {
  std::string out;
  if (format == Format::Text) {
    for (const std::string& line : r.text) out += line + "\n";
    return out;
  }
  for (const Json& rec : r.records) out += rec.dump() + "\n";
  out += to_json(r).dump() + "\n";
  return out;
}

Report parse_report(std::string_view emitted) {
  std::vector<Json> lines;
  std::istringstream in{std::string(emitted)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(Json::parse(line));
  }
  if (lines.empty()) throw Error(ErrorKind::SyntaxError, "empty report");
  Report r = report_from_json(lines.back());
  lines.pop_back();
  r.records = std::move(lines);
  return r;
}

}  // namespace flg
