#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace flagcurv::cli {

enum class Format { Table, Json };

using Json = nlohmann::ordered_json;

/// One output record; `kind` becomes the "record" field.
struct Record {
  std::string kind;
  Json fields = Json::object();
};

/// JSON: one object per line. Table: "kind" headings followed by aligned key/value rows.
/// Numbers are printed by the same routine in both formats.
std::string render(const std::vector<Record>& records, Format format);

}  // namespace flagcurv::cli
