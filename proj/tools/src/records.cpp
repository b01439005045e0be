#include "flagcurv/cli/records.hpp"

#include <algorithm>
#include <sstream>

namespace flagcurv::cli {

namespace {

// Scalars go through the JSON serializer so both formats print the same digits.
std::string cell(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

std::string render(const std::vector<Record>& records, Format format) {
  std::ostringstream out;
  if (format == Format::Json) {
    for (const auto& r : records) {
      Json line = Json::object();
      line["record"] = r.kind;
      for (const auto& [k, v] : r.fields.items()) line[k] = v;
      out << line.dump() << '\n';
    }
    return out.str();
  }
  for (size_t n = 0; n < records.size(); ++n) {
    const auto& r = records[n];
    if (n) out << '\n';
    out << "[" << r.kind << "]\n";
    size_t width = 0;
    for (const auto& [k, _] : r.fields.items()) width = std::max(width, k.size());
    for (const auto& [k, v] : r.fields.items())
      out << "  " << k << std::string(width - k.size() + 2, ' ') << cell(v) << '\n';
  }
  return out.str();
}

}  // namespace flagcurv::cli
