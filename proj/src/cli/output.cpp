#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "mtf/cli.hpp"

namespace mtf::cli {

std::string format_number(double x) {
  if (x == 0.0) return "0";  // folds -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string render_csv(const Table& table) {
  std::ostringstream os;
  for (const auto& [key, value] : table.meta) os << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Table& table) {
  using nlohmann::ordered_json;
  ordered_json doc;
  ordered_json meta = ordered_json::object();
  for (const auto& [key, value] : table.meta) meta[key] = value;
  doc["meta"] = meta;
  if (!table.summary_json.empty()) doc["summary"] = ordered_json::parse(table.summary_json);
  doc["columns"] = table.columns;
  ordered_json rows = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json r = ordered_json::array();
    for (const auto& cell : row) {
      // Cells are pre-formatted; numbers round-trip through their 9-digit text.
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end && *end == '\0' && !cell.empty()) {
        r.push_back(v);
      } else {
        r.push_back(cell);
      }
    }
    rows.push_back(std::move(r));
  }
  doc["rows"] = rows;
  return doc.dump(2) + "\n";
}

}  // namespace mtf::cli
