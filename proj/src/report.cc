#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "stylo/error.h"
#include "stylo/experiments.h"
#include "stylo/numeric_text.h"

namespace stylo {
namespace {

constexpr std::string_view kDelimitedHeader =
    "setting\tlang\tmodel\tinstances\truns\taccuracy_mean\taccuracy_std\tper_run";

std::string Percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", fraction * 100.0);
  return buf;
}

std::string Upper(std::string_view s) {
  std::string out;
  for (char c : s) {
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  return out;
}

void EchoSpec(const ResultTable& table, std::ostringstream& out) {
  for (const auto& [key, value] : table.spec_echo.Echo()) {
    out << "# " << key << '=' << value << '\n';
  }
}

std::string EmitText(const ResultTable& table) {
  std::ostringstream out;
  EchoSpec(table, out);
  std::vector<ModelKind> models = table.spec_echo.models;
  std::sort(models.begin(), models.end());
  out << "Lang\tIns";
  for (ModelKind k : models) out << '\t' << ModelKindName(k);
  out << '\n';

  std::map<std::string, std::vector<const CellResult*>> rows;
  for (const auto& cell : table.cells) rows[cell.language].push_back(&cell);
  for (const auto& [lang, cells] : rows) {
    out << Upper(lang) << '\t' << cells.front()->instance_count;
    for (ModelKind k : models) {
      auto it = std::find_if(cells.begin(), cells.end(),
                             [k](const CellResult* c) { return c->model == k; });
      out << '\t';
      if (it == cells.end()) {
        out << '-';
        continue;
      }
      out << Percent((*it)->accuracy_mean);
      if ((*it)->per_run_accuracies.size() > 1) {
        out << " (" << Percent((*it)->accuracy_std) << ')';
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string EmitDelimited(const ResultTable& table) {
  std::ostringstream out;
  EchoSpec(table, out);
  out << kDelimitedHeader << '\n';
  for (const auto& cell : table.cells) {
    out << SettingName(table.setting) << '\t' << cell.language << '\t'
        << ModelKindName(cell.model) << '\t' << cell.instance_count << '\t'
        << cell.per_run_accuracies.size() << '\t'
        << FormatDouble(cell.accuracy_mean) << '\t'
        << FormatDouble(cell.accuracy_std) << '\t';
    for (size_t i = 0; i < cell.per_run_accuracies.size(); ++i) {
      if (i) out << ',';
      out << FormatDouble(cell.per_run_accuracies[i]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string EmitReport(const ResultTable& table, ReportFormat format) {
  return format == ReportFormat::kText ? EmitText(table) : EmitDelimited(table);
}

ResultTable ParseDelimitedReport(std::istream& in) {
  ResultTable table;
  std::string line;
  bool header_seen = false;
  size_t line_no = 0;
  std::vector<ModelKind> models;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("#")) {
      // Spec echo: only the fields needed to re-render the table.
      const auto eq = line.find('=');
      if (eq == std::string::npos || header_seen) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "setting" || key == "models" || key == "runs" ||
          key == "base_seed" || key == "hidden_width" || key == "languages" ||
          key == "cl.holdout") {
        try {
          ApplyConfigValue(table.spec_echo, key, value);
        } catch (const ConfigError& e) {
          throw DataError(std::string("report: ") + e.what());
        }
      }
      continue;
    }
    if (!header_seen) {
      if (line != kDelimitedHeader) throw DataError("report: bad header line");
      header_seen = true;
      continue;
    }
    const auto f = SplitOn(line, '\t');
    if (f.size() != 8) {
      throw DataError("report line " + std::to_string(line_no) +
                      ": expected 8 fields");
    }
    const auto setting = ParseSetting(f[0]);
    const auto model = ParseModelKind(f[2]);
    if (!setting || !model) {
      throw DataError("report line " + std::to_string(line_no) +
                      ": bad setting or model");
    }
    table.setting = *setting;
    CellResult cell;
    cell.language = f[1];
    cell.model = *model;
    cell.instance_count = ParseInteger<size_t>(f[3]);
    const size_t runs = ParseInteger<size_t>(f[4]);
    cell.accuracy_mean = ParseDouble(f[5]);
    cell.accuracy_std = ParseDouble(f[6]);
    if (!f[7].empty()) {
      for (auto v : SplitOn(f[7], ',')) {
        cell.per_run_accuracies.push_back(ParseDouble(v));
      }
    }
    if (cell.per_run_accuracies.size() != runs) {
      throw DataError("report line " + std::to_string(line_no) +
                      ": run count does not match the per-run list");
    }
    table.cells.push_back(std::move(cell));
  }
  if (!header_seen) throw DataError("report: missing header line");
  if (table.cells.empty()) {
    table.setting = table.spec_echo.setting;
  } else {
    table.spec_echo.setting = table.setting;
  }
  return table;
}

}  // namespace stylo
