#include <istream>
#include <ostream>

#include "stylo/error.h"
#include "stylo/features.h"
#include "stylo/numeric_text.h"

namespace stylo {
namespace {

constexpr std::string_view kMagic = "#stylo-features schema_version=";

std::string ReadLine(std::istream& in, size_t& line_no) {
  std::string line;
  if (!std::getline(in, line)) return {};
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void WriteFeatureMatrix(const FeatureMatrix& matrix, std::ostream& out) {
  out << kMagic << matrix.schema.version << '\n';
  out << "id\tlang\tgender";
  for (const auto& name : matrix.schema.names) out << '\t' << name;
  out << '\n';
  for (const auto& row : matrix.rows) {
    out << row.id << '\t' << row.language << '\t' << GenderToken(row.gender);
    for (double v : row.features.values) out << '\t' << FormatDouble(v);
    out << '\n';
  }
}

FeatureMatrix ReadFeatureMatrix(std::istream& in) {
  size_t line_no = 0;
  const std::string magic = ReadLine(in, line_no);
  if (!magic.starts_with(kMagic)) {
    throw DataError("feature matrix: missing schema header line");
  }
  FeatureMatrix m;
  m.schema.version = ParseInteger<int>(std::string_view(magic).substr(kMagic.size()));

  const std::string header = ReadLine(in, line_no);
  auto cols = SplitOn(header, '\t');
  if (cols.size() < 3 || cols[0] != "id" || cols[1] != "lang" ||
      cols[2] != "gender") {
    throw DataError("feature matrix: bad column header");
  }
  for (size_t i = 3; i < cols.size(); ++i) m.schema.names.emplace_back(cols[i]);

  std::string line;
  while (true) {
    line = ReadLine(in, line_no);
    if (line.empty()) {
      if (!in) break;
      continue;
    }
    auto fields = SplitOn(line, '\t');
    if (fields.size() != m.schema.size() + 3) {
      throw DataError("feature matrix line " + std::to_string(line_no) +
                      ": expected " + std::to_string(m.schema.size() + 3) +
                      " fields, got " + std::to_string(fields.size()));
    }
    FeatureRow row;
    row.id = fields[0];
    row.language = fields[1];
    auto gender = ParseGenderToken(fields[2]);
    if (!gender) {
      throw DataError("feature matrix line " + std::to_string(line_no) +
                      ": bad gender token");
    }
    row.gender = *gender;
    row.features.schema_version = m.schema.version;
    for (size_t i = 3; i < fields.size(); ++i) {
      row.features.values.push_back(ParseDouble(fields[i]));
    }
    m.rows.push_back(std::move(row));
  }
  return m;
}

}  // namespace stylo
