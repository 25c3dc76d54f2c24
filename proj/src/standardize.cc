#include "stylo/standardize.h"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "stylo/error.h"
#include "stylo/numeric_text.h"

namespace stylo {

Standardizer::Standardizer(std::vector<double> means, std::vector<double> stds,
                           int schema_version)
    : means_(std::move(means)),
      stds_(std::move(stds)),
      schema_version_(schema_version) {
  if (means_.size() != stds_.size()) {
    throw ConfigError("standardizer: means/stds length mismatch");
  }
  for (double s : stds_) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ConfigError("standardizer: stds must be finite and non-negative");
    }
  }
}

Standardizer Standardizer::Fit(std::span<const FeatureVector> rows) {
  if (rows.size() < 2) {
    throw DataError("standardizer fit needs at least 2 rows, got " +
                    std::to_string(rows.size()));
  }
  const int version = rows.front().schema_version;
  const size_t dim = rows.front().size();
  for (const auto& r : rows) {
    if (r.schema_version != version) {
      throw DataError("standardizer fit: mixed schema versions");
    }
    if (r.size() != dim) {
      throw DataError("standardizer fit: rows of different length");
    }
  }
  const double n = static_cast<double>(rows.size());
  std::vector<double> means(dim, 0.0);
  for (const auto& r : rows) {
    for (size_t j = 0; j < dim; ++j) means[j] += r.values[j];
  }
  for (double& m : means) m /= n;
  // Two-pass variance.
  std::vector<double> stds(dim, 0.0);
  for (const auto& r : rows) {
    for (size_t j = 0; j < dim; ++j) {
      const double d = r.values[j] - means[j];
      stds[j] += d * d;
    }
  }
  for (double& s : stds) s = std::sqrt(s / n);
  return Standardizer(std::move(means), std::move(stds), version);
}

FeatureVector Standardizer::Transform(const FeatureVector& row) const {
  if (row.schema_version != schema_version_ || row.size() != means_.size()) {
    throw DataError("standardizer transform: schema mismatch");
  }
  FeatureVector out;
  out.schema_version = schema_version_;
  out.values.resize(row.size());
  for (size_t j = 0; j < row.size(); ++j) {
    out.values[j] =
        stds_[j] > 0.0 ? (row.values[j] - means_[j]) / stds_[j] : 0.0;
  }
  return out;
}

std::vector<FeatureVector> Standardizer::Transform(
    std::span<const FeatureVector> rows) const {
  std::vector<FeatureVector> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(Transform(r));
  return out;
}

void Standardizer::Write(std::ostream& out) const {
  out << "stylo-standardizer 1\n";
  out << "schema_version " << schema_version_ << '\n';
  out << "count " << means_.size() << '\n';
  out << "means";
  for (double m : means_) out << ' ' << FormatDouble(m);
  out << "\nstds";
  for (double s : stds_) out << ' ' << FormatDouble(s);
  out << '\n';
}

namespace {

std::vector<double> ReadLabelledValues(std::istream& in, std::string_view label,
                                       size_t count) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("standardizer: missing '" + std::string(label) + "' line");
  }
  std::istringstream ls(line);
  std::string tag;
  ls >> tag;
  if (tag != label) {
    throw DataError("standardizer: expected '" + std::string(label) + "'");
  }
  std::vector<double> values;
  std::string token;
  while (ls >> token) values.push_back(ParseDouble(token));
  if (values.size() != count) {
    throw DataError("standardizer: wrong number of " + std::string(label));
  }
  return values;
}

}  // namespace

Standardizer Standardizer::Read(std::istream& in) {
  std::string magic, tag;
  int format = 0;
  int version = 0;
  size_t count = 0;
  in >> magic >> format;
  if (magic != "stylo-standardizer" || format != 1) {
    throw DataError("standardizer: bad header");
  }
  in >> tag >> version;
  if (tag != "schema_version") throw DataError("standardizer: bad header");
  in >> tag >> count;
  if (tag != "count" || !in) throw DataError("standardizer: bad header");
  in >> std::ws;
  auto means = ReadLabelledValues(in, "means", count);
  auto stds = ReadLabelledValues(in, "stds", count);
  return Standardizer(std::move(means), std::move(stds), version);
}

}  // namespace stylo
