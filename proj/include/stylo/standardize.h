#ifndef STYLO_STANDARDIZE_H_
#define STYLO_STANDARDIZE_H_

#include <iosfwd>
#include <span>
#include <vector>

#include "stylo/features.h"

namespace stylo {

// Per-feature z-scoring with population standard deviations. Columns whose
// std is zero map to 0.
class Standardizer {
 public:
  Standardizer() = default;
  Standardizer(std::vector<double> means, std::vector<double> stds,
               int schema_version);

  // Needs at least two rows of one schema version.
  static Standardizer Fit(std::span<const FeatureVector> rows);

  FeatureVector Transform(const FeatureVector& row) const;
  std::vector<FeatureVector> Transform(std::span<const FeatureVector> rows) const;

  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& stds() const { return stds_; }
  int schema_version() const { return schema_version_; }
  size_t size() const { return means_.size(); }

  bool operator==(const Standardizer&) const = default;

  // "stylo-standardizer 1", then schema_version, count, means and stds lines.
  void Write(std::ostream& out) const;
  static Standardizer Read(std::istream& in);

 private:
  std::vector<double> means_;
  std::vector<double> stds_;
  int schema_version_ = kSchemaVersion;
};

}  // namespace stylo

#endif  // STYLO_STANDARDIZE_H_
