#ifndef STYLO_SRC_TRAINING_CHECKS_H_
#define STYLO_SRC_TRAINING_CHECKS_H_

#include <cmath>

#include "stylo/error.h"
#include "stylo/models.h"

namespace stylo::internal {

// Rejects datasets training cannot use: fewer than 2 rows, labels outside
// {0,1}, a single class, or non-finite features.
inline void CheckTrainingData(const Dataset& d) {
  if (d.size() < 2 || d.x.rows() != d.size()) {
    throw DataError("training needs at least 2 labelled rows");
  }
  bool seen[2] = {false, false};
  for (int label : d.y) {
    if (label != 0 && label != 1) throw DataError("labels must be 0 or 1");
    seen[label] = true;
  }
  if (!seen[0] || !seen[1]) {
    throw DataError("training data contains a single class");
  }
  for (double v : d.x.data()) {
    if (!std::isfinite(v)) throw DataError("training data has non-finite values");
  }
}

}  // namespace stylo::internal

#endif  // STYLO_SRC_TRAINING_CHECKS_H_
