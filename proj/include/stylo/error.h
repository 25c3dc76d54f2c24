#ifndef STYLO_ERROR_H_
#define STYLO_ERROR_H_

#include <stdexcept>
#include <string>

namespace stylo {

// Input data failed validation (malformed corpus line, duplicate id, ...).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration key or value, or an invalid argument to a public
// operation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Training could not complete (divergence, degenerate labels).
class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace stylo

#endif  // STYLO_ERROR_H_
