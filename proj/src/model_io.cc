#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "stylo/error.h"
#include "stylo/models.h"
#include "stylo/numeric_text.h"

namespace stylo {
namespace {

void WriteValues(std::ostream& out, std::string_view tag,
                 const std::vector<double>& values) {
  out << tag;
  for (double v : values) out << ' ' << FormatDouble(v);
  out << '\n';
}

std::vector<std::string> NextLine(std::istream& in, std::string_view expect) {
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("model file: expected '" + std::string(expect) + "' line");
  }
  std::istringstream ls(line);
  std::vector<std::string> tokens;
  for (std::string t; ls >> t;) tokens.push_back(t);
  if (tokens.empty() || tokens[0] != expect) {
    throw DataError("model file: expected '" + std::string(expect) + "' line");
  }
  return tokens;
}

std::vector<double> ReadValues(std::istream& in, std::string_view tag,
                               size_t count) {
  const auto tokens = NextLine(in, tag);
  if (tokens.size() != count + 1) {
    throw DataError("model file: '" + std::string(tag) + "' has " +
                    std::to_string(tokens.size() - 1) + " values, expected " +
                    std::to_string(count));
  }
  std::vector<double> values;
  values.reserve(count);
  for (size_t i = 1; i < tokens.size(); ++i) values.push_back(ParseDouble(tokens[i]));
  return values;
}

}  // namespace

void WriteModel(const Model& model, std::ostream& out) {
  out << "stylo-model 1\n";
  if (const auto* lr = std::get_if<LogisticModel>(&model)) {
    out << "kind logistic\n";
    out << "dims " << lr->weights.size() << '\n';
    WriteValues(out, "weights", lr->weights);
    WriteValues(out, "bias", {lr->bias});
    return;
  }
  const auto& mlp = std::get<MlpModel>(model);
  out << "kind mlp\n";
  out << "dims " << mlp.input_dim();
  for (const auto& layer : mlp.layers) out << ' ' << layer.out();
  out << '\n';
  for (const auto& layer : mlp.layers) {
    WriteValues(out, "w", layer.weights.data());
    WriteValues(out, "b", layer.bias);
  }
}

Model ReadModel(std::istream& in) {
  const auto header = NextLine(in, "stylo-model");
  if (header.size() != 2 || header[1] != "1") {
    throw DataError("model file: unsupported format version");
  }
  const auto kind = NextLine(in, "kind");
  if (kind.size() != 2) throw DataError("model file: bad kind line");
  const auto dims_tokens = NextLine(in, "dims");
  std::vector<size_t> dims;
  for (size_t i = 1; i < dims_tokens.size(); ++i) {
    dims.push_back(ParseInteger<size_t>(dims_tokens[i]));
  }
  if (kind[1] == "logistic") {
    if (dims.size() != 1) throw DataError("model file: bad logistic dims");
    LogisticModel m;
    m.weights = ReadValues(in, "weights", dims[0]);
    m.bias = ReadValues(in, "bias", 1)[0];
    return m;
  }
  if (kind[1] != "mlp") throw DataError("model file: unknown kind '" + kind[1] + "'");
  if (dims.size() < 3) throw DataError("model file: bad mlp dims");
  MlpModel m;
  for (size_t l = 0; l + 1 < dims.size(); ++l) {
    DenseLayer layer{Matrix(dims[l + 1], dims[l]), {}};
    layer.weights.data() = ReadValues(in, "w", dims[l] * dims[l + 1]);
    layer.bias = ReadValues(in, "b", dims[l + 1]);
    m.layers.push_back(std::move(layer));
  }
  try {
    m.Validate();
  } catch (const ConfigError& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
  return m;
}

}  // namespace stylo
