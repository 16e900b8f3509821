#pragma once

// Model files for toricctl: a JSON document with a lattice rank, maximal
// cones, an optional base ring and an optional morphism.

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "toric/integer.hpp"
#include "toric/scheme.hpp"

namespace toricctl {

using toric::IntMatrix;
using toric::IntVector;

enum class ModelErrorKind { Syntax, Schema, RankMismatch, VersionUnsupported, Io };

const char* model_error_name(ModelErrorKind k);

class ModelError : public std::runtime_error {
 public:
  ModelError(ModelErrorKind kind, const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : std::runtime_error(what), kind_(kind), line_(line), column_(column) {}
  ModelErrorKind kind() const { return kind_; }
  // 1-based; 0 when the error has no single source position
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  ModelErrorKind kind_;
  std::size_t line_, column_;
};

struct ModelFile;

struct MorphismSpec {
  IntMatrix matrix;
  std::optional<std::string> target_path;  // relative to the model file
  std::shared_ptr<const ModelFile> target;  // inline target model
};

struct ModelFile {
  int format_version = 1;
  Eigen::Index rank = 0;
  std::vector<std::vector<IntVector>> cones;
  std::optional<toric::RingDescriptor> ring;
  std::optional<MorphismSpec> morphism;
};

bool operator==(const ModelFile& a, const ModelFile& b);

ModelFile parse_model(const std::string& text);
ModelFile load_model(const std::string& path);

/// Integer matrix as a JSON array of rows, or a path to a file holding one.
IntMatrix parse_matrix(const std::string& text);

/// Canonical form: sorted keys, integers as numbers when they fit 64 bits
/// and as strings otherwise.
nlohmann::json model_to_json(const ModelFile& m);
std::string emit_model(const ModelFile& m);

nlohmann::json integer_json(const toric::Integer& x);
nlohmann::json vector_json(const IntVector& v);
nlohmann::json vectors_json(const std::vector<IntVector>& vs);
nlohmann::json matrix_json(const IntMatrix& m);

}  // namespace toricctl
