#ifndef GHYPO_SPEC_IO_HPP
#define GHYPO_SPEC_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghypo/error.hpp"
#include "ghypo/symbols.hpp"

namespace ghypo {

using Json = nlohmann::ordered_json;

/// All schema violations found in one pass.
class SchemaError : public Error {
 public:
  explicit SchemaError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

struct ParsedSpec {
  SpectralModel model;
  OperatorSpec op;
  /// Optional analysis defaults: cutoff, tol, seed, probes, s, m, k.
  Json options = Json::object();
};

/// Validates a spec document; relative matrix-table paths resolve against base_dir.
ParsedSpec parse_spec(const Json& doc, const std::filesystem::path& base_dir = {});
ParsedSpec parse_spec_file(const std::filesystem::path& path);
/// Parses a JSON string.
ParsedSpec parse_spec_text(const std::string& text, const std::filesystem::path& base_dir = {});

/// Canonical document: exact parts as literal strings, inexact parts as numbers.
Json to_json(const ParsedSpec& spec);

/// Loads a matrix table file: {"model": {"kind": ...}, "entries": [{"label": ..., "matrix": [[re, im], ...]}]}.
MatrixTable load_matrix_table(const std::filesystem::path& path);

ModelKind parse_model_kind(const std::string& kind);

}  // namespace ghypo

#endif  // GHYPO_SPEC_IO_HPP
