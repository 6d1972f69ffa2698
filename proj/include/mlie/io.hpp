#pragma once

// JSON files for algebras (with optional metric) and double-extension data.

#include "mlie/common.hpp"
#include "mlie/doubleext.hpp"
#include "mlie/liealg.hpp"
#include "mlie/pseudolin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlie {

/// Parse or validation failure; what() reads "<source>:<line>: <message>".
class FileError : public InvalidInput {
 public:
  FileError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// {"dim": n, "brackets": [{"i": 1, "j": 2, "coeffs": {"3": 1.0}}], "metric": [[...]], "comment": "..."}
/// Indices are 1-based with i < j.
struct AlgebraFile {
  LieAlgebra algebra;
  std::optional<Gram> metric;
  std::string comment;
};

/// {"v_dim": v, "K": [[...]], "D": [[...]], "mu": 0.0, "b": [...], "basis_change": [[...]], "comment": "..."}
struct ExtensionFile {
  ExtensionData data;
  std::optional<Matrix> basis_change;
  std::string comment;
  /// Non-fatal findings from reading (e.g. K was not skew and got antisymmetrized).
  std::vector<std::string> warnings;
};

AlgebraFile parse_algebra(const std::string& text, const std::string& source = "<input>", double tol = kLinearTol);
std::string dump_algebra(const AlgebraFile& file);
AlgebraFile read_algebra_file(const std::string& path, double tol = kLinearTol);
void write_algebra_file(const std::string& path, const AlgebraFile& file);

ExtensionFile parse_extension(const std::string& text, const std::string& source = "<input>", double tol = kLinearTol);
std::string dump_extension(const ExtensionFile& file);
ExtensionFile read_extension_file(const std::string& path, double tol = kLinearTol);
void write_extension_file(const std::string& path, const ExtensionFile& file);

/// Reads a whole file; "-" means standard input. Throws InvalidInput when unreadable.
std::string read_text(const std::string& path);
/// Writes a whole file; "-" means standard output.
void write_text(const std::string& path, const std::string& text);

}  // namespace mlie
