#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "hcause/binary_matrix.hpp"
#include "hcause/harness.hpp"
#include "hcause/model.hpp"

namespace hcause {

// Unreadable, malformed or inconsistent input files.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Comma-separated 0/1 rows, one per observed variable. Blank lines and
// lines starting with '#' are skipped. An empty file is a 0 x 0 matrix.
BinaryMatrix parse_matrix_csv(std::istream& in, const std::string& source = "<stream>");
BinaryMatrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(std::ostream& out, const BinaryMatrix& m);
void write_matrix_csv(const std::filesystem::path& path, const BinaryMatrix& m);

ModelParams read_params_json(const std::filesystem::path& path);
void write_params_json(const std::filesystem::path& path, const ModelParams& params);

// Directory holding X.csv and, when present, Z.csv, Y.csv and params.json.
Dataset read_bundle(const std::filesystem::path& dir);
void write_bundle(const std::filesystem::path& dir, const Dataset& dataset);

}  // namespace hcause
