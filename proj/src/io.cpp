#include "hcause/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace hcause {

namespace fs = std::filesystem;

BinaryMatrix parse_matrix_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<int>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<int> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      const std::string v = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
      if (v != "0" && v != "1")
        throw DataError(source + ":" + std::to_string(line_no) + ": expected 0 or 1, got '" +
                        v + "'");
      row.push_back(v == "1");
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw DataError(source + ":" + std::to_string(line_no) + ": row has " +
                      std::to_string(row.size()) + " entries, expected " +
                      std::to_string(rows.front().size()));
    rows.push_back(std::move(row));
  }
  return BinaryMatrix::from_rows(rows);
}

BinaryMatrix read_matrix_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return parse_matrix_csv(in, path.string());
}

void write_matrix_csv(std::ostream& out, const BinaryMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << int(m(r, c));
    }
    out << '\n';
  }
}

void write_matrix_csv(const fs::path& path, const BinaryMatrix& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  write_matrix_csv(out, m);
}

ModelParams read_params_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    const auto j = nlohmann::json::parse(in);
    ModelParams p;
    p.epsilon = j.at("epsilon").get<double>();
    p.lambda = j.at("lambda").get<double>();
    p.p = j.at("p").get<double>();
    p.alpha = j.at("alpha").get<double>();
    p.validate();
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_params_json(const fs::path& path, const ModelParams& params) {
  nlohmann::ordered_json j;
  j["epsilon"] = params.epsilon;
  j["lambda"] = params.lambda;
  j["p"] = params.p;
  j["alpha"] = params.alpha;
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

Dataset read_bundle(const fs::path& dir) {
  const fs::path x_path = fs::is_directory(dir) ? dir / "X.csv" : dir;
  Dataset d;
  d.X = read_matrix_csv(x_path);
  if (!fs::is_directory(dir)) return d;
  if (!fs::exists(dir / "Z.csv")) return d;
  GroundTruth truth;
  truth.Z = read_matrix_csv(dir / "Z.csv");
  // A cause-free truth is written as blank lines, which parse to 0 x 0.
  if (truth.Z.rows() == 0) truth.Z = BinaryMatrix(d.X.rows(), 0);
  if (truth.Z.rows() != d.X.rows())
    throw DataError("Z.csv has " + std::to_string(truth.Z.rows()) + " rows but X.csv has " +
                    std::to_string(d.X.rows()));
  if (fs::exists(dir / "Y.csv")) {
    truth.Y = read_matrix_csv(dir / "Y.csv");
    if (truth.Y.rows() == 0) truth.Y = BinaryMatrix(0, d.X.cols());
    if (truth.Y.rows() != truth.Z.cols() || truth.Y.cols() != d.X.cols())
      throw DataError("Y.csv shape does not match Z.csv and X.csv");
  }
  if (fs::exists(dir / "params.json")) truth.params = read_params_json(dir / "params.json");
  d.truth = std::move(truth);
  return d;
}

void write_bundle(const fs::path& dir, const Dataset& dataset) {
  fs::create_directories(dir);
  write_matrix_csv(dir / "X.csv", dataset.X);
  if (!dataset.truth) return;
  write_matrix_csv(dir / "Z.csv", dataset.truth->Z);
  write_matrix_csv(dir / "Y.csv", dataset.truth->Y);
  write_params_json(dir / "params.json", dataset.truth->params);
}

}  // namespace hcause
