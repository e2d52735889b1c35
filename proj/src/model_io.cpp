#include "zonovol/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <iterator>
#include <utility>
#include <vector>

namespace zonovol {

namespace {

using nlohmann::json;

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  const std::size_t end = std::min(byte, text.size());
  for (std::size_t i = 0; i < end; ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

Eigen::MatrixXd read_matrix(const json& j, const std::string& field,
                            std::string_view origin) {
  const std::string where = std::string(origin) + ": field '" + field + "'";
  if (!j.contains(field)) {
    throw ParseError(where + " is missing");
  }
  const json& rows = j.at(field);
  if (!rows.is_array() || rows.empty()) {
    throw ParseError(where + " must be a nonempty array of rows");
  }
  const std::size_t nr = rows.size();
  std::size_t nc = 0;
  for (std::size_t i = 0; i < nr; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.empty()) {
      throw ParseError(where + ", row " + std::to_string(i) +
                       ": must be a nonempty array of numbers");
    }
    if (i == 0) {
      nc = row.size();
    } else if (row.size() != nc) {
      throw ParseError(where + ", row " + std::to_string(i) + ": has " +
                       std::to_string(row.size()) + " entries, expected " +
                       std::to_string(nc));
    }
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(nr),
                    static_cast<Eigen::Index>(nc));
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t c = 0; c < nc; ++c) {
      const json& v = rows[i][c];
      if (!v.is_number()) {
        throw ParseError(where + "[" + std::to_string(i) + "][" +
                         std::to_string(c) + "]: expected a number, got " +
                         std::string(v.type_name()));
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
          v.get<double>();
    }
  }
  return m;
}

}  // namespace

SystemModel parse_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open model file: " + path.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_model_text(text, path.string());
}

SystemModel parse_model_text(std::string_view text, std::string_view origin) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string(origin) + ":" +
                     std::to_string(line_of_byte(text, e.byte)) + ": " +
                     e.what());
  }
  if (!j.is_object()) {
    throw ParseError(std::string(origin) + ": top level must be an object");
  }
  std::string name = "model";
  if (j.contains("name")) {
    if (!j.at("name").is_string()) {
      throw ParseError(std::string(origin) + ": field 'name' must be a string");
    }
    name = j.at("name").get<std::string>();
  }
  Eigen::MatrixXd A = read_matrix(j, "A", origin);
  Eigen::MatrixXd B = read_matrix(j, "B", origin);
  if (A.rows() != A.cols()) {
    throw ParseError(std::string(origin) + ": field 'A' must be square, got " +
                     std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
  if (B.rows() != A.rows()) {
    throw ParseError(std::string(origin) + ": field 'B' has " +
                     std::to_string(B.rows()) + " rows, field 'A' has " +
                     std::to_string(A.rows()));
  }
  return SystemModel(std::move(name), RealMatrix(std::move(A)),
                     RealMatrix(std::move(B)));
}

std::string render_model(const SystemModel& model) {
  auto to_rows = [](const RealMatrix& m) {
    std::vector<std::vector<double>> rows(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      rows[i].resize(m.cols());
      for (Eigen::Index j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    }
    return rows;
  };
  json j;
  j["name"] = model.name();
  j["A"] = to_rows(model.A());
  j["B"] = to_rows(model.B());
  return j.dump(2) + "\n";
}

}  // namespace zonovol
