#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cdga/field.hpp"
#include "cdga/graded.hpp"
#include "cdga/matrix.hpp"

namespace cdga {

using Json = nlohmann::json;

// Scalars travel as strings ("p/q" rationals, decimal residues mod p) so the
// report is field-agnostic and exact.
template <class K>
Json matrix_to_json(const Matrix<K>& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(FieldOps<K>::str(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class K>
Matrix<K> matrix_from_json(const FieldSpec& f, const Json& j, int rows, int cols) {
  if (!j.is_array() || (int)j.size() != rows)
    throw UsageError("matrix JSON has the wrong number of rows");
  Matrix<K> m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const Json& row = j.at(r);
    if (!row.is_array() || (int)row.size() != cols)
      throw UsageError("matrix JSON has the wrong number of columns");
    for (int c = 0; c < cols; ++c)
      m.set(r, c, FieldOps<K>::parse(f, row.at(c).get<std::string>()));
  }
  return m;
}

inline Json space_to_json(const GradedSpace& s) {
  Json dims = Json::object();
  for (int i : s.support()) dims[std::to_string(i)] = s.dim(i);
  return Json{{"grading", s.grading == Grading::Z ? "Z" : "Z2"}, {"dims", std::move(dims)}};
}

inline GradedSpace space_from_json(const Json& j) {
  std::string g = j.at("grading").get<std::string>();
  if (g != "Z" && g != "Z2") throw UsageError("unknown grading '" + g + "'");
  std::map<int, int> dims;
  for (auto& [key, val] : j.at("dims").items()) dims[std::stoi(key)] = val.get<int>();
  return g == "Z" ? GradedSpace::z(dims) : GradedSpace(Grading::Z2, dims);
}

// Maps serialize as shift + blocks keyed by source degree; absent blocks are
// zero, and the shapes come from the ambient spaces on the way back in.
template <class K>
Json map_to_json(const GradedMap<K>& f) {
  Json blocks = Json::object();
  for (int i : f.source().support()) {
    Matrix<K> b = f.block(i);
    if (!b.is_zero()) blocks[std::to_string(i)] = matrix_to_json(b);
  }
  return Json{{"shift", f.shift()}, {"blocks", std::move(blocks)}};
}

template <class K>
GradedMap<K> map_from_json(const FieldSpec& fs, const Json& j, const GradedSpace& source,
                           const GradedSpace& target) {
  GradedMap<K> f(source, target, j.at("shift").get<int>());
  for (auto& [key, val] : j.at("blocks").items()) {
    int i = std::stoi(key);
    f.set_block(i, matrix_from_json<K>(fs, val, target.dim(i + f.shift()), source.dim(i)));
  }
  return f;
}

}  // namespace cdga
