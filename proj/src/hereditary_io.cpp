#include "symbidisc/hereditary_io.hpp"

#include <cmath>

#include "json.hpp"
#include "symbidisc/errors.hpp"

namespace symbidisc {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

double finite_number(const json& v, const char* what) {
  if (!v.is_number()) throw InvalidInput(std::string(what) + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw InvalidInput(std::string(what) + " must be finite");
  return d;
}

int positive_dim(const json& doc) {
  if (!doc.is_object() || !doc.contains("dim") || !doc["dim"].is_number_integer()) {
    throw InvalidInput("\"dim\" must be a positive integer");
  }
  const int d = doc["dim"].get<int>();
  if (d < 1) throw InvalidInput("\"dim\" must be a positive integer");
  return d;
}

MultiIndex parse_index(const json& v, int dim, const char* what) {
  if (!v.is_array() || static_cast<int>(v.size()) != dim) {
    throw InvalidInput(std::string(what) + " must be an array of length dim");
  }
  MultiIndex out;
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<int>() < 0) {
      throw InvalidInput(std::string(what) + " entries must be non-negative integers");
    }
    out.push_back(e.get<int>());
  }
  return out;
}

Complex parse_complex(const json& v) {
  if (!v.is_array() || v.size() != 2) throw InvalidInput("complex entries must be [re, im]");
  return {finite_number(v[0], "re"), finite_number(v[1], "im")};
}

ComplexMatrix parse_matrix(const json& v) {
  if (!v.is_array() || v.empty()) throw InvalidInput("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  if (!v[0].is_array() || v[0].empty()) throw InvalidInput("matrix rows must be non-empty arrays");
  const auto cols = static_cast<Eigen::Index>(v[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& row = v[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidInput("matrix rows must have equal length");
    }
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = parse_complex(row[static_cast<std::size_t>(j)]);
  }
  return m;
}

}  // namespace

HereditaryPolynomial parse_hereditary_json(std::string_view text) {
  const json doc = parse(text);
  const int dim = positive_dim(doc);
  if (!doc.contains("terms") || !doc["terms"].is_array()) {
    throw InvalidInput("\"terms\" must be an array");
  }
  HereditaryPolynomial h(dim);
  for (const auto& t : doc["terms"]) {
    if (!t.is_object() || !t.contains("alpha") || !t.contains("beta")) {
      throw InvalidInput("each term needs \"alpha\" and \"beta\"");
    }
    const double re = t.contains("re") ? finite_number(t["re"], "re") : 0.0;
    const double im = t.contains("im") ? finite_number(t["im"], "im") : 0.0;
    h.add_term(parse_index(t["alpha"], dim, "alpha"), parse_index(t["beta"], dim, "beta"),
               Complex(re, im));
  }
  return h;
}

std::string to_json_string(const HereditaryPolynomial& h) {
  json terms = json::array();
  for (const auto& [key, c] : h.terms()) {
    terms.push_back({{"alpha", key.first}, {"beta", key.second}, {"re", c.real()}, {"im", c.imag()}});
  }
  return json{{"dim", h.dim()}, {"terms", terms}}.dump();
}

std::vector<ComplexMatrix> parse_tuple_json(std::string_view text) {
  const json doc = parse(text);
  const int dim = positive_dim(doc);
  if (!doc.contains("matrices") || !doc["matrices"].is_array() ||
      static_cast<int>(doc["matrices"].size()) != dim) {
    throw InvalidInput("\"matrices\" must be an array of dim matrices");
  }
  std::vector<ComplexMatrix> out;
  for (const auto& m : doc["matrices"]) out.push_back(parse_matrix(m));
  for (const auto& m : out) {
    if (m.rows() != m.cols() || m.rows() != out.front().rows()) {
      throw InvalidInput("tuple matrices must be square and of equal size");
    }
  }
  return out;
}

ComplexMatrix parse_matrix_json(std::string_view text) { return parse_matrix(parse(text)); }

std::string tuple_to_json_string(const std::vector<ComplexMatrix>& matrices) {
  json ms = json::array();
  for (const auto& m : matrices) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
      rows.push_back(row);
    }
    ms.push_back(rows);
  }
  return json{{"dim", matrices.size()}, {"matrices", ms}}.dump();
}

}  // namespace symbidisc
