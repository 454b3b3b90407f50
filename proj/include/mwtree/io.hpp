#pragma once

// JSON graph files and matrix encoding.
//
// Graph file:
//   {
//     "schema": "mwtree.graph/1",          (optional)
//     "n": 4, "s": 2,
//     "edges": [ {"u": 1, "v": 2, "weight": [[2, 0], [0, 1]]}, ... ]
//   }
// Unknown fields are rejected, vertices are 1-based with u < v, and the
// graph must pass validate().

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mwtree/graph.hpp"
#include "mwtree/linalg.hpp"

namespace mwtree::io {

using json = nlohmann::json;

inline constexpr std::string_view kGraphSchema = "mwtree.graph/1";
inline constexpr std::string_view kReportSchema = "mwtree.report/1";
inline constexpr std::string_view kManifestSchema = "mwtree.manifest/1";
inline constexpr std::string_view kToolVersion = "0.1.0";

/// Malformed or invalid graph input. `line`/`column` are set for syntax
/// errors, `field` names the offending member (e.g. "edges[2].weight").
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::string field = {},
             std::optional<std::size_t> line = std::nullopt,
             std::optional<std::size_t> column = std::nullopt)
      : std::runtime_error(describe(message, field, line, column)),
        field_(std::move(field)),
        line_(line),
        column_(column) {}

  const std::string& field() const { return field_; }
  std::optional<std::size_t> line() const { return line_; }
  std::optional<std::size_t> column() const { return column_; }

 private:
  static std::string describe(const std::string& message, const std::string& field,
                              std::optional<std::size_t> line,
                              std::optional<std::size_t> column) {
    std::string out;
    if (line) {
      out += "line " + std::to_string(*line);
      if (column) out += ", column " + std::to_string(*column);
      out += ": ";
    }
    if (!field.empty()) out += field + ": ";
    return out + message;
  }

  std::string field_;
  std::optional<std::size_t> line_;
  std::optional<std::size_t> column_;
};

namespace detail {

inline void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                           const std::string& where) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (auto key : allowed) known = known || item.key() == key;
    if (!known) {
      throw ParseError("unknown field \"" + item.key() + "\"",
                       where.empty() ? item.key() : where + "." + item.key());
    }
  }
}

inline long long require_integer(const json& obj, const char* key,
                                 const std::string& where) {
  const std::string field = where.empty() ? key : where + "." + key;
  if (!obj.contains(key)) throw ParseError("missing required field", field);
  const auto& value = obj.at(key);
  if (!value.is_number_integer()) throw ParseError("expected an integer", field);
  return value.get<long long>();
}

}  // namespace detail

/// Decodes a row-major array of arrays of numbers.
inline DenseMatrix matrix_from_json(const json& rows, const std::string& field = "matrix") {
  if (!rows.is_array()) throw ParseError("expected an array of rows", field);
  if (rows.empty()) throw ParseError("empty matrix", field);
  std::vector<std::vector<double>> data;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const std::string row_field = field + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw ParseError("expected an array of numbers", row_field);
    auto& out = data.emplace_back();
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_number()) {
        throw ParseError("expected a number",
                         row_field + "[" + std::to_string(j) + "]");
      }
      out.push_back(row[j].get<double>());
    }
    if (out.size() != data.front().size()) throw ParseError("ragged rows", row_field);
  }
  try {
    return from_rows(data);
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what(), field);
  }
}

inline json matrix_to_json(const DenseMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline MatrixWeightedGraph graph_from_json(const json& doc) {
  if (!doc.is_object()) throw ParseError("top level must be an object");
  detail::reject_unknown(doc, {"schema", "n", "s", "edges"}, "");
  if (doc.contains("schema")) {
    if (!doc["schema"].is_string() || doc["schema"].get<std::string>() != kGraphSchema) {
      throw ParseError("expected \"" + std::string(kGraphSchema) + "\"", "schema");
    }
  }
  MatrixWeightedGraph g;
  g.n = detail::require_integer(doc, "n", "");
  g.s = detail::require_integer(doc, "s", "");
  if (g.n < 1) throw ParseError("must be >= 1", "n");
  if (g.s < 1) throw ParseError("must be >= 1", "s");
  if (!doc.contains("edges")) throw ParseError("missing required field", "edges");
  const auto& edges = doc["edges"];
  if (!edges.is_array()) throw ParseError("expected an array", "edges");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    const auto& e = edges[k];
    if (!e.is_object()) throw ParseError("expected an object", where);
    detail::reject_unknown(e, {"u", "v", "weight"}, where);
    Edge edge;
    edge.u = detail::require_integer(e, "u", where);
    edge.v = detail::require_integer(e, "v", where);
    if (!e.contains("weight")) throw ParseError("missing required field", where + ".weight");
    edge.weight = matrix_from_json(e["weight"], where + ".weight");
    g.edges.push_back(std::move(edge));
  }
  const auto violations = validate(g);
  if (!violations.empty()) {
    const auto& first = violations.front();
    std::string field = first.edge ? "edges[" + std::to_string(*first.edge) + "]" : "";
    throw ParseError(std::string(to_string(first.kind)) + ": " + first.message,
                     std::move(field));
  }
  return g;
}

inline MatrixWeightedGraph parse_graph(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    // Translate the byte offset into a line/column pair.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(err.byte > 0 ? err.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("syntax error: " + std::string(err.what()), {}, line, column);
  }
  return graph_from_json(doc);
}

inline json graph_to_json(const MatrixWeightedGraph& g) {
  json edges = json::array();
  for (const auto& e : g.edges) {
    edges.push_back({{"u", e.u}, {"v", e.v}, {"weight", matrix_to_json(e.weight)}});
  }
  return {{"schema", std::string(kGraphSchema)}, {"n", g.n}, {"s", g.s}, {"edges", std::move(edges)}};
}

}  // namespace mwtree::io
