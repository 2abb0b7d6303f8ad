#include "leibniz/io.hpp"

#include <set>
#include <sstream>
#include <utility>

#include "leibniz/error.hpp"

namespace leibniz {

Json scalar_to_json(const Scalar& s) { return format_scalar(s); }

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw ParseError("scalar must be a \"p/q\" string or an integer, got " + j.dump());
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  if (j.empty()) return Matrix();
  const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
  Matrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("matrix rows must be arrays of equal length");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = scalar_from_json(j[r][c]);
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(scalar_to_json(x));
  return out;
}

Json algebra_to_json(const Algebra& a) {
  Json brackets = Json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const auto& p = a.product(i, j);
      if (p.empty()) continue;
      Json value = Json::object();
      for (const auto& e : p) value[std::to_string(e.col + 1)] = scalar_to_json(e.value);
      brackets.push_back({{"left", i + 1}, {"right", j + 1}, {"value", std::move(value)}});
    }
  }
  return {{"schema", kSchema}, {"dim", a.dim()}, {"labels", a.labels()}, {"brackets", std::move(brackets)}};
}

namespace {

std::size_t index_field(const Json& j, const char* key, std::size_t dim) {
  if (!j.contains(key) || !j[key].is_number_integer()) throw ParseError(std::string("bracket needs integer '") + key + "'");
  const long v = j[key].get<long>();
  if (v < 1 || static_cast<std::size_t>(v) > dim)
    throw ParseError(std::string("bracket index '") + key + "' = " + std::to_string(v) + " outside 1.." +
                     std::to_string(dim));
  return static_cast<std::size_t>(v - 1);
}

}  // namespace

Algebra algebra_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("algebra document must be a JSON object");
  if (j.contains("schema") && j["schema"] != kSchema)
    throw ParseError("unsupported schema " + j["schema"].dump());
  if (!j.contains("dim") || !j["dim"].is_number_integer() || j["dim"].get<long>() < 0)
    throw ParseError("algebra document needs a non-negative integer 'dim'");
  const auto dim = static_cast<std::size_t>(j["dim"].get<long>());

  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != dim) throw ParseError("'labels' must list dim names");
    std::set<std::string> seen;
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) throw ParseError("labels must be strings");
      if (!seen.insert(l.get<std::string>()).second) throw ParseError("duplicate label " + l.dump());
      labels.push_back(l.get<std::string>());
    }
  } else {
    for (std::size_t i = 1; i <= dim; ++i) labels.push_back("b" + std::to_string(i));
  }
  Algebra a(labels);

  if (!j.contains("brackets")) return a;
  if (!j["brackets"].is_array()) throw ParseError("'brackets' must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& b : j["brackets"]) {
    if (!b.is_object()) throw ParseError("each bracket must be an object");
    const std::size_t left = index_field(b, "left", dim);
    const std::size_t right = index_field(b, "right", dim);
    if (!seen.insert({left, right}).second)
      throw ParseError("duplicate bracket (" + std::to_string(left + 1) + "," + std::to_string(right + 1) + ")");
    if (!b.contains("value") || !b["value"].is_object()) throw ParseError("bracket needs an object 'value'");
    Element v(dim);
    for (const auto& [key, coef] : b["value"].items()) {
      std::size_t pos = 0;
      long k = 0;
      try {
        k = std::stol(key, &pos);
      } catch (const std::exception&) {
        throw ParseError("bracket value key '" + key + "' is not an index");
      }
      if (pos != key.size() || k < 1 || static_cast<std::size_t>(k) > dim)
        throw ParseError("bracket value key '" + key + "' outside 1.." + std::to_string(dim));
      v[static_cast<std::size_t>(k - 1)] = scalar_from_json(coef);
    }
    a.set_product(left, right, v);
  }
  return a;
}

Algebra algebra_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return algebra_from_json(j);
}

std::string element_to_text(const Algebra& a, const Element& x) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (x[c] == 0) continue;
    const bool negative = sgn(x[c]) < 0;
    const Scalar mag = negative ? Scalar(-x[c]) : x[c];
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    if (mag != 1) out << format_scalar(mag) << "*";
    out << a.labels()[c];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

std::string algebra_to_text(const Algebra& a) {
  std::ostringstream out;
  out << "dim " << a.dim() << ":";
  for (const auto& l : a.labels()) out << " " << l;
  out << "\n";
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!a.product(i, j).empty())
        out << "[" << a.labels()[i] << "," << a.labels()[j] << "] = " << element_to_text(a, a.product_dense(i, j))
            << "\n";
  return out.str();
}

Json cochain_to_json(const Algebra& a, const Cochain2& phi) {
  Json out = Json::object();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Element v = phi.value(i, j);
      if (is_zero(v)) continue;
      out[a.labels()[i] + "," + a.labels()[j]] = element_to_text(a, v);
    }
  }
  return out;
}

Json cohomology_to_json(const Algebra& a, const CohomologyReport& r, bool include_witness) {
  Json out = {{"dim_Z2", r.dim_Z2},
              {"dim_B2", r.dim_B2},
              {"dim_HL2", r.dim_HL2},
              {"rigid", r.rigid},
              {"B2_in_Z2", r.b2_in_z2},
              {"dim_B2_matches_derivations", r.b2_dim_matches_derivations}};
  if (include_witness && !r.witness.empty()) {
    Json w = Json::array();
    for (const auto& c : r.witness) w.push_back(cochain_to_json(a, c));
    out["witness"] = std::move(w);
  }
  return out;
}

}  // namespace leibniz
