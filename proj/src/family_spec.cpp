#include "leibniz/family_spec.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "leibniz/error.hpp"

namespace leibniz {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on commas outside brackets.
std::vector<std::string_view> split_top(std::string_view s) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '[') ++depth;
    if (s[i] == ']') --depth;
    if (depth < 0) throw ParseError("unbalanced ']' in family spec");
    if (s[i] == ',' && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw ParseError("unbalanced '[' in family spec");
  out.push_back(s.substr(start));
  return out;
}

SpecValue parse_value(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw ParseError("empty value in family spec");
  if (std::isalpha(static_cast<unsigned char>(s.front()))) return SpecValue{std::string(s)};
  if (s.front() != '[') return SpecValue{parse_scalar(s)};
  if (s.back() != ']') throw ParseError("list value must end with ']'");
  const std::string_view inner = trim(s.substr(1, s.size() - 2));
  std::vector<SpecValue> items;
  if (!inner.empty())
    for (auto part : split_top(inner)) items.push_back(parse_value(part));
  return SpecValue{std::move(items)};
}

class Params {
 public:
  Params(const FamilySpec& spec, std::set<std::string> allowed) : spec_(spec) {
    for (const auto& [key, value] : spec.params)
      if (!allowed.count(key)) throw ParseError("unknown key '" + key + "' for family " + spec.name);
  }

  bool has(const std::string& key) const { return spec_.params.count(key) > 0; }

  std::size_t size(const std::string& key) const {
    const Scalar v = scalar(key);
    if (v.get_den() != 1 || sgn(v) < 0) throw ParseError("'" + key + "' must be a non-negative integer");
    return v.get_num().get_ui();
  }

  std::string word(const std::string& key) const {
    const auto& v = spec_.params.at(key);
    if (!std::holds_alternative<std::string>(v.data)) throw ParseError("'" + key + "' must be a word");
    return std::get<std::string>(v.data);
  }

  Scalar scalar(const std::string& key) const {
    const auto it = spec_.params.find(key);
    if (it == spec_.params.end()) throw ParseError("family " + spec_.name + " needs '" + key + "'");
    if (!std::holds_alternative<Scalar>(it->second.data)) throw ParseError("'" + key + "' must be a number");
    return std::get<Scalar>(it->second.data);
  }

  Vector vector(const std::string& key, std::size_t length) const {
    if (!has(key)) return Vector(length);
    const auto& v = spec_.params.at(key);
    if (!std::holds_alternative<std::vector<SpecValue>>(v.data)) throw ParseError("'" + key + "' must be a list");
    const auto& items = std::get<std::vector<SpecValue>>(v.data);
    if (items.size() != length)
      throw ParseError("'" + key + "' must have " + std::to_string(length) + " entries");
    Vector out;
    for (const auto& item : items) {
      if (!std::holds_alternative<Scalar>(item.data)) throw ParseError("'" + key + "' entries must be numbers");
      out.push_back(std::get<Scalar>(item.data));
    }
    return out;
  }

  Matrix matrix(const std::string& key, std::size_t rows, std::size_t cols) const {
    if (!has(key)) return Matrix(rows, cols);
    const auto& v = spec_.params.at(key);
    if (!std::holds_alternative<std::vector<SpecValue>>(v.data)) throw ParseError("'" + key + "' must be a list");
    const auto& items = std::get<std::vector<SpecValue>>(v.data);
    if (items.size() != rows) throw ParseError("'" + key + "' must have " + std::to_string(rows) + " rows");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!std::holds_alternative<std::vector<SpecValue>>(items[r].data))
        throw ParseError("'" + key + "' rows must be lists");
      const auto& row = std::get<std::vector<SpecValue>>(items[r].data);
      if (row.size() != cols) throw ParseError("'" + key + "' rows must have " + std::to_string(cols) + " entries");
      for (std::size_t c = 0; c < cols; ++c) {
        if (!std::holds_alternative<Scalar>(row[c].data)) throw ParseError("'" + key + "' entries must be numbers");
        m(r, c) = std::get<Scalar>(row[c].data);
      }
    }
    return m;
  }

 private:
  const FamilySpec& spec_;
};

void require_mu_sizes(std::size_t n, std::size_t k) {
  if (k < 1) throw ConstraintViolation("family requires k >= 1");
  if (n < 2 * k + 4) throw ConstraintViolation("family requires n - 2k >= 4");
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << (r ? ",[" : "[");
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? "," : "") << format_scalar(m(r, c));
    out << "]";
  }
  out << "]";
  return out.str();
}

std::string format_vector(const Vector& v) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << format_scalar(v[i]);
  out << "]";
  return out.str();
}

}  // namespace

FamilySpec parse_family_spec(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  FamilySpec spec;
  spec.name = std::string(trim(text.substr(0, colon)));
  if (spec.name.empty()) throw ParseError("family spec needs a family name");
  if (colon == std::string_view::npos) return spec;
  const std::string_view rest = trim(text.substr(colon + 1));
  if (rest.empty()) return spec;
  for (auto part : split_top(rest)) {
    part = trim(part);
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value, got '" + std::string(part) + "'");
    const std::string key(trim(part.substr(0, eq)));
    if (key.empty()) throw ParseError("empty key in family spec");
    if (!spec.params.emplace(key, parse_value(part.substr(eq + 1))).second)
      throw ParseError("duplicate key '" + key + "'");
  }
  return spec;
}

Algebra construct_from_spec(std::string_view text) {
  const FamilySpec spec = parse_family_spec(text);
  const std::string& name = spec.name;
  if (name == "mu1" || name == "mu2") {
    Params p(spec, {"n", "k"});
    return name == "mu1" ? make_mu1(p.size("n"), p.size("k")) : make_mu2(p.size("n"), p.size("k"));
  }
  if (name == "mu3") {
    Params p(spec, {"n", "k", "form"});
    Mu3Form form = Mu3Form::Convenient;
    if (p.has("form")) {
      const std::string w = p.word("form");
      if (w == "original") form = Mu3Form::Original;
      else if (w != "convenient") throw ParseError("mu3 form must be original or convenient");
    }
    return make_mu3(p.size("n"), p.size("k"), form);
  }
  if (name == "abelian") return make_abelian(Params(spec, {"k"}).size("k"));
  if (name == "Lgamma") {
    Params p(spec, {"g"});
    if (!p.has("g")) throw ParseError("Lgamma needs g=[...]");
    const auto* items = std::get_if<std::vector<SpecValue>>(&spec.params.at("g").data);
    if (!items) throw ParseError("'g' must be a list");
    GammaVector gamma;
    for (const auto& v : p.vector("g", items->size())) {
      if (v != 0 && v != -1) throw ConstraintViolation("gamma entries must be -1 or 0");
      gamma.push_back(v == 0 ? 0 : -1);
    }
    return make_L_gamma(gamma);
  }
  if (name == "Rmu1") {
    Params p(spec, {"n", "k", "a", "phi", "delta"});
    const std::size_t n = p.size("n");
    const std::size_t k = p.size("k");
    require_mu_sizes(n, k);
    RMu1Params params{p.matrix("a", n - 2 * k - 1, k), p.matrix("phi", k, k), p.matrix("delta", k, k)};
    return make_R_mu1(n, k, params);
  }
  if (name == "Rmu2") {
    Params p(spec, {"n", "k", "b", "beta", "phi", "theta"});
    const std::size_t n = p.size("n");
    const std::size_t k = p.size("k");
    require_mu_sizes(n, k);
    RMu2Params params{p.vector("b", k), p.vector("beta", k), p.matrix("phi", k, k), p.matrix("theta", k, k)};
    return make_R_mu2(n, k, params);
  }
  if (name == "Rmu3") {
    Params p(spec, {"n", "k"});
    return make_R_mu3(p.size("n"), p.size("k"));
  }
  if (name == "Rn") {
    Params p(spec, {"n", "k"});
    return make_Rn(p.size("n"), p.size("k"));
  }
  if (name == "Rm") {
    Params p(spec, {"m", "k"});
    return make_Rm(p.size("m"), p.size("k"));
  }
  if (name == "Rnkm") {
    Params p(spec, {"n", "k", "m"});
    return make_Rnkm(p.size("n"), p.size("k"), p.size("m"));
  }
  throw ParseError("unknown family '" + name + "'");
}

std::string rmu1_params_to_spec(const RMu1Params& p) {
  return "a=" + format_matrix(p.a) + ",phi=" + format_matrix(p.phi) + ",delta=" + format_matrix(p.delta);
}

std::string rmu2_params_to_spec(const RMu2Params& p) {
  return "b=" + format_vector(p.b) + ",beta=" + format_vector(p.beta) + ",phi=" + format_matrix(p.phi) +
         ",theta=" + format_matrix(p.theta);
}

}  // namespace leibniz
