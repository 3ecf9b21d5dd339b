#include "carnot/algebra_io.hpp"

#include <fstream>
#include <sstream>

#include "carnot/errors.hpp"

namespace carnot {

using nlohmann::json;

namespace {

Rational rational_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(e.what(), where);
    }
  }
  throw ParseError("expected an integer or a rational string", where);
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(std::string("missing field '") + key + "'", key);
  return doc.at(key);
}

}  // namespace

AlgebraPtr parse_algebra_definition(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
  if (!doc.is_object()) throw ParseError("definition must be a JSON object", "$");

  const json& dim_v = require(doc, "dim");
  if (!dim_v.is_number_integer() || dim_v.get<long>() <= 0)
    throw ParseError("dim must be a positive integer", "dim");
  const auto dim = static_cast<std::size_t>(dim_v.get<long>());

  const json& names_v = require(doc, "names");
  if (!names_v.is_array() || names_v.size() != dim)
    throw ParseError("names must be an array of length dim", "names");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!names_v[i].is_string() || names_v[i].get<std::string>().empty())
      throw ParseError("basis name must be a nonempty string", "names[" + std::to_string(i) + "]");
    names.push_back(names_v[i].get<std::string>());
  }

  const json& layers_v = require(doc, "layers");
  if (!layers_v.is_array() || layers_v.size() != dim)
    throw ParseError("layers must be an array of length dim", "layers");
  std::vector<int> layers;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!layers_v[i].is_number_integer() || layers_v[i].get<int>() < 1)
      throw ParseError("layer must be a positive integer", "layers[" + std::to_string(i) + "]");
    layers.push_back(layers_v[i].get<int>());
  }

  std::vector<StructureConstant> constants;
  const json& br = require(doc, "brackets");
  if (!br.is_array()) throw ParseError("brackets must be an array", "brackets");
  for (std::size_t n = 0; n < br.size(); ++n) {
    const std::string where = "brackets[" + std::to_string(n) + "]";
    const json& t = br[n];
    if (!t.is_array() || t.size() != 3 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_string())
      throw ParseError("bracket entry must be [i, j, \"k:num/den\"]", where);
    const long i = t[0].get<long>(), j = t[1].get<long>();
    const std::string spec = t[2].get<std::string>();
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw ParseError("expected \"k:num/den\"", where);
    long k = 0;
    try {
      std::size_t used = 0;
      k = std::stol(spec.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument("k");
    } catch (const std::exception&) {
      throw ParseError("bad target index in \"" + spec + "\"", where);
    }
    Rational value;
    try {
      value = parse_rational(spec.substr(colon + 1));
    } catch (const ParseError&) {
      throw ParseError("bad coefficient in \"" + spec + "\"", where);
    }
    auto in_range = [dim](long x) { return x >= 1 && static_cast<std::size_t>(x) <= dim; };
    if (!in_range(i) || !in_range(j) || !in_range(k))
      throw ParseError("index outside [1, dim]", where);
    constants.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1),
                         static_cast<std::size_t>(k - 1), value});
  }

  std::vector<std::vector<Rational>> inner;
  if (doc.contains("inner_product")) {
    const json& ip = doc.at("inner_product");
    if (!ip.is_array()) throw ParseError("inner_product must be a matrix", "inner_product");
    for (std::size_t r = 0; r < ip.size(); ++r) {
      if (!ip[r].is_array()) throw ParseError("inner_product row must be an array", "inner_product[" + std::to_string(r) + "]");
      std::vector<Rational> row;
      for (std::size_t c = 0; c < ip[r].size(); ++c)
        row.push_back(rational_field(ip[r][c], "inner_product[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
      inner.push_back(std::move(row));
    }
  }

  std::vector<std::string> casimirs;
  if (doc.contains("casimirs")) {
    const json& cs = doc.at("casimirs");
    if (!cs.is_array()) throw ParseError("casimirs must be an array of strings", "casimirs");
    for (std::size_t n = 0; n < cs.size(); ++n) {
      if (!cs[n].is_string()) throw ParseError("casimir must be a string", "casimirs[" + std::to_string(n) + "]");
      casimirs.push_back(cs[n].get<std::string>());
    }
  }

  try {
    return std::make_shared<const LieAlgebra>(std::move(names), std::move(layers), std::move(constants),
                                              std::move(inner), std::move(casimirs));
  } catch (const UsageError& e) {
    throw ParseError(e.what(), "$");
  }
}

AlgebraPtr load_algebra_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open algebra definition", path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_algebra_definition(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(std::string("in ") + path.string() + ": " + e.what(), path.string() + ":" + e.where());
  }
}

json algebra_to_json(const LieAlgebra& alg) {
  json doc;
  doc["dim"] = alg.dim();
  doc["names"] = alg.names();
  doc["layers"] = alg.layers();
  json brackets = json::array();
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j)
      for (const auto& [k, c] : alg.bracket_of_basis(i, j)) {
        Rational q = c;
        brackets.push_back(json::array({i + 1, j + 1, std::to_string(k + 1) + ":" +
                                                          q.get_num().get_str() + "/" + q.get_den().get_str()}));
      }
  doc["brackets"] = brackets;
  json ip = json::array();
  for (const auto& row : alg.inner_product()) {
    json r = json::array();
    for (const auto& q : row) r.push_back(to_string(q));
    ip.push_back(r);
  }
  doc["inner_product"] = ip;
  doc["casimirs"] = alg.casimirs();
  return doc;
}

AlgebraPtr resolve_algebra(std::string_view name_or_path) {
  if (auto which = parse_builtin_name(name_or_path)) return builtin(*which);
  return load_algebra_file(std::filesystem::path(std::string(name_or_path)));
}

}  // namespace carnot
