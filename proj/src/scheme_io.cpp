#include "splitlab/scheme_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "splitlab/error.hpp"

namespace splitlab::io {

NumericMode parse_mode(std::string_view name) {
  if (name == "rational" || name == "exact") return NumericMode::rational;
  if (name == "float" || name == "double") return NumericMode::floating;
  throw Error(ErrorCode::usage_error, "unknown numeric mode \"" + std::string(name) + "\"");
}

std::string_view to_string(NumericMode mode) {
  return mode == NumericMode::rational ? "rational" : "float";
}

namespace {

// Forwards to the DOM builder but turns floating-point tokens into strings
// of their source text.
class RawNumberSax {
 public:
  using Dom = nlohmann::detail::json_sax_dom_parser<Json>;
  explicit RawNumberSax(Json& root) : dom_(root, true) {}

  bool null() { return dom_.null(); }
  bool boolean(bool b) { return dom_.boolean(b); }
  bool number_integer(Json::number_integer_t x) { return dom_.number_integer(x); }
  bool number_unsigned(Json::number_unsigned_t x) { return dom_.number_unsigned(x); }
  bool number_float(Json::number_float_t, const Json::string_t& raw) {
    Json::string_t copy = raw;
    return dom_.string(copy);
  }
  bool string(Json::string_t& s) { return dom_.string(s); }
  bool binary(Json::binary_t& b) { return dom_.binary(b); }
  bool start_object(std::size_t n) { return dom_.start_object(n); }
  bool key(Json::string_t& k) { return dom_.key(k); }
  bool end_object() { return dom_.end_object(); }
  bool start_array(std::size_t n) { return dom_.start_array(n); }
  bool end_array() { return dom_.end_array(); }
  template <class Exception>
  bool parse_error(std::size_t position, const std::string& token, const Exception& ex) {
    return dom_.parse_error(position, token, ex);
  }

 private:
  Dom dom_;
};

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::parse_error, "scheme document: " + what);
}

const Json& require_field(const Json& doc, const char* name) {
  if (!doc.is_object()) schema_error("top level must be an object");
  auto it = doc.find(name);
  if (it == doc.end()) schema_error(std::string("missing field \"") + name + "\"");
  return *it;
}

Rational exact_number(const Json& x, const std::string& where) {
  if (x.is_number_integer()) {
    if (x.is_number_unsigned()) return Rational(BigInt(x.get<std::uint64_t>()));
    return Rational(BigInt(x.get<std::int64_t>()));
  }
  if (x.is_string()) {
    try {
      return parse_rational(x.get<std::string>());
    } catch (const Error& e) {
      schema_error(where + ": " + e.what());
    }
  }
  if (x.is_number_float()) return exact_from_double(x.get<double>());
  schema_error(where + " must be a number or a \"p/q\" string");
}

double float_number(const Json& x, const std::string& where) {
  if (x.is_string()) {
    const auto& s = x.get_ref<const std::string&>();
    if (s.find('/') == std::string::npos) {
      double value = 0.0;
      const char* end = s.data() + s.size();
      auto [ptr, ec] = std::from_chars(s.data(), end, value);
      if (ec == std::errc{} && ptr == end) return value;
    }
  }
  if (x.is_number_float()) return x.get<double>();
  return to_double(exact_number(x, where));
}

template <class S, class Conv>
BasicScheme<S> scheme_from(const Json& doc, Conv conv) {
  const Json& kind_j = require_field(doc, "kind");
  if (!kind_j.is_string()) schema_error("\"kind\" must be a string");
  const auto& kind_s = kind_j.get_ref<const std::string&>();
  Kind kind;
  if (kind_s == "velocity") {
    kind = Kind::velocity;
  } else if (kind_s == "position") {
    kind = Kind::position;
  } else {
    schema_error("\"kind\" must be \"velocity\" or \"position\" (got \"" + kind_s + "\")");
  }
  auto read_vec = [&](const char* name) {
    const Json& arr = require_field(doc, name);
    if (!arr.is_array()) schema_error(std::string("\"") + name + "\" must be an array");
    std::vector<S> out;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      out.push_back(conv(arr[i], std::string(name) + "[" + std::to_string(i) + "]"));
    }
    return out;
  };
  auto t = read_vec("t");
  auto v = read_vec("v");
  std::vector<GradientTerm<S>> gradient;
  if (auto it = doc.find("gradient"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) schema_error("\"gradient\" must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const Json& g = (*it)[i];
      const std::string where = "gradient[" + std::to_string(i) + "]";
      if (!g.is_object() || !g.contains("index") || !g.contains("c")) {
        schema_error(where + " needs \"index\" and \"c\"");
      }
      if (!g["index"].is_number_integer() || g["index"].get<long long>() < 0) {
        schema_error(where + ".index must be a non-negative integer");
      }
      gradient.push_back({static_cast<std::size_t>(g["index"].get<long long>()),
                          conv(g["c"], where + ".c")});
    }
  }
  std::string label;
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) schema_error("\"label\" must be a string");
    label = it->get<std::string>();
  }
  try {
    return BasicScheme<S>(kind, std::move(t), std::move(v), std::move(gradient), std::move(label));
  } catch (const Error& e) {
    schema_error(e.what());
  }
}

template <class S>
Json scheme_to_json(const BasicScheme<S>& scheme) {
  Json j;
  j["kind"] = std::string(splitlab::to_string(scheme.kind()));
  Json t = Json::array(), v = Json::array();
  for (const auto& x : scheme.t()) t.push_back(scalar_json(x));
  for (const auto& x : scheme.v()) v.push_back(scalar_json(x));
  j["t"] = std::move(t);
  j["v"] = std::move(v);
  if (scheme.has_gradient()) {
    Json g = Json::array();
    for (const auto& term : scheme.gradient()) {
      Json e;
      e["index"] = term.index;
      e["c"] = scalar_json(term.c);
      g.push_back(std::move(e));
    }
    j["gradient"] = std::move(g);
  }
  if (!scheme.label().empty()) j["label"] = scheme.label();
  return j;
}

}  // namespace

Json parse_json_exact(std::string_view text) {
  Json root;
  RawNumberSax sax(root);
  try {
    Json::sax_parse(text.begin(), text.end(), &sax);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  return root;
}

RationalScheme scheme_from_json_exact(const Json& doc) {
  return scheme_from<Rational>(doc, exact_number);
}

Scheme scheme_from_json(const Json& doc) { return scheme_from<double>(doc, float_number); }

RationalScheme parse_scheme_exact(std::string_view text) {
  return scheme_from_json_exact(parse_json_exact(text));
}

Scheme parse_scheme(std::string_view text) { return scheme_from_json(parse_json_exact(text)); }

RationalScheme read_scheme_exact(const std::filesystem::path& path) {
  return parse_scheme_exact(read_file(path));
}

Scheme read_scheme(const std::filesystem::path& path) { return parse_scheme(read_file(path)); }

Json to_json(const RationalScheme& scheme) { return scheme_to_json(scheme); }
Json to_json(const Scheme& scheme) { return scheme_to_json(scheme); }

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::usage_error, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::usage_error, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::usage_error, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::usage_error, "cannot rename into " + path.string() + ": " + ec.message());
}

}  // namespace splitlab::io
