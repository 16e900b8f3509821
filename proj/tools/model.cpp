#include "model.hpp"

#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

namespace toricctl {

using nlohmann::json;
using toric::Integer;
using toric::RingDescriptor;
using toric::Tri;

const char* model_error_name(ModelErrorKind k) {
  switch (k) {
    case ModelErrorKind::Syntax: return "ParseError";
    case ModelErrorKind::Schema: return "ParseError";
    case ModelErrorKind::RankMismatch: return "RankMismatch";
    case ModelErrorKind::VersionUnsupported: return "VersionUnsupported";
    case ModelErrorKind::Io: return "IoError";
  }
  return "ParseError";
}

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw ModelError(ModelErrorKind::Schema, (where.empty() ? std::string("/") : where) + ": " + what);
}

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) schema(where, "unknown field \"" + k + "\"");
}

Integer read_integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(j.get<std::uint64_t>()) : Integer(j.get<std::int64_t>());
  if (j.is_string()) {
    static const std::regex digits("-?[0-9]+");
    const std::string s = j.get<std::string>();
    if (std::regex_match(s, digits)) return Integer(s);
  }
  if (j.is_number_float()) schema(where, "not an integer (write integers beyond 64 bits as strings)");
  schema(where, "expected an integer");
}

IntVector read_vector(const json& j, Eigen::Index n, const std::string& where) {
  if (!j.is_array()) schema(where, "expected an array of integers");
  if (static_cast<Eigen::Index>(j.size()) != n)
    throw ModelError(ModelErrorKind::RankMismatch,
                     where + ": vector of length " + std::to_string(j.size()) + ", rank is " + std::to_string(n));
  IntVector v(n);
  for (Eigen::Index i = 0; i < n; ++i)
    v(i) = read_integer(j[static_cast<std::size_t>(i)], where + "/" + std::to_string(i));
  return v;
}

IntMatrix read_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) schema(where, "expected a nonempty array of rows");
  if (!j[0].is_array()) schema(where + "/0", "expected an array of integers");
  const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
  IntMatrix m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r)
    m.row(static_cast<Eigen::Index>(r)) = read_vector(j[r], cols, where + "/" + std::to_string(r)).transpose();
  return m;
}

Tri read_tri(const json& j, const std::string& where) {
  if (j.is_boolean()) return j.get<bool>() ? Tri::True : Tri::False;
  if (j.is_string() && j.get<std::string>() == "unknown") return Tri::Unknown;
  schema(where, "expected true, false or \"unknown\"");
}

RingDescriptor read_ring(const json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  only_keys(j, {"name", "is_field", "is_noetherian", "is_regular", "is_integral", "is_integrally_closed"}, where);
  RingDescriptor r;
  if (j.contains("name")) {
    if (!j["name"].is_string()) schema(where + "/name", "expected a string");
    r.name = j["name"].get<std::string>();
  }
  const std::pair<const char*, Tri RingDescriptor::*> flags[] = {
      {"is_field", &RingDescriptor::is_field},
      {"is_noetherian", &RingDescriptor::is_noetherian},
      {"is_regular", &RingDescriptor::is_regular},
      {"is_integral", &RingDescriptor::is_integral},
      {"is_integrally_closed", &RingDescriptor::is_integrally_closed},
  };
  for (const auto& [key, member] : flags)
    if (j.contains(key)) r.*member = read_tri(j[key], where + "/" + key);
  return r;
}

ModelFile read_model(const json& j, const std::string& where);

MorphismSpec read_morphism(const json& j, Eigen::Index rank, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  only_keys(j, {"matrix", "target"}, where);
  if (!j.contains("matrix")) schema(where, "missing field \"matrix\"");
  MorphismSpec m;
  m.matrix = read_matrix(j["matrix"], where + "/matrix");
  if (m.matrix.cols() != rank)
    throw ModelError(ModelErrorKind::RankMismatch, where + "/matrix: " + std::to_string(m.matrix.cols()) +
                                                       " columns, rank is " + std::to_string(rank));
  if (j.contains("target")) {
    const json& t = j["target"];
    if (t.is_string())
      m.target_path = t.get<std::string>();
    else if (t.is_object())
      m.target = std::make_shared<const ModelFile>(read_model(t, where + "/target"));
    else
      schema(where + "/target", "expected a path or an inline model");
    if (m.target && m.target->rank != m.matrix.rows())
      throw ModelError(ModelErrorKind::RankMismatch, where + "/matrix: " + std::to_string(m.matrix.rows()) +
                                                         " rows, target rank is " + std::to_string(m.target->rank));
  }
  return m;
}

ModelFile read_model(const json& j, const std::string& where) {
  if (!j.is_object()) schema(where, "expected an object");
  // the version decides how everything else is read, so it goes first
  if (!j.contains("format_version")) schema(where, "missing field \"format_version\"");
  const Integer version = read_integer(j["format_version"], where + "/format_version");
  if (version != 1)
    throw ModelError(ModelErrorKind::VersionUnsupported, where + "/format_version: version " + version.str() +
                                                             " is not supported (expected 1)");
  only_keys(j, {"format_version", "rank", "cones", "ring", "morphism"}, where);
  ModelFile m;
  if (!j.contains("rank")) schema(where, "missing field \"rank\"");
  const Integer rank = read_integer(j["rank"], where + "/rank");
  if (rank < 1 || rank > 64) schema(where + "/rank", "rank must be between 1 and 64");
  m.rank = rank.convert_to<Eigen::Index>();
  if (!j.contains("cones")) schema(where, "missing field \"cones\"");
  const json& cones = j["cones"];
  if (!cones.is_array()) schema(where + "/cones", "expected an array of cones");
  for (std::size_t c = 0; c < cones.size(); ++c) {
    const std::string at = where + "/cones/" + std::to_string(c);
    if (!cones[c].is_array()) schema(at, "expected an array of generators");
    std::vector<IntVector> gens;
    for (std::size_t g = 0; g < cones[c].size(); ++g) gens.push_back(read_vector(cones[c][g], m.rank, at + "/" + std::to_string(g)));
    m.cones.push_back(std::move(gens));
  }
  if (j.contains("ring")) m.ring = read_ring(j["ring"], where + "/ring");
  if (j.contains("morphism")) m.morphism = read_morphism(j["morphism"], m.rank, where + "/morphism");
  return m;
}

std::pair<std::size_t, std::size_t> position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = position(text, e.byte);
    std::string msg = e.what();
    // drop the library's "[json.exception.parse_error.101] " prefix
    if (const auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    // and its own position, which we restate in line/column form
    if (const auto p = msg.find(": "); msg.rfind("parse error", 0) == 0 && p != std::string::npos) msg = msg.substr(p + 2);
    throw ModelError(ModelErrorKind::Syntax,
                     "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg, line, column);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError(ModelErrorKind::Io, path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json tri_json(Tri t) {
  if (t == Tri::Unknown) return "unknown";
  return t == Tri::True;
}

}  // namespace

json integer_json(const Integer& x) {
  static const Integer lo(std::numeric_limits<std::int64_t>::min()), hi(std::numeric_limits<std::int64_t>::max());
  if (x >= lo && x <= hi) return x.convert_to<std::int64_t>();
  return x.str();
}

json vector_json(const IntVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(integer_json(v(i)));
  return a;
}

json vectors_json(const std::vector<IntVector>& vs) {
  json a = json::array();
  for (const IntVector& v : vs) a.push_back(vector_json(v));
  return a;
}

json matrix_json(const IntMatrix& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(vector_json(m.row(r).transpose()));
  return a;
}

ModelFile parse_model(const std::string& text) { return read_model(parse_json(text), ""); }

ModelFile load_model(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_model(text);
  } catch (const ModelError& e) {
    throw ModelError(e.kind(), path + ": " + e.what(), e.line(), e.column());
  }
}

IntMatrix parse_matrix(const std::string& text) {
  const bool inline_text = text.find('[') != std::string::npos;
  const std::string body = inline_text ? text : read_file(text);
  return read_matrix(parse_json(body), "matrix");
}

json model_to_json(const ModelFile& m) {
  json j;
  j["format_version"] = m.format_version;
  j["rank"] = m.rank;
  json cones = json::array();
  for (const auto& c : m.cones) cones.push_back(vectors_json(c));
  j["cones"] = cones;
  if (m.ring) {
    const RingDescriptor& r = *m.ring;
    j["ring"] = {{"name", r.name},
                 {"is_field", tri_json(r.is_field)},
                 {"is_noetherian", tri_json(r.is_noetherian)},
                 {"is_regular", tri_json(r.is_regular)},
                 {"is_integral", tri_json(r.is_integral)},
                 {"is_integrally_closed", tri_json(r.is_integrally_closed)}};
  }
  if (m.morphism) {
    json mj;
    mj["matrix"] = matrix_json(m.morphism->matrix);
    if (m.morphism->target_path) mj["target"] = *m.morphism->target_path;
    if (m.morphism->target) mj["target"] = model_to_json(*m.morphism->target);
    j["morphism"] = mj;
  }
  return j;
}

std::string emit_model(const ModelFile& m) { return model_to_json(m).dump(2) + "\n"; }

namespace {

bool same_cones(const std::vector<std::vector<IntVector>>& a, const std::vector<std::vector<IntVector>>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t c = 0; c < a.size(); ++c) {
    if (a[c].size() != b[c].size()) return false;
    for (std::size_t g = 0; g < a[c].size(); ++g)
      if (a[c][g].size() != b[c][g].size() || a[c][g] != b[c][g]) return false;
  }
  return true;
}

}  // namespace

bool operator==(const ModelFile& a, const ModelFile& b) {
  if (a.format_version != b.format_version || a.rank != b.rank || !same_cones(a.cones, b.cones)) return false;
  if (a.ring.has_value() != b.ring.has_value() || a.morphism.has_value() != b.morphism.has_value()) return false;
  if (a.ring) {
    const RingDescriptor &x = *a.ring, &y = *b.ring;
    if (x.name != y.name || x.is_field != y.is_field || x.is_noetherian != y.is_noetherian ||
        x.is_regular != y.is_regular || x.is_integral != y.is_integral ||
        x.is_integrally_closed != y.is_integrally_closed)
      return false;
  }
  if (a.morphism) {
    const MorphismSpec &x = *a.morphism, &y = *b.morphism;
    if (x.matrix.rows() != y.matrix.rows() || x.matrix.cols() != y.matrix.cols() || x.matrix != y.matrix) return false;
    if (x.target_path != y.target_path || bool(x.target) != bool(y.target)) return false;
    if (x.target && !(*x.target == *y.target)) return false;
  }
  return true;
}

}  // namespace toricctl
