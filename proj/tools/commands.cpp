#include "commands.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <iomanip>
#include <sstream>

#include "model.hpp"
#include "toric/morphism.hpp"

namespace toricctl {

using nlohmann::json;
using namespace toric;

namespace {

json tri(Tri t) {
  if (t == Tri::Unknown) return "unknown";
  return t == Tri::True;
}

json header(const Options& opt, const std::string& canonical_input) {
  return {{"tool", "toricctl"},
          {"version", kToolVersion},
          {"report_format", kReportFormat},
          {"command", opt.command},
          {"input_digest", "sha256:" + sha256_hex(canonical_input)}};
}

Outcome invalid(json doc, json error) {
  doc["status"] = kInvalidInput;
  doc["error"] = std::move(error);
  return {kInvalidInput, std::move(doc)};
}

json model_error(const ModelError& e) {
  json j = {{"kind", model_error_name(e.kind())}, {"message", e.what()}};
  if (e.line() > 0) {
    j["line"] = e.line();
    j["column"] = e.column();
  }
  return j;
}

json toric_error(const ToricError& e) { return {{"kind", error_code_name(e.code())}, {"message", e.what()}}; }

json diagnostics_json(const std::vector<FanDiagnostic>& ds) {
  json a = json::array();
  for (const FanDiagnostic& d : ds)
    a.push_back({{"kind", fan_issue_name(d.kind)},
                 {"cones", d.cones},
                 {"witness", vector_json(d.witness)},
                 {"message", d.message}});
  return a;
}

json fan_json(const Fan& f) {
  json cones = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ConvexCone& c = f.cone(i);
    cones.push_back({{"index", i},
                     {"rank", c.rank()},
                     {"hilbert_basis", vectors_json(c.hilbert_basis)},
                     {"faces", f.face_indices(i)}});
  }
  return {{"size", f.size()}, {"maximal", f.maximal()}, {"cones", cones}};
}

json scheme_json(const SchemeReport& s) {
  json notes = json::object();
  for (const auto& [k, v] : s.notes) notes[k] = v;
  return {{"separated", s.separated},
          {"quasi_compact", s.quasi_compact},
          {"noetherian", tri(s.noetherian)},
          {"proper", s.proper},
          {"complete_fan", s.complete_fan},
          {"finite_fan", s.finite_fan},
          {"dimension", s.dimension ? json(*s.dimension) : json("unknown")},
          {"smooth", s.smooth},
          {"regular", tri(s.regular)},
          {"log_regular", tri(s.log_regular)},
          {"integral", tri(s.integral)},
          {"normal", tri(s.normal)},
          {"notes", notes}};
}

RingDescriptor ring_of(const ModelFile& m) { return m.ring ? *m.ring : RingDescriptor{}; }

/// Loads the single model file of check, charts and dualize.
std::optional<ModelFile> load_single(const Options& opt, Outcome& out) {
  if (opt.files.size() != 1) {
    out = invalid(header(opt, ""), {{"kind", "UsageError"}, {"message", "expected exactly one model file"}});
    return std::nullopt;
  }
  try {
    return load_model(opt.files[0]);
  } catch (const ModelError& e) {
    out = invalid(header(opt, ""), model_error(e));
    return std::nullopt;
  }
}

Outcome finish(json doc, const std::vector<std::pair<std::string, bool>>& checks, const Options& opt) {
  json failed = json::array();
  for (const std::string& r : opt.require) {
    bool known = false, holds = false;
    for (const auto& [name, value] : checks)
      if (name == r) known = true, holds = value;
    if (!known)
      return invalid(std::move(doc), {{"kind", "UsageError"}, {"message", "cannot require \"" + r + "\" here"}});
    if (!holds) failed.push_back(r);
  }
  const int status = failed.empty() ? kOk : kRequirementFailed;
  doc["status"] = status;
  doc["failed_requirements"] = failed;
  return {status, std::move(doc)};
}

Outcome run_check(const Options& opt) {
  Outcome out;
  const auto model = load_single(opt, out);
  if (!model) return out;
  json doc = header(opt, emit_model(*model));
  const FanValidation v = validate_fan(model->cones, model->rank, opt.threads);
  if (!v.ok()) {
    doc["diagnostics"] = diagnostics_json(v.diagnostics);
    return invalid(std::move(doc), {{"kind", "InvalidFan"}, {"message", "the cones do not form a fan"}});
  }
  const SchemeReport s = scheme_report(*v.fan, ring_of(*model));
  doc["fan"] = fan_json(*v.fan);
  doc["scheme"] = scheme_json(s);
  return finish(std::move(doc),
                {{"proper", s.proper}, {"complete", s.complete_fan}, {"regular", s.regular == Tri::True}}, opt);
}

Outcome run_charts(const Options& opt) {
  Outcome out;
  const auto model = load_single(opt, out);
  if (!model) return out;
  json doc = header(opt, emit_model(*model));
  const FanValidation v = validate_fan(model->cones, model->rank, opt.threads);
  if (!v.ok()) {
    doc["diagnostics"] = diagnostics_json(v.diagnostics);
    return invalid(std::move(doc), {{"kind", "InvalidFan"}, {"message", "the cones do not form a fan"}});
  }
  const Fan& f = *v.fan;
  json charts = json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    const ChartPresentation c = chart_presentation(f, i);
    charts.push_back({{"cone", i},
                      {"generators", vectors_json(c.monoid_generators)},
                      {"invertible", c.invertible},
                      {"units_rank", c.units_rank},
                      {"relations", vectors_json(c.relation_lattice.basis_vectors())}});
  }
  json gluing = json::array();
  for (const GluingDatum& g : gluing_data(f))
    gluing.push_back({{"i", g.i}, {"j", g.j}, {"common_face", g.common_face}, {"m_i", vector_json(g.m_i)}, {"m_j", vector_json(g.m_j)}});
  doc["charts"] = charts;
  doc["gluing"] = gluing;
  return finish(std::move(doc), {}, opt);
}

Outcome run_dualize(const Options& opt) {
  Outcome out;
  const auto model = load_single(opt, out);
  if (!model) return out;
  json doc = header(opt, emit_model(*model));
  json cones = json::array();
  for (std::size_t i = 0; i < model->cones.size(); ++i) {
    try {
      const ConvexCone m = make_convex_cone(model->cones[i], model->rank);
      const ConcaveCone d = dual_convex(m);
      cones.push_back({{"cone", i},
                       {"hilbert_basis", vectors_json(m.hilbert_basis)},
                       {"dual", {{"hilbert_basis", vectors_json(d.hilbert_basis)},
                                 {"units", vectors_json(d.units.basis_vectors())}}}});
    } catch (const ToricError& e) {
      json err = toric_error(e);
      err["cone"] = i;
      return invalid(std::move(doc), err);
    }
  }
  doc["cones"] = cones;
  return finish(std::move(doc), {}, opt);
}

Outcome run_morphism(const Options& opt) {
  const json bare = header(opt, "");
  if (opt.files.empty() || opt.files.size() > 2)
    return invalid(bare, {{"kind", "UsageError"}, {"message", "expected a source model and optionally a target model"}});
  ModelFile src, dst;
  IntMatrix matrix;
  try {
    src = load_model(opt.files[0]);
    if (opt.files.size() == 2) {
      dst = load_model(opt.files[1]);
    } else if (src.morphism && src.morphism->target) {
      dst = *src.morphism->target;
    } else if (src.morphism && src.morphism->target_path) {
      const std::filesystem::path base = std::filesystem::path(opt.files[0]).parent_path();
      dst = load_model((base / *src.morphism->target_path).string());
    } else {
      return invalid(bare, {{"kind", "UsageError"}, {"message", "no target model given"}});
    }
    if (opt.matrix)
      matrix = parse_matrix(*opt.matrix);
    else if (src.morphism)
      matrix = src.morphism->matrix;
    else
      return invalid(bare, {{"kind", "UsageError"}, {"message", "no matrix given"}});
  } catch (const ModelError& e) {
    return invalid(bare, model_error(e));
  }

  json doc = header(opt, emit_model(src) + emit_model(dst) + matrix_json(matrix).dump() + "\n");
  if (matrix.cols() != src.rank || matrix.rows() != dst.rank)
    return invalid(std::move(doc), {{"kind", "RankMismatch"},
                                    {"message", "matrix is " + std::to_string(matrix.rows()) + "x" +
                                                    std::to_string(matrix.cols()) + ", fans have ranks " +
                                                    std::to_string(src.rank) + " and " + std::to_string(dst.rank)}});
  const FanValidation sv = validate_fan(src.cones, src.rank, opt.threads);
  const FanValidation dv = validate_fan(dst.cones, dst.rank, opt.threads);
  if (!sv.ok() || !dv.ok()) {
    if (!sv.ok()) doc["source_diagnostics"] = diagnostics_json(sv.diagnostics);
    if (!dv.ok()) doc["target_diagnostics"] = diagnostics_json(dv.diagnostics);
    return invalid(std::move(doc), {{"kind", "InvalidFan"}, {"message", "source or target is not a fan"}});
  }
  FanMorphism f;
  try {
    f = make_fan_morphism(matrix, *sv.fan, *dv.fan);
  } catch (const NoTargetConeError& e) {
    json err = toric_error(e);
    err["source_cone"] = e.source_cone();
    err["witness"] = vector_json(e.witness());
    return invalid(std::move(doc), err);
  }
  const RingDescriptor ring = src.ring ? *src.ring : ring_of(dst);
  const MorphismReport r = morphism_report(f, ring, opt.threads);
  json proper = {{"value", r.proper.proper}};
  if (r.proper.target_cone) proper["target_cone"] = *r.proper.target_cone;
  if (r.proper.witness) proper["witness"] = vector_json(*r.proper.witness);
  json pre = json::array();
  for (const auto& [j, sources] : r.chart_preimages) pre.push_back({{"target", j}, {"sources", sources}});
  json notes = json::object();
  for (const auto& [k, v] : r.notes) notes[k] = v;
  doc["morphism"] = {{"valid", r.valid},
                     {"matrix", matrix_json(matrix)},
                     {"assignment", f.assignment},
                     {"proper", proper},
                     {"birational", tri(r.birational)},
                     {"chart_preimages", pre},
                     {"notes", notes}};
  doc["source"] = fan_json(f.source);
  doc["target"] = fan_json(f.target);
  return finish(std::move(doc), {{"proper", r.proper.proper}, {"birational", r.birational == Tri::True}}, opt);
}

void text_lines(const json& j, const std::string& indent, std::ostringstream& out) {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      out << indent << k << ":\n";
      text_lines(v, indent + "  ", out);
    } else if (v.is_array() && !v.empty() && v[0].is_object()) {
      out << indent << k << ":\n";
      for (const json& e : v) {
        out << indent << "  -\n";
        text_lines(e, indent + "    ", out);
      }
    } else {
      out << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

}  // namespace

Outcome run_command(const Options& opt) {
  try {
    if (opt.command == "check") return run_check(opt);
    if (opt.command == "charts") return run_charts(opt);
    if (opt.command == "dualize") return run_dualize(opt);
    if (opt.command == "morphism") return run_morphism(opt);
    return invalid(header(opt, ""), {{"kind", "UsageError"}, {"message", "unknown command " + opt.command}});
  } catch (const ToricError& e) {
    return invalid(header(opt, ""), toric_error(e));
  }
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) return "";
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

std::string render_text(const json& doc) {
  std::ostringstream out;
  text_lines(doc, "", out);
  return out.str();
}

std::string summary(const json& doc) {
  std::ostringstream out;
  out << "toricctl " << doc.value("command", "") << ": status " << doc.value("status", 0) << "\n";
  if (doc.contains("error")) out << "  error: " << doc["error"].value("message", "") << "\n";
  if (doc.contains("scheme")) {
    const json& s = doc["scheme"];
    for (const char* k : {"proper", "complete_fan", "regular", "log_regular"})
      out << "  " << k << ": " << (s[k].is_string() ? s[k].get<std::string>() : s[k].dump()) << "\n";
  }
  if (doc.contains("morphism")) {
    const json& m = doc["morphism"];
    out << "  proper: " << m["proper"]["value"].dump() << "\n";
    out << "  birational: " << (m["birational"].is_string() ? m["birational"].get<std::string>() : m["birational"].dump())
        << "\n";
  }
  if (doc.contains("failed_requirements") && !doc["failed_requirements"].empty())
    out << "  failed requirements: " << doc["failed_requirements"].dump() << "\n";
  return out.str();
}

}  // namespace toricctl
