#include "ghypo/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace ghypo {

namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}

constexpr int kMaxDegree = 16;

class Validator {
 public:
  void fail(const std::string& where, const std::string& what) { violations_.push_back(where + ": " + what); }
  const std::vector<std::string>& violations() const { return violations_; }

  // Number or RealSpec literal.
  std::optional<std::pair<double, std::optional<RealSpec>>> real_part(const Json& v, const std::string& where) {
    if (v.is_number()) {
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        fail(where, "not finite");
        return std::nullopt;
      }
      const Coefficient c = Coefficient::from_double({x, 0.0});
      return std::pair{x, c.exact_re};
    }
    if (v.is_string()) {
      try {
        RealSpec r = RealSpec::parse(v.get<std::string>());
        const double x = r.to_double();
        return std::pair{x, std::optional<RealSpec>(std::move(r))};
      } catch (const Error& e) {
        fail(where, std::string("malformed real literal: ") + e.what());
        return std::nullopt;
      }
    }
    fail(where, "expected a number or a real literal string");
    return std::nullopt;
  }

  std::optional<Coefficient> coefficient(const Json& term, const std::string& where) {
    const bool has_pair = term.contains("coeff");
    const bool has_re = term.contains("coeff_real");
    const bool has_im = term.contains("coeff_imag");
    if (has_pair && (has_re || has_im)) {
      fail(where, "give either \"coeff\" or \"coeff_real\"/\"coeff_imag\", not both");
      return std::nullopt;
    }
    std::optional<std::pair<double, std::optional<RealSpec>>> re, im;
    if (has_pair) {
      const Json& c = term["coeff"];
      if (!c.is_array() || c.size() != 2) {
        fail(where + ".coeff", "expected [re, im]");
        return std::nullopt;
      }
      re = real_part(c[0], where + ".coeff[0]");
      im = real_part(c[1], where + ".coeff[1]");
    } else if (has_re || has_im) {
      re = has_re ? real_part(term["coeff_real"], where + ".coeff_real") : std::pair{0.0, RealSpec::rational(0)};
      im = has_im ? real_part(term["coeff_imag"], where + ".coeff_imag") : std::pair{0.0, RealSpec::rational(0)};
    } else {
      fail(where, "missing \"coeff\"");
      return std::nullopt;
    }
    if (!re || !im) return std::nullopt;
    return Coefficient{{re->first, im->first}, std::move(re->second), std::move(im->second)};
  }

  std::optional<int> degree(const Json& term, const char* key, const std::string& where) {
    if (!term.contains(key)) return 0;
    const Json& v = term[key];
    if (!v.is_number_integer()) {
      fail(where + "." + key, "expected a nonnegative integer");
      return std::nullopt;
    }
    const auto d = v.get<long long>();
    if (d < 0 || d > kMaxDegree) {
      fail(where + "." + key, "degree " + std::to_string(d) + " out of range [0, " + std::to_string(kMaxDegree) + "]");
      return std::nullopt;
    }
    return static_cast<int>(d);
  }

 private:
  std::vector<std::string> violations_;
};

Json real_to_json(double value, const std::optional<RealSpec>& exact) {
  if (exact) return exact->to_string();
  return value;
}

Json coefficient_to_json(const Coefficient& c) {
  return Json::array({real_to_json(c.value.real(), c.exact_re), real_to_json(c.value.imag(), c.exact_im)});
}

FrequencyLabel parse_label(const Json& j, ModelKind model, const std::string& where, std::vector<std::string>& errs) {
  if (model == ModelKind::Torus2) {
    if (!j.is_object() || !j.contains("xi") || !j.contains("eta") || !j["xi"].is_number_integer() ||
        !j["eta"].is_number_integer()) {
      errs.push_back(where + ": expected {\"xi\": int, \"eta\": int}");
      return Torus2Label{};
    }
    return Torus2Label{j["xi"].get<int>(), j["eta"].get<int>()};
  }
  if (!j.is_object() || !j.contains("twice_ell") || !j["twice_ell"].is_number_integer() || j["twice_ell"].get<int>() < 0) {
    errs.push_back(where + ": expected {\"twice_ell\": nonnegative int}");
    return Su2Label{};
  }
  return Su2Label{j["twice_ell"].get<int>()};
}

}  // namespace

SchemaError::SchemaError(std::vector<std::string> violations)
    : Error(ErrorCode::Schema, "cli_report", join(violations)), violations_(std::move(violations)) {}

ModelKind parse_model_kind(const std::string& kind) {
  if (kind == "torus2") return ModelKind::Torus2;
  if (kind == "su2") return ModelKind::Su2;
  throw SchemaError({"model.kind: unknown model \"" + kind + "\" (expected torus2 or su2)"});
}

MatrixTable load_matrix_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError({"operator.path: cannot open " + path.string()});
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw SchemaError({path.string() + ": invalid JSON: " + e.what()});
  }
  std::vector<std::string> errs;
  MatrixTable table;
  table.path = path.string();
  if (!doc.contains("model") || !doc["model"].contains("kind") || !doc["model"]["kind"].is_string()) {
    throw SchemaError({path.string() + ": missing model.kind"});
  }
  table.model = parse_model_kind(doc["model"]["kind"].get<std::string>());
  if (!doc.contains("entries") || !doc["entries"].is_array()) throw SchemaError({path.string() + ": missing entries"});
  for (std::size_t i = 0; i < doc["entries"].size(); ++i) {
    const Json& e = doc["entries"][i];
    const std::string where = path.filename().string() + ".entries[" + std::to_string(i) + "]";
    if (!e.contains("label") || !e.contains("matrix") || !e["matrix"].is_array()) {
      errs.push_back(where + ": expected label and matrix");
      continue;
    }
    const FrequencyLabel label = parse_label(e["label"], table.model, where + ".label", errs);
    const Json& m = e["matrix"];
    const auto n2 = m.size();
    const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n2))));
    if (static_cast<std::size_t>(n * n) != n2 || n == 0) {
      errs.push_back(where + ".matrix: " + std::to_string(n2) + " entries is not a square matrix");
      continue;
    }
    ComplexMatrix mat(n, n);
    bool ok = true;
    for (std::size_t k = 0; k < n2; ++k) {
      const Json& z = m[k];
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        errs.push_back(where + ".matrix[" + std::to_string(k) + "]: expected [re, im]");
        ok = false;
        break;
      }
      mat(static_cast<Eigen::Index>(k) / n, static_cast<Eigen::Index>(k) % n) = {z[0].get<double>(), z[1].get<double>()};
    }
    if (!ok) continue;
    const FrequencyIndex f = make_frequency(label);
    if (n != f.dim && n != f.block_dim()) {
      errs.push_back(where + ".matrix: size " + std::to_string(n) + " does not fit " + to_string(label));
      continue;
    }
    table.entries.insert_or_assign(label, std::move(mat));
  }
  if (!errs.empty()) throw SchemaError(errs);
  return table;
}

ParsedSpec parse_spec(const Json& doc, const std::filesystem::path& base_dir) {
  Validator v;
  ParsedSpec out;
  if (!doc.is_object()) throw SchemaError({"document: expected a JSON object"});

  std::optional<ModelKind> model;
  if (!doc.contains("model")) {
    v.fail("model", "missing required field");
  } else if (!doc["model"].is_object() || !doc["model"].contains("kind") || !doc["model"]["kind"].is_string()) {
    v.fail("model", "expected {\"kind\": \"torus2\" | \"su2\"}");
  } else {
    const auto kind = doc["model"]["kind"].get<std::string>();
    if (kind == "torus2") model = ModelKind::Torus2;
    else if (kind == "su2") model = ModelKind::Su2;
    else v.fail("model.kind", "unknown model \"" + kind + "\"");
  }

  std::optional<OperatorSpec> op;
  if (!doc.contains("operator")) {
    v.fail("operator", "missing required field");
  } else if (!doc["operator"].is_object() || !doc["operator"].contains("kind") || !doc["operator"]["kind"].is_string()) {
    v.fail("operator", "expected an object with a string \"kind\"");
  } else {
    const Json& o = doc["operator"];
    const auto kind = o["kind"].get<std::string>();
    if (kind == "torus_poly") {
      if (model && *model != ModelKind::Torus2) v.fail("operator.kind", "torus_poly needs model torus2");
      if (!o.contains("terms") || !o["terms"].is_array()) {
        v.fail("operator.terms", "missing term list");
      } else {
        TorusPoly poly;
        for (std::size_t i = 0; i < o["terms"].size(); ++i) {
          const Json& t = o["terms"][i];
          const std::string where = "operator.terms[" + std::to_string(i) + "]";
          if (!t.is_object()) {
            v.fail(where, "expected an object");
            continue;
          }
          auto c = v.coefficient(t, where);
          auto dt = v.degree(t, "deg_t", where);
          auto dx = v.degree(t, "deg_x", where);
          if (c && dt && dx) poly.terms.push_back({std::move(*c), *dt, *dx});
        }
        op = OperatorSpec{std::move(poly)};
      }
    } else if (kind == "su2_diag") {
      if (model && *model != ModelKind::Su2) v.fail("operator.kind", "su2_diag needs model su2");
      if (!o.contains("poly") || !o["poly"].is_array()) {
        v.fail("operator.poly", "missing term list");
      } else {
        Su2DiagPoly poly;
        for (std::size_t i = 0; i < o["poly"].size(); ++i) {
          const Json& t = o["poly"][i];
          const std::string where = "operator.poly[" + std::to_string(i) + "]";
          if (!t.is_object()) {
            v.fail(where, "expected an object");
            continue;
          }
          auto c = v.coefficient(t, where);
          auto d0 = v.degree(t, "deg_d0", where);
          auto nl = v.degree(t, "deg_neglap", where);
          if (c && d0 && nl) poly.terms.push_back({std::move(*c), *d0, *nl});
        }
        op = OperatorSpec{std::move(poly)};
      }
    } else if (kind == "matrix_table") {
      if (!o.contains("path") || !o["path"].is_string()) {
        v.fail("operator.path", "missing table path");
      } else {
        std::filesystem::path p = o["path"].get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
        try {
          MatrixTable table = load_matrix_table(p);
          table.path = o["path"].get<std::string>();
          if (model && table.model != *model) v.fail("operator.path", "table model differs from the model block");
          op = OperatorSpec{std::move(table)};
        } catch (const SchemaError& e) {
          for (const auto& s : e.violations()) v.fail("operator", s);
        }
      }
    } else {
      v.fail("operator.kind", "unknown operator kind \"" + kind + "\"");
    }
  }

  if (doc.contains("options")) {
    const Json& opt = doc["options"];
    if (!opt.is_object()) {
      v.fail("options", "expected an object");
    } else {
      for (const auto& [key, val] : opt.items()) {
        if (key == "cutoff") {
          if (!val.is_string() && !val.is_number()) v.fail("options.cutoff", "expected a window string or number");
          else if (val.is_string()) {
            try {
              parse_window(val.get<std::string>());
            } catch (const Error& e) {
              v.fail("options.cutoff", e.what());
            }
          }
        } else if (key == "tol" || key == "s" || key == "m") {
          if (!val.is_number()) v.fail("options." + key, "expected a number");
        } else if (key == "seed" || key == "probes" || key == "k") {
          if (!val.is_number_unsigned()) v.fail("options." + key, "expected a nonnegative integer");
        } else {
          v.fail("options." + key, "unknown option");
        }
      }
      out.options = opt;
    }
  }

  if (!v.violations().empty()) throw SchemaError(v.violations());
  out.model = SpectralModel{*model, 2.0};
  out.op = std::move(*op);
  return out;
}

ParsedSpec parse_spec_text(const std::string& text, const std::filesystem::path& base_dir) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError({std::string("invalid JSON: ") + e.what()});
  }
  return parse_spec(doc, base_dir);
}

ParsedSpec parse_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError({"cannot open spec file " + path.string()});
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str(), path.parent_path());
}

Json to_json(const ParsedSpec& spec) {
  Json doc;
  doc["model"] = {{"kind", spec.model.kind == ModelKind::Torus2 ? "torus2" : "su2"}};
  Json op;
  if (const auto* t = std::get_if<TorusPoly>(&spec.op.kind)) {
    op["kind"] = "torus_poly";
    op["terms"] = Json::array();
    for (const TorusTerm& term : t->terms)
      op["terms"].push_back({{"coeff", coefficient_to_json(term.coeff)}, {"deg_t", term.deg_t}, {"deg_x", term.deg_x}});
  } else if (const auto* s = std::get_if<Su2DiagPoly>(&spec.op.kind)) {
    op["kind"] = "su2_diag";
    op["poly"] = Json::array();
    for (const Su2Term& term : s->terms)
      op["poly"].push_back(
          {{"coeff", coefficient_to_json(term.coeff)}, {"deg_d0", term.deg_d0}, {"deg_neglap", term.deg_neglap}});
  } else {
    op["kind"] = "matrix_table";
    op["path"] = std::get<MatrixTable>(spec.op.kind).path;
  }
  doc["operator"] = std::move(op);
  if (!spec.options.empty()) doc["options"] = spec.options;
  return doc;
}

}  // namespace ghypo
