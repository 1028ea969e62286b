#include "nlse/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlse/csv.hpp"
#include "nlse/errors.hpp"

namespace nlse {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  fail(ErrorCode::ConfigError, path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) bad(path, "unknown key '" + key + "'");
}

const json* find(const json& obj, const char* key) {
  const auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const std::string& path, const char* key,
                  std::optional<double> fallback = std::nullopt) {
  const json* v = find(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    bad(path + "." + key, "required number missing");
  }
  if (!v->is_number()) bad(path + "." + key, "expected a number");
  return v->get<double>();
}

std::size_t get_index(const json& obj, const std::string& path,
                      const char* key, std::size_t fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_unsigned()) bad(path + "." + key, "expected a count");
  return v->get<std::size_t>();
}

int get_sign(const json& obj, const std::string& path, const char* key,
             int fallback) {
  const json* v = find(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) bad(path + "." + key, "expected +1 or -1");
  const int s = v->get<int>();
  if (s != 1 && s != -1) bad(path + "." + key, "expected +1 or -1");
  return s;
}

Coefficient parse_coefficient(const json& obj, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object with a 'kind'");
  const json* kind = find(obj, "kind");
  if (!kind || !kind->is_string()) bad(path + ".kind", "expected a string");
  const std::string k = kind->get<std::string>();
  if (k == "const") {
    check_keys(obj, path, {"kind", "value"});
    return Coefficient::constant(get_number(obj, path, "value"));
  }
  if (k == "exp") {
    check_keys(obj, path, {"kind", "scale", "rate"});
    return Coefficient::exponential(get_number(obj, path, "scale"),
                                    get_number(obj, path, "rate"));
  }
  if (k == "samples") {
    check_keys(obj, path, {"kind", "path"});
    const json* p = find(obj, "path");
    if (!p || !p->is_string()) bad(path + ".path", "expected a file path");
    const auto rows = read_samples_csv(p->get<std::string>());
    std::vector<double> z, v;
    z.reserve(rows.size());
    v.reserve(rows.size());
    for (const auto& [zz, vv] : rows) {
      z.push_back(zz);
      v.push_back(vv);
    }
    return Coefficient::samples(std::move(z), std::move(v));
  }
  bad(path + ".kind", "expected 'const', 'exp' or 'samples'");
}

ExperimentConfig parse(const json& root) {
  if (!root.is_object()) fail(ErrorCode::ConfigError, "config: expected an object");
  check_keys(root, "config",
             {"model", "grid", "solver", "initial", "bounds", "output",
              "interpolation", "family", "z_grid"});
  ExperimentConfig cfg;

  if (const json* m = find(root, "model")) {
    check_keys(*m, "model", {"kind", "c1", "c2", "rho"});
    if (const json* kind = find(*m, "kind")) {
      if (!kind->is_string()) bad("model.kind", "expected a string");
      const std::string k = kind->get<std::string>();
      if (k == "dissipative")
        cfg.model.kind = ModelTag::Dissipative;
      else if (k == "integrable")
        cfg.model.kind = ModelTag::Integrable;
      else if (k == "cubic")
        cfg.model.kind = ModelTag::Cubic;
      else
        bad("model.kind", "expected 'dissipative', 'integrable' or 'cubic'");
    }
    cfg.model.c1 = get_sign(*m, "model", "c1", cfg.model.c1);
    cfg.model.rho = get_sign(*m, "model", "rho", cfg.model.rho);
    cfg.model.c2 = get_number(*m, "model", "c2", cfg.model.c2);
    if (!(cfg.model.c2 > 0.0)) bad("model.c2", "must be > 0");
  }

  if (const json* g = find(root, "grid")) {
    check_keys(*g, "grid", {"t_min", "t_max", "n"});
    cfg.grid.t_min = get_number(*g, "grid", "t_min", cfg.grid.t_min);
    cfg.grid.t_max = get_number(*g, "grid", "t_max", cfg.grid.t_max);
    cfg.grid.n = get_index(*g, "grid", "n", cfg.grid.n);
    if (!(cfg.grid.t_max > cfg.grid.t_min)) bad("grid.t_max", "must exceed t_min");
    if (cfg.grid.n < 16 || (cfg.grid.n & (cfg.grid.n - 1)) != 0)
      bad("grid.n", "must be a power of two, at least 16");
  }

  if (const json* s = find(root, "solver")) {
    check_keys(*s, "solver", {"dz", "z_end", "snapshot_every"});
    cfg.solver.dz = get_number(*s, "solver", "dz", cfg.solver.dz);
    cfg.solver.z_end = get_number(*s, "solver", "z_end", cfg.solver.z_end);
    cfg.solver.snapshot_every =
        get_index(*s, "solver", "snapshot_every", cfg.solver.snapshot_every);
    if (!(cfg.solver.dz > 0.0)) bad("solver.dz", "must be > 0");
    if (cfg.solver.z_end < 0.0) bad("solver.z_end", "must be >= 0");
    if (cfg.solver.snapshot_every == 0) bad("solver.snapshot_every", "must be >= 1");
  }

  if (const json* i = find(root, "initial")) {
    const json* kind = find(*i, "kind");
    if (!kind || !kind->is_string()) bad("initial.kind", "expected a string");
    const std::string k = kind->get<std::string>();
    if (k == "gaussian") {
      check_keys(*i, "initial", {"kind", "amplitude", "width"});
      cfg.initial.kind = InitialSpec::Kind::Gaussian;
      cfg.initial.amplitude =
          get_number(*i, "initial", "amplitude", cfg.initial.amplitude);
      cfg.initial.width = get_number(*i, "initial", "width", cfg.initial.width);
      if (!(cfg.initial.width > 0.0)) bad("initial.width", "must be > 0");
    } else if (k == "soliton") {
      check_keys(*i, "initial", {"kind", "a"});
      cfg.initial.kind = InitialSpec::Kind::Soliton;
      cfg.initial.a = get_number(*i, "initial", "a", cfg.initial.a);
      if (!(cfg.initial.a > 0.0)) bad("initial.a", "must be > 0");
    } else if (k == "file") {
      check_keys(*i, "initial", {"kind", "path"});
      cfg.initial.kind = InitialSpec::Kind::File;
      const json* p = find(*i, "path");
      if (!p || !p->is_string()) bad("initial.path", "expected a file path");
      cfg.initial.path = p->get<std::string>();
    } else {
      bad("initial.kind", "expected 'gaussian', 'soliton' or 'file'");
    }
  }

  if (const json* b = find(root, "bounds")) {
    check_keys(*b, "bounds", {"epsilon", "delta", "coefficient_variant"});
    cfg.bounds.epsilon = get_number(*b, "bounds", "epsilon", cfg.bounds.epsilon);
    if (!(cfg.bounds.epsilon > 0.0)) bad("bounds.epsilon", "must be > 0");
    if (const json* d = find(*b, "delta")) {
      if (d->is_string()) {
        if (d->get<std::string>() != "auto")
          bad("bounds.delta", "expected a number or 'auto'");
        cfg.bounds.auto_delta = true;
      } else if (d->is_number()) {
        cfg.bounds.delta = d->get<double>();
        if (!(cfg.bounds.delta > 0.0)) bad("bounds.delta", "must be > 0");
      } else {
        bad("bounds.delta", "expected a number or 'auto'");
      }
    }
    if (const json* v = find(*b, "coefficient_variant")) {
      if (!v->is_string()) bad("bounds.coefficient_variant", "expected a string");
      const std::string s = v->get<std::string>();
      if (s == "squared")
        cfg.bounds.variant = CoefficientVariant::Squared;
      else if (s == "paper_literal")
        cfg.bounds.variant = CoefficientVariant::PaperLiteral;
      else
        bad("bounds.coefficient_variant",
            "expected 'squared' or 'paper_literal'");
    }
  }

  if (const json* o = find(root, "output")) {
    check_keys(*o, "output", {"directory", "formats"});
    if (const json* d = find(*o, "directory")) {
      if (!d->is_string()) bad("output.directory", "expected a string");
      cfg.output.directory = d->get<std::string>();
    }
    if (const json* f = find(*o, "formats")) {
      if (!f->is_array()) bad("output.formats", "expected an array");
      cfg.output.csv = cfg.output.json = cfg.output.svg = false;
      for (const auto& e : *f) {
        if (!e.is_string()) bad("output.formats", "expected strings");
        const std::string s = e.get<std::string>();
        if (s == "csv")
          cfg.output.csv = true;
        else if (s == "json")
          cfg.output.json = true;
        else if (s == "svg")
          cfg.output.svg = true;
        else
          bad("output.formats", "unknown format '" + s + "'");
      }
    }
  }

  if (const json* ip = find(root, "interpolation")) {
    if (!ip->is_string()) bad("interpolation", "expected a string");
    const std::string s = ip->get<std::string>();
    if (s == "trigonometric")
      cfg.interp = InterpMethod::Trigonometric;
    else if (s == "spline")
      cfg.interp = InterpMethod::CubicSpline;
    else
      bad("interpolation", "expected 'trigonometric' or 'spline'");
  }

  if (const json* fam = find(root, "family")) {
    check_keys(*fam, "family", {"f", "g", "h", "v2", "tolerance"});
    FamilySpec spec;
    if (const json* f = find(*fam, "f"))
      spec.f = parse_coefficient(*f, "family.f");
    else
      bad("family.f", "required coefficient missing");
    if (const json* g = find(*fam, "g"))
      spec.g = parse_coefficient(*g, "family.g");
    else
      bad("family.g", "required coefficient missing");
    if (const json* h = find(*fam, "h"))
      spec.h = parse_coefficient(*h, "family.h");
    if (const json* v2 = find(*fam, "v2"))
      spec.v2 = parse_coefficient(*v2, "family.v2");
    spec.tolerance = get_number(*fam, "family", "tolerance", spec.tolerance);
    if (!(spec.tolerance > 0.0)) bad("family.tolerance", "must be > 0");
    cfg.family = std::move(spec);
  }

  if (const json* zg = find(root, "z_grid")) {
    check_keys(*zg, "z_grid", {"z_min", "z_max", "count"});
    cfg.z_grid.z_min = get_number(*zg, "z_grid", "z_min", cfg.z_grid.z_min);
    cfg.z_grid.z_max = get_number(*zg, "z_grid", "z_max", cfg.z_grid.z_max);
    cfg.z_grid.count = get_index(*zg, "z_grid", "count", cfg.z_grid.count);
    if (!(cfg.z_grid.z_max > cfg.z_grid.z_min)) bad("z_grid.z_max", "must exceed z_min");
    if (cfg.z_grid.count < 2) bad("z_grid.count", "must be >= 2");
  }

  return cfg;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open config: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ExperimentConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ConfigError, std::string("config: ") + e.what());
  }
  return parse(root);
}

}  // namespace nlse
