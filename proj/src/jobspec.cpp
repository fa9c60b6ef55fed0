#include "fusion/jobspec.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "fusion/errors.hpp"

namespace fusion {

using nlohmann::json;

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  if (text == "plain") return OutputFormat::plain;
  throw InputError("unknown output format '" + text + "' (json, csv, plain)");
}

std::string to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return "json";
    case OutputFormat::csv: return "csv";
    case OutputFormat::plain: return "plain";
  }
  return "json";
}

std::string ModuleDescriptor::label() const {
  if (!explicit_module) return text;
  return "explicit:" + explicit_module->value("algebra", std::string("?"));
}

namespace {

int to_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw InputError("expected an integer for " + what + ", got '" + s + "'");
  }
  if (used != s.size()) throw InputError("expected an integer for " + what + ", got '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::size_t to_size(int v, const std::string& what) {
  if (v < 1) throw InputError(what + " must be positive");
  return static_cast<std::size_t>(v);
}

CyclicModule build_named(const std::string& name, const std::map<std::string, int>& params,
                         const std::string& text) {
  auto get = [&](const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) throw InputError("module '" + text + "' is missing parameter " + key);
    return it->second;
  };
  for (const auto& [key, v] : params) {
    static const std::map<std::string, std::vector<std::string>> allowed{
        {"sl2_irrep", {"m"}}, {"abelian_powers", {"n", "r"}}, {"slN_sym", {"n", "r"}},
        {"level_sum", {"k", "doubled"}}};
    const auto it = allowed.find(name);
    if (it != allowed.end() && std::find(it->second.begin(), it->second.end(), key) == it->second.end())
      throw InputError("module '" + text + "' has unknown parameter " + key);
  }
  if (name == "sl2_irrep") return build_sl2_irrep(get("m"));
  if (name == "abelian_powers") return build_abelian_powers(to_size(get("n"), "n"), get("r"));
  if (name == "slN_sym") return build_slN_sym(to_size(get("n"), "n"), get("r"));
  if (name == "level_sum") {
    const auto it = params.find("doubled");
    return build_level_sum(get("k"), it != params.end() && it->second != 0);
  }
  throw InputError("unknown module builder '" + name + "' in '" + text + "'");
}

Presentation algebra_by_name(const std::string& name) {
  if (name == "sl2") return sl2_algebra();
  if (name == "sl2+sl2") return sl2_pair_algebra();
  if (name.rfind("abelian", 0) == 0) {
    const int n = to_int(name.substr(7), "abelian rank");
    return abelian_algebra(to_size(n, "abelian rank"));
  }
  if (name.rfind("sl", 0) == 0) {
    const int d = to_int(name.substr(2), "sl size");
    if (d < 2) throw InputError("sl size must be at least 2");
    return sl_algebra(static_cast<std::size_t>(d - 1));
  }
  throw InputError("unknown algebra '" + name + "' (sl2, sl2+sl2, abelianN, slN)");
}

Rat json_rat(const json& v) {
  if (v.is_string()) return Rat::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  throw InputError("matrix entries must be integers or strings \"p/q\"");
}

Mat json_matrix(const json& rows, std::size_t dim, const std::string& what) {
  if (!rows.is_array() || rows.size() != dim) throw InputError(what + " must have " + std::to_string(dim) + " rows");
  Mat m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (!rows[i].is_array() || rows[i].size() != dim)
      throw InputError(what + " row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = json_rat(rows[i][j]);
  }
  return m;
}

// A single matrix is an array of arrays of scalars; a graded action is an
// array of such matrices.
bool is_matrix_list(const json& v) {
  return v.is_array() && !v.empty() && v[0].is_array() && !v[0].empty() && v[0][0].is_array();
}

std::vector<int> json_ints(const json& v, std::size_t dim, const std::string& what) {
  if (!v.is_array() || v.size() != dim) throw InputError(what + " must have " + std::to_string(dim) + " entries");
  std::vector<int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw InputError(what + " entries must be integers");
    out.push_back(x.get<int>());
  }
  return out;
}

}  // namespace

CyclicModule parse_module_text(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw InputError("empty module descriptor");

  if (text.find('=') != std::string::npos || text.find(' ') != std::string::npos) {
    std::stringstream ss(text);
    std::string name, tok;
    ss >> name;
    std::map<std::string, int> params;
    while (ss >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw InputError("expected key=value in module '" + text + "'");
      params[tok.substr(0, eq)] = to_int(tok.substr(eq + 1), tok.substr(0, eq));
    }
    return build_named(name, params, text);
  }

  const auto parts = split(text, ':');
  const std::string& kind = parts[0];
  auto arity = [&](std::size_t n) {
    if (parts.size() != n + 1)
      throw InputError("module '" + text + "' expects " + std::to_string(n) + " parameter(s)");
  };
  if (kind == "sl2") {
    arity(1);
    return build_sl2_irrep(to_int(parts[1], "m"));
  }
  if (kind == "abelian") {
    arity(2);
    return build_abelian_powers(to_size(to_int(parts[1], "n"), "n"), to_int(parts[2], "r"));
  }
  if (kind == "slN") {
    arity(2);
    return build_slN_sym(to_size(to_int(parts[1], "n"), "n"), to_int(parts[2], "r"));
  }
  if (kind == "level" || kind == "doubled") {
    arity(1);
    return build_level_sum(to_int(parts[1], "k"), kind == "doubled");
  }
  throw InputError("unknown module descriptor '" + text + "' (sl2:m, abelian:n:r, slN:n:r, level:k, doubled:k)");
}

CyclicModule parse_module_json(const json& obj) {
  if (!obj.is_object()) throw InputError("explicit module must be a JSON object");
  if (obj.contains("builder")) {
    std::map<std::string, int> params;
    if (obj.contains("params")) {
      if (!obj["params"].is_object()) throw InputError("builder params must be an object");
      for (const auto& [key, v] : obj["params"].items()) {
        if (v.is_boolean()) params[key] = v.get<bool>() ? 1 : 0;
        else if (v.is_number_integer()) params[key] = v.get<int>();
        else throw InputError("builder parameter " + key + " must be an integer");
      }
    }
    const std::string name = obj["builder"].get<std::string>();
    return build_named(name, params, name);
  }
  for (const char* key : {"algebra", "action", "cyclic"})
    if (!obj.contains(key)) throw InputError(std::string("explicit module is missing '") + key + "'");

  CyclicModule m;
  m.algebra = algebra_by_name(obj["algebra"].get<std::string>());
  const auto& cyc = obj["cyclic"];
  if (!cyc.is_array() || cyc.empty()) throw InputError("cyclic vector must be a nonempty array");
  m.dim = cyc.size();
  for (const auto& x : cyc) m.cyclic.push_back(json_rat(x));

  const auto& action = obj["action"];
  if (!action.is_object()) throw InputError("action must map generator names to matrices");
  std::size_t depth = 1;
  for (const auto& [gen, v] : action.items())
    if (is_matrix_list(v)) depth = std::max(depth, v.size());
  const auto& gens = m.algebra->generators;
  m.action.assign(gens.size(), std::vector<Mat>(depth, Mat(m.dim, m.dim)));
  for (const auto& [gen, v] : action.items()) {
    const std::size_t g = m.algebra->index_of(gen);
    if (is_matrix_list(v)) {
      for (std::size_t r = 0; r < v.size(); ++r)
        m.action[g][r] = json_matrix(v[r], m.dim, gen + " t^" + std::to_string(r));
    } else {
      m.action[g][0] = json_matrix(v, m.dim, gen);
    }
  }
  for (const auto& gen : gens)
    if (!action.contains(gen)) throw InputError("explicit module has no matrix for generator " + gen);

  if (obj.contains("t_grading")) m.t_grading = json_ints(obj["t_grading"], m.dim, "t_grading");
  if (obj.contains("aux_grading")) m.aux_grading = json_ints(obj["aux_grading"], m.dim, "aux_grading");
  if (obj.contains("labels")) {
    const auto& l = obj["labels"];
    if (!l.is_array() || l.size() != m.dim) throw InputError("labels must have one entry per basis vector");
    std::vector<std::vector<int>> labels;
    for (const auto& row : l) labels.push_back(json_ints(row, l[0].size(), "labels row"));
    m.labels = labels;
  }
  m.descriptor = "explicit:" + m.algebra->name;

  const auto report = validate_module(m);
  if (!report.ok()) {
    std::string msg = "explicit module is not a valid representation:";
    for (const auto& v : report.violations) msg += "\n  " + v;
    throw InputError(msg);
  }
  return m;
}

CyclicModule build_module(const ModuleDescriptor& d) {
  return d.explicit_module ? parse_module_json(*d.explicit_module) : parse_module_text(d.text);
}

std::vector<ModuleDescriptor> parse_module_list(const std::string& csv) {
  std::vector<ModuleDescriptor> out;
  for (const auto& item : split(csv, ',')) {
    if (trim(item).empty()) throw InputError("empty entry in module list '" + csv + "'");
    out.push_back({trim(item), std::nullopt});
  }
  return out;
}

EvaluationPoints resolve_points(const std::string& spec, std::size_t n) {
  if (spec.empty() || spec == "default") return EvaluationPoints::defaults(n);
  if (spec.rfind("random:", 0) == 0) {
    const std::string seed = spec.substr(7);
    if (seed.empty() || seed.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("random points need a nonnegative integer seed, got '" + seed + "'");
    return EvaluationPoints::random(n, std::stoull(seed));
  }
  auto z = EvaluationPoints::parse(spec);
  if (z.size() != n)
    throw InputError(std::to_string(z.size()) + " points given for " + std::to_string(n) + " modules");
  return z;
}

void JobSpec::merge_json(const json& c) {
  if (!c.is_object()) throw InputError("config must be a JSON object");
  static const std::vector<std::string> known{
      "command", "modules", "points", "format", "aux", "k", "j", "N", "reversed", "max_r", "max_s", "extra",
      "level", "n", "lambda", "doubled", "variant", "m_bound", "suite", "seed", "max_k"};
  for (const auto& [key, v] : c.items())
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw InputError("unknown config field '" + key + "'");
  try {
    if (c.contains("command")) command = c["command"].get<std::string>();
    if (c.contains("modules")) {
      const auto& mods = c["modules"];
      if (mods.is_string()) {
        modules = parse_module_list(mods.get<std::string>());
      } else if (mods.is_array()) {
        modules.clear();
        for (const auto& m : mods) {
          if (m.is_string()) modules.push_back({m.get<std::string>(), std::nullopt});
          else modules.push_back({"", m});
        }
      } else {
        throw InputError("modules must be a string or an array");
      }
    }
    if (c.contains("points")) {
      const auto& p = c["points"];
      if (p.is_array()) {
        points.clear();
        for (std::size_t i = 0; i < p.size(); ++i) points += (i ? "," : "") + json_rat(p[i]).to_string();
      } else {
        points = p.get<std::string>();
      }
    }
    if (c.contains("format")) format = parse_format(c["format"].get<std::string>());
    if (c.contains("aux")) aux = c["aux"].get<bool>();
    if (c.contains("k")) k = c["k"].get<int>();
    if (c.contains("j")) {
      if (c["j"].is_null()) j.reset();
      else j = c["j"].get<int>();
    }
    if (c.contains("N")) N = c["N"].get<int>();
    if (c.contains("reversed")) reversed = c["reversed"].get<bool>();
    if (c.contains("max_r")) max_r = c["max_r"].get<int>();
    if (c.contains("max_s")) max_s = c["max_s"].get<int>();
    if (c.contains("extra")) extra = c["extra"].get<std::vector<std::pair<int, int>>>();
    if (c.contains("level")) level = c["level"].get<int>();
    if (c.contains("n")) n = c["n"].get<int>();
    if (c.contains("lambda")) lambda = c["lambda"].get<int>();
    if (c.contains("doubled")) doubled = c["doubled"].get<bool>();
    if (c.contains("variant")) variant = c["variant"].get<std::string>();
    if (c.contains("m_bound")) m_bound = c["m_bound"].get<int>();
    if (c.contains("suite")) suite = c["suite"].get<std::string>();
    if (c.contains("seed")) seed = c["seed"].get<std::uint64_t>();
    if (c.contains("max_k")) max_k = c["max_k"].get<int>();
  } catch (const json::exception& e) {
    throw InputError(std::string("bad config value: ") + e.what());
  }
}

}  // namespace fusion
