#include "fusion/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "fusion/checks.hpp"
#include "fusion/errors.hpp"
#include "fusion/filtration.hpp"
#include "fusion/oracles.hpp"
#include "fusion/serialize.hpp"
#include "fusion/verlinde.hpp"

namespace fusion {

namespace {

std::vector<CyclicModule> build_modules(const JobSpec& spec) {
  if (spec.modules.empty()) throw InputError(spec.command + " needs at least one module (--modules)");
  std::vector<CyclicModule> mods;
  for (const auto& d : spec.modules) mods.push_back(build_module(d));
  return mods;
}

ojson base_meta(const JobSpec& spec) {
  ojson meta;
  meta["engine"] = kEngineVersion;
  meta["command"] = spec.command;
  return meta;
}

ojson module_meta(const JobSpec& spec, const EvaluationPoints& z) {
  ojson meta = base_meta(spec);
  ojson mods = ojson::array();
  for (const auto& d : spec.modules) mods.push_back(d.label());
  meta["modules"] = mods;
  meta["points"] = z.to_string();
  return meta;
}

// Cumulative dimensions of the degree filtration recovered from a character.
std::vector<std::size_t> dims_from_char(const BigradedChar& ch) {
  int top = 0;
  for (const auto& [key, m] : ch.entries) top = std::max(top, key.tdeg);
  std::vector<std::size_t> dims(static_cast<std::size_t>(top) + 1, 0);
  for (const auto& [key, m] : ch.entries)
    for (int i = key.tdeg; i <= top; ++i) dims[static_cast<std::size_t>(i)] += static_cast<std::size_t>(m);
  return dims;
}

std::string emit_char(const CharDocument& doc, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: return dump(char_to_json(doc)) + "\n";
    case OutputFormat::csv: return char_to_csv(doc.ch);
    case OutputFormat::plain: return char_to_plain(doc);
  }
  return "";
}

CommandResult cmd_char(const JobSpec& spec, OutputFormat format) {
  const auto mods = build_modules(spec);
  const auto z = resolve_points(spec.points, mods.size());
  const auto f = filtered_tensor(mods, z);
  CharOptions opts;
  opts.aux = spec.aux;
  auto doc = CharDocument::from_char(bigraded_character(f, opts), f.dims(), module_meta(spec, z));
  return {emit_char(doc, format), 0};
}

// Rows of (key, value) rendered as a JSON object under `name`, CSV, or plain text.
std::string emit_table(const std::string& name, const std::vector<std::pair<std::string, ojson>>& rows,
                       const std::string& csv_header, const ojson& extra, const ojson& meta, OutputFormat format) {
  switch (format) {
    case OutputFormat::json: {
      ojson out;
      ojson table = ojson::object();
      for (const auto& [k, v] : rows) table[k] = v;
      out[name] = table;
      for (const auto& [k, v] : extra.items()) out[k] = v;
      out["meta"] = meta;
      return dump(out) + "\n";
    }
    case OutputFormat::csv: {
      std::string s = csv_header + "\n";
      for (const auto& [k, v] : rows) {
        std::string key = k;
        std::replace(key.begin(), key.end(), ',', ';');
        s += key + "," + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      }
      return s;
    }
    case OutputFormat::plain: {
      std::string s;
      for (const auto& [k, v] : extra.items()) s += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      for (const auto& [k, v] : rows) s += k + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
      return s;
    }
  }
  return "";
}

CommandResult cmd_kostka(const JobSpec& spec, OutputFormat format) {
  const auto mods = build_modules(spec);
  const auto z = resolve_points(spec.points, mods.size());
  const auto table = kostka_table(mods, z, spec.aux);
  std::vector<std::pair<std::string, ojson>> rows;
  // highest weights first
  for (auto it = table.entries.rbegin(); it != table.entries.rend(); ++it)
    rows.emplace_back(weight_key(it->first),
                      spec.aux ? it->second.to_string("q", "a") : table.plain(it->first).to_string());
  return {emit_table("kostka", rows, "eta,poly", ojson::object(), module_meta(spec, z), format), 0};
}

CommandResult cmd_recurrence(const JobSpec& spec, OutputFormat format) {
  std::vector<int> dims;
  for (const auto& m : build_modules(spec)) {
    if (m.descriptor.rfind("sl2:", 0) != 0) throw InputError("recurrence takes sl2 irreducibles only");
    dims.push_back(static_cast<int>(m.dim));
  }
  const auto poly = recurrence_char(dims);
  ojson meta = base_meta(spec);
  meta["dims"] = dims;
  switch (format) {
    case OutputFormat::json: {
      ojson out;
      out["poly"] = poly.to_string();
      out["meta"] = meta;
      return {dump(out) + "\n", 0};
    }
    case OutputFormat::csv: {
      std::string s = "zdeg,qdeg,mult\n";
      for (const auto& [ex, c] : poly.terms())
        s += std::to_string(ex.first) + "," + std::to_string(ex.second) + "," + std::to_string(c) + "\n";
      return {s, 0};
    }
    case OutputFormat::plain: return {"ch(z,q) = " + poly.to_string() + "\n", 0};
  }
  return {};
}

CommandResult cmd_psi(const JobSpec& spec, OutputFormat format) {
  PsiIdealSpec ps{spec.k, spec.j, spec.N, spec.extra};
  const auto res = psi_quotient(ps, spec.max_r, spec.max_s);
  ojson meta = base_meta(spec);
  meta["k"] = spec.k;
  meta["j"] = spec.j ? ojson(*spec.j) : ojson(nullptr);
  meta["N"] = spec.N;
  if (!spec.extra.empty()) meta["extra"] = spec.extra;
  meta["max_r"] = spec.max_r;
  meta["max_s"] = spec.max_s;
  meta["reversed"] = spec.reversed;

  if (spec.reversed) {
    const auto flipped = psi_to_fusion_grading(res.ch, spec.N);
    const int top = spec.j.value_or(spec.k) + (spec.N - 1) * spec.k;
    BigradedChar ch;
    ch.algebra = "sl2";
    ch.cartan_count = 1;
    for (const auto& [rs, m] : flipped.entries) ch.entries[{{top - 2 * rs.first}, rs.second, std::nullopt}] = m;
    auto dims = dims_from_char(ch);
    return {emit_char(CharDocument::from_char(std::move(ch), std::move(dims), meta), format), 0};
  }

  switch (format) {
    case OutputFormat::json: {
      ojson entries = ojson::array();
      for (const auto& [rs, m] : res.ch.entries) {
        ojson e;
        e["fdeg"] = rs.first;
        e["tdeg"] = rs.second;
        e["mult"] = m;
        entries.push_back(e);
      }
      ojson out;
      out["entries"] = entries;
      out["poly"] = res.ch.to_zq().to_string();
      out["total"] = res.ch.total();
      out["expected_total"] = res.expected_total;
      out["meta"] = meta;
      return {dump(out) + "\n", 0};
    }
    case OutputFormat::csv: {
      std::string s = "fdeg,tdeg,mult\n";
      for (const auto& [rs, m] : res.ch.entries)
        s += std::to_string(rs.first) + "," + std::to_string(rs.second) + "," + std::to_string(m) + "\n";
      return {s, 0};
    }
    case OutputFormat::plain: {
      std::string s = "ch(z,q) = " + res.ch.to_zq().to_string() + "\n";
      s += "total " + std::to_string(res.ch.total()) + ", expected " + std::to_string(res.expected_total) + "\n";
      return {s, 0};
    }
  }
  return {};
}

CommandResult cmd_verlinde(const JobSpec& spec, OutputFormat format) {
  std::vector<std::pair<std::string, ojson>> rows;
  if (spec.doubled) {
    for (const auto& [key, c] : coinvariant_dims_doubled(spec.level, spec.n))
      rows.emplace_back(std::to_string(key.first) + "," + std::to_string(key.second), c);
  } else {
    for (const auto& [lambda, c] : coinvariant_dims(spec.level, spec.n)) rows.emplace_back(std::to_string(lambda), c);
  }
  ojson meta = base_meta(spec);
  meta["level"] = spec.level;
  meta["n"] = spec.n;
  meta["doubled"] = spec.doubled;
  return {emit_table("dims", rows, spec.doubled ? "lambda_mu,dim" : "lambda,dim", ojson::object(), meta, format), 0};
}

CommandResult cmd_qverlinde(const JobSpec& spec, OutputFormat format) {
  const QVariant variant = parse_qvariant(spec.variant);
  const auto r = qverlinde(spec.level, spec.lambda, spec.n, variant, 0, spec.m_bound);
  ojson meta = base_meta(spec);
  meta["level"] = spec.level;
  meta["lambda"] = spec.lambda;
  meta["n"] = spec.n;
  meta["variant"] = to_string(variant);
  meta["convention"] = calibrated_convention().describe();
  meta["shift"] = r.shift;

  std::vector<std::pair<std::string, ojson>> rows;
  switch (variant) {
    case QVariant::plain: rows.emplace_back(std::to_string(spec.lambda), r.plain.to_string()); break;
    case QVariant::hgraded: rows.emplace_back(std::to_string(spec.lambda), r.hgraded.to_string("q", "a")); break;
    case QVariant::doubled:
      for (const auto& [mu, p] : r.doubled)
        rows.emplace_back(std::to_string(spec.lambda) + "," + std::to_string(mu), p.to_string());
      break;
  }
  return {emit_table("qverlinde", rows, variant == QVariant::doubled ? "lambda_mu,poly" : "lambda,poly",
                     ojson::object(), meta, format),
          0};
}

CommandResult cmd_check(const JobSpec& spec, OutputFormat format, std::ostream* live) {
  CheckOptions opts;
  opts.seed = spec.seed;
  opts.psi_max_k = spec.max_k;
  const bool stream = live && format == OutputFormat::plain;
  const auto lines = run_checks(spec.suite, opts, [&](const CheckLine& l) {
    if (stream) *live << l.format() << std::endl;
  });
  std::size_t pass = 0, warn = 0, fail = 0;
  for (const auto& l : lines) {
    if (l.status == CheckStatus::pass) ++pass;
    else if (l.status == CheckStatus::warn) ++warn;
    else ++fail;
  }
  const int code = any_failed(lines) ? 1 : 0;
  const std::string summary = std::to_string(pass) + " passed, " + std::to_string(warn) + " warnings, " +
                              std::to_string(fail) + " failed";
  switch (format) {
    case OutputFormat::json: {
      ojson arr = ojson::array();
      for (const auto& l : lines) {
        ojson e;
        e["status"] = l.status == CheckStatus::pass ? "PASS" : (l.status == CheckStatus::warn ? "WARN" : "FAIL");
        e["suite"] = l.suite;
        e["name"] = l.name;
        e["conjecture"] = l.conjecture;
        e["detail"] = l.detail;
        arr.push_back(e);
      }
      ojson out;
      out["checks"] = arr;
      out["summary"] = summary;
      ojson meta = base_meta(spec);
      meta["suite"] = spec.suite;
      meta["seed"] = spec.seed;
      meta["max_k"] = spec.max_k;
      out["meta"] = meta;
      return {dump(out) + "\n", code};
    }
    case OutputFormat::csv: {
      std::string s = "status,suite,name,conjecture\n";
      for (const auto& l : lines)
        s += std::string(l.status == CheckStatus::pass ? "PASS" : (l.status == CheckStatus::warn ? "WARN" : "FAIL")) +
             "," + l.suite + ",\"" + l.name + "\"," + (l.conjecture ? "1" : "0") + "\n";
      return {s, code};
    }
    case OutputFormat::plain: {
      std::string s;
      if (!stream)
        for (const auto& l : lines) s += l.format() + "\n";
      return {s + summary + "\n", code};
    }
  }
  return {};
}

CommandResult dispatch(const JobSpec& spec, OutputFormat format, std::ostream* live) {
  if (spec.command == "char") return cmd_char(spec, format);
  if (spec.command == "kostka") return cmd_kostka(spec, format);
  if (spec.command == "recurrence") return cmd_recurrence(spec, format);
  if (spec.command == "psi") return cmd_psi(spec, format);
  if (spec.command == "verlinde") return cmd_verlinde(spec, format);
  if (spec.command == "qverlinde") return cmd_qverlinde(spec, format);
  if (spec.command == "check") return cmd_check(spec, format, live);
  throw InputError("unknown command '" + spec.command + "'");
}

nlohmann::json read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("config " + path + " is not valid JSON: " + e.what());
  }
}

// Flag values are applied on top of the config only when given.
struct Binder {
  std::vector<std::pair<CLI::Option*, std::function<void(JobSpec&)>>> appliers;

  template <class T>
  void bind(CLI::App* app, const std::string& name, T& slot, const std::string& help,
            std::function<void(JobSpec&, const T&)> apply) {
    auto* opt = app->add_option(name, slot, help);
    appliers.emplace_back(opt, [&slot, apply](JobSpec& s) { apply(s, slot); });
  }
  void flag(CLI::App* app, const std::string& name, bool& slot, const std::string& help,
            std::function<void(JobSpec&, bool)> apply) {
    auto* opt = app->add_flag(name, slot, help);
    appliers.emplace_back(opt, [&slot, apply](JobSpec& s) { apply(s, slot); });
  }
  void apply(JobSpec& spec) const {
    for (const auto& [opt, fn] : appliers)
      if (opt->count() > 0) fn(spec);
  }
};

}  // namespace

CommandResult run_job(const JobSpec& spec, OutputFormat format) { return dispatch(spec, format, nullptr); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact fusion products, generalized Kostka polynomials and Verlinde computations", "fusionctl"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);

  // storage for raw flag values
  std::string modules, points, format, config, extra, variant, suite, dims;
  int k = 1, j = 0, N = 1, max_r = -1, max_s = -1, level = 1, n = 1, lambda = 0, m_bound = -1, max_k = 3;
  bool aux = false, reversed = false, doubled = false;
  std::uint64_t seed = 1;
  Binder b;

  auto common = [&](CLI::App* sub) {
    b.bind<std::string>(sub, "--format", format, "json, csv or plain (default from $FUSION_FORMAT, else json)",
                        [](JobSpec& s, const std::string& v) { s.format = parse_format(v); });
    sub->add_option("--config", config, "JSON job file; flags given on the command line take precedence");
  };
  auto module_opts = [&](CLI::App* sub) {
    b.bind<std::string>(sub, "--modules", modules, "comma-separated descriptors: sl2:m, abelian:n:r, slN:n:r, level:k, doubled:k",
                        [](JobSpec& s, const std::string& v) { s.modules = parse_module_list(v); });
    b.bind<std::string>(sub, "--points", points, "default, random:SEED, or comma-separated rationals",
                        [](JobSpec& s, const std::string& v) { s.points = v; });
    b.flag(sub, "--aux", aux, "keep the auxiliary grading", [](JobSpec& s, bool v) { s.aux = v; });
  };

  auto* c_char = app.add_subcommand("char", "bigraded character of the fusion product");
  common(c_char);
  module_opts(c_char);
  auto* c_kostka = app.add_subcommand("kostka", "generalized Kostka polynomials c_q(eta)");
  common(c_kostka);
  module_opts(c_kostka);
  auto* c_rec = app.add_subcommand("recurrence", "ch(z,q) from the sl2 recurrence");
  common(c_rec);
  b.bind<std::string>(c_rec, "--modules", modules, "sl2 irreducibles, e.g. sl2:1,sl2:2",
                      [](JobSpec& s, const std::string& v) { s.modules = parse_module_list(v); });
  b.bind<std::string>(c_rec, "--dims", dims, "dimensions, e.g. 2,3", [](JobSpec& s, const std::string& v) {
    s.modules.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      int d = 0;
      try {
        d = std::stoi(item);
      } catch (const std::exception&) {
        throw InputError("bad dimension '" + item + "'");
      }
      if (d < 1) throw InputError("dimensions must be positive");
      s.modules.push_back({"sl2:" + std::to_string(d - 1), std::nullopt});
    }
  });

  auto* c_psi = app.add_subcommand("psi", "bigraded quotient by the psi-ideal");
  common(c_psi);
  b.bind<int>(c_psi, "--k", k, "level k", [](JobSpec& s, const int& v) { s.k = v; });
  b.bind<int>(c_psi, "--N", N, "number of retained variables", [](JobSpec& s, const int& v) { s.N = v; });
  b.bind<int>(c_psi, "--j", j, "extra relation psi_{j+1}(0) = 0", [](JobSpec& s, const int& v) { s.j = v; });
  b.flag(c_psi, "--reversed", reversed, "report in the fusion grading", [](JobSpec& s, bool v) { s.reversed = v; });
  b.bind<int>(c_psi, "--max-r", max_r, "largest f-degree", [](JobSpec& s, const int& v) { s.max_r = v; });
  b.bind<int>(c_psi, "--max-s", max_s, "largest t-degree", [](JobSpec& s, const int& v) { s.max_s = v; });
  b.bind<std::string>(c_psi, "--extra", extra, "exploratory relations psi_a(b) as a:b,a:b",
                      [](JobSpec& s, const std::string& v) {
                        s.extra.clear();
                        std::stringstream ss(v);
                        std::string item;
                        while (std::getline(ss, item, ',')) {
                          const auto colon = item.find(':');
                          if (colon == std::string::npos) throw InputError("extra relation must be a:b, got " + item);
                          try {
                            s.extra.emplace_back(std::stoi(item.substr(0, colon)), std::stoi(item.substr(colon + 1)));
                          } catch (const std::logic_error&) {
                            throw InputError("extra relation must be a:b, got " + item);
                          }
                        }
                      });

  auto* c_ver = app.add_subcommand("verlinde", "coinvariant dimensions from the Verlinde algebra");
  common(c_ver);
  b.bind<int>(c_ver, "--level", level, "level k", [](JobSpec& s, const int& v) { s.level = v; });
  b.bind<int>(c_ver, "--n", n, "number of factors", [](JobSpec& s, const int& v) { s.n = v; });
  b.flag(c_ver, "--doubled", doubled, "use NN_k", [](JobSpec& s, bool v) { s.doubled = v; });

  auto* c_qver = app.add_subcommand("qverlinde", "q-Verlinde sums");
  common(c_qver);
  b.bind<int>(c_qver, "--level", level, "level k", [](JobSpec& s, const int& v) { s.level = v; });
  b.bind<int>(c_qver, "--lambda", lambda, "alcove weight", [](JobSpec& s, const int& v) { s.lambda = v; });
  b.bind<int>(c_qver, "--n", n, "number of factors", [](JobSpec& s, const int& v) { s.n = v; });
  b.bind<std::string>(c_qver, "--variant", variant, "plain, hgraded or doubled",
                      [](JobSpec& s, const std::string& v) { s.variant = v; });
  b.bind<int>(c_qver, "--m-bound", m_bound, "orbit cutoff |w(lambda)| <= m", [](JobSpec& s, const int& v) { s.m_bound = v; });

  auto* c_check = app.add_subcommand("check", "run the property-check suites");
  common(c_check);
  b.bind<std::string>(c_check, "--suite", suite, "all, filtration, oracles or verlinde",
                      [](JobSpec& s, const std::string& v) { s.suite = v; });
  b.bind<std::uint64_t>(c_check, "--seed", seed, "seed for sampled inputs",
                        [](JobSpec& s, const std::uint64_t& v) { s.seed = v; });
  b.bind<int>(c_check, "--max-k", max_k, "psi matrix covers k <= max-k (0..3)",
              [](JobSpec& s, const int& v) { s.max_k = v; });

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(reversed_args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    JobSpec spec;
    if (!config.empty()) spec.merge_json(read_config(config));
    spec.command = sub->get_name();
    b.apply(spec);

    OutputFormat fmt = spec.command == "check" ? OutputFormat::plain : OutputFormat::json;
    if (spec.format) {
      fmt = *spec.format;
    } else if (const char* env = std::getenv(kFormatEnv); env && *env) {
      fmt = parse_format(env);
    }
    const auto res = dispatch(spec, fmt, &out);
    out << res.output;
    out.flush();
    return res.exit_code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace fusion
