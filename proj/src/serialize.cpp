#include "fusion/serialize.hpp"

#include <sstream>

#include "fusion/errors.hpp"

namespace fusion {

using nlohmann::json;

CharDocument CharDocument::from_char(BigradedChar ch, std::vector<std::size_t> dims, ojson meta) {
  CharDocument d;
  // ch(z,q) needs label weights or a single sl2 string of one parity
  bool single_string = ch.cartan_count == 1 && ch.label_count == 0;
  if (single_string && !ch.entries.empty()) {
    const int parity = ch.entries.begin()->first.weight[0] & 1;
    for (const auto& [key, m] : ch.entries) single_string = single_string && (key.weight[0] & 1) == parity;
  }
  if (single_string || ch.cartan_count == 0) d.poly = zq_polynomial(ch).to_string();
  d.ch = std::move(ch);
  d.filtration_dims = std::move(dims);
  d.meta = std::move(meta);
  return d;
}

std::string weight_key(const std::vector<int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s;
}

ojson char_to_json(const CharDocument& doc) {
  ojson entries = ojson::array();
  for (const auto& [key, mult] : doc.ch.entries) {
    ojson e;
    if (key.weight.size() == 1) e["weight"] = key.weight[0];
    else e["weight"] = key.weight;
    e["tdeg"] = key.tdeg;
    if (key.aux) e["aux"] = *key.aux;
    e["mult"] = mult;
    entries.push_back(std::move(e));
  }
  ojson out;
  out["entries"] = std::move(entries);
  out["poly"] = doc.poly ? ojson(*doc.poly) : ojson(nullptr);
  out["filtration_dims"] = doc.filtration_dims;
  out["algebra"] = doc.ch.algebra;
  out["cartan_count"] = doc.ch.cartan_count;
  out["label_count"] = doc.ch.label_count;
  out["meta"] = doc.meta;
  return out;
}

CharDocument char_from_json(const ojson& j) {
  CharDocument d;
  try {
    for (const auto& e : j.at("entries")) {
      CharKey key;
      const auto& w = e.at("weight");
      if (w.is_array()) key.weight = w.get<std::vector<int>>();
      else key.weight = {w.get<int>()};
      key.tdeg = e.at("tdeg").get<int>();
      if (e.contains("aux")) key.aux = e["aux"].get<int>();
      const auto mult = e.at("mult").get<std::int64_t>();
      if (mult <= 0) throw InputError("character multiplicities must be positive");
      if (!d.ch.entries.emplace(key, mult).second) throw InputError("repeated character entry");
    }
    if (j.contains("poly") && !j["poly"].is_null()) d.poly = j["poly"].get<std::string>();
    if (j.contains("filtration_dims")) d.filtration_dims = j["filtration_dims"].get<std::vector<std::size_t>>();
    d.ch.algebra = j.value("algebra", std::string());
    d.ch.cartan_count = j.value("cartan_count", std::size_t{0});
    d.ch.label_count = j.value("label_count", std::size_t{0});
    if (j.contains("meta")) d.meta = j["meta"];
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed character JSON: ") + e.what());
  }
  return d;
}

CharDocument char_from_json_text(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("character JSON does not parse: ") + e.what());
  }
  return char_from_json(j);
}

std::string dump(const ojson& j) { return j.dump(); }

std::string char_to_csv(const BigradedChar& ch) {
  std::string out = "weight,tdeg,aux,mult\n";
  for (const auto& [key, mult] : ch.entries) {
    std::string w;
    for (std::size_t i = 0; i < key.weight.size(); ++i) w += (i ? ";" : "") + std::to_string(key.weight[i]);
    out += w + "," + std::to_string(key.tdeg) + "," + (key.aux ? std::to_string(*key.aux) : "") + "," +
           std::to_string(mult) + "\n";
  }
  return out;
}

BigradedChar char_from_csv(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line) || line != "weight,tdeg,aux,mult") throw InputError("missing CSV header");
  BigradedChar ch;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (line.back() == ',') cells.emplace_back();
    if (cells.size() != 4) throw InputError("CSV row needs 4 columns: " + line);
    try {
      CharKey key;
      std::stringstream ws(cells[0]);
      std::string part;
      while (std::getline(ws, part, ';')) key.weight.push_back(std::stoi(part));
      key.tdeg = std::stoi(cells[1]);
      if (!cells[2].empty()) key.aux = std::stoi(cells[2]);
      ch.entries[key] += std::stoll(cells[3]);
    } catch (const std::logic_error&) {
      throw InputError("bad CSV row: " + line);
    }
  }
  return ch;
}

std::string char_to_plain(const CharDocument& doc) {
  std::string out;
  if (doc.poly) out += "ch(z,q) = " + *doc.poly + "\n";
  if (!doc.filtration_dims.empty()) {
    out += "filtration dims:";
    for (auto d : doc.filtration_dims) out += " " + std::to_string(d);
    out += "\n";
  }
  out += "weight\ttdeg\t";
  bool aux = false;
  for (const auto& [key, m] : doc.ch.entries) aux = aux || key.aux.has_value();
  if (aux) out += "aux\t";
  out += "mult\n";
  for (const auto& [key, m] : doc.ch.entries) {
    out += weight_key(key.weight) + "\t" + std::to_string(key.tdeg) + "\t";
    if (aux) out += (key.aux ? std::to_string(*key.aux) : "") + "\t";
    out += std::to_string(m) + "\n";
  }
  return out;
}

}  // namespace fusion
