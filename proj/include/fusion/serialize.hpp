#pragma once

// Serialized forms of bigraded characters: JSON with both the entry table and
// the ch(z,q) string, CSV with columns weight,tdeg,aux,mult, and a plain-text
// summary. JSON output is compact and key order is fixed, so equal inputs give
// byte-identical text.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fusion/filtration.hpp"

namespace fusion {

using ojson = nlohmann::ordered_json;

struct CharDocument {
  BigradedChar ch;
  std::optional<std::string> poly;  // absent when ch(z,q) is undefined (several Cartan axes)
  std::vector<std::size_t> filtration_dims;
  ojson meta = ojson::object();

  /// Fills poly from zq_polynomial when it applies.
  static CharDocument from_char(BigradedChar ch, std::vector<std::size_t> dims, ojson meta);
  friend bool operator==(const CharDocument&, const CharDocument&) = default;
};

ojson char_to_json(const CharDocument& doc);
CharDocument char_from_json(const ojson& j);
CharDocument char_from_json_text(const std::string& text);
std::string dump(const ojson& j);

/// Weights with several components are joined by ';'; aux is empty when absent.
std::string char_to_csv(const BigradedChar& ch);
BigradedChar char_from_csv(const std::string& text);
std::string char_to_plain(const CharDocument& doc);

/// "3" or "1,-1".
std::string weight_key(const std::vector<int>& w);

}  // namespace fusion
