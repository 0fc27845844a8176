#pragma once

#include <set>
#include <string>

namespace upm::detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string label_set_text(const std::set<std::string>& labels) {
  if (labels.size() == 1) return *labels.begin();
  std::string text = "{";
  bool first = true;
  for (const std::string& l : labels) {
    if (!first) text += ", ";
    text += l;
    first = false;
  }
  text += "}";
  return text;
}

}  // namespace upm::detail
