#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "vcshadow/set_system.hpp"

namespace vcshadow {

using ojson = nlohmann::ordered_json;

struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

namespace detail {

inline std::string strip_cr(std::string line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  return line;
}

inline bool blank_or_comment(const std::string& line) {
  for (char c : line) {
    if (c == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace detail

// Text format: header line "n <int>", then one member per non-empty,
// non-# line as strictly increasing 1-based elements.
inline SetSystem parse_system_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  bool have_header = false;
  int n = 0;
  std::vector<Subset> members;

  while (std::getline(in, line)) {
    ++lineno;
    line = detail::strip_cr(line);
    if (detail::blank_or_comment(line)) continue;
    std::istringstream ls(line);
    if (!have_header) {
      std::string tag;
      long long nv = 0;
      std::string extra;
      if (!(ls >> tag >> nv) || tag != "n" || (ls >> extra)) {
        throw parse_error("line " + std::to_string(lineno) +
                          ": expected header 'n <int>', got '" + line + "'");
      }
      if (nv < 1 || nv > kMaxGroundSize) {
        throw parse_error("line " + std::to_string(lineno) + ": ground set size " +
                          std::to_string(nv) + " outside 1.." + std::to_string(kMaxGroundSize));
      }
      n = static_cast<int>(nv);
      have_header = true;
      continue;
    }
    Subset m;
    long long prev = 0;
    long long e = 0;
    bool any = false;
    while (ls >> e) {
      any = true;
      if (e < 1 || e > n) {
        throw parse_error("line " + std::to_string(lineno) + ": element " +
                          std::to_string(e) + " outside 1.." + std::to_string(n));
      }
      if (e == prev) {
        throw parse_error("line " + std::to_string(lineno) + ": duplicate element " +
                          std::to_string(e));
      }
      if (e < prev) {
        throw parse_error("line " + std::to_string(lineno) +
                          ": elements must be strictly increasing");
      }
      m = m.with(static_cast<int>(e));
      prev = e;
    }
    if (!ls.eof()) {
      throw parse_error("line " + std::to_string(lineno) + ": malformed member '" + line + "'");
    }
    if (!any) continue;
    members.push_back(m);
  }
  if (!have_header) throw parse_error("missing header line 'n <int>'");
  try {
    return SetSystem(GroundSet(n), std::move(members));
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());  // duplicate members surface here
  }
}

// Text serialization; the empty set has no line representation, so families
// containing it must be written as JSON instead.
inline std::string serialize_system_text(const SetSystem& fam) {
  std::string out = "n " + std::to_string(fam.ground.n) + "\n";
  for (Subset m : fam.members) {
    if (m.empty()) {
      throw std::invalid_argument(
          "family contains the empty set, which the text format cannot represent; "
          "use the JSON format");
    }
    bool first = true;
    for (int e : m.elements()) {
      if (!first) out += ' ';
      out += std::to_string(e);
      first = false;
    }
    out += '\n';
  }
  return out;
}

inline ojson system_to_json(const SetSystem& fam) {
  ojson j;
  j["n"] = fam.ground.n;
  ojson mem = ojson::array();
  for (Subset m : fam.members) mem.push_back(m.elements());
  j["members"] = std::move(mem);
  return j;
}

inline SetSystem system_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("members") ||
      !j["n"].is_number_integer() || !j["members"].is_array()) {
    throw parse_error("JSON set system must be {\"n\": int, \"members\": [[int,...],...]}");
  }
  long long n = j["n"].get<long long>();
  if (n < 1 || n > kMaxGroundSize) {
    throw parse_error("ground set size " + std::to_string(n) + " outside 1.." +
                      std::to_string(kMaxGroundSize));
  }
  std::vector<Subset> members;
  for (const auto& arr : j["members"]) {
    if (!arr.is_array()) throw parse_error("each member must be an array of integers");
    Subset m;
    for (const auto& v : arr) {
      if (!v.is_number_integer()) throw parse_error("elements must be integers");
      long long e = v.get<long long>();
      if (e < 1 || e > n) {
        throw parse_error("element " + std::to_string(e) + " outside 1.." + std::to_string(n));
      }
      if (m.contains(static_cast<int>(e))) {
        throw parse_error("duplicate element " + std::to_string(e) + " in member");
      }
      m = m.with(static_cast<int>(e));
    }
    members.push_back(m);
  }
  try {
    return SetSystem(GroundSet(static_cast<int>(n)), std::move(members));
  } catch (const std::invalid_argument& e) {
    throw parse_error(e.what());
  }
}

// Accepts either format: a leading '{' selects JSON.
inline SetSystem parse_system(const std::string& text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '{') {
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
      }
      return system_from_json(j);
    }
    break;
  }
  return parse_system_text(text);
}

inline SetSystem load_system_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_system(buf.str());
}

}  // namespace vcshadow
