#pragma once
// Uniform result type for every check in the library. A Verdict records
// whether a property holds, and on failure carries a finite witness: the
// morphisms, objects or squares where the property breaks.

#include <string>
#include <utility>
#include <vector>

namespace quillen {

struct Witness {
  std::vector<std::pair<std::string, long long>> data;
  std::string note;

  void add(std::string key, long long value) { data.push_back({std::move(key), value}); }
  bool empty() const { return data.empty() && note.empty(); }
};

struct Verdict {
  bool pass = false;
  bool not_applicable = false;  // hypotheses of the check are not met
  std::string condition;
  Witness witness;
  std::vector<std::string> trace;

  explicit operator bool() const { return pass; }

  static Verdict ok(std::string condition) {
    Verdict v;
    v.pass = true;
    v.condition = std::move(condition);
    return v;
  }
  static Verdict fail(std::string condition, std::string note = "") {
    Verdict v;
    v.condition = std::move(condition);
    v.witness.note = std::move(note);
    return v;
  }
  static Verdict na(std::string condition, std::string note = "") {
    Verdict v;
    v.pass = true;
    v.not_applicable = true;
    v.condition = std::move(condition);
    v.witness.note = std::move(note);
    return v;
  }
};

inline std::string to_string(const Verdict& v) {
  std::string s = v.not_applicable ? "N/A " : (v.pass ? "PASS " : "FAIL ");
  s += v.condition;
  for (auto& [k, val] : v.witness.data) s += " " + k + "=" + std::to_string(val);
  if (!v.witness.note.empty()) s += " (" + v.witness.note + ")";
  return s;
}

}  // namespace quillen
