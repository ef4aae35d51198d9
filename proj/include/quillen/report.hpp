#pragma once
// Reports tie a command run to its input (by content digest) and list one
// Verdict per checked subject. Rendering is deterministic: the same input
// and command produce byte-identical output, so reports can be diffed and
// the witnesses replayed.

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "quillen/verdict.hpp"

namespace quillen {

inline std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream o;
  o << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

struct ReportEntry {
  std::string subject;
  Verdict verdict;
  bool informational = false;  // rendered but never drives the exit status
};

struct Report {
  std::string command, input, digest;
  std::vector<ReportEntry> entries;
  std::vector<std::string> notes;

  void add(std::string subject, Verdict v) {
    entries.push_back({std::move(subject), std::move(v), false});
  }
  void info(std::string subject, Verdict v) {
    entries.push_back({std::move(subject), std::move(v), true});
  }
  void note(std::string s) { notes.push_back(std::move(s)); }

  int exit_code() const {
    for (const ReportEntry& e : entries)
      if (!e.informational && !e.verdict.pass) return 1;
    return 0;
  }

  std::string render_text() const {
    std::ostringstream out;
    out << "qb report 1\n";
    out << "command " << command << "\n";
    out << "input " << input << "\n";
    out << "digest " << digest << "\n";
    for (const std::string& s : notes) out << "note " << s << "\n";
    for (const ReportEntry& e : entries) {
      out << (e.informational ? "info " : "check ") << e.subject << " :: "
          << to_string(e.verdict) << "\n";
      for (const std::string& t : e.verdict.trace) out << "  trace " << t << "\n";
    }
    out << "status " << exit_code() << "\n";
    return out.str();
  }

  std::string render_json() const {
    nlohmann::json j;
    j["report"] = "qb 1";
    j["command"] = command;
    j["input"] = input;
    j["digest"] = digest;
    j["notes"] = notes;
    j["checks"] = nlohmann::json::array();
    for (const ReportEntry& e : entries) {
      nlohmann::json c;
      c["subject"] = e.subject;
      c["informational"] = e.informational;
      c["pass"] = e.verdict.pass;
      c["not_applicable"] = e.verdict.not_applicable;
      c["condition"] = e.verdict.condition;
      nlohmann::json w = nlohmann::json::array();
      for (auto& [k, v] : e.verdict.witness.data) w.push_back({{"key", k}, {"value", v}});
      c["witness"] = w;
      c["note"] = e.verdict.witness.note;
      c["trace"] = e.verdict.trace;
      j["checks"].push_back(std::move(c));
    }
    j["status"] = exit_code();
    return j.dump(2) + "\n";
  }

  std::string render(const std::string& format) const {
    if (format == "structured") return render_json();
    return render_text();
  }
};

}  // namespace quillen
