#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mindeg {

// Line-based structured text used by cache files, certificates, and reports.
// A file is a header line, a sequence of named sections of key/value lines,
// and a trailing checksum over every preceding byte:
//
//   %mindeg-stanza 1
//   [section]
//   key = value
//   %checksum 0123456789abcdef
//
// Values are single-line and stored verbatim; keys repeat freely and keep
// their order. Any byte change ahead of the checksum line makes the file
// unreadable, which is what lets `check` reject tampered reports.

std::uint64_t fnv1a64(std::string_view data);

struct Stanza {
  std::string name;
  std::vector<std::pair<std::string, std::string>> fields;

  void add(std::string key, std::string value);
  void add_int(std::string key, long long value);
  bool has(const std::string& key) const;
  // First value for the key; input_error when absent.
  const std::string& get(const std::string& key) const;
  std::string get_or(const std::string& key, std::string fallback) const;
  long long get_int(const std::string& key) const;
  std::vector<std::string> all(const std::string& key) const;
};

struct StanzaFile {
  std::vector<Stanza> stanzas;

  Stanza& append(std::string name);
  const Stanza* find(const std::string& name) const;
  std::vector<const Stanza*> all(const std::string& name) const;

  // Serialization is deterministic; parsing verifies the header and the
  // checksum and throws input_error with a line number otherwise.
  std::string to_text() const;
  static StanzaFile from_text(const std::string& text);
};

}  // namespace mindeg
