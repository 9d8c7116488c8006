#include "mindeg/stanza.hpp"

#include <charconv>

#include "mindeg/errors.hpp"

namespace mindeg {

namespace {

constexpr char kHeader[] = "%mindeg-stanza 1";
constexpr char kChecksumPrefix[] = "%checksum ";

bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                    (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

bool valid_value(std::string_view s) {
  for (char c : s)
    if (c == '\n' || c == '\r') return false;
  return true;
}

[[noreturn]] void bad_line(std::size_t lineno, const std::string& what) {
  throw input_error("stanza line " + std::to_string(lineno) + ": " + what);
}

std::string hex16(std::uint64_t v) {
  static const char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) out[i] = digits[v & 0xf];
  return out;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

void Stanza::add(std::string key, std::string value) {
  if (!valid_name(key)) throw input_error("bad stanza key: " + key);
  if (!valid_value(value)) throw input_error("stanza value for " + key + " contains a line break");
  fields.emplace_back(std::move(key), std::move(value));
}

void Stanza::add_int(std::string key, long long value) {
  add(std::move(key), std::to_string(value));
}

bool Stanza::has(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return true;
  return false;
}

const std::string& Stanza::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  throw input_error("stanza [" + name + "] has no field '" + key + "'");
}

std::string Stanza::get_or(const std::string& key, std::string fallback) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return fallback;
}

long long Stanza::get_int(const std::string& key) const {
  const std::string& v = get(key);
  long long out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw input_error("stanza field '" + key + "' is not an integer: " + v);
  return out;
}

std::vector<std::string> Stanza::all(const std::string& key) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : fields)
    if (k == key) out.push_back(v);
  return out;
}

Stanza& StanzaFile::append(std::string name) {
  if (!valid_name(name)) throw input_error("bad stanza name: " + name);
  stanzas.push_back(Stanza{std::move(name), {}});
  return stanzas.back();
}

const Stanza* StanzaFile::find(const std::string& name) const {
  for (const Stanza& s : stanzas)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<const Stanza*> StanzaFile::all(const std::string& name) const {
  std::vector<const Stanza*> out;
  for (const Stanza& s : stanzas)
    if (s.name == name) out.push_back(&s);
  return out;
}

std::string StanzaFile::to_text() const {
  std::string body;
  body += kHeader;
  body += '\n';
  for (const Stanza& s : stanzas) {
    if (!valid_name(s.name)) throw input_error("bad stanza name: " + s.name);
    body += '[';
    body += s.name;
    body += "]\n";
    for (const auto& [k, v] : s.fields) {
      if (!valid_name(k)) throw input_error("bad stanza key: " + k);
      if (!valid_value(v)) throw input_error("stanza value for " + k + " contains a line break");
      body += k;
      body += " = ";
      body += v;
      body += '\n';
    }
  }
  const std::string sum = hex16(fnv1a64(body));
  body += kChecksumPrefix;
  body += sum;
  body += '\n';
  return body;
}

StanzaFile StanzaFile::from_text(const std::string& text) {
  StanzaFile out;
  std::size_t pos = 0;
  std::size_t lineno = 0;
  bool saw_header = false;
  bool saw_checksum = false;

  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) bad_line(lineno + 1, "missing final newline");
    const std::string_view line(text.data() + pos, nl - pos);
    ++lineno;

    if (!saw_header) {
      if (line != kHeader) bad_line(lineno, "expected header '" + std::string(kHeader) + "'");
      saw_header = true;
      pos = nl + 1;
      continue;
    }
    if (line.rfind(kChecksumPrefix, 0) == 0) {
      const std::string expect = hex16(fnv1a64(std::string_view(text.data(), pos)));
      const std::string_view got = line.substr(sizeof(kChecksumPrefix) - 1);
      if (got != expect) bad_line(lineno, "checksum mismatch");
      saw_checksum = true;
      pos = nl + 1;
      if (pos != text.size()) bad_line(lineno + 1, "content after checksum");
      break;
    }
    if (line.empty()) bad_line(lineno, "blank line");
    if (line.front() == '[') {
      if (line.back() != ']') bad_line(lineno, "unterminated section name");
      const std::string name(line.substr(1, line.size() - 2));
      if (!valid_name(name)) bad_line(lineno, "bad section name");
      out.append(name);
    } else {
      if (out.stanzas.empty()) bad_line(lineno, "field before any section");
      const std::size_t sep = line.find(" = ");
      if (sep == std::string_view::npos) bad_line(lineno, "expected 'key = value'");
      const std::string key(line.substr(0, sep));
      if (!valid_name(key)) bad_line(lineno, "bad field key");
      out.stanzas.back().fields.emplace_back(key, std::string(line.substr(sep + 3)));
    }
    pos = nl + 1;
  }
  if (!saw_header) throw input_error("stanza file is empty");
  if (!saw_checksum) throw input_error("stanza file has no checksum line");
  return out;
}

}  // namespace mindeg
