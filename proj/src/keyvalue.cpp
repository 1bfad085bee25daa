#include "roitrack/keyvalue.hpp"

#include <charconv>
#include <cmath>

namespace roitrack {

FormatError::FormatError(std::string source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
      source_(std::move(source)),
      line_(line) {}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_double(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  if (text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

std::optional<long long> parse_int(std::string_view text) {
  text = trim(text);
  if (text.empty()) return std::nullopt;
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::string format_exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

KeyValueDoc KeyValueDoc::parse(std::string_view text, std::string source) {
  KeyValueDoc doc;
  doc.source_ = std::move(source);
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw FormatError(doc.source_, line_no, "expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw FormatError(doc.source_, line_no, "empty key");
    doc.entries_.push_back({std::string(key), std::string(trim(line.substr(eq + 1))), line_no});
  }
  return doc;
}

const KeyValueDoc::Entry* KeyValueDoc::find(std::string_view key) const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->key == key) return &*it;
  }
  return nullptr;
}

std::vector<const KeyValueDoc::Entry*> KeyValueDoc::find_all(std::string_view key) const {
  std::vector<const Entry*> out;
  for (const auto& e : entries_) {
    if (e.key == key) out.push_back(&e);
  }
  return out;
}

std::optional<std::string> KeyValueDoc::get_string(std::string_view key) const {
  if (const auto* e = find(key)) return e->value;
  return std::nullopt;
}

std::optional<double> KeyValueDoc::get_double(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  if (auto v = parse_double(e->value)) return v;
  throw FormatError(source_, e->line, "'" + e->key + "' is not a number: " + e->value);
}

std::optional<long long> KeyValueDoc::get_int(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  if (auto v = parse_int(e->value)) return v;
  throw FormatError(source_, e->line, "'" + e->key + "' is not an integer: " + e->value);
}

std::optional<bool> KeyValueDoc::get_bool(std::string_view key) const {
  const auto* e = find(key);
  if (!e) return std::nullopt;
  if (e->value == "true" || e->value == "1") return true;
  if (e->value == "false" || e->value == "0") return false;
  throw FormatError(source_, e->line, "'" + e->key + "' is not a boolean: " + e->value);
}

double KeyValueDoc::require_double(std::string_view key) const {
  if (auto v = get_double(key)) return *v;
  throw FormatError(source_, 0, "missing required key '" + std::string(key) + "'");
}

}  // namespace roitrack
