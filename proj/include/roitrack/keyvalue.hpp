#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace roitrack {

/// Parse failure in a key-value or CSV document; carries the 1-based line.
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string source, int line, const std::string& what);
  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

/// Flat `key = value` text. `#` starts a comment; keys may repeat.
class KeyValueDoc {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };

  static KeyValueDoc parse(std::string_view text, std::string source = "<text>");

  const std::vector<Entry>& entries() const { return entries_; }
  const std::string& source() const { return source_; }

  /// Last value for `key`, if any.
  const Entry* find(std::string_view key) const;
  std::vector<const Entry*> find_all(std::string_view key) const;

  std::optional<std::string> get_string(std::string_view key) const;
  std::optional<double> get_double(std::string_view key) const;
  std::optional<long long> get_int(std::string_view key) const;
  std::optional<bool> get_bool(std::string_view key) const;

  double require_double(std::string_view key) const;

 private:
  std::string source_;
  std::vector<Entry> entries_;
};

/// Strict full-string numeric parses (no trailing junk, C locale).
std::optional<double> parse_double(std::string_view text);
std::optional<long long> parse_int(std::string_view text);

std::string_view trim(std::string_view s);

/// Shortest decimal text that reads back as the same double.
std::string format_exact(double v);

}  // namespace roitrack
