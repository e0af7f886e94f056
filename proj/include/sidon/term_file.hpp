#pragma once

// Plain-text term files: ASCII decimal integers, one per line, LF endings,
// no blank lines or comments, strictly increasing. Pin files hold
// "position value" pairs in the same style.

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sidon/types.hpp"

namespace sidon {

class IoError : public Error {
 public:
  using Error::Error;
};

namespace detail {

// Digits only, no sign, no leading zero, no overflow, value >= 1.
inline std::uint64_t parse_positive(std::string_view field, std::size_t line, const char* what) {
  if (field.empty()) throw FormatError(std::string("empty ") + what, line);
  for (char c : field) {
    if (c < '0' || c > '9') {
      throw FormatError(std::string(what) + " '" + std::string(field) + "' is not a decimal integer",
                        line);
    }
  }
  if (field.size() > 1 && field.front() == '0') {
    throw FormatError(std::string(what) + " '" + std::string(field) + "' has a leading zero", line);
  }
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw FormatError(std::string(what) + " '" + std::string(field) + "' does not fit in 64 bits", line);
  }
  if (value == 0) throw FormatError(std::string(what) + " must be positive", line);
  return value;
}

// Splits on '\n'. A missing newline after the last line is tolerated; a
// trailing empty line is not produced by it.
template <typename LineFn>
void for_each_line(std::string_view text, LineFn&& on_line) {
  std::size_t line = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view content = text.substr(start, end - start);
    if (!content.empty() && content.back() == '\r') {
      throw FormatError("CR before LF; term files use LF line endings", line);
    }
    if (content.empty()) throw FormatError("blank line", line);
    on_line(content, line);
    start = end + 1;
  }
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return text;
}

}  // namespace detail

inline std::vector<Term> parse_terms(std::string_view text) {
  std::vector<Term> terms;
  detail::for_each_line(text, [&](std::string_view content, std::size_t line) {
    const Term value = detail::parse_positive(content, line, "term");
    if (!terms.empty() && value <= terms.back()) {
      throw FormatError("term " + std::to_string(value) + " is not greater than the previous term " +
                            std::to_string(terms.back()),
                        line);
    }
    terms.push_back(value);
  });
  return terms;
}

inline std::vector<Term> read_terms(const std::filesystem::path& path) {
  return parse_terms(detail::slurp(path));
}

inline std::string format_terms(std::span<const Term> terms) {
  std::string out;
  out.reserve(terms.size() * 12);
  char buf[24];
  for (const Term t : terms) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, t);
    out.append(buf, ptr);
    out.push_back('\n');
  }
  return out;
}

inline void write_terms(const std::filesystem::path& path, std::span<const Term> terms) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  const std::string text = format_terms(terms);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

// "position value" per line, single space separated, positions unique.
inline std::map<Position, Term> parse_pins(std::string_view text) {
  std::map<Position, Term> pins;
  detail::for_each_line(text, [&](std::string_view content, std::size_t line) {
    const std::size_t space = content.find(' ');
    if (space == std::string_view::npos) {
      throw FormatError("expected 'position value'", line);
    }
    const auto pos = detail::parse_positive(content.substr(0, space), line, "position");
    const auto value = detail::parse_positive(content.substr(space + 1), line, "value");
    if (!pins.emplace(pos, value).second) {
      throw FormatError("position " + std::to_string(pos) + " pinned twice", line);
    }
  });
  return pins;
}

inline std::map<Position, Term> read_pins(const std::filesystem::path& path) {
  return parse_pins(detail::slurp(path));
}

}  // namespace sidon
