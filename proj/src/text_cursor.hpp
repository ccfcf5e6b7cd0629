#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "cayleycast/error.hpp"

namespace cayleycast::detail {

/// Whitespace-insensitive scanner shared by the text formats.
class TextCursor {
 public:
  explicit TextCursor(std::string_view text) : text_(text) {}

  std::size_t position() const noexcept { return pos_; }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!consume(c)) {
      const char got = peek();
      throw ParseError(std::string("expected '") + c + "' but found " +
                           (got ? std::string("'") + got + "'" : std::string("end of input")),
                       pos_);
    }
  }

  void expect_end() {
    if (!at_end()) {
      throw ParseError(std::string("unexpected trailing '") + text_[pos_] + "'", pos_);
    }
  }

  std::string identifier() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected a name", start);
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t unsigned_integer() {
    skip_space();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const std::uint64_t d = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - d) / 10) {
        throw ParseError("integer too large", start);
      }
      v = v * 10 + d;
      ++pos_;
    }
    if (start == pos_) throw ParseError("expected an integer", start);
    return v;
  }

  /// A maximal run of '0'/'1' characters.
  std::string bit_string() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (text_[pos_] == '0' || text_[pos_] == '1')) ++pos_;
    if (start == pos_) throw ParseError("expected a bit string", start);
    return std::string(text_.substr(start, pos_ - start));
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace cayleycast::detail
