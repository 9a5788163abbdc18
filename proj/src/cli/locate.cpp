#include <cctype>

#include "covlab/cli/problem.hpp"

namespace covlab::cli {

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  std::map<std::string, Location> run() {
    value("");
    return std::move(out_);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        col_ = 1;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++col_;
      } else {
        return;
      }
      ++pos_;
    }
  }

  void advance() {
    ++pos_;
    ++col_;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  std::string string_token() {
    std::string raw;
    advance();  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') {
        raw += text_[pos_];
        advance();
      }
      if (pos_ < text_.size()) {
        raw += text_[pos_];
        // Continuation bytes of UTF-8 do not start a new column.
        if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) == 0x80) --col_;
        advance();
      }
    }
    advance();  // closing quote
    return nlohmann::json::parse("\"" + raw + "\"").get<std::string>();
  }

  void value(const std::string& pointer) {
    skip_space();
    out_[pointer] = {line_, col_};
    char c = peek();
    if (c == '{') {
      advance();
      skip_space();
      if (peek() == '}') {
        advance();
        return;
      }
      while (true) {
        skip_space();
        std::string key = string_token();
        skip_space();
        advance();  // ':'
        value(pointer + "/" + escape_token(key));
        skip_space();
        if (peek() == ',') {
          advance();
          continue;
        }
        advance();  // '}'
        return;
      }
    }
    if (c == '[') {
      advance();
      skip_space();
      if (peek() == ']') {
        advance();
        return;
      }
      for (std::size_t i = 0;; ++i) {
        value(pointer + "/" + std::to_string(i));
        skip_space();
        if (peek() == ',') {
          advance();
          continue;
        }
        advance();  // ']'
        return;
      }
    }
    if (c == '"') {
      string_token();
      return;
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != ',' &&
           text_[pos_] != ']' && text_[pos_] != '}') {
      advance();
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
  std::map<std::string, Location> out_;
};

}  // namespace

std::map<std::string, Location> index_locations(std::string_view text) { return Scanner(text).run(); }

Location location_of_offset(std::string_view text, std::size_t offset) {
  Location loc{1, 1};
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++loc.line;
      loc.column = 1;
    } else if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      ++loc.column;
    }
  }
  return loc;
}

}  // namespace covlab::cli
