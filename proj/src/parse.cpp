#include "charp/parse.hpp"

#include <cctype>

namespace charp {

namespace {

class PolyParser {
 public:
  PolyParser(const RingPtr& ring, std::string_view text) : ring_(ring), s_(text) {}

  Poly run() {
    Poly r = expr();
    skip_ws();
    if (pos_ != s_.size()) err("unexpected trailing input");
    return r;
  }

 private:
  [[noreturn]] void err(const std::string& what) {
    fail(Errc::Parse, "syntax error at position " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Poly expr() {
    bool neg = false;
    skip_ws();
    if (eat('-')) neg = true;
    else eat('+');
    Poly r = term();
    if (neg) r = -r;
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        r = r + term();
      } else if (c == '-') {
        ++pos_;
        r = r - term();
      } else {
        break;
      }
    }
    return r;
  }

  Poly term() {
    Poly r = factor();
    while (eat('*')) r = r * factor();
    return r;
  }

  Poly factor() {
    Poly b = base();
    if (eat('^')) {
      long long e = integer_literal_small();
      if (e < 0) err("negative exponent");
      return b.pow(e);
    }
    return b;
  }

  Poly base() {
    skip_ws();
    if (pos_ >= s_.size()) err("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      if (!eat(')')) err("expected ')'");
      return r;
    }
    if (std::isdigit((unsigned char)c)) {
      // Integer literal, reduced mod p digit by digit (may exceed 64 bits).
      uint32_t p = ring_->field.p();
      uint64_t acc = 0;
      while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
        acc = (acc * 10 + (uint64_t)(s_[pos_] - '0')) % p;
        ++pos_;
      }
      return Poly::constant(ring_, acc);
    }
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
      size_t start = pos_;
      ++pos_;
      while (pos_ < s_.size() &&
             (std::isalnum((unsigned char)s_[pos_]) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      int idx = ring_->var_index(name);
      if (idx < 0) {
        pos_ = start;
        fail(Errc::UnknownVariable,
             "unknown variable '" + name + "' at position " + std::to_string(start));
      }
      return Poly::variable(ring_, idx);
    }
    err(std::string("unexpected character '") + c + "'");
  }

  long long integer_literal_small() {
    skip_ws();
    bool neg = eat('-');
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit((unsigned char)s_[pos_])) err("expected integer");
    long long v = 0;
    while (pos_ < s_.size() && std::isdigit((unsigned char)s_[pos_])) {
      v = v * 10 + (s_[pos_] - '0');
      if (v > INT32_MAX) err("exponent too large");
      ++pos_;
    }
    return neg ? -v : v;
  }

  RingPtr ring_;
  std::string_view s_;
  size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(const RingPtr& ring, std::string_view text) {
  return PolyParser(ring, text).run();
}

}  // namespace charp
