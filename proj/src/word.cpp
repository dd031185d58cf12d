#include "coxcss/coxeter.hpp"
#include "coxcss/error.hpp"

#include <cctype>

namespace coxcss {

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, int rank) : s_(text), rank_(rank) {}

  Word parse() {
    Word w = sequence();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return w;
  }

 private:
  std::string_view s_;
  int rank_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, "word '" + std::string(s_) + "': " + msg + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == ',' || s_[pos_] == '*' || s_[pos_] == '.'))
      ++pos_;
  }

  bool starts_with(std::string_view tok) const { return s_.substr(pos_, tok.size()) == tok; }

  long number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    if (pos_ - start > 6) fail("number too large");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }

  int generator(long one_based) {
    if (one_based < 1 || one_based > rank_) fail("generator s" + std::to_string(one_based) + " out of range");
    return static_cast<int>(one_based - 1);
  }

  Word sequence() {
    Word out;
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] == ')') return out;
      Word item = atom();
      skip();
      if (pos_ < s_.size() && s_[pos_] == '^') {
        ++pos_;
        skip();
        const long reps = number();
        Word rep;
        for (long r = 0; r < reps; ++r) rep.insert(rep.end(), item.begin(), item.end());
        item = std::move(rep);
      }
      out.insert(out.end(), item.begin(), item.end());
    }
  }

  Word atom() {
    if (s_[pos_] == '(') {
      ++pos_;
      Word inner = sequence();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (starts_with("id")) {
      pos_ += 2;
      return {};
    }
    if (starts_with("prod")) {
      pos_ += 4;
      Word w;
      for (int i = 0; i < rank_; ++i) w.push_back(i);
      return w;
    }
    if (s_[pos_] == 'e' && (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
      ++pos_;
      return {};
    }
    if (s_[pos_] == 's') {
      ++pos_;
      if (pos_ < s_.size() && s_[pos_] == '_') ++pos_;
      return {generator(number())};
    }
    if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) return {generator(number())};
    fail("unexpected character");
  }
};

}  // namespace

Word parse_word(std::string_view text, int rank) { return WordParser(text, rank).parse(); }

std::string format_word(const Word& word) {
  if (word.empty()) return "id";
  std::string out;
  for (int g : word) out += "s" + std::to_string(g + 1);
  return out;
}

}  // namespace coxcss
