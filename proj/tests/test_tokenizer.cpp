#include "conquard/tokenizer.hpp"

#include <random>

#include "doctest.h"

using namespace conquard;

namespace {

const LanguageProfile& clike() {
  static ProfileSet set = builtin_profiles();
  return *set.by_name("c-like");
}

const LanguageProfile& script() {
  static ProfileSet set = builtin_profiles();
  return *set.by_name("script-like");
}

std::vector<std::string> kinds_and_texts(const TokenizedFile& lexed) {
  std::vector<std::string> out;
  for (const auto& t : lexed.tokens)
    out.push_back(std::string(token_kind_name(t.kind)) + "(" + t.text + ")");
  return out;
}

}  // namespace

TEST_CASE("the c-like statement from the contract lexes token by token") {
  Diagnostics diags;
  TokenizedFile lexed = tokenize("if (x > 1) { y = \"s\"; }", clike(), diags);
  CHECK(kinds_and_texts(lexed) ==
        std::vector<std::string>{
            "KEYWORD(if)", "PUNCTUATION(()", "IDENTIFIER(x)", "OPERATOR(>)",
            "LITERAL(1)", "PUNCTUATION())", "PUNCTUATION({)", "IDENTIFIER(y)",
            "OPERATOR(=)", "LITERAL(\"s\")", "PUNCTUATION(;)", "PUNCTUATION(})"});
  CHECK(diags.warning_count() == 0);
}

TEST_CASE("a lone comment produces no tokens but marks its line") {
  Diagnostics diags;
  TokenizedFile lexed = tokenize("// nothing here\n", clike(), diags);
  CHECK(lexed.tokens.empty());
  CHECK(lexed.comment_lines == std::set<int>{1});
  CHECK(lexed.line_count == 1);
}

TEST_CASE("normalization collapses identifiers and literals") {
  Diagnostics diags;
  TokenizedFile a = tokenize("a = b;", clike(), diags);
  TokenizedFile b = tokenize("foo = bar;", clike(), diags);
  REQUIRE(a.tokens.size() == b.tokens.size());
  for (std::size_t i = 0; i < a.tokens.size(); ++i)
    CHECK(a.tokens[i].normalized == b.tokens[i].normalized);
  CHECK(a.tokens[0].normalized == "ID");
  CHECK(a.tokens[1].normalized == "=");
  CHECK(a.tokens[3].normalized == ";");

  TokenizedFile lit = tokenize("x = 123; y = \"str\";", clike(), diags);
  CHECK(lit.tokens[2].normalized == "LIT");
  CHECK(lit.tokens[6].normalized == "LIT");
}

TEST_CASE("unterminated strings and comments close at end of file with warnings") {
  Diagnostics diags;
  TokenizedFile s = tokenize("x = \"abc", clike(), diags);
  CHECK(diags.warning_count() == 1);
  REQUIRE(s.tokens.size() == 3);
  CHECK(s.tokens[2].kind == TokenKind::Literal);
  CHECK(s.tokens[2].text == "\"abc");

  Diagnostics diags2;
  TokenizedFile c = tokenize("a /* never closed\nb c", clike(), diags2);
  CHECK(diags2.warning_count() == 1);
  CHECK(c.tokens.size() == 1);  // only `a`
  CHECK(c.comment_lines == std::set<int>{1, 2});
}

TEST_CASE("block comments mark every covered line") {
  Diagnostics diags;
  TokenizedFile lexed = tokenize("x /* one\ntwo\nthree */ y\n", clike(), diags);
  CHECK(lexed.comment_lines == std::set<int>{1, 2, 3});
  REQUIRE(lexed.tokens.size() == 2);
  CHECK(lexed.tokens[0].line == 1);
  CHECK(lexed.tokens[1].line == 3);
  CHECK(lexed.line_count == 3);
}

TEST_CASE("line numbers are non-decreasing and physical lines count partial tails") {
  Diagnostics diags;
  TokenizedFile lexed = tokenize("a\nbb cc\n\ndd", clike(), diags);
  CHECK(lexed.line_count == 4);
  int prev = 0;
  for (const auto& t : lexed.tokens) {
    CHECK(t.line >= prev);
    prev = t.line;
  }
  CHECK(lexed.tokens.back().line == 4);
}

TEST_CASE("script profile: hash comments and keyword classification") {
  Diagnostics diags;
  TokenizedFile lexed = tokenize("# top\nif x:\n    y = 1  # tail\n", script(), diags);
  CHECK(lexed.comment_lines == std::set<int>{1, 3});
  REQUIRE(!lexed.tokens.empty());
  CHECK(lexed.tokens[0].kind == TokenKind::Keyword);
  CHECK(lexed.tokens[0].text == "if");
}

TEST_CASE("operators use maximal munch") {
  Diagnostics diags;
  TokenizedFile lexed = tokenize("a <<= b == c -> d;", clike(), diags);
  std::vector<std::string> ops;
  for (const auto& t : lexed.tokens)
    if (t.kind == TokenKind::Operator) ops.push_back(t.text);
  CHECK(ops == std::vector<std::string>{"<<=", "==", "->"});
}

TEST_CASE("invalid UTF-8 is replaced with a warning and lexing continues") {
  Diagnostics diags;
  std::string content = "x = \xFF\xFE 1;";
  std::string clean = sanitize_utf8(content, diags, "f");
  CHECK(diags.warning_count() == 1);
  TokenizedFile lexed = tokenize(clean, clike(), diags);
  CHECK(!lexed.tokens.empty());
}

TEST_CASE("round-trip: token texts equal the input minus comments and whitespace") {
  // Generated inputs with known piece roles; the expected string is built
  // from the generator's own bookkeeping, not from the tokenizer.
  std::mt19937 rng(7);
  const std::vector<std::string> atoms = {"abc", "if",  "x1",  "42",  "3.5",
                                          "\"s t\"", "+", "<=", ";", "{", "}", "(", ")"};
  for (int round = 0; round < 200; ++round) {
    std::string input, expected;
    int pieces = std::uniform_int_distribution<int>(0, 30)(rng);
    for (int i = 0; i < pieces; ++i) {
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: input += "  "; break;
        case 1: input += "\n"; break;
        case 2: {
          const std::string& atom = atoms[std::uniform_int_distribution<std::size_t>(
              0, atoms.size() - 1)(rng)];
          // Atoms must stay separated so they do not merge into one token.
          input += atom;
          input += ' ';
          expected += atom;
          break;
        }
        case 3:
          if (std::uniform_int_distribution<int>(0, 1)(rng)) {
            input += "// line comment\n";
          } else {
            input += "/* block\ncomment */";
          }
          break;
      }
    }
    Diagnostics diags;
    TokenizedFile lexed = tokenize(input, clike(), diags);
    std::string actual;
    for (const auto& t : lexed.tokens) actual += t.text;
    CHECK(actual == expected);
  }
}

TEST_CASE("tokenization is total on arbitrary byte soup") {
  std::mt19937 rng(99);
  for (int round = 0; round < 300; ++round) {
    std::string bytes;
    int len = std::uniform_int_distribution<int>(0, 200)(rng);
    for (int i = 0; i < len; ++i)
      bytes.push_back(static_cast<char>(std::uniform_int_distribution<int>(0, 255)(rng)));
    Diagnostics diags;
    std::string clean = sanitize_utf8(bytes, diags, "fuzz");
    TokenizedFile lexed = tokenize(clean, clike(), diags);   // must not throw
    TokenizedFile lexed2 = tokenize(clean, script(), diags); // nor here
    for (const auto& t : lexed.tokens) CHECK(!t.text.empty());
    int prev = 0;
    for (const auto& t : lexed2.tokens) {
      CHECK(t.line >= prev);
      prev = t.line;
    }
  }
}
