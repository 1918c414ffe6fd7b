#include "conquard/glob.hpp"

#include "doctest.h"

using conquard::glob_match;

TEST_CASE("single star stays within a segment") {
  CHECK(glob_match("*.x", "a.x"));
  CHECK(glob_match("src/*.x", "src/a.x"));
  CHECK_FALSE(glob_match("*.x", "src/a.x"));
  CHECK_FALSE(glob_match("src/*", "src/sub/a.x"));
  CHECK(glob_match("src/*", "src/a.x"));
}

TEST_CASE("double star crosses segments and matches zero of them") {
  CHECK(glob_match("**/*.x", "a.x"));
  CHECK(glob_match("**/*.x", "deep/one/two/a.x"));
  CHECK(glob_match("src/**", "src/a.x"));
  CHECK(glob_match("src/**", "src/one/two/a.x"));
  CHECK_FALSE(glob_match("src/**", "src"));
  CHECK(glob_match("**", ""));
  CHECK(glob_match("**", "anything/at/all"));
}

TEST_CASE("question mark matches exactly one non-separator character") {
  CHECK(glob_match("a?c", "abc"));
  CHECK_FALSE(glob_match("a?c", "a/c"));
  CHECK_FALSE(glob_match("a?c", "ac"));
  CHECK_FALSE(glob_match("a?c", "abbc"));
}

TEST_CASE("the generated-code exclusion shape from the scan contract") {
  // include **/*.x, exclude gen/** keeps only a.x
  CHECK(glob_match("**/*.x", "a.x"));
  CHECK(glob_match("**/*.x", "gen/b.x"));
  CHECK(glob_match("gen/**", "gen/b.x"));
  CHECK_FALSE(glob_match("gen/**", "a.x"));
}

TEST_CASE("literal matching and corner cases") {
  CHECK(glob_match("exact/path.c", "exact/path.c"));
  CHECK_FALSE(glob_match("exact/path.c", "exact/path.cc"));
  CHECK_FALSE(glob_match("", "x"));
  CHECK(glob_match("", ""));
  CHECK(glob_match("a/**/b", "a/b"));
  CHECK(glob_match("a/**/b", "a/x/y/b"));
}
