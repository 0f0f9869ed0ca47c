#pragma once

#include <functional>
#include <string>
#include <vector>

#include "boxtimes/gate.hpp"

namespace boxtimes {

// One letter s_j^{+1} or s_j^{-1}; generators are 1-based, j in
// [1, strands-1].
struct BraidLetter {
    std::size_t generator = 1;
    int exponent = 1;
};

struct BraidWord {
    std::size_t strands = 2;
    std::vector<BraidLetter> letters;
};

// Parses words like "s1 s2^-1 s1"; whitespace-separated tokens, each
// "s<j>" or "s<j>^-1". Throws on malformed tokens or out-of-range
// generators.
BraidWord parse_braid_word(const std::string& text, std::size_t strands);

std::string braid_word_to_string(const BraidWord& w);

// Image of the word under the representation sending s_j to c acting on
// strands (j-1, j) of n strands: letters multiply left to right, first
// letter leftmost. c must be an invertible 2-qudit gate.
// If warnings is non-null and c fails the Yang-Baxter check at tol, a
// warning is appended (the value is still computed).
CMatrix braid_rep(const Gate& c, const BraidWord& w, const Tolerance& tol,
                  std::vector<std::string>* warnings = nullptr);

// Enumerate every word on the given strand count with 1..max_len letters,
// shortest first; within a length, letters advance odometer-style with
// s_1, s_1^-1, s_2, ... as the letter order. Stops early if visit returns
// false.
void enumerate_braid_words(std::size_t strands, std::size_t max_len,
                           const std::function<bool(const BraidWord&)>& visit);

}  // namespace boxtimes
