#pragma once

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "seeprivacy/text.hpp"

namespace seeprivacy {

struct Sentence {
  std::string text;
  std::size_t block_index = 0;
  Span span;  // within the block text

  friend bool operator==(const Sentence&, const Sentence&) = default;
};

namespace detail {

// Lowercased tokens (including the final period) that never end a sentence.
inline constexpr std::array<std::string_view, 40> kAbbreviations = {
    "e.g.",  "i.e.",   "etc.",  "inc.",  "ltd.",  "co.",   "corp.", "llc.", "mr.",   "mrs.",
    "ms.",   "dr.",    "prof.", "st.",   "vs.",   "no.",   "nos.",  "jr.",  "sr.",   "u.s.",
    "u.k.",  "e.u.",   "approx.", "incl.", "fig.", "cf.",  "al.",   "dept.", "est.", "ave.",
    "viz.",  "resp.",  "art.",  "sec.",  "para.", "p.",    "pp.",   "ca.",  "govt.", "jan.",
};

inline bool is_abbreviation(std::string_view token) {
  const auto lower = text::to_lower(token);
  if (std::find(kAbbreviations.begin(), kAbbreviations.end(), lower) != kAbbreviations.end())
    return true;
  // Single-letter initials such as "J." or dotted acronyms like "U.S.A.".
  bool dotted = lower.size() >= 2;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const bool letter_slot = i % 2 == 0;
    if (letter_slot ? !text::is_ascii_alpha(lower[i]) : lower[i] != '.') dotted = false;
  }
  return dotted && lower.size() % 2 == 0;
}

inline bool is_closer(char c) { return c == '"' || c == '\'' || c == ')' || c == ']'; }

}  // namespace detail

// Splits on '.', '!' and '?' followed by whitespace or end of text. A period
// ending a known abbreviation or an initial does not split. Sentence spans are
// trimmed and cover every non-whitespace byte of the input.
inline std::vector<Sentence> tokenize_sentences(std::string_view block_text,
                                                std::size_t block_index = 0) {
  std::vector<Sentence> out;
  const auto emit = [&](std::size_t b, std::size_t e) {
    const auto piece = block_text.substr(b, e - b);
    const auto trimmed = text::trim(piece);
    if (trimmed.empty()) return;
    const auto start = b + static_cast<std::size_t>(trimmed.data() - piece.data());
    out.push_back({std::string(trimmed), block_index, {start, start + trimmed.size()}});
  };

  std::size_t start = 0;
  std::size_t i = 0;
  while (i < block_text.size()) {
    const char c = block_text[i];
    if (c != '.' && c != '!' && c != '?') {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < block_text.size() &&
           (block_text[end] == '.' || block_text[end] == '!' || block_text[end] == '?'))
      ++end;
    while (end < block_text.size() && detail::is_closer(block_text[end])) ++end;
    const bool boundary = end == block_text.size() || text::space_at(block_text, end) > 0;
    if (!boundary) {
      i = end;
      continue;
    }
    if (c == '.') {
      std::size_t tok = i;
      while (tok > start && text::space_at(block_text, tok - 1) == 0) --tok;
      if (detail::is_abbreviation(block_text.substr(tok, i + 1 - tok))) {
        i = end;
        continue;
      }
    }
    emit(start, end);
    start = end;
    i = end;
  }
  emit(start, block_text.size());
  return out;
}

}  // namespace seeprivacy
