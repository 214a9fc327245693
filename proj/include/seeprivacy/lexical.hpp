#pragma once

// Shortest-path lexical similarity over a noun hypernym graph read from
// WordNet-format dict files (index.noun, data.noun, optional noun.exc), and
// the chunk/keyword phrase similarity built on it.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seeprivacy/errors.hpp"
#include "seeprivacy/text.hpp"

namespace seeprivacy {

class LexicalSimilarityProvider {
 public:
  virtual ~LexicalSimilarityProvider() = default;
  // Path similarity in [0,1] between the first senses of two words, or
  // nullopt when either word is unknown.
  virtual std::optional<double> path_similarity(std::string_view a, std::string_view b) const = 0;
};

// Provider that knows no words; every similarity is unknown.
class EmptyLexicon final : public LexicalSimilarityProvider {
 public:
  std::optional<double> path_similarity(std::string_view, std::string_view) const override {
    return std::nullopt;
  }
};

class WordNetNouns final : public LexicalSimilarityProvider {
 public:
  using Offset = std::uint32_t;

  static WordNetNouns load(const std::filesystem::path& dict_dir) {
    WordNetNouns wn;
    wn.read_index(dict_dir / "index.noun");
    wn.read_data(dict_dir / "data.noun");
    if (std::filesystem::exists(dict_dir / "noun.exc")) wn.read_exceptions(dict_dir / "noun.exc");
    return wn;
  }

  std::size_t synset_count() const noexcept { return hypernyms_.size(); }

  // Base form known to the index, following WordNet's noun detachment rules.
  std::optional<std::string> morphy(std::string_view word) const {
    std::string w = text::to_lower(word);
    for (auto& c : w)
      if (c == ' ') c = '_';
    if (index_.contains(w)) return w;
    if (auto it = exceptions_.find(w); it != exceptions_.end() && index_.contains(it->second))
      return it->second;
    static constexpr std::pair<std::string_view, std::string_view> rules[] = {
        {"s", ""}, {"ses", "s"}, {"xes", "x"}, {"zes", "z"},
        {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"},
    };
    for (const auto& [suffix, repl] : rules) {
      if (w.size() > suffix.size() && w.ends_with(suffix)) {
        auto base = w.substr(0, w.size() - suffix.size()) + std::string(repl);
        if (index_.contains(base)) return base;
      }
    }
    return std::nullopt;
  }

  std::optional<Offset> first_sense(std::string_view word) const {
    auto base = morphy(word);
    if (!base) return std::nullopt;
    const auto& senses = index_.at(*base);
    if (senses.empty()) return std::nullopt;
    return senses.front();
  }

  // Minimum over common hypernym ancestors of the summed hop counts.
  std::optional<std::size_t> shortest_path(Offset a, Offset b) const {
    const auto da = ancestor_distances(a);
    const auto db = ancestor_distances(b);
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (const auto& [node, d1] : da)
      if (auto it = db.find(node); it != db.end()) best = std::min(best, d1 + it->second);
    if (best == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return best;
  }

  std::optional<double> path_similarity(std::string_view a, std::string_view b) const override {
    const auto sa = first_sense(a);
    const auto sb = first_sense(b);
    if (!sa || !sb) return std::nullopt;
    const auto d = shortest_path(*sa, *sb);
    if (!d) return 0.0;
    return 1.0 / (1.0 + static_cast<double>(*d));
  }

 private:
  std::unordered_map<Offset, std::size_t> ancestor_distances(Offset start) const {
    std::unordered_map<Offset, std::size_t> dist{{start, 0}};
    std::vector<Offset> frontier{start};
    for (std::size_t depth = 1; !frontier.empty(); ++depth) {
      std::vector<Offset> next;
      for (auto node : frontier) {
        auto it = hypernyms_.find(node);
        if (it == hypernyms_.end()) continue;
        for (auto parent : it->second)
          if (dist.emplace(parent, depth).second) next.push_back(parent);
      }
      frontier = std::move(next);
    }
    return dist;
  }

  static std::ifstream open(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw Error("cannot open lexical database file " + p.string());
    return in;
  }

  // lemma pos synset_cnt p_cnt [ptr_symbol...] sense_cnt tagsense_cnt offset...
  void read_index(const std::filesystem::path& p) {
    auto in = open(p);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == ' ') continue;
      std::istringstream row(line);
      std::string lemma, pos;
      std::size_t synset_cnt = 0, p_cnt = 0;
      if (!(row >> lemma >> pos >> synset_cnt >> p_cnt)) throw bad(p, line);
      std::string skip;
      for (std::size_t k = 0; k < p_cnt; ++k) row >> skip;
      std::size_t sense_cnt = 0, tagsense_cnt = 0;
      row >> sense_cnt >> tagsense_cnt;
      std::vector<Offset> offsets;
      for (std::size_t k = 0; k < synset_cnt; ++k) {
        Offset o = 0;
        if (!(row >> o)) throw bad(p, line);
        offsets.push_back(o);
      }
      index_[lemma] = std::move(offsets);
    }
  }

  // offset lex_filenum ss_type w_cnt(hex) [word lex_id]... p_cnt [ptr]... | gloss
  void read_data(const std::filesystem::path& p) {
    auto in = open(p);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == ' ') continue;
      std::istringstream row(line);
      Offset offset = 0;
      std::string lexfile, ss_type, w_cnt_hex;
      if (!(row >> offset >> lexfile >> ss_type >> w_cnt_hex)) throw bad(p, line);
      const auto w_cnt = std::stoul(w_cnt_hex, nullptr, 16);
      std::string skip;
      for (std::size_t k = 0; k < 2 * w_cnt; ++k) row >> skip;
      std::size_t p_cnt = 0;
      if (!(row >> p_cnt)) throw bad(p, line);
      auto& parents = hypernyms_[offset];
      for (std::size_t k = 0; k < p_cnt; ++k) {
        std::string symbol, pos, source_target;
        Offset target = 0;
        if (!(row >> symbol >> target >> pos >> source_target)) throw bad(p, line);
        if ((symbol == "@" || symbol == "@i") && pos == "n") parents.push_back(target);
      }
    }
  }

  void read_exceptions(const std::filesystem::path& p) {
    auto in = open(p);
    std::string line;
    while (std::getline(in, line)) {
      std::istringstream row(line);
      std::string inflected, base;
      if (row >> inflected >> base) exceptions_.emplace(inflected, base);
    }
  }

  static Error bad(const std::filesystem::path& p, const std::string& line) {
    return Error("malformed line in " + p.string() + ": " + line.substr(0, 80));
  }

  std::unordered_map<std::string, std::vector<Offset>> index_;
  std::unordered_map<Offset, std::vector<Offset>> hypernyms_;
  std::unordered_map<std::string, std::string> exceptions_;
};

// Last whitespace token with surrounding punctuation stripped.
inline std::string_view phrase_head(std::string_view phrase) {
  const auto words = text::split_whitespace(phrase);
  if (words.empty()) return {};
  auto head = words.back();
  const auto is_punct = [](char c) {
    return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '"' ||
           c == '(' || c == ')' || c == '\'';
  };
  while (!head.empty() && is_punct(head.front())) head.remove_prefix(1);
  while (!head.empty() && is_punct(head.back())) head.remove_suffix(1);
  return head;
}

// 2 * path_similarity(head(p1), head(p2)) / (word_count(p1) + word_count(p2)).
// Unknown heads score 0.
inline double phrase_similarity(std::string_view p1, std::string_view p2,
                                const LexicalSimilarityProvider& lex) {
  const auto n1 = text::word_count(p1);
  const auto n2 = text::word_count(p2);
  if (n1 == 0 || n2 == 0) throw std::invalid_argument("phrase_similarity: empty phrase");
  const auto h1 = phrase_head(p1);
  const auto h2 = phrase_head(p2);
  if (h1.empty() || h2.empty()) return 0.0;
  const double path = lex.path_similarity(h1, h2).value_or(0.0);
  return 2.0 * path / static_cast<double>(n1 + n2);
}

}  // namespace seeprivacy
