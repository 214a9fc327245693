#pragma once

// English gate for policy blocks. The built-in detector scores letter
// trigrams against per-language frequency profiles (naive Bayes) and assigns
// non-Latin scripts by code-point range.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seeprivacy/errors.hpp"
#include "seeprivacy/text.hpp"

namespace seeprivacy {

class LanguageDetector {
 public:
  virtual ~LanguageDetector() = default;
  // BCP-47-style primary tag, or "und" when undecidable.
  virtual std::string detect(std::string_view text) const = 0;
};

// "und" is kept: short headings carry too little signal to reject.
inline bool is_english(std::string_view tag) noexcept {
  return tag == "en" || tag == "und" || tag.starts_with("en-");
}

class TrigramLanguageDetector final : public LanguageDetector {
 public:
  // Rows of "lang<TAB>trigram<TAB>count"; '_' in a trigram stands for a space.
  static TrigramLanguageDetector from_tsv(std::string_view tsv) {
    TrigramLanguageDetector d;
    std::istringstream in{std::string(tsv)};
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      std::string lang, tri;
      double count = 0;
      if (!std::getline(row, lang, '\t') || !std::getline(row, tri, '\t') || !(row >> count))
        throw Error("bad trigram profile row: " + line);
      for (auto& c : tri)
        if (c == '_') c = ' ';
      auto& p = d.profiles_[lang];
      p.counts[tri] += count;
      p.total += count;
    }
    if (d.profiles_.empty()) throw Error("empty trigram profile table");
    return d;
  }

  static TrigramLanguageDetector from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open trigram profiles " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return from_tsv(ss.str());
  }

  static const TrigramLanguageDetector& builtin() {
    static const TrigramLanguageDetector d = from_tsv(
#include "seeprivacy/detail/trigram_profiles.inc"
    );
    return d;
  }

  std::string detect(std::string_view input) const override {
    std::size_t latin = 0, other = 0;
    std::map<std::string, std::size_t> scripts;
    std::vector<std::u32string> words;
    std::u32string word;
    const auto flush = [&] {
      if (!word.empty()) words.push_back(U" " + word + U" ");
      word.clear();
    };
    for (std::size_t i = 0; i < input.size();) {
      const auto d = text::decode_utf8(input, i);
      const auto script = script_of(d.cp);
      if (script == "latin") {
        ++latin;
        word.push_back(lower_latin(d.cp));
      } else {
        flush();
        if (!script.empty()) {
          ++other;
          ++scripts[std::string(script)];
        }
      }
      i += d.len;
    }
    flush();
    if (other > latin) {
      auto best = scripts.begin();
      for (auto it = scripts.begin(); it != scripts.end(); ++it)
        if (it->second > best->second) best = it;
      return best->first;
    }
    if (latin < kMinLetters) return "und";

    std::vector<std::string> grams;
    for (const auto& w : words)
      for (std::size_t k = 0; k + 3 <= w.size(); ++k) {
        std::string g;
        for (std::size_t m = k; m < k + 3; ++m) text::append_utf8(g, w[m]);
        grams.push_back(std::move(g));
      }

    std::string best_lang = "und";
    double best = -INFINITY;
    for (const auto& [lang, profile] : profiles_) {
      double score = 0;
      const double floor = std::log(0.5 / profile.total);
      for (const auto& g : grams) {
        auto it = profile.counts.find(g);
        score += it == profile.counts.end() ? floor : std::log(it->second / profile.total);
      }
      if (score > best) {
        best = score;
        best_lang = lang;
      }
    }
    return best_lang;
  }

 private:
  static constexpr std::size_t kMinLetters = 12;

  struct Profile {
    std::unordered_map<std::string, double> counts;
    double total = 0;
  };

  static char32_t lower_latin(char32_t cp) noexcept {
    if (cp >= 'A' && cp <= 'Z') return cp + 32;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 32;
    return cp;
  }

  // "latin" for Latin letters, another script tag for letters of other
  // scripts, "" for anything that is not a letter.
  static std::string_view script_of(char32_t cp) noexcept {
    if ((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z')) return "latin";
    if (cp >= 0xC0 && cp <= 0x24F && cp != 0xD7 && cp != 0xF7) return "latin";
    if (cp >= 0x370 && cp <= 0x3FF) return "el";
    if (cp >= 0x400 && cp <= 0x4FF) return "ru";
    if (cp >= 0x590 && cp <= 0x5FF) return "he";
    if (cp >= 0x600 && cp <= 0x6FF) return "ar";
    if (cp >= 0x900 && cp <= 0x97F) return "hi";
    if (cp >= 0xE00 && cp <= 0xE7F) return "th";
    if (cp >= 0x3040 && cp <= 0x30FF) return "ja";
    if (cp >= 0xAC00 && cp <= 0xD7AF) return "ko";
    if ((cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF)) return "zh";
    return "";
  }

  std::map<std::string, Profile> profiles_;
};

}  // namespace seeprivacy
