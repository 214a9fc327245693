#pragma once

// Rule-based noun chunking: (determiner | possessive | number)* (adjective |
// noun)* noun, tagged with a small part-of-speech lexicon plus suffix rules.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "seeprivacy/errors.hpp"
#include "seeprivacy/text.hpp"

namespace seeprivacy {

struct NounChunk {
  std::string text;
  std::string head;
  Span span;  // within the sentence

  friend bool operator==(const NounChunk&, const NounChunk&) = default;
};

class NounChunkerPort {
 public:
  virtual ~NounChunkerPort() = default;
  virtual std::vector<NounChunk> chunks(std::string_view sentence) const = 0;
};

enum class Pos : std::uint8_t { det, poss, pron, num, adj, noun, verb, aux, adv, adp, conj, part };

class PosLexicon {
 public:
  static PosLexicon builtin() {
    PosLexicon lex;
    const auto add = [&](Pos p, std::initializer_list<std::string_view> words) {
      for (auto w : words) lex.tags_[std::string(w)] = p;
    };
    add(Pos::det, {"the", "a", "an", "this", "that", "these", "those", "every", "each", "any",
                   "some", "all", "no", "such", "another", "certain", "both", "either",
                   "neither", "several", "many", "much", "few", "more", "most", "other"});
    add(Pos::poss, {"your", "our", "their", "his", "her", "its", "my"});
    add(Pos::pron, {"we", "you", "they", "it", "i", "he", "she", "us", "them", "me", "him",
                    "who", "whom", "which", "what", "whose", "yours", "ours", "theirs",
                    "itself", "yourself", "themselves", "ourselves", "something",
                    "anything", "nothing", "everything", "someone", "anyone"});
    add(Pos::aux, {"is", "are", "was", "were", "be", "been", "being", "am", "do", "does", "did",
                   "have", "has", "had", "may", "might", "can", "could", "will", "would",
                   "shall", "should", "must"});
    add(Pos::verb, {"collect", "collects", "collected", "use", "uses", "used", "share",
                    "shares", "shared", "access", "accesses", "accessed", "store", "stores",
                    "stored", "process", "processes", "processed", "disclose", "discloses",
                    "disclosed", "obtain", "obtains", "obtained", "receive", "receives",
                    "received", "transfer", "transfers", "transferred", "provide", "provides",
                    "provided", "sell", "sells", "sold", "gather", "gathers", "gathered",
                    "request", "requests", "requested", "record", "records", "recorded",
                    "retain", "retains", "retained", "allow", "allows", "enable", "enables",
                    "include", "includes", "contain", "contains", "help", "helps", "improve",
                    "send", "sends", "make", "makes", "take", "takes", "give", "gives",
                    "enter", "enters", "choose", "create", "creates", "protect", "keep",
                    "keeps", "delete", "deletes", "update", "updates", "ask", "asks",
                    "know", "see", "visit", "contact", "pay", "upload", "uploads", "let",
                    "identify", "display", "detect", "require", "requires", "need",
                    "needs", "operate", "personalize", "analyze", "combine", "verify"});
    add(Pos::adv, {"not", "also", "only", "when", "where", "how", "why", "then", "there",
                   "here", "however", "always", "never", "often", "automatically",
                   "directly", "generally", "approximately", "just", "even", "still",
                   "again", "very", "too", "so", "as"});
    add(Pos::adp, {"of", "in", "on", "at", "by", "for", "with", "about", "from", "to", "into",
                   "through", "during", "including", "without", "within", "under", "over",
                   "between", "among", "after", "before", "via", "per", "upon", "across",
                   "against", "toward", "towards", "like"});
    add(Pos::conj, {"and", "or", "but", "nor", "if", "because", "while", "unless", "whether",
                    "although", "than", "once", "until", "since"});
    add(Pos::part, {"'s", "’s"});
    add(Pos::adj, {"personal", "precise", "current", "approximate", "exact", "general",
                   "physical", "postal", "mobile", "social", "financial", "private", "public",
                   "real", "full", "first", "last", "given", "family", "third", "new", "own",
                   "various", "necessary", "certain", "relevant", "additional", "sensitive",
                   "geographic", "geographical", "digital", "electronic", "local", "legal",
                   "technical", "available", "optional", "specific", "such", "different",
                   "similar", "unique", "accurate", "coarse", "fine", "residential",
                   "billing", "shipping", "mailing", "contact", "account"});
    add(Pos::noun, {"information", "data", "name", "location", "address", "phone", "number",
                    "email", "profile", "account", "contacts", "camera", "photo", "photos",
                    "picture", "pictures", "image", "images", "video", "videos", "voice",
                    "microphone", "payment", "card", "company", "device", "devices", "app",
                    "service", "services", "user", "users", "whereabouts", "position",
                    "place", "birthday", "birth", "date", "age", "gender", "storage",
                    "gallery", "album", "media", "identifier", "identifiers", "cookie",
                    "cookies", "partners", "advertisers", "purposes", "purpose", "time",
                    "pic", "pics", "mike", "snapshot", "snapshots", "recording",
                    "recordings", "talk", "speech", "residence", "surname", "forename",
                    "book", "library", "scanner", "organization", "policy", "website",
                    "platform", "content", "settings", "permission", "permissions"});
    return lex;
  }

  // Rows of "word<TAB>TAG" with TAG one of DET POSS PRON NUM ADJ NOUN VERB AUX
  // ADV ADP CONJ PART; entries override the built-in table.
  void merge_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open part-of-speech lexicon " + path.string());
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream row(line);
      std::string word, tag;
      if (!std::getline(row, word, '\t') || !(row >> tag))
        throw Error("bad part-of-speech row: " + line);
      tags_[text::to_lower(word)] = parse_tag(tag);
    }
  }

  Pos tag(std::string_view token, bool sentence_initial) const {
    const auto lower = text::to_lower(token);
    if (auto it = tags_.find(lower); it != tags_.end()) return it->second;
    if (!lower.empty() && text::is_ascii_digit(lower[0])) return Pos::num;
    const auto ends = [&](std::string_view s) {
      return lower.size() > s.size() + 2 && lower.ends_with(s);
    };
    if (ends("ly")) return Pos::adv;
    if (ends("ed")) return Pos::verb;
    if (ends("ous") || ends("ful") || ends("ive") || ends("able") || ends("ible") ||
        ends("less") || ends("ic") || ends("al"))
      return Pos::adj;
    if (ends("ing")) return sentence_initial ? Pos::verb : Pos::noun;
    if (ends("ize") || ends("ise")) return Pos::verb;
    return Pos::noun;
  }

 private:
  static Pos parse_tag(std::string_view t) {
    static const std::pair<std::string_view, Pos> table[] = {
        {"DET", Pos::det},   {"POSS", Pos::poss}, {"PRON", Pos::pron}, {"NUM", Pos::num},
        {"ADJ", Pos::adj},   {"NOUN", Pos::noun}, {"VERB", Pos::verb}, {"AUX", Pos::aux},
        {"ADV", Pos::adv},   {"ADP", Pos::adp},   {"CONJ", Pos::conj}, {"PART", Pos::part},
    };
    for (const auto& [name, p] : table)
      if (name == t) return p;
    throw Error("unknown part-of-speech tag " + std::string(t));
  }

  std::unordered_map<std::string, Pos> tags_;
};

class RuleNounChunker final : public NounChunkerPort {
 public:
  explicit RuleNounChunker(PosLexicon lexicon = PosLexicon::builtin())
      : lexicon_(std::move(lexicon)) {}

  std::vector<NounChunk> chunks(std::string_view sentence) const override {
    struct Token {
      Span span;
      Pos pos;
      bool possessive;  // noun carrying a trailing 's
    };
    std::vector<Token> tokens;
    // Tokens are runs of letters, digits, hyphens and inner apostrophes; any
    // other byte separates tokens and breaks a chunk.
    std::vector<std::size_t> breaks;  // token indices preceded by punctuation
    std::size_t i = 0;
    bool punct_since_last = false;
    while (i < sentence.size()) {
      const char c = sentence[i];
      if (is_word_char(c)) {
        std::size_t j = i;
        while (j < sentence.size() &&
               (is_word_char(sentence[j]) ||
                (sentence[j] == '\'' && j + 1 < sentence.size() && is_word_char(sentence[j + 1]))))
          ++j;
        auto word = sentence.substr(i, j - i);
        bool possessive = false;
        if (word.size() > 2 && (word.ends_with("'s") || word.ends_with("'S"))) {
          possessive = true;
          word.remove_suffix(2);
        }
        if (punct_since_last) breaks.push_back(tokens.size());
        punct_since_last = false;
        const auto pos = lexicon_.tag(word, tokens.empty());
        tokens.push_back({{i, j}, possessive ? Pos::noun : pos, possessive});
        i = j;
      } else {
        if (text::space_at(sentence, i) == 0) punct_since_last = true;
        i += text::decode_utf8(sentence, i).len;
      }
    }
    const auto broken_before = [&](std::size_t k) {
      return std::find(breaks.begin(), breaks.end(), k) != breaks.end();
    };

    std::vector<NounChunk> out;
    std::size_t k = 0;
    while (k < tokens.size()) {
      std::size_t start = k;
      while (k < tokens.size() &&
             (tokens[k].pos == Pos::det || tokens[k].pos == Pos::poss || tokens[k].pos == Pos::num) &&
             (k == start || !broken_before(k)))
        ++k;
      std::size_t last_noun = tokens.size();
      std::size_t m = k;
      while (m < tokens.size() && (tokens[m].pos == Pos::adj || tokens[m].pos == Pos::noun) &&
             (m == start || !broken_before(m))) {
        if (tokens[m].pos == Pos::noun && !tokens[m].possessive) last_noun = m;
        ++m;
      }
      if (last_noun == tokens.size()) {
        k = std::max(m, start + 1);
        continue;
      }
      const Span span{tokens[start].span.begin, tokens[last_noun].span.end};
      const auto head_span = tokens[last_noun].span;
      out.push_back({std::string(sentence.substr(span.begin, span.size())),
                     std::string(sentence.substr(head_span.begin, head_span.size())), span});
      k = last_noun + 1;
    }
    return out;
  }

 private:
  static bool is_word_char(char c) {
    return text::is_ascii_alpha(c) || text::is_ascii_digit(c) || c == '-' ||
           static_cast<unsigned char>(c) >= 0x80;
  }

  PosLexicon lexicon_;
};

}  // namespace seeprivacy
