#pragma once

// Policy ingestion: HTML -> ordered heading/paragraph/list-item blocks,
// English filtering, and the (Heading Paragraph+)+ structure check.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "seeprivacy/errors.hpp"
#include "seeprivacy/language.hpp"
#include "seeprivacy/text.hpp"

namespace seeprivacy {

enum class BlockKind : std::uint8_t { heading, paragraph, list_item };

constexpr std::string_view to_string(BlockKind k) noexcept {
  switch (k) {
    case BlockKind::heading: return "heading";
    case BlockKind::paragraph: return "paragraph";
    case BlockKind::list_item: return "list_item";
  }
  return "paragraph";
}

struct Block {
  std::size_t index = 0;
  BlockKind kind = BlockKind::paragraph;
  std::optional<int> heading_level;
  std::string text;
  std::string language = "und";

  bool is_heading() const noexcept { return kind == BlockKind::heading; }

  friend bool operator==(const Block&, const Block&) = default;
};

enum class Structure : std::uint8_t { structured, flat };

constexpr std::string_view to_string(Structure s) noexcept {
  return s == Structure::structured ? "structured" : "flat";
}

struct RawPolicy {
  std::string html;
  std::optional<std::string> source_uri;
  std::optional<std::string> fetched_at;
};

struct PolicyDocument {
  std::vector<Block> blocks;
  Structure structure = Structure::flat;
  std::size_t word_count = 0;
};

// True iff the kind sequence matches (H P+)+, list items counting as P.
inline Structure detect_structure(const std::vector<Block>& blocks) noexcept {
  if (blocks.empty() || !blocks.front().is_heading()) return Structure::flat;
  bool need_paragraph = false;
  for (const auto& b : blocks) {
    if (b.is_heading()) {
      if (need_paragraph) return Structure::flat;
      need_paragraph = true;
    } else {
      need_paragraph = false;
    }
  }
  return need_paragraph ? Structure::flat : Structure::structured;
}

inline Structure detect_structure(const PolicyDocument& doc) noexcept {
  return detect_structure(doc.blocks);
}

// Re-sequences indices and recomputes structure and word count.
inline PolicyDocument make_document(std::vector<Block> blocks) {
  PolicyDocument doc;
  for (std::size_t i = 0; i < blocks.size(); ++i) blocks[i].index = i;
  for (const auto& b : blocks)
    if (is_english(b.language)) doc.word_count += text::word_count(b.text);
  doc.structure = detect_structure(blocks);
  doc.blocks = std::move(blocks);
  return doc;
}

inline void require_text(const PolicyDocument& doc) {
  if (doc.blocks.empty()) throw MalformedDocument("policy has no text-bearing block");
}

namespace detail {

inline bool tag_in(std::string_view tag, std::initializer_list<std::string_view> set) {
  return std::find(set.begin(), set.end(), tag) != set.end();
}

inline bool is_skipped_element(std::string_view t) {
  return tag_in(t, {"script", "style", "nav", "noscript", "head", "template", "svg", "iframe",
                    "object", "select", "button"});
}

inline bool is_void_element(std::string_view t) {
  return tag_in(t, {"br", "hr", "img", "input", "meta", "link", "area", "base", "col", "embed",
                    "source", "track", "wbr", "param"});
}

inline bool is_block_element(std::string_view t) {
  return tag_in(t, {"p",       "div",     "section",    "article", "main",  "header", "footer",
                    "aside",   "h1",      "h2",         "h3",      "h4",    "h5",     "h6",
                    "li",      "ul",      "ol",         "dl",      "dt",    "dd",     "table",
                    "thead",   "tbody",   "tfoot",      "tr",      "td",    "th",     "blockquote",
                    "pre",     "body",    "html",       "form",    "fieldset", "figure",
                    "figcaption", "address", "hr",      "caption", "summary", "details",
                    "center"});
}

inline int heading_level(std::string_view t) {
  if (t.size() == 2 && t[0] == 'h' && t[1] >= '1' && t[1] <= '6') return t[1] - '0';
  return 0;
}

inline std::optional<char32_t> named_entity(std::string_view name) {
  static const std::pair<std::string_view, char32_t> table[] = {
      {"amp", '&'},      {"lt", '<'},        {"gt", '>'},        {"quot", '"'},
      {"apos", '\''},    {"nbsp", 0xA0},     {"rsquo", 0x2019},  {"lsquo", 0x2018},
      {"rdquo", 0x201D}, {"ldquo", 0x201C},  {"ndash", 0x2013},  {"mdash", 0x2014},
      {"hellip", 0x2026},{"copy", 0xA9},     {"reg", 0xAE},      {"trade", 0x2122},
      {"bull", 0x2022},  {"middot", 0xB7},   {"eacute", 0xE9},   {"egrave", 0xE8},
      {"ecirc", 0xEA},   {"agrave", 0xE0},   {"aacute", 0xE1},   {"acirc", 0xE2},
      {"ccedil", 0xE7},  {"uuml", 0xFC},     {"ouml", 0xF6},     {"auml", 0xE4},
      {"szlig", 0xDF},   {"iacute", 0xED},   {"oacute", 0xF3},   {"uacute", 0xFA},
      {"ntilde", 0xF1},  {"Eacute", 0xC9},   {"euro", 0x20AC},   {"pound", 0xA3},
      {"sect", 0xA7},    {"laquo", 0xAB},    {"raquo", 0xBB},    {"shy", 0xAD},
      {"zwnj", 0x200C},  {"zwj", 0x200D},    {"ensp", 0x2002},   {"emsp", 0x2003},
      {"thinsp", 0x2009},
  };
  for (const auto& [n, cp] : table)
    if (n == name) return cp;
  return std::nullopt;
}

inline std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '&') {
      out.push_back(s[i]);
      continue;
    }
    const auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back('&');
      continue;
    }
    const auto body = s.substr(i + 1, semi - i - 1);
    std::optional<char32_t> cp;
    if (body.size() > 1 && body[0] == '#') {
      const bool hex = body[1] == 'x' || body[1] == 'X';
      const auto digits = body.substr(hex ? 2 : 1);
      if (!digits.empty()) {
        std::uint32_t v = 0;
        bool ok = true;
        for (char c : digits) {
          int d = -1;
          if (c >= '0' && c <= '9') d = c - '0';
          else if (hex && c >= 'a' && c <= 'f') d = c - 'a' + 10;
          else if (hex && c >= 'A' && c <= 'F') d = c - 'A' + 10;
          if (d < 0 || v > 0x10FFFF) { ok = false; break; }
          v = v * (hex ? 16 : 10) + static_cast<std::uint32_t>(d);
        }
        if (ok && v > 0 && v <= 0x10FFFF && !(v >= 0xD800 && v <= 0xDFFF)) cp = v;
      }
    } else {
      cp = named_entity(body);
    }
    if (cp) {
      text::append_utf8(out, *cp);
      i = semi;
    } else {
      out.push_back('&');
    }
  }
  return out;
}

inline std::string lower_tag(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (text::is_ascii_alpha(c) || text::is_ascii_digit(c) || c == '-' || c == ':')
      out.push_back(text::ascii_lower(c));
    else
      break;
  }
  return out;
}

// Finds the '>' closing a tag that starts at `from`, honouring quoted
// attribute values.
inline std::size_t tag_end(std::string_view s, std::size_t from) {
  char quote = 0;
  for (std::size_t i = from; i < s.size(); ++i) {
    const char c = s[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return i;
    }
  }
  return std::string_view::npos;
}

class HtmlBlockBuilder {
 public:
  void text(std::string_view t) {
    if (skip_depth_ == 0) buffer_.append(t);
  }

  void open(const std::string& tag) {
    if (skip_depth_ > 0 || is_skipped_element(tag)) {
      if (!is_void_element(tag)) {
        ++skip_depth_;
        skip_stack_.push_back(tag);
      }
      return;
    }
    if (tag == "br") {
      buffer_.push_back(' ');
      return;
    }
    if (is_block_element(tag)) {
      flush();
      // <p> and <li> close an open sibling of the same kind implicitly.
      if (tag == "p" || tag == "li" || heading_level(tag)) {
        auto it = std::find_if(stack_.rbegin(), stack_.rend(), [&](const std::string& t) {
          return t == tag || (tag == "p" && heading_level(t)) ||
                 (heading_level(tag) && (t == "p" || heading_level(t)));
        });
        const bool blocked = std::any_of(stack_.rbegin(), it, [](const std::string& t) {
          return t == "ul" || t == "ol" || t == "div" || t == "section" || t == "table";
        });
        if (it != stack_.rend() && !blocked) stack_.erase(std::prev(it.base()), stack_.end());
      }
    }
    if (!is_void_element(tag)) stack_.push_back(tag);
  }

  void close(const std::string& tag) {
    if (skip_depth_ > 0) {
      auto it = std::find(skip_stack_.rbegin(), skip_stack_.rend(), tag);
      if (it != skip_stack_.rend()) {
        const auto keep = static_cast<std::size_t>(std::distance(it, skip_stack_.rend())) - 1;
        skip_stack_.resize(keep);
        skip_depth_ = static_cast<int>(keep);
      }
      return;
    }
    auto it = std::find(stack_.rbegin(), stack_.rend(), tag);
    if (it == stack_.rend()) return;
    if (is_block_element(tag)) flush();
    stack_.erase(std::prev(it.base()), stack_.end());
  }

  std::vector<Block> finish() {
    flush();
    return std::move(blocks_);
  }

 private:
  void flush() {
    auto t = text::collapse_whitespace(decode_entities(buffer_));
    buffer_.clear();
    if (t.empty()) return;
    Block b;
    b.text = std::move(t);
    b.kind = BlockKind::paragraph;
    for (auto it = stack_.rbegin(); it != stack_.rend(); ++it) {
      if (int lvl = heading_level(*it)) {
        b.kind = BlockKind::heading;
        b.heading_level = lvl;
        break;
      }
      if (*it == "li") {
        b.kind = BlockKind::list_item;
        break;
      }
      if (*it == "p") break;
    }
    blocks_.push_back(std::move(b));
  }

  std::vector<std::string> stack_;
  std::vector<std::string> skip_stack_;
  int skip_depth_ = 0;
  std::string buffer_;
  std::vector<Block> blocks_;
};

}  // namespace detail

// Headings h1-h6, paragraphs, list items and text-bearing container leaves in
// document order. Script, style, nav and head content is dropped. Invalid
// UTF-8 is replaced, not rejected.
inline PolicyDocument parse_html(const RawPolicy& raw) {
  const std::string html = text::sanitize_utf8(raw.html);
  const std::string_view s = html;
  detail::HtmlBlockBuilder builder;
  std::size_t i = 0;
  while (i < s.size()) {
    const auto lt = s.find('<', i);
    if (lt == std::string_view::npos) {
      builder.text(s.substr(i));
      break;
    }
    builder.text(s.substr(i, lt - i));
    if (s.compare(lt, 4, "<!--") == 0) {
      const auto end = s.find("-->", lt + 4);
      i = end == std::string_view::npos ? s.size() : end + 3;
      continue;
    }
    if (s.compare(lt, 9, "<![CDATA[") == 0) {
      const auto end = s.find("]]>", lt + 9);
      builder.text(s.substr(lt + 9, (end == std::string_view::npos ? s.size() : end) - lt - 9));
      i = end == std::string_view::npos ? s.size() : end + 3;
      continue;
    }
    if (lt + 1 < s.size() && (s[lt + 1] == '!' || s[lt + 1] == '?')) {
      const auto end = s.find('>', lt);
      i = end == std::string_view::npos ? s.size() : end + 1;
      continue;
    }
    const bool closing = lt + 1 < s.size() && s[lt + 1] == '/';
    const auto name_at = lt + (closing ? 2 : 1);
    const auto tag = detail::lower_tag(s.substr(name_at));
    if (tag.empty() || !text::is_ascii_alpha(tag[0])) {
      builder.text("<");  // stray '<' is text
      i = lt + 1;
      continue;
    }
    const auto gt = detail::tag_end(s, name_at);
    if (gt == std::string_view::npos) break;
    const bool self_closing = !closing && gt > lt && s[gt - 1] == '/';
    if (closing) {
      builder.close(tag);
      i = gt + 1;
      continue;
    }
    builder.open(tag);
    if (self_closing && !detail::is_void_element(tag)) builder.close(tag);
    i = gt + 1;
    if (tag == "script" || tag == "style") {
      // Raw text: skip to the matching close tag.
      const std::string close = "</" + tag;
      std::size_t j = i;
      for (;;) {
        j = s.find("</", j);
        if (j == std::string_view::npos) break;
        if (text::iequals(s.substr(j, close.size()), close)) break;
        j += 2;
      }
      if (j == std::string_view::npos) {
        i = s.size();
      } else {
        const auto end = s.find('>', j);
        builder.close(tag);
        i = end == std::string_view::npos ? s.size() : end + 1;
      }
    }
  }
  auto doc = make_document(builder.finish());
  require_text(doc);
  return doc;
}

// Tags every block, drops non-English ones, re-sequences indices. May return
// an empty document; downstream stages reject it.
inline PolicyDocument filter_non_english(const PolicyDocument& doc,
                                         const LanguageDetector& detector) {
  std::vector<Block> kept;
  for (const auto& b : doc.blocks) {
    auto tagged = b;
    tagged.language = detector.detect(b.text);
    if (is_english(tagged.language)) kept.push_back(std::move(tagged));
  }
  return make_document(std::move(kept));
}

inline nlohmann::json block_to_json(const Block& b) {
  return {{"index", b.index},
          {"kind", to_string(b.kind)},
          {"level", b.heading_level ? nlohmann::json(*b.heading_level) : nlohmann::json(nullptr)},
          {"text", b.text},
          {"language", b.language}};
}

// One JSON record per line, in block order.
inline std::string document_to_jsonl(const PolicyDocument& doc) {
  std::string out;
  for (const auto& b : doc.blocks) out += block_to_json(b).dump() + "\n";
  return out;
}

}  // namespace seeprivacy
