#pragma once

// Independent reference implementations used to check the library. They
// share no code with include/seeprivacy beyond plain data types.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace oracle {

// ---- text ----------------------------------------------------------------

inline std::u32string utf8_to_u32(const std::string& s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    const auto c = static_cast<unsigned char>(s[i]);
    int n = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : 4;
    char32_t cp = n == 1 ? c : n == 2 ? (c & 0x1F) : n == 3 ? (c & 0x0F) : (c & 0x07);
    for (int k = 1; k < n; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += n;
  }
  return out;
}

inline std::string lower_ascii(std::string s) {
  for (auto& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

// ---- segment similarity ----------------------------------------------------

inline std::vector<std::u32string> phrases(const std::string& s) {
  std::vector<std::u32string> out;
  std::string cur;
  const auto flush = [&] {
    const auto b = cur.find_first_not_of(" \t");
    if (b != std::string::npos) {
      const auto e = cur.find_last_not_of(" \t");
      out.push_back(utf8_to_u32(lower_ascii(cur.substr(b, e - b + 1))));
    }
    cur.clear();
  };
  for (char c : s) {
    if (std::string(".,;:!?\n\r").find(c) != std::string::npos)
      flush();
    else
      cur.push_back(c);
  }
  flush();
  return out;
}

// Longest common substring by trying every substring of `a`, longest first.
inline std::size_t brute_lcs(const std::u32string& a, const std::u32string& b) {
  for (std::size_t len = std::min(a.size(), b.size()); len > 0; --len)
    for (std::size_t i = 0; i + len <= a.size(); ++i)
      if (b.find(a.substr(i, len)) != std::u32string::npos) return len;
  return 0;
}

// Double sum accumulated in long double.
inline double segment_sim(const std::string& ret, const std::string& gt) {
  const auto p = phrases(ret), q = phrases(gt);
  long double sum = 0;
  for (const auto& a : p)
    for (const auto& b : q)
      sum += static_cast<long double>(brute_lcs(a, b)) / static_cast<long double>(std::min(a.size(), b.size()));
  return static_cast<double>(sum / static_cast<long double>(std::min(p.size(), q.size())));
}

// ---- keyword scan ----------------------------------------------------------

struct Hit {
  std::size_t begin, end;
  std::string keyword;
  bool operator<(const Hit& o) const {
    return std::tie(begin, end, keyword) < std::tie(o.begin, o.end, o.keyword);
  }
  bool operator==(const Hit& o) const = default;
};

// Every occurrence of every keyword in the lowercased text. A keyword without
// spaces that occurs anywhere necessarily lies inside one word.
inline std::vector<Hit> keyword_hits(const std::string& text, const std::vector<std::string>& keywords) {
  const auto lower = lower_ascii(text);
  std::vector<Hit> out;
  for (const auto& kw : keywords)
    for (std::size_t i = 0; i + kw.size() <= lower.size(); ++i)
      if (lower.compare(i, kw.size(), kw) == 0) out.push_back({i, i + kw.size(), kw});
  std::sort(out.begin(), out.end());
  return out;
}

// ---- document structure ------------------------------------------------------

// 'H' for headings, 'P' for paragraphs and list items.
inline bool structured(const std::string& kinds) {
  static const std::regex grammar("^(HP+)+$");
  return std::regex_match(kinds, grammar);
}

// ---- WordNet path similarity ---------------------------------------------------

// All-pairs hop distances over the undirected hypernym graph (Floyd-Warshall)
// plus first-sense lookup from index.noun. Valid as a path-similarity oracle
// for tree-shaped hypernym graphs, where the undirected shortest path runs
// through the lowest common ancestor.
class WordNetOracle {
 public:
  explicit WordNetOracle(const std::filesystem::path& dir) {
    std::ifstream data(dir / "data.noun");
    std::string line;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    while (std::getline(data, line)) {
      if (line.empty() || line[0] == ' ') continue;
      std::istringstream in(line);
      std::uint32_t offset;
      std::string lex, pos, wcnt_hex;
      in >> offset >> lex >> pos >> wcnt_hex;
      const auto wcnt = std::stoul(wcnt_hex, nullptr, 16);
      for (unsigned long k = 0; k < wcnt; ++k) {
        std::string word, lexid;
        in >> word >> lexid;
      }
      std::size_t pcnt;
      in >> pcnt;
      node(offset);
      for (std::size_t k = 0; k < pcnt; ++k) {
        std::string sym, pos2, st;
        std::uint32_t target;
        in >> sym >> target >> pos2 >> st;
        if (sym == "@" || sym == "@i") edges.emplace_back(offset, target);
      }
    }
    const auto n = ids_.size();
    constexpr auto inf = std::numeric_limits<std::size_t>::max() / 4;
    dist_.assign(n, std::vector<std::size_t>(n, inf));
    for (std::size_t i = 0; i < n; ++i) dist_[i][i] = 0;
    for (auto [a, b] : edges) {
      const auto i = node(a), j = node(b);
      dist_[i][j] = dist_[j][i] = 1;
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          dist_[i][j] = std::min(dist_[i][j], dist_[i][k] + dist_[k][j]);

    std::ifstream index(dir / "index.noun");
    while (std::getline(index, line)) {
      if (line.empty() || line[0] == ' ') continue;
      std::istringstream in(line);
      std::string lemma, pos;
      std::size_t synset_cnt, p_cnt;
      in >> lemma >> pos >> synset_cnt >> p_cnt;
      for (std::size_t k = 0; k < p_cnt; ++k) {
        std::string sym;
        in >> sym;
      }
      std::size_t sense_cnt, tagged;
      in >> sense_cnt >> tagged;
      std::uint32_t first;
      in >> first;
      first_sense_[lemma] = first;
      lemmas_.push_back(lemma);
    }
  }

  const std::vector<std::string>& lemmas() const { return lemmas_; }

  std::optional<double> path_sim(const std::string& a, const std::string& b) const {
    const auto sa = first_sense_.find(lower_ascii(a));
    const auto sb = first_sense_.find(lower_ascii(b));
    if (sa == first_sense_.end() || sb == first_sense_.end()) return std::nullopt;
    const auto d = dist_[ids_.at(sa->second)][ids_.at(sb->second)];
    if (d >= std::numeric_limits<std::size_t>::max() / 4) return 0.0;
    return 1.0 / (1.0 + static_cast<double>(d));
  }

  // 2 * path_sim(last word of p1, last word of p2) / (words(p1) + words(p2)).
  double phrase_sim(const std::string& p1, const std::string& p2) const {
    const auto w1 = words(p1), w2 = words(p2);
    const auto s = path_sim(w1.back(), w2.back()).value_or(0.0);
    return 2.0 * s / static_cast<double>(w1.size() + w2.size());
  }

 private:
  static std::vector<std::string> words(const std::string& p) {
    std::istringstream in(p);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
  }

  std::size_t node(std::uint32_t offset) {
    return ids_.emplace(offset, ids_.size()).first->second;
  }

  std::map<std::uint32_t, std::size_t> ids_;
  std::vector<std::vector<std::size_t>> dist_;
  std::map<std::string, std::uint32_t> first_sense_;
  std::vector<std::string> lemmas_;
};

}  // namespace oracle
