#pragma once

// The twelve privacy data types, their keyword lists and icon-class mappings,
// plus the two keyword-matching modes used by segment extraction and by the
// text-type fallback classifier.

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "seeprivacy/errors.hpp"
#include "seeprivacy/text.hpp"

namespace seeprivacy {

enum class DataType : std::uint8_t {
  Name,
  Birthday,
  Address,
  Phone,
  Email,
  Profile,
  Contacts,
  Location,
  Photos,
  Voices,
  FinancialInfo,
  SocialMedia,
};

inline constexpr std::size_t kDataTypeCount = 12;

inline constexpr std::array<DataType, kDataTypeCount> kAllDataTypes = {
    DataType::Name,     DataType::Birthday, DataType::Address,       DataType::Phone,
    DataType::Email,    DataType::Profile,  DataType::Contacts,      DataType::Location,
    DataType::Photos,   DataType::Voices,   DataType::FinancialInfo, DataType::SocialMedia,
};

constexpr std::size_t ordinal(DataType t) noexcept { return static_cast<std::size_t>(t); }

// Basic personally identifiable information: the first six types.
constexpr bool is_basic_pii(DataType t) noexcept { return ordinal(t) < 6; }

constexpr std::string_view to_string(DataType t) noexcept {
  constexpr std::array<std::string_view, kDataTypeCount> names = {
      "Name",     "Birthday", "Address",  "Phone",  "Email",         "Profile",
      "Contacts", "Location", "Photos",   "Voices", "FinancialInfo", "SocialMedia",
  };
  return names[ordinal(t)];
}

constexpr std::string_view display_name(DataType t) noexcept {
  constexpr std::array<std::string_view, kDataTypeCount> names = {
      "Name",     "Birthday", "Address", "Phone",  "Email",          "Profile",
      "Contacts", "Location", "Photos",  "Voices", "Financial info", "Social media",
  };
  return names[ordinal(t)];
}

namespace detail {
inline std::string squash_name(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '_' && c != '-') out.push_back(text::ascii_lower(c));
  return out;
}
}  // namespace detail

// Accepts the canonical name, the display name, or either with spaces,
// underscores or hyphens removed; case-insensitive.
inline std::optional<DataType> parse_data_type(std::string_view s) {
  const auto key = detail::squash_name(s);
  for (auto t : kAllDataTypes)
    if (key == detail::squash_name(to_string(t))) return t;
  return std::nullopt;
}

struct IconClass {
  int id = 0;
  std::string name;

  friend bool operator==(const IconClass&, const IconClass&) = default;
};

struct TaxonomyEntry {
  DataType data_type{};
  std::string description;
  std::vector<std::string> keywords;
  std::vector<IconClass> icon_classes;

  bool basic_pii() const noexcept { return is_basic_pii(data_type); }
};

enum class MatchMode : std::uint8_t { word_substring, string_ngram };

constexpr std::string_view to_string(MatchMode m) noexcept {
  return m == MatchMode::word_substring ? "word_substring" : "string_ngram";
}

struct KeywordHit {
  DataType data_type{};
  std::string keyword;
  Span span;
  MatchMode mode{};

  friend bool operator==(const KeywordHit&, const KeywordHit&) = default;
};

class Taxonomy {
 public:
  struct Keyword {
    DataType data_type;
    std::string text;
    MatchMode mode;
  };

  // Validates and takes ownership of exactly one entry per data type.
  explicit Taxonomy(std::vector<TaxonomyEntry> entries) {
    if (entries.size() != kDataTypeCount)
      throw TaxonomyError("taxonomy must hold exactly 12 data types, got " +
                          std::to_string(entries.size()));
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.data_type < b.data_type; });
    std::vector<int> icon_ids;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const auto& e = entries[i];
      const auto name = std::string(to_string(e.data_type));
      if (ordinal(e.data_type) != i) throw TaxonomyError("duplicate data type " + name);
      if (e.keywords.empty()) throw TaxonomyError(name + ": empty keyword list");
      for (std::size_t k = 0; k < e.keywords.size(); ++k) {
        const auto& kw = e.keywords[k];
        if (text::trim(kw).empty() || text::trim(kw).size() != kw.size())
          throw TaxonomyError(name + ": blank or padded keyword '" + kw + "'");
        if (kw != text::to_lower(kw)) throw TaxonomyError(name + ": keyword not lowercase: " + kw);
        if (std::find(e.keywords.begin(), e.keywords.begin() + static_cast<std::ptrdiff_t>(k),
                      kw) != e.keywords.begin() + static_cast<std::ptrdiff_t>(k))
          throw TaxonomyError(name + ": duplicate keyword " + kw);
      }
      for (const auto& ic : e.icon_classes) {
        if (std::find(icon_ids.begin(), icon_ids.end(), ic.id) != icon_ids.end())
          throw TaxonomyError("icon class " + std::to_string(ic.id) +
                              " mapped to more than one data type");
        icon_ids.push_back(ic.id);
      }
    }
    entries_ = std::move(entries);
    for (const auto& e : entries_)
      for (const auto& kw : e.keywords)
        keywords_.push_back({e.data_type, kw,
                             text::word_count(kw) >= 2 ? MatchMode::string_ngram
                                                       : MatchMode::word_substring});
  }

  const std::vector<TaxonomyEntry>& entries() const noexcept { return entries_; }
  const TaxonomyEntry& entry(DataType t) const { return entries_[ordinal(t)]; }
  const std::vector<Keyword>& keywords() const noexcept { return keywords_; }

  // Icon lookups; names compare case-insensitively with '_' equal to ' '.
  std::optional<std::pair<IconClass, DataType>> icon_class(int id) const {
    for (const auto& e : entries_)
      for (const auto& ic : e.icon_classes)
        if (ic.id == id) return std::pair{ic, e.data_type};
    return std::nullopt;
  }

  std::optional<std::pair<IconClass, DataType>> icon_class(std::string_view name) const {
    const auto key = detail::squash_name(name);
    for (const auto& e : entries_)
      for (const auto& ic : e.icon_classes)
        if (detail::squash_name(ic.name) == key) return std::pair{ic, e.data_type};
    return std::nullopt;
  }

  std::vector<IconClass> all_icon_classes() const {
    std::vector<IconClass> out;
    for (const auto& e : entries_)
      out.insert(out.end(), e.icon_classes.begin(), e.icon_classes.end());
    return out;
  }

 private:
  std::vector<TaxonomyEntry> entries_;
  std::vector<Keyword> keywords_;
};

inline Taxonomy load_default_taxonomy() {
  using T = DataType;
  return Taxonomy({
      {T::Name, "How a user refers to themselves",
       {"name", "first name", "last name", "full name", "real name", "surname", "family name",
        "given name"},
       {}},
      {T::Birthday, "A user's birthday",
       {"birthday", "date of birth", "birth date", "dob", "birth year"},
       {}},
      {T::Address, "A user's address",
       {"mailing address", "physical address", "postal address", "billing address",
        "shipping address", "residential address", "residence", "personal address"},
       {}},
      {T::Phone, "A user's phone number",
       {"phone", "phone number", "mobile", "mobile phone", "mobile number", "telephone",
        "telephone number", "call"},
       {{43, "Call"}}},
      {T::Email, "A user's email address",
       {"email", "e-mail", "email address", "e-mail address"},
       {{6, "Email"}}},
      {T::Profile, "A user's account information", {"profile", "account"}, {{49, "Avatar"}}},
      {T::Contacts, "A user's contact information, or the access to the contact permission",
       {"contacts", "phone-book", "phone book", "device's address book"},
       {{68, "Group"}, {3, "Follow"}}},
      {T::Location, "A user's location information, or the access to the location permission",
       {"location", "locate", "geography", "geo", "geo-location", "precision location"},
       {{40, "Location crosshair"}, {72, "Location"}}},
      {T::Photos, "A user's photos, videos, or the access to the camera permission",
       {"camera", "photo", "scan", "album", "picture", "gallery", "photo library", "storage",
        "image", "video", "scanner", "photograph"},
       {{42, "Photo"}, {56, "Videocam"}, {82, "Wallpaper"}}},
      {T::Voices, "A user's voices, recordings, or the access to the microphone permission",
       {"microphone", "voice", "mic", "speech", "talk"},
       {{91, "Microphone"}}},
      {T::FinancialInfo,
       "Information about a user's financial accounts, purchases, or transactions",
       {"credit card", "company", "companies", "organization", "organizations", "pay",
        "payment"},
       {{61, "Cart"}}},
      {T::SocialMedia, "A user's social media information, or the access to social media accounts",
       {"social media", "facebook", "twitter", "socialmedia", "share"},
       {{77, "Facebook"}, {89, "Twitter"}}},
  });
}

// Taxonomy document: {"data_types":[{"name","description","keywords":[...],
// "icon_classes":[{"id","name"}]}]}; all twelve types must be present.
inline Taxonomy taxonomy_from_json(const nlohmann::json& doc) {
  try {
    std::vector<TaxonomyEntry> entries;
    for (const auto& rec : doc.at("data_types")) {
      const auto name = rec.at("name").get<std::string>();
      const auto type = parse_data_type(name);
      if (!type) throw TaxonomyError("unknown data type '" + name + "'");
      TaxonomyEntry e;
      e.data_type = *type;
      e.description = rec.value("description", std::string{});
      e.keywords = rec.at("keywords").get<std::vector<std::string>>();
      if (rec.contains("icon_classes"))
        for (const auto& ic : rec.at("icon_classes"))
          e.icon_classes.push_back({ic.at("id").get<int>(), ic.at("name").get<std::string>()});
      entries.push_back(std::move(e));
    }
    return Taxonomy(std::move(entries));
  } catch (const nlohmann::json::exception& e) {
    throw TaxonomyError(std::string("taxonomy document: ") + e.what());
  }
}

inline nlohmann::json taxonomy_to_json(const Taxonomy& tax) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : tax.entries()) {
    nlohmann::json icons = nlohmann::json::array();
    for (const auto& ic : e.icon_classes) icons.push_back({{"id", ic.id}, {"name", ic.name}});
    arr.push_back({{"name", to_string(e.data_type)},
                   {"description", e.description},
                   {"keywords", e.keywords},
                   {"icon_classes", icons}});
  }
  return {{"data_types", arr}};
}

inline Taxonomy load_taxonomy_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw TaxonomyError("cannot open taxonomy file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw TaxonomyError(path.string() + ": " + e.what());
  }
  return taxonomy_from_json(doc);
}

// Stage-1 keyword search. One-word keywords match as substrings of
// whitespace-delimited words; longer keywords match as substrings of the whole
// text. Every occurrence is reported; hits are ordered by span, then data type,
// then keyword.
inline std::vector<KeywordHit> keyword_scan(std::string_view input, const Taxonomy& taxonomy) {
  std::vector<KeywordHit> hits;
  if (input.empty()) return hits;
  const std::string lower = text::to_lower(input);
  const std::string_view hay = lower;
  const auto words = text::word_spans(hay);

  for (const auto& kw : taxonomy.keywords()) {
    if (kw.mode == MatchMode::word_substring) {
      for (const auto& w : words) {
        const auto word = hay.substr(w.begin, w.size());
        for (auto pos = word.find(kw.text); pos != std::string_view::npos;
             pos = word.find(kw.text, pos + 1))
          hits.push_back({kw.data_type, kw.text,
                          {w.begin + pos, w.begin + pos + kw.text.size()}, kw.mode});
      }
    } else {
      for (auto pos = hay.find(kw.text); pos != std::string_view::npos;
           pos = hay.find(kw.text, pos + 1))
        hits.push_back({kw.data_type, kw.text, {pos, pos + kw.text.size()}, kw.mode});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const KeywordHit& a, const KeywordHit& b) {
    return std::tie(a.span, a.data_type, a.keyword) < std::tie(b.span, b.data_type, b.keyword);
  });
  return hits;
}

}  // namespace seeprivacy
