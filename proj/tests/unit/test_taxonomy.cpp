#include <gtest/gtest.h>

#include <random>
#include <set>

#include "seeprivacy/taxonomy.hpp"
#include "support/oracles.hpp"

using namespace seeprivacy;

namespace {

const Taxonomy& tax() {
  static const Taxonomy t = load_default_taxonomy();
  return t;
}

std::vector<std::string> all_keywords() {
  std::vector<std::string> out;
  for (const auto& k : tax().keywords()) out.push_back(k.text);
  return out;
}

}  // namespace

TEST(Taxonomy, HasTwelveTypesWithSixBasicPii) {
  ASSERT_EQ(tax().entries().size(), 12u);
  std::size_t basic = 0;
  for (const auto& e : tax().entries()) basic += e.basic_pii();
  EXPECT_EQ(basic, 6u);
  EXPECT_TRUE(is_basic_pii(DataType::Name));
  EXPECT_TRUE(is_basic_pii(DataType::Profile));
  EXPECT_FALSE(is_basic_pii(DataType::Contacts));
  EXPECT_FALSE(is_basic_pii(DataType::SocialMedia));
}

TEST(Taxonomy, KeywordsAreLowercaseAndUniquePerType) {
  for (const auto& e : tax().entries()) {
    EXPECT_FALSE(e.keywords.empty()) << to_string(e.data_type);
    std::set<std::string> seen;
    for (const auto& k : e.keywords) {
      EXPECT_EQ(k, oracle::lower_ascii(k));
      EXPECT_TRUE(seen.insert(k).second) << k;
    }
  }
}

TEST(Taxonomy, IconClassesMapToTheirDataType) {
  EXPECT_EQ(tax().icon_class("Microphone")->second, DataType::Voices);
  EXPECT_EQ(tax().icon_class("Location crosshair")->second, DataType::Location);
  EXPECT_EQ(tax().icon_class("location_crosshair")->second, DataType::Location);
  EXPECT_EQ(tax().icon_class(72)->second, DataType::Location);
  EXPECT_EQ(tax().icon_class("Cart")->second, DataType::FinancialInfo);
  EXPECT_EQ(tax().icon_class("Facebook")->second, DataType::SocialMedia);
  EXPECT_FALSE(tax().icon_class("Check"));
  EXPECT_FALSE(tax().icon_class(9999));
  EXPECT_EQ(tax().all_icon_classes().size(), 14u);
  EXPECT_TRUE(tax().entry(DataType::Name).icon_classes.empty());
}

TEST(Taxonomy, ParseDataTypeAcceptsDisplayForms) {
  EXPECT_EQ(parse_data_type("FinancialInfo"), DataType::FinancialInfo);
  EXPECT_EQ(parse_data_type("financial info"), DataType::FinancialInfo);
  EXPECT_EQ(parse_data_type("social_media"), DataType::SocialMedia);
  EXPECT_EQ(parse_data_type("LOCATION"), DataType::Location);
  EXPECT_FALSE(parse_data_type("Weather"));
  for (auto t : kAllDataTypes) {
    EXPECT_EQ(parse_data_type(to_string(t)), t);
    EXPECT_EQ(parse_data_type(display_name(t)), t);
  }
}

TEST(Taxonomy, JsonRoundTrip) {
  const auto j = taxonomy_to_json(tax());
  const auto back = taxonomy_from_json(j);
  EXPECT_EQ(taxonomy_to_json(back), j);
}

TEST(Taxonomy, RejectsInvalidDocuments) {
  auto j = taxonomy_to_json(tax());
  auto missing = j;
  missing["data_types"].erase(missing["data_types"].begin());
  EXPECT_THROW(taxonomy_from_json(missing), TaxonomyError);

  auto empty_kw = j;
  empty_kw["data_types"][0]["keywords"] = nlohmann::json::array();
  EXPECT_THROW(taxonomy_from_json(empty_kw), TaxonomyError);

  auto upper = j;
  upper["data_types"][0]["keywords"][0] = "Name";
  EXPECT_THROW(taxonomy_from_json(upper), TaxonomyError);

  auto dup_icon = j;
  dup_icon["data_types"][0]["icon_classes"] = {{{"id", 91}, {"name", "Microphone"}}};
  EXPECT_THROW(taxonomy_from_json(dup_icon), TaxonomyError);

  auto unknown = j;
  unknown["data_types"][0]["name"] = "Weather";
  EXPECT_THROW(taxonomy_from_json(unknown), TaxonomyError);
}

TEST(KeywordScan, JoinedWordStillMatches) {
  // Text extracted from adjacent HTML elements can lose the space.
  const std::string text = "We may collect your locationWe share it with partners.";
  const auto hits = keyword_scan(text, tax());
  bool found = false;
  for (const auto& h : hits)
    if (h.data_type == DataType::Location && h.keyword == "location") {
      found = true;
      EXPECT_EQ(text.substr(h.span.begin, h.span.size()), "location");
      EXPECT_EQ(h.span.begin, 20u);
    }
  EXPECT_TRUE(found);
}

TEST(KeywordScan, CaseInsensitiveWithByteOffsets) {
  const std::string text = "Your EMAIL Address";
  const auto hits = keyword_scan(text, tax());
  ASSERT_FALSE(hits.empty());
  std::set<std::string> kws;
  for (const auto& h : hits) {
    EXPECT_EQ(h.data_type, DataType::Email);
    kws.insert(h.keyword);
    EXPECT_EQ(oracle::lower_ascii(text.substr(h.span.begin, h.span.size())), h.keyword);
  }
  EXPECT_EQ(kws, (std::set<std::string>{"email", "email address"}));
}

TEST(KeywordScan, MultiWordKeywordsNeedTheSpace) {
  EXPECT_TRUE(keyword_scan("Enter your date of birth", tax()).size() >= 1);
  for (const auto& h : keyword_scan("dateofbirth", tax())) EXPECT_NE(h.keyword, "date of birth");
  EXPECT_TRUE(keyword_scan("Welcome back!", tax()).empty());
  EXPECT_TRUE(keyword_scan("", tax()).empty());
}

TEST(KeywordScan, AgreesWithBruteForceOnRandomText) {
  std::mt19937 rng(20240611);
  const auto keywords = all_keywords();
  const std::vector<std::string> filler = {"we", "your", "the", "and", "of", "to", "data", "app",
                                           "x", "Q", "with", "  ", ",", "."};
  std::uniform_int_distribution<int> len(0, 14), coin(0, 3), pick_kw(0, static_cast<int>(keywords.size()) - 1),
      pick_fill(0, static_cast<int>(filler.size()) - 1), upper(0, 1);
  for (int round = 0; round < 300; ++round) {
    std::string text;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
      std::string piece = coin(rng) == 0 ? keywords[pick_kw(rng)] : filler[pick_fill(rng)];
      if (upper(rng))
        for (auto& c : piece) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (!text.empty() && coin(rng) != 0) text += ' ';
      text += piece;
    }
    std::vector<oracle::Hit> got;
    for (const auto& h : keyword_scan(text, tax())) got.push_back({h.span.begin, h.span.end, h.keyword});
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, oracle::keyword_hits(text, keywords)) << text;
  }
}
