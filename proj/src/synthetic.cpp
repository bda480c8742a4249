/*
 * Copyright (c) 2026, The webtab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "webtab/synthetic.hpp"

#include <array>
#include <cstdio>
#include <functional>
#include <string>
#include <string_view>

#include "webtab/error.hpp"
#include "webtab/rng.hpp"

namespace webtab {

namespace {

template <std::size_t N>
using Words = std::array<std::string_view, N>;

constexpr Words<24> kFirstNames = {"james", "maria", "robert", "linda", "michael", "susan",
                                   "david", "karen", "daniel", "nancy", "paul", "laura",
                                   "mark", "emily", "george", "helen", "peter", "anna",
                                   "kevin", "sarah", "brian", "julia", "edward", "alice"};
constexpr Words<24> kLastNames = {"smith", "johnson", "brown", "garcia", "miller", "davis",
                                  "wilson", "moore", "taylor", "thomas", "martin", "clark",
                                  "lewis", "walker", "hall", "young", "king", "wright",
                                  "scott", "green", "baker", "adams", "nelson", "hill"};
constexpr Words<20> kCities = {"springfield", "riverside", "franklin", "greenville", "bristol",
                               "clinton", "fairview", "salem", "madison", "georgetown",
                               "arlington", "ashland", "dover", "oxford", "milton",
                               "newport", "jackson", "burlington", "manchester", "lexington"};
constexpr Words<12> kRegions = {"north", "south", "east", "west", "central", "coastal",
                                "northern", "southern", "eastern", "western", "upper", "lower"};
constexpr Words<12> kRegionKinds = {"region", "district", "county", "province", "zone", "sector",
                                    "division", "territory", "area", "branch", "market", "unit"};
constexpr Words<16> kProducts = {"widget", "gadget", "bracket", "sprocket", "valve", "gear",
                                 "lever", "spring", "bolt", "hinge", "pulley", "clamp",
                                 "nozzle", "filter", "sensor", "relay"};
constexpr Words<8> kGrades = {"standard", "deluxe", "basic", "premium", "compact", "heavy",
                              "light", "industrial"};
constexpr Words<8> kStatuses = {"active", "pending", "closed", "on hold", "shipped", "cancelled",
                                "in review", "approved"};
constexpr Words<10> kTeams = {"falcons", "tigers", "rovers", "wolves", "eagles", "bears",
                              "hornets", "sharks", "lions", "comets"};
constexpr Words<6> kMetrics = {"sales", "revenue", "output", "growth", "share", "volume"};

// Shared prose vocabulary for free-text cells.
constexpr Words<96> kProse = {
    "the", "a", "our", "this", "we", "you", "they", "it", "is", "are", "was", "be", "have",
    "has", "will", "can", "more", "about", "welcome", "please", "read", "latest", "news",
    "story", "page", "site", "home", "contact", "us", "join", "community", "today", "new",
    "best", "free", "click", "here", "learn", "information", "services", "help", "find",
    "everything", "need", "every", "day", "people", "world", "great", "time", "make", "sure",
    "visit", "again", "soon", "thanks", "for", "visiting", "share", "with", "friends", "and",
    "family", "all", "rights", "reserved", "privacy", "policy", "terms", "use", "sign", "up",
    "newsletter", "follow", "on", "social", "media", "discover", "ideas", "tips", "guide",
    "stories", "from", "around", "local", "events", "photos", "videos", "blog", "posts",
    "comments", "archive", "menu", "search"};

constexpr Words<12> kRelationalHeaders = {"name", "city", "date", "price", "status", "team",
                                          "product", "quantity", "code", "email", "country",
                                          "category"};
constexpr Words<16> kEntityAttributes = {
    "full name", "born", "birthplace", "height", "weight", "nationality", "occupation",
    "years active", "spouse", "languages", "website", "team", "position", "awards", "education",
    "net worth"};
constexpr Words<16> kCountries = {"canada", "mexico", "brazil", "france", "germany", "spain",
                                  "italy", "japan", "india", "kenya", "egypt", "norway",
                                  "sweden", "chile", "peru", "ireland"};
constexpr Words<12> kCategories = {"hardware", "software", "outdoor", "kitchen", "garden",
                                   "office", "toys", "books", "music", "sports", "health",
                                   "travel"};
constexpr Words<8> kUnits = {"kg", "boxes", "pallets", "crates", "liters", "pieces", "rolls",
                             "sets"};
constexpr Words<8> kCurrencies = {"usd", "eur", "gbp", "cad", "aud", "chf", "jpy", "sek"};
constexpr Words<10> kOccupations = {"actor", "singer", "engineer", "author", "painter",
                                    "architect", "chemist", "director", "pilot", "athlete"};
constexpr Words<10> kLanguages = {"english", "french", "spanish", "german", "italian",
                                  "portuguese", "dutch", "polish", "greek", "turkish"};

template <std::size_t N>
std::string_view pick(Rng& rng, const Words<N>& words) {
  return words[rng.below(N)];
}

std::string digits(Rng& rng, std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += static_cast<char>('0' + rng.below(10));
  return out;
}

std::string date(Rng& rng) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02u-%02u-%04u", static_cast<unsigned>(1 + rng.below(12)),
                static_cast<unsigned>(1 + rng.below(28)),
                static_cast<unsigned>(1990 + rng.below(30)));
  return buf;
}

template <std::size_t N, std::size_t M>
std::string pair(Rng& rng, const Words<N>& a, const Words<M>& b) {
  return std::string(pick(rng, a)) + " " + std::string(pick(rng, b));
}

// One cell value for a relational column.
std::string column_value(Rng& rng, std::string_view header) {
  if (header == "name") return pair(rng, kFirstNames, kLastNames);
  if (header == "city") return pair(rng, kCities, kCountries);
  if (header == "date") return date(rng);
  if (header == "price") return "$" + digits(rng, 1 + rng.below(3)) + "." + digits(rng, 2) + " " + std::string(pick(rng, kCurrencies));
  if (header == "status") return std::string(pick(rng, kStatuses));
  if (header == "team") return pair(rng, kCities, kTeams);
  if (header == "product") return pair(rng, kGrades, kProducts);
  if (header == "quantity") return digits(rng, 1 + rng.below(3)) + " " + std::string(pick(rng, kUnits));
  if (header == "code") return "sku-" + digits(rng, 4);
  if (header == "email") return std::string(pick(rng, kFirstNames)) + "@" + std::string(pick(rng, kLastNames)) + ".com";
  if (header == "country") return std::string(pick(rng, kCountries));
  return pair(rng, kCategories, kGrades);
}

std::string entity_value(Rng& rng, std::string_view attribute) {
  if (attribute == "full name" || attribute == "spouse") return pair(rng, kFirstNames, kLastNames);
  if (attribute == "born") return date(rng) + " " + std::string(pick(rng, kCities));
  if (attribute == "birthplace") return pair(rng, kCities, kCountries);
  if (attribute == "height") return digits(rng, 1) + "." + digits(rng, 2) + " m";
  if (attribute == "weight") return digits(rng, 2) + " kg";
  if (attribute == "nationality") return std::string(pick(rng, kCountries));
  if (attribute == "occupation") return pair(rng, kOccupations, kOccupations);
  if (attribute == "languages") return pair(rng, kLanguages, kLanguages);
  if (attribute == "website") return std::string(pick(rng, kLastNames)) + ".com";
  if (attribute == "team" || attribute == "position") return pair(rng, kCities, kTeams);
  if (attribute == "years active") return digits(rng, 4) + " - present";
  if (attribute == "net worth") return "$" + digits(rng, 2) + " million";
  return pair(rng, kGrades, kCategories);
}

std::string prose(Rng& rng, std::size_t min_words, std::size_t max_words) {
  const std::size_t n = min_words + rng.below(max_words - min_words + 1);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += pick(rng, kProse);
  }
  return out;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string cell(std::string_view tag, std::string_view text) {
  return "<" + std::string(tag) + ">" + escape(text) + "</" + std::string(tag) + ">";
}

std::string relational_table(Rng& rng) {
  std::array<std::size_t, kRelationalHeaders.size()> order{};
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order.begin(), order.end());
  const std::size_t cols = 3 + rng.below(3);
  const std::size_t rows = 6 + rng.below(4);
  std::string html = "<table class=\"data\"><thead><tr>";
  for (std::size_t c = 0; c < cols; ++c) html += cell("th", kRelationalHeaders[order[c]]);
  html += "</tr></thead><tbody>";
  for (std::size_t r = 0; r < rows; ++r) {
    html += "<tr>";
    for (std::size_t c = 0; c < cols; ++c) html += cell("td", column_value(rng, kRelationalHeaders[order[c]]));
    html += "</tr>";
  }
  return html + "</tbody></table>";
}

std::string entity_table(Rng& rng) {
  std::array<std::size_t, kEntityAttributes.size()> order{};
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order.begin(), order.end());
  const std::size_t rows = 5 + rng.below(4);
  std::string html = "<table class=\"infobox\">";
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string_view attribute = kEntityAttributes[order[r]];
    html += "<tr>" + cell("th", attribute) + cell("td", entity_value(rng, attribute)) + "</tr>";
  }
  return html + "</table>";
}

std::string matrix_table(Rng& rng) {
  const std::size_t cols = 4 + rng.below(3);
  const std::size_t rows = 4 + rng.below(3);
  const std::size_t first_year = 1990 + rng.below(25);
  const std::string metric(pick(rng, kMetrics));
  const std::string_view kind = pick(rng, kRegionKinds);
  std::string html = "<table class=\"matrix\"><tr>" + cell("th", metric + " by " + std::string(kind));
  for (std::size_t c = 0; c < cols; ++c) {
    html += cell("th", std::to_string(first_year + c));
  }
  html += "</tr>";
  const std::size_t int_digits = 1 + rng.below(3);
  for (std::size_t r = 0; r < rows; ++r) {
    html += "<tr>" + cell("th", std::string(pick(rng, kRegions)) + " " + std::string(kind));
    for (std::size_t c = 0; c < cols; ++c) {
      html += cell("td", digits(rng, int_digits) + "." + digits(rng, 1));
    }
    html += "</tr>";
  }
  return html + "</table>";
}

std::string non_data_table(Rng& rng) {
  const std::size_t rows = 2 + rng.below(3);
  const std::size_t cols = 2 + rng.below(2);
  std::string html = "<table class=\"layout\">";
  for (std::size_t r = 0; r < rows; ++r) {
    html += "<tr>";
    for (std::size_t c = 0; c < cols; ++c) {
      std::string text = escape(prose(rng, 4, 24));
      if (rng.below(4) == 0) text += " <a href=\"/" + std::string(pick(rng, kProse)) + "\">" + escape(prose(rng, 1, 3)) + "</a>";
      if (rng.below(6) == 0) text += " <img src=\"/banner.png\" alt=\"\">";
      html += "<td>" + text + "</td>";
    }
    html += "</tr>";
  }
  return html + "</table>";
}

}  // namespace

SyntheticCorpus generate_synthetic_corpus(const SyntheticOptions& opts) {
  if (opts.layout_wrap_fraction < 0.0 || opts.layout_wrap_fraction > 1.0) {
    throw UsageError("layout_wrap_fraction must be in [0, 1]");
  }
  struct Archetype {
    TableType type;
    std::function<std::string(Rng&)> make;
  };
  const std::array<Archetype, 4> archetypes = {{{TableType::relational, relational_table},
                                      {TableType::entity, entity_table},
                                      {TableType::matrix, matrix_table},
                                      {TableType::non_data, non_data_table}}};

  std::vector<std::size_t> plan;
  for (std::size_t t = 0; t < archetypes.size(); ++t) plan.insert(plan.end(), opts.tables_per_type, t);
  Rng rng(opts.seed);
  rng.shuffle(plan.begin(), plan.end());

  SyntheticCorpus corpus;
  for (std::size_t i = 0; i < plan.size(); ++i) {
    const Archetype& archetype = archetypes[plan[i]];
    char id[32];
    std::snprintf(id, sizeof id, "synth-%05zu", i);
    const std::string table = archetype.make(rng);
    const bool wrap = rng.unit() < opts.layout_wrap_fraction;
    std::string body = "<p>" + escape(prose(rng, 8, 20)) + ".</p>";
    if (wrap) {
      body += "<table width=\"100%\"><tr><td>" + escape(prose(rng, 2, 6)) + "</td><td>" + table +
              "</td></tr></table>";
    } else {
      body += table;
    }
    body += "<p>" + escape(prose(rng, 8, 20)) + ".</p>";

    RawPage page;
    page.page_id = id;
    page.url = "http://example.test/" + page.page_id;
    page.html = "<!doctype html><html><head><title>" + escape(prose(rng, 2, 5)) +
                "</title></head><body>" + body + "</body></html>";
    corpus.truth[make_table_id(page.page_id, wrap ? 1 : 0)] = archetype.type;
    corpus.pages.push_back(std::move(page));
  }
  return corpus;
}

}  // namespace webtab
