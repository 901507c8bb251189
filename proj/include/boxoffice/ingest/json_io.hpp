#pragma once

// Record-per-line JSON datasets.
//
// Two source schemas are understood:
//  * detail  - one movie page: canonical keys (see kDetailFields) or the
//              IMDb JSON-LD spellings listed next to them.
//  * summary - one search-listing row (title, year, certificate, runtime,
//              genre, directors, stars, voters, gross, rating, link). It has
//              no budget, release month or creators, so those load as absent.
//
// A key that the schema requires but the record omits is a per-record parse
// error. A key that is present with a null value loads as an absent value and
// is left for cleaning to drop. Text that is not JSON at all is fatal.

#include <cctype>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "boxoffice/error.hpp"
#include "boxoffice/ingest/record.hpp"

namespace boxoffice::ingest {

enum class Schema { Detail, Summary };

struct ParseError {
  std::size_t record = 0;  // zero-based record number in the stream
  std::size_t offset = 0;  // byte offset of the record's first character
  std::string field;       // empty when the whole record is malformed
  std::string message;

  bool operator==(const ParseError&) const = default;
};

struct LoadResult {
  std::vector<RawMovie> records;
  std::vector<ParseError> errors;
};

namespace detail {

using nlohmann::json;

class FieldError : public std::runtime_error {
 public:
  FieldError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

inline const json* find_any(const json& obj, std::initializer_list<std::string_view> keys) {
  for (const auto key : keys) {
    if (const auto it = obj.find(std::string(key)); it != obj.end()) return &*it;
  }
  return nullptr;
}

inline const json& require(const json& obj, std::string_view field,
                           std::initializer_list<std::string_view> keys) {
  const json* v = find_any(obj, keys);
  if (v == nullptr) throw FieldError(std::string(field), "missing field '" + std::string(field) + "'");
  return *v;
}

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

/// Accepts JSON numbers and strings like "$140,000,000 (estimated)" or "$318.41M".
inline std::optional<Money> to_money(const json& v, std::string_view field) {
  if (v.is_null()) return std::nullopt;
  if (v.is_number()) {
    const double d = v.get<double>();
    if (!std::isfinite(d) || d < 0) throw FieldError(std::string(field), "negative or non-finite amount");
    return Money::from_dollars(d);
  }
  if (!v.is_string()) throw FieldError(std::string(field), "expected number or string");
  std::string s = trim(v.get<std::string>());
  if (s.empty()) return std::nullopt;
  if (s.front() == '$') {
    s.erase(0, 1);
  } else if (!std::isdigit(static_cast<unsigned char>(s.front()))) {
    throw FieldError(std::string(field), "non-USD amount '" + s + "'");
  }
  std::string digits;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      digits.push_back(c);
    } else if (c != ',') {
      break;
    }
  }
  if (digits.empty()) throw FieldError(std::string(field), "unparsable amount");
  long double value = std::stold(digits);
  if (i < s.size()) {
    switch (std::toupper(static_cast<unsigned char>(s[i]))) {
      case 'K': value *= 1e3L; break;
      case 'M': value *= 1e6L; break;
      case 'B': value *= 1e9L; break;
      default: break;
    }
  }
  return Money::from_dollars(value);
}

inline std::optional<int> leading_int(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size() && !std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == s.size()) return std::nullopt;
  int value = 0;
  for (; i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])); ++i) {
    value = value * 10 + (s[i] - '0');
  }
  return value;
}

inline std::optional<int> to_int(const json& v, std::string_view field) {
  if (v.is_null()) return std::nullopt;
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number()) {
    const double d = v.get<double>();
    if (d != std::floor(d)) throw FieldError(std::string(field), "expected integer");
    return static_cast<int>(d);
  }
  if (v.is_string()) {
    const auto s = trim(v.get<std::string>());
    if (s.empty()) return std::nullopt;
    if (auto n = leading_int(s)) return n;
  }
  throw FieldError(std::string(field), "expected integer");
}

/// Years are the last run of four digits, so "(I) (2008)" reads as 2008.
inline std::optional<int> to_year(const json& v) {
  if (v.is_null()) return std::nullopt;
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::optional<int> year;
    for (std::size_t i = 0; i + 4 <= s.size(); ++i) {
      bool four = true;
      for (std::size_t k = 0; k < 4; ++k) four = four && std::isdigit(static_cast<unsigned char>(s[i + k]));
      const bool bounded = (i == 0 || !std::isdigit(static_cast<unsigned char>(s[i - 1]))) &&
                           (i + 4 == s.size() || !std::isdigit(static_cast<unsigned char>(s[i + 4])));
      if (four && bounded) year = std::stoi(s.substr(i, 4));
    }
    if (year) return year;
    if (trim(s).empty()) return std::nullopt;
  }
  throw FieldError("year", "expected year");
}

/// Minutes from 126, "126 min" or ISO-8601 "PT2H6M".
inline std::optional<int> to_runtime(const json& v) {
  if (v.is_string()) {
    const auto s = trim(v.get<std::string>());
    if (s.rfind("PT", 0) == 0) {
      int minutes = 0;
      int acc = 0;
      for (std::size_t i = 2; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
          acc = acc * 10 + (c - '0');
        } else if (c == 'H') {
          minutes += acc * 60;
          acc = 0;
        } else if (c == 'M') {
          minutes += acc;
          acc = 0;
        } else {
          acc = 0;
        }
      }
      return minutes;
    }
  }
  return to_int(v, "runtime");
}

inline std::optional<double> to_real(const json& v, std::string_view field) {
  if (v.is_null()) return std::nullopt;
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = trim(v.get<std::string>());
    if (s.empty()) return std::nullopt;
    try {
      return std::stod(s);
    } catch (const std::exception&) {
    }
  }
  throw FieldError(std::string(field), "expected number");
}

inline std::optional<std::int64_t> to_count(const json& v, std::string_view field) {
  if (v.is_null()) return std::nullopt;
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_string()) {
    std::string digits;
    for (const char c : v.get<std::string>()) {
      if (std::isdigit(static_cast<unsigned char>(c))) digits.push_back(c);
    }
    if (digits.empty()) return std::nullopt;
    return std::stoll(digits);
  }
  throw FieldError(std::string(field), "expected count");
}

/// Lists of strings, of {"name": ...} objects, or a comma-separated string.
inline std::optional<std::vector<std::string>> to_names(const json& v, std::string_view field) {
  if (v.is_null()) return std::nullopt;
  std::vector<std::string> out;
  auto push = [&](const json& item) {
    if (item.is_string()) {
      auto name = trim(item.get<std::string>());
      if (!name.empty()) out.push_back(std::move(name));
    } else if (item.is_object() && item.contains("name") && item["name"].is_string()) {
      auto name = trim(item["name"].get<std::string>());
      if (!name.empty()) out.push_back(std::move(name));
    } else {
      throw FieldError(std::string(field), "expected a list of names");
    }
  };
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    std::size_t start = 0;
    while (start <= s.size()) {
      const auto comma = s.find(',', start);
      auto piece = trim(std::string_view(s).substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (!piece.empty()) out.push_back(std::move(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return out;
  }
  if (v.is_object()) {
    push(v);
    return out;
  }
  if (!v.is_array()) throw FieldError(std::string(field), "expected a list of names");
  for (const auto& item : v) push(item);
  return out;
}

inline std::optional<std::string> to_text(const json& v, std::string_view field) {
  if (v.is_null()) return std::nullopt;
  if (!v.is_string()) throw FieldError(std::string(field), "expected string");
  auto s = trim(v.get<std::string>());
  if (s.empty()) return std::nullopt;
  return s;
}

/// "tt0371746" out of "/title/tt0371746/" style links; the link itself otherwise.
inline std::string id_from(const json& v) {
  if (!v.is_string() && !v.is_number()) throw FieldError("id", "expected string id");
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  for (auto tt = s.find("tt"); tt != std::string::npos; tt = s.find("tt", tt + 1)) {
    if (tt + 2 < s.size() && std::isdigit(static_cast<unsigned char>(s[tt + 2]))) {
      auto end = tt + 2;
      while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
      return s.substr(tt, end - tt);
    }
  }
  return s;
}

/// Nested {"ratingValue": .., "ratingCount": ..} objects as used by JSON-LD.
inline const json* rating_object(const json& obj) {
  for (const char* key : {"aggregateRating", "rating"}) {
    if (const auto it = obj.find(key); it != obj.end() && it->is_object()) return &*it;
  }
  return nullptr;
}

inline RawMovie parse_detail(const json& obj) {
  RawMovie m;
  m.id = id_from(require(obj, "id", {"id", "imdb_id", "url"}));
  if (const json* t = find_any(obj, {"title", "name"}); t != nullptr && !t->is_null()) {
    m.title = to_text(*t, "title").value_or("");
  }

  if (const json* date = find_any(obj, {"datePublished", "release_date"});
      date != nullptr && !find_any(obj, {"year"})) {
    if (!date->is_null()) {
      const auto s = date->get<std::string>();
      if (s.size() >= 7 && s[4] == '-') {
        m.release_year = std::stoi(s.substr(0, 4));
        m.release_month = std::stoi(s.substr(5, 2));
      } else {
        m.release_year = to_year(*date);
      }
    }
  } else {
    m.release_year = to_year(require(obj, "year", {"year"}));
    m.release_month = to_int(require(obj, "month", {"month"}), "month");
  }

  m.budget = to_money(require(obj, "budget", {"budget"}), "budget");
  m.revenue = to_money(require(obj, "revenue", {"revenue", "gross_worldwide", "worldwide_gross"}), "revenue");
  m.runtime = to_runtime(require(obj, "runtime", {"runtime", "duration"}));
  m.content_rating = to_text(require(obj, "content_rating", {"content_rating", "contentRating"}), "content_rating");
  m.genres = to_names(require(obj, "genres", {"genres", "genre"}), "genres");
  m.cast = to_names(require(obj, "cast", {"cast", "actor", "actors"}), "cast");
  m.directors = to_names(require(obj, "directors", {"directors", "director"}), "directors");
  m.creators = to_names(require(obj, "creators", {"creators", "creator"}), "creators");
  m.production_companies = to_names(
      require(obj, "production_companies", {"production_companies", "production_company", "companies"}),
      "production_companies");

  if (const json* r = rating_object(obj)) {
    m.imdb_rating = to_real(require(*r, "imdb_rating", {"ratingValue"}), "imdb_rating");
    m.rater_count = to_count(require(*r, "rater_count", {"ratingCount"}), "rater_count");
  } else {
    m.imdb_rating = to_real(require(obj, "imdb_rating", {"imdb_rating", "rating"}), "imdb_rating");
    m.rater_count = to_count(require(obj, "rater_count", {"rater_count", "ratingCount", "votes"}), "rater_count");
  }
  return m;
}

inline RawMovie parse_summary(const json& obj) {
  RawMovie m;
  m.id = id_from(require(obj, "link", {"link", "url", "id"}));
  m.title = to_text(require(obj, "title", {"title", "name"}), "title").value_or("");
  m.release_year = to_year(require(obj, "year", {"year"}));
  auto optional = [&](std::initializer_list<std::string_view> keys) -> const json* {
    const json* v = find_any(obj, keys);
    return (v == nullptr || v->is_null()) ? nullptr : v;
  };
  if (const json* v = optional({"certificate"})) m.content_rating = to_text(*v, "content_rating");
  if (const json* v = optional({"runtime"})) m.runtime = to_runtime(*v);
  if (const json* v = optional({"genre", "genres"})) m.genres = to_names(*v, "genres");
  if (const json* v = optional({"directors", "director"})) m.directors = to_names(*v, "directors");
  if (const json* v = optional({"stars", "cast"})) m.cast = to_names(*v, "cast");
  if (const json* v = optional({"voters", "votes"})) m.rater_count = to_count(*v, "rater_count");
  if (const json* v = optional({"gross"})) m.revenue = to_money(*v, "revenue");
  if (const json* v = optional({"rating"})) m.imdb_rating = to_real(*v, "imdb_rating");
  return m;
}

inline void parse_record(const json& value, Schema schema, std::size_t record, std::size_t offset,
                         LoadResult& out) {
  if (!value.is_object()) {
    out.errors.push_back({record, offset, "", "record is not a JSON object"});
    return;
  }
  try {
    out.records.push_back(schema == Schema::Detail ? parse_detail(value) : parse_summary(value));
  } catch (const FieldError& e) {
    out.errors.push_back({record, offset, e.field(), e.what()});
  } catch (const nlohmann::json::exception& e) {
    out.errors.push_back({record, offset, "", e.what()});
  } catch (const std::logic_error& e) {  // stoi and friends
    out.errors.push_back({record, offset, "", e.what()});
  }
}

inline nlohmann::json names_json(const std::optional<std::vector<std::string>>& names) {
  if (!names) return nullptr;
  return *names;
}

inline nlohmann::json money_json(const std::optional<Money>& m) {
  if (!m) return nullptr;
  if (m->cents() % 100 == 0) return m->cents() / 100;
  return m->dollars();
}

}  // namespace detail

/// Reads a record-per-line stream or a single JSON array document.
inline LoadResult load_dataset(std::istream& in, Schema schema = Schema::Detail) {
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  LoadResult out;

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return out;

  if (text[first] == '[') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw StreamError("malformed JSON document", e.byte == 0 ? 0 : e.byte - 1);
    }
    std::size_t record = 0;
    for (const auto& value : doc) detail::parse_record(value, schema, record++, first, out);
    return out;
  }

  std::size_t record = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    const std::string_view line(text.data() + pos, end - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      nlohmann::json value;
      try {
        value = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw StreamError("malformed JSON record " + std::to_string(record),
                          pos + (e.byte == 0 ? 0 : e.byte - 1));
      }
      detail::parse_record(value, schema, record, pos, out);
      ++record;
    }
    pos = end + 1;
  }
  return out;
}

/// Canonical detail-schema document for one record; absent values become null.
inline nlohmann::json to_json(const RawMovie& m) {
  using nlohmann::json;
  auto opt = [](const auto& v) -> json {
    if (!v) return nullptr;
    return *v;
  };
  json j = json::object();
  j["id"] = m.id;
  j["title"] = m.title;
  j["year"] = opt(m.release_year);
  j["month"] = opt(m.release_month);
  j["budget"] = detail::money_json(m.budget);
  j["revenue"] = detail::money_json(m.revenue);
  j["runtime"] = opt(m.runtime);
  j["content_rating"] = opt(m.content_rating);
  j["genres"] = detail::names_json(m.genres);
  j["cast"] = detail::names_json(m.cast);
  j["directors"] = detail::names_json(m.directors);
  j["creators"] = detail::names_json(m.creators);
  j["production_companies"] = detail::names_json(m.production_companies);
  j["imdb_rating"] = opt(m.imdb_rating);
  j["rater_count"] = opt(m.rater_count);
  return j;
}

inline nlohmann::json to_json(const MovieRecord& m) { return to_json(to_raw(m)); }

template <typename Record>
void write_dataset(std::ostream& out, const std::vector<Record>& records) {
  for (const auto& m : records) out << to_json(m).dump() << '\n';
}

}  // namespace boxoffice::ingest
