#include "rumornet/geolocate.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <regex>

#include "rumornet/errors.hpp"

namespace rumornet {

namespace {

struct StateEntry {
  const char* code;
  const char* name;
};

constexpr StateEntry kStates[] = {
    {"AL", "alabama"}, {"AK", "alaska"}, {"AZ", "arizona"}, {"AR", "arkansas"},
    {"CA", "california"}, {"CO", "colorado"}, {"CT", "connecticut"},
    {"DE", "delaware"}, {"FL", "florida"}, {"GA", "georgia"}, {"HI", "hawaii"},
    {"ID", "idaho"}, {"IL", "illinois"}, {"IN", "indiana"}, {"IA", "iowa"},
    {"KS", "kansas"}, {"KY", "kentucky"}, {"LA", "louisiana"}, {"ME", "maine"},
    {"MD", "maryland"}, {"MA", "massachusetts"}, {"MI", "michigan"},
    {"MN", "minnesota"}, {"MS", "mississippi"}, {"MO", "missouri"},
    {"MT", "montana"}, {"NE", "nebraska"}, {"NV", "nevada"},
    {"NH", "new hampshire"}, {"NJ", "new jersey"}, {"NM", "new mexico"},
    {"NY", "new york"}, {"NC", "north carolina"}, {"ND", "north dakota"},
    {"OH", "ohio"}, {"OK", "oklahoma"}, {"OR", "oregon"},
    {"PA", "pennsylvania"}, {"RI", "rhode island"}, {"SC", "south carolina"},
    {"SD", "south dakota"}, {"TN", "tennessee"}, {"TX", "texas"},
    {"UT", "utah"}, {"VT", "vermont"}, {"VA", "virginia"},
    {"WA", "washington state"}, {"WV", "west virginia"}, {"WI", "wisconsin"},
    {"WY", "wyoming"}, {"DC", "district of columbia"},
};

// 100 largest US cities (2020 census ordering), lowercase.
constexpr StateEntry kCities[] = {
    {"NY", "new york city"}, {"CA", "los angeles"}, {"IL", "chicago"},
    {"TX", "houston"}, {"AZ", "phoenix"}, {"PA", "philadelphia"},
    {"TX", "san antonio"}, {"CA", "san diego"}, {"TX", "dallas"},
    {"CA", "san jose"}, {"TX", "austin"}, {"FL", "jacksonville"},
    {"TX", "fort worth"}, {"OH", "columbus"}, {"IN", "indianapolis"},
    {"NC", "charlotte"}, {"CA", "san francisco"}, {"WA", "seattle"},
    {"CO", "denver"}, {"DC", "washington"}, {"TN", "nashville"},
    {"OK", "oklahoma city"}, {"TX", "el paso"}, {"MA", "boston"},
    {"OR", "portland"}, {"NV", "las vegas"}, {"MI", "detroit"},
    {"TN", "memphis"}, {"KY", "louisville"}, {"MD", "baltimore"},
    {"WI", "milwaukee"}, {"NM", "albuquerque"}, {"AZ", "tucson"},
    {"CA", "fresno"}, {"CA", "sacramento"}, {"MO", "kansas city"},
    {"AZ", "mesa"}, {"GA", "atlanta"}, {"NE", "omaha"},
    {"CO", "colorado springs"}, {"NC", "raleigh"}, {"CA", "long beach"},
    {"VA", "virginia beach"}, {"FL", "miami"}, {"CA", "oakland"},
    {"MN", "minneapolis"}, {"OK", "tulsa"}, {"CA", "bakersfield"},
    {"KS", "wichita"}, {"TX", "arlington"}, {"CA", "anaheim"},
    {"FL", "tampa"}, {"CA", "santa ana"}, {"MO", "st. louis"},
    {"CA", "riverside"}, {"TX", "corpus christi"}, {"KY", "lexington"},
    {"CA", "stockton"}, {"NV", "henderson"}, {"MN", "saint paul"},
    {"OH", "cincinnati"}, {"PA", "pittsburgh"}, {"AK", "anchorage"},
    {"NC", "greensboro"}, {"TX", "plano"}, {"NJ", "newark"},
    {"NE", "lincoln"}, {"OH", "toledo"}, {"FL", "orlando"},
    {"CA", "chula vista"}, {"NJ", "jersey city"}, {"AZ", "chandler"},
    {"TX", "laredo"}, {"WI", "madison"}, {"NC", "durham"},
    {"TX", "lubbock"}, {"NC", "winston-salem"}, {"TX", "garland"},
    {"AZ", "glendale"}, {"NV", "reno"}, {"FL", "hialeah"},
    {"ID", "boise"}, {"AZ", "scottsdale"}, {"CA", "irvine"},
    {"TX", "frisco"}, {"VA", "chesapeake"}, {"CA", "fremont"},
    {"AZ", "gilbert"}, {"FL", "st. petersburg"}, {"VA", "richmond"},
    {"OH", "cleveland"}, {"TX", "mckinney"}, {"AL", "huntsville"},
    {"CA", "san bernardino"}, {"AZ", "tempe"}, {"LA", "new orleans"},
    {"MI", "grand rapids"}, {"UT", "salt lake city"}, {"FL", "tallahassee"},
    {"AL", "birmingham"},
};

bool word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

// Occurrences of phrase on word boundaries.
std::size_t count_phrase(const std::string& haystack, const std::string& phrase) {
  std::size_t count = 0, pos = 0;
  while ((pos = haystack.find(phrase, pos)) != std::string::npos) {
    bool left_ok = pos == 0 || !word_char(haystack[pos - 1]);
    std::size_t end = pos + phrase.size();
    bool right_ok = end >= haystack.size() || !word_char(haystack[end]);
    if (left_ok && right_ok) ++count;
    pos = end;
  }
  return count;
}

std::optional<std::string> unique_mode(const std::map<std::string, std::size_t>& counts,
                                       std::size_t min_count) {
  std::string best;
  std::size_t best_count = 0;
  bool tie = false;
  for (const auto& [state, count] : counts) {
    if (count > best_count) {
      best = state;
      best_count = count;
      tie = false;
    } else if (count == best_count) {
      tie = true;
    }
  }
  if (best_count < min_count || tie) return std::nullopt;
  return best;
}

}  // namespace

double source_confidence(GeoSource s) {
  switch (s) {
    case GeoSource::Metadata: return 1.0;
    case GeoSource::Username: return 0.9;
    case GeoSource::Phrase: return 0.6;
    case GeoSource::Frequency: return 0.2;
    case GeoSource::Friend: return 0.1;
  }
  return 0.0;
}

const char* source_name(GeoSource s) {
  switch (s) {
    case GeoSource::Metadata: return "metadata";
    case GeoSource::Username: return "username";
    case GeoSource::Phrase: return "phrase";
    case GeoSource::Frequency: return "frequency";
    case GeoSource::Friend: return "friend";
  }
  return "";
}

GazetteerParser::GazetteerParser() {
  for (const auto& s : kStates) {
    names_[s.name] = s.code;
    abbrevs_[s.code] = s.code;
  }
  // "washington" alone is ambiguous between the state and DC; the built-in
  // table maps the bare city name to DC and the "washington state" phrase
  // to WA.
  for (const auto& c : kCities) names_.emplace(c.name, c.code);
}

GazetteerParser GazetteerParser::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  GazetteerParser parser;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == "place,state") continue;
    auto comma = line.rfind(',');
    if (comma == std::string::npos)
      throw FormatError(path + ":" + std::to_string(line_no) + ": bad row");
    parser.add_place(line.substr(0, comma), line.substr(comma + 1));
  }
  return parser;
}

void GazetteerParser::add_place(const std::string& place, const std::string& state) {
  names_[lower(place)] = state;
}

std::optional<std::string> GazetteerParser::parse(const std::string& text) const {
  if (text.empty()) return std::nullopt;
  std::string low = lower(text);

  // Longest-phrase-first keeps "new york" from losing to a shorter entry.
  const std::string* best = nullptr;
  std::size_t best_len = 0;
  for (const auto& [name, code] : names_) {
    if (name.size() > best_len && count_phrase(low, name) > 0) {
      best = &code;
      best_len = name.size();
    }
  }
  if (best) return *best;

  // Abbreviations only match uppercase tokens in the original text.
  for (const auto& [abbr, code] : abbrevs_) {
    if (count_phrase(text, abbr) > 0) return code;
  }
  return std::nullopt;
}

std::vector<std::string> GazetteerParser::extract_mentions(
    const std::string& text) const {
  std::vector<std::string> mentions;
  std::string low = lower(text);
  for (const auto& [name, code] : names_) {
    std::size_t n = count_phrase(low, name);
    for (std::size_t i = 0; i < n; ++i) mentions.push_back(code);
  }
  for (const auto& [abbr, code] : abbrevs_) {
    std::size_t n = count_phrase(text, abbr);
    for (std::size_t i = 0; i < n; ++i) mentions.push_back(code);
  }
  return mentions;
}

namespace {

// First-person residence patterns; the captured tail is handed back to the
// location parser.
const std::vector<std::regex>& residence_patterns() {
  static const std::vector<std::regex> patterns = {
      std::regex(R"((?:\bI live in |\bborn in )([^.!?,;\n]{1,60}))",
                 std::regex::icase),
      std::regex(R"(\bfrom ([^.!?,;\n]{1,60}?) here\b)", std::regex::icase),
  };
  return patterns;
}

std::optional<std::string> phrase_detect(const std::vector<PostRecord>& posts,
                                         const TextLocationParser& parser) {
  for (const auto& post : posts) {
    for (const auto& re : residence_patterns()) {
      auto begin =
          std::sregex_iterator(post.content.begin(), post.content.end(), re);
      for (auto it = begin; it != std::sregex_iterator(); ++it) {
        if (auto state = parser.parse((*it)[1].str())) return state;
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<GeoAssignment> geolocate_user(
    const UserNode& user, const std::optional<std::string>& profile_location,
    const std::string& username, const std::vector<PostRecord>& posts,
    const std::vector<std::string>& friend_states,
    const TextLocationParser& parser) {
  auto assign = [&](const std::string& state, GeoSource source) {
    return GeoAssignment{user.id, state, source, source_confidence(source)};
  };

  if (profile_location) {
    if (auto state = parser.parse(*profile_location))
      return assign(*state, GeoSource::Metadata);
  }
  if (auto state = parser.parse(username))
    return assign(*state, GeoSource::Username);
  if (auto state = phrase_detect(posts, parser))
    return assign(*state, GeoSource::Phrase);

  // Frequency analysis needs the gazetteer's mention extractor; other
  // parser implementations fall through to friend inference.
  if (const auto* gaz = dynamic_cast<const GazetteerParser*>(&parser)) {
    std::map<std::string, std::size_t> counts;
    for (const auto& post : posts)
      for (const auto& state : gaz->extract_mentions(post.content))
        ++counts[state];
    if (auto state = unique_mode(counts, 3))
      return assign(*state, GeoSource::Frequency);
  }

  std::map<std::string, std::size_t> friend_counts;
  for (const auto& state : friend_states) ++friend_counts[state];
  if (auto state = unique_mode(friend_counts, 1))
    return assign(*state, GeoSource::Friend);

  return std::nullopt;
}

GeolocationReport geolocation_report(
    const std::vector<std::optional<GeoAssignment>>& assignments) {
  GeolocationReport report;
  report.total = assignments.size();
  for (const auto& a : assignments) {
    if (a)
      ++report.per_source[a->source];
    else
      ++report.unassigned;
  }
  if (report.total > 0)
    report.coverage =
        static_cast<double>(report.total - report.unassigned) / report.total;
  return report;
}

}  // namespace rumornet
