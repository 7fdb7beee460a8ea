#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rumornet/types.hpp"

namespace rumornet {

// Geolocation sources in descending reliability, with fixed confidences.
enum class GeoSource { Metadata, Username, Phrase, Frequency, Friend };

double source_confidence(GeoSource s);
const char* source_name(GeoSource s);

// Pluggable free-text location parser. The reference implementation is a
// deterministic gazetteer: state abbreviations (matched uppercase only, to
// avoid ordinary words like "in" or "me"), full state names, and a fixed
// city-to-state table.
class TextLocationParser {
 public:
  virtual ~TextLocationParser() = default;
  virtual std::optional<std::string> parse(const std::string& text) const = 0;
};

class GazetteerParser : public TextLocationParser {
 public:
  GazetteerParser();  // built-in states + 100 largest US cities
  static GazetteerParser from_csv(const std::string& path);  // place,state rows

  std::optional<std::string> parse(const std::string& text) const override;

  // Every state mentioned in the text, one count per distinct occurrence.
  std::vector<std::string> extract_mentions(const std::string& text) const;

  void add_place(const std::string& place, const std::string& state);

 private:
  std::map<std::string, std::string> names_;   // lowercase name/city -> code
  std::map<std::string, std::string> abbrevs_; // uppercase code -> code
};

struct GeoAssignment {
  UserId user;
  std::string state;
  GeoSource source = GeoSource::Metadata;
  double confidence = 0.0;

  bool operator==(const GeoAssignment&) const = default;
};

// Tries sources in descending confidence; first success wins. Absence of
// signal yields no assignment, never an error.
std::optional<GeoAssignment> geolocate_user(
    const UserNode& user, const std::optional<std::string>& profile_location,
    const std::string& username, const std::vector<PostRecord>& posts,
    const std::vector<std::string>& friend_states,
    const TextLocationParser& parser);

struct GeolocationReport {
  std::map<GeoSource, std::size_t> per_source;
  std::size_t unassigned = 0;
  std::size_t total = 0;
  double coverage = 0.0;
};

GeolocationReport geolocation_report(
    const std::vector<std::optional<GeoAssignment>>& assignments);

}  // namespace rumornet
