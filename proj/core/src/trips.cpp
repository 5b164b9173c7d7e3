#include "flexride/trips.hpp"

#include <algorithm>
#include <set>

#include "flexride/csv.hpp"
#include "flexride/errors.hpp"

namespace flexride {

namespace {

const char* kHeader =
    "id,ownership,capacity,deadline_s,submission_s,origin,destination,ed_s,la_s";

std::string row_error(const std::string& source, std::size_t line,
                      const std::string& id, const std::string& message) {
  return source + ":" + std::to_string(line) + ": participant '" + id + "': " +
         message;
}

} // namespace

std::vector<Participant> load_trips(std::istream& in,
                                    const std::string& source_name) {
  CsvReader reader(in, kHeader, source_name);
  std::vector<Participant> parts;
  std::set<std::string> seen;
  std::vector<std::string> f;
  std::size_t line = 0;
  while (reader.next(f, line)) {
    if (f.size() != 9) {
      throw ParseError(source_name + ":" + std::to_string(line) +
                       ": expected 9 columns, got " + std::to_string(f.size()));
    }
    Participant p;
    p.id = f[0];
    if (p.id.empty()) {
      throw ParseError(source_name + ":" + std::to_string(line) +
                       ": empty participant id");
    }
    if (!seen.insert(p.id).second) {
      throw ParseError(row_error(source_name, line, p.id, "duplicate id"));
    }
    if (f[1] == "owner") {
      p.ownership = Ownership::CarOwner;
    } else if (f[1] == "rider") {
      p.ownership = Ownership::NonCarOwner;
    } else {
      throw ParseError(row_error(source_name, line, p.id,
                                 "ownership must be 'owner' or 'rider', got '" +
                                     f[1] + "'"));
    }
    if (p.is_car_owner()) {
      if (f[2].empty()) {
        throw ParseError(row_error(source_name, line, p.id,
                                   "capacity required for car owners"));
      }
      std::int64_t q = parse_int_field(f[2], source_name, line, "capacity");
      if (q < 1) {
        throw ParseError(
            row_error(source_name, line, p.id, "capacity must be >= 1"));
      }
      p.capacity = static_cast<int>(q);
    } else if (!f[2].empty()) {
      throw ParseError(row_error(source_name, line, p.id,
                                 "capacity must be empty for riders"));
    }
    p.deadline = parse_int_field(f[3], source_name, line, "deadline_s");
    p.submission = parse_int_field(f[4], source_name, line, "submission_s");
    p.origin = parse_int_field(f[5], source_name, line, "origin");
    p.destination = parse_int_field(f[6], source_name, line, "destination");
    p.earliest_departure = parse_int_field(f[7], source_name, line, "ed_s");
    p.latest_arrival = parse_int_field(f[8], source_name, line, "la_s");

    if (p.deadline <= 0) {
      throw ParseError(
          row_error(source_name, line, p.id, "deadline_s must be > 0"));
    }
    if (p.origin == p.destination) {
      throw ParseError(row_error(source_name, line, p.id,
                                 "origin equals destination"));
    }
    if (p.earliest_departure >= p.latest_arrival) {
      throw ParseError(row_error(source_name, line, p.id,
                                 "ed_s must be strictly before la_s"));
    }
    if (p.submission > p.earliest_departure) {
      throw ParseError(row_error(
          source_name, line, p.id,
          "submission_s " + std::to_string(p.submission) +
              " is after ed_s " + std::to_string(p.earliest_departure)));
    }
    parts.push_back(std::move(p));
  }
  std::stable_sort(parts.begin(), parts.end(),
                   [](const Participant& a, const Participant& b) {
                     return a.submission < b.submission;
                   });
  return parts;
}

void write_trips(const std::vector<Participant>& parts, std::ostream& out) {
  out << kHeader << "\n";
  for (const Participant& p : parts) {
    out << p.id << ','
        << (p.is_car_owner() ? "owner" : "rider") << ','
        << (p.capacity ? std::to_string(*p.capacity) : std::string()) << ','
        << p.deadline << ',' << p.submission << ',' << p.origin << ','
        << p.destination << ',' << p.earliest_departure << ','
        << p.latest_arrival << "\n";
  }
}

std::pair<Seconds, Seconds> synthesize_windows(Seconds pickup, Seconds dropoff,
                                               Rng& rng) {
  Seconds lead = rng.uniform(0, 300);
  Seconds lag = rng.uniform(0, 300);
  return {pickup - lead, dropoff + lag};
}

EnrichedParticipant enrich(const RoadNetwork& net, const Participant& p) {
  EnrichedParticipant e;
  e.base = p;
  e.direct_time = net.shortest_travel_time(p.origin, p.destination);
  e.feasible = e.direct_time.has_value() &&
               *e.direct_time <= p.latest_arrival - p.earliest_departure;
  return e;
}

std::vector<EnrichedParticipant> enrich_all(
    const RoadNetwork& net, const std::vector<Participant>& ps) {
  std::vector<EnrichedParticipant> out;
  out.reserve(ps.size());
  for (const Participant& p : ps) out.push_back(enrich(net, p));
  return out;
}

} // namespace flexride
