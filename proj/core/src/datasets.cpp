#include "cocite/error.hpp"
#include "cocite/ingest.hpp"

namespace cocite {

namespace {

// Lower triangle as printed, with the upper triangle left blank or dotted.
constexpr std::string_view kCities =
    ",Atlanta,Chicago,Denver,Houston,Los Angeles,Miami,New York,San Francisco,Seattle,Washington DC\n"
    "Atlanta,0\n"
    "Chicago,587,0\n"
    "Denver,1212,920,0\n"
    "Houston,701,940,879,0\n"
    "Los Angeles,1936,1745,831,1374,0\n"
    "Miami,604,1188,1726,968,2339,0\n"
    "New York,748,713,1631,1420,2451,1092,0,.,.,.\n"
    "San Francisco,2139,1858,949,1645,347,2594,2571,0,.,.\n"
    "Seattle,2182,1737,1021,1891,959,2734,2408,678,0,.\n"
    "Washington DC,543,597,1494,1220,2300,923,205,2442,2329,0\n";

constexpr std::string_view kFigure1 =
    ",Paper 1,Paper 2,Paper 3,Paper 4\n"
    "Paper 1,,10,20,25\n"
    "Paper 2,10,,30,15\n"
    "Paper 3,20,30,,12\n"
    "Paper 4,25,15,12,\n";

constexpr std::string_view kFigure2 =
    "d1\tA;B;D\n"
    "d2\tC;D\n"
    "d3\tC;D\n"
    "d4\tA;B\n"
    "d5\tA;B;D\n";

}  // namespace

ProximityMatrix cities_dataset() {
  return parse_square_matrix(kCities, ProximityKind::Dissimilarity, MeasurementLevel::Ratio);
}

CooccurrenceMatrix figure1_dataset() { return parse_cooccurrence_csv(kFigure1); }

OccurrenceMatrix figure2_dataset() { return parse_records(kFigure2); }

Dataset builtin_dataset(std::string_view name) {
  if (name == "cities") return cities_dataset();
  if (name == "figure1") return figure1_dataset();
  if (name == "figure2") return figure2_dataset();
  throw Error(ErrorCode::UnknownDataset, "'" + std::string(name) + "' (expected cities, figure1 or figure2)");
}

}  // namespace cocite
