#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hdad/dataset.hpp"

namespace hdad {

enum class SetName { Gleuf, NoisyHelix, Multiset4D, Multiset5D };

SetName set_name_from_string(const std::string& name);  // gleuf|noisyhelix|multiset4d|multiset5d
std::string set_name_string(SetName s);

// Flavours of planted high-density anomalies:
//   UncommonClass   - a class seen (almost) nowhere else, placed in a dense region
//   UnseenCombination - two individually common classes whose pairing never
//                       occurs elsewhere, placed in a dense region
//   WrongCombination  - an existing class combination attached to a dense
//                       region where a different combination is the norm
enum class HdaType { UncommonClass, UnseenCombination, WrongCombination };

std::string hda_type_name(HdaType t);

struct GenSpec {
  SetName set_name = SetName::Gleuf;
  std::uint64_t seed = 1;
  double scale = 1.0;  // in (0, 1]; case counts scale proportionally
};

struct PlantRecord {
  int id = 0;  // 1-based case id
  HdaType type = HdaType::WrongCombination;
  std::vector<double> position;
  std::string note;  // human-readable description of the planting
};

struct GeneratedSet {
  Dataset ds;                       // carries ground-truth labels
  std::vector<PlantRecord> plants;  // one record per planted anomaly
  std::map<std::string, std::size_t> counts;  // component sizes (clusters, noise, ...)
};

// Deterministically renders the named synthetic set at the requested scale.
// Same spec => identical bytes when written to CSV.
GeneratedSet generate(const GenSpec& spec);

// Post-generation sanity checks on the plants: each planted case must carry a
// class (or combination) that is vanishingly rare in its numeric
// neighbourhood while that neighbourhood itself is denser than the dataset
// median.
struct VerifyReport {
  struct Violation {
    int id = 0;
    std::string kind;
    std::string detail;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

VerifyReport verify_hda_plantings(const GeneratedSet& gs);

// Writes the dataset (features + label column "hda") to CSV.
void write_generated_csv(const GeneratedSet& gs, const std::string& path);

// JSON manifest: spec echo, case counts, and the plant records.
std::string manifest_json(const GeneratedSet& gs, const GenSpec& spec);

}  // namespace hdad
