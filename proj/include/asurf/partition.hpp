#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asurf/metrics.hpp"
#include "asurf/model.hpp"

namespace asurf {

// Security configuration for one front-end process in a split.
struct SecurityProfile {
  std::string name;
  // When absent, rerouted connections keep their original channel security.
  std::optional<ConnectionSecurity> connection;
  ProcessSecurity process;
  // When absent, the split process's method count is inherited.
  std::optional<int> method_count;
};

struct PartitionGroup {
  SecurityProfile profile;
  std::vector<std::string> data;
};

struct PartitionAssignment {
  std::string split_process;
  std::vector<PartitionGroup> groups;
};

struct PartitionResult {
  PartitionAssignment assignment;
  double tasm = 0.0;
  SurfaceReport report;
  SystemModel derived;
  std::vector<Diagnostic> warnings;
};

// Replaces the split process by one process per group, reroutes each
// boundary connection to the process owning its carried data (splitting a
// connection whose data spans several groups), and scores the derived
// model. The groups must partition the split process's privilege exactly;
// an empty group is a warning, overlap or uncovered data an error.
PartitionResult evaluate_partition(const SystemModel& model,
                                   const PartitionAssignment& assignment);

enum class SearchMode { Exhaustive, Greedy };
enum class Granularity { PerDatum, PerSubstation };

// Searches assignments of data units to the first k profiles for the
// minimum-TASM split. PerSubstation groups data items by the identifier
// prefix before the first '_'. Exhaustive mode enumerates all k^n unit
// assignments (n <= 12) and is globally optimal; greedy seeds each group
// with the highest-impact units and places the rest in descending impact
// order wherever TASM grows least. Ties break toward the lexicographically
// smallest assignment vector, so results are deterministic.
PartitionResult optimize_partition(const SystemModel& model, int k,
                                   const std::vector<SecurityProfile>& profiles,
                                   SearchMode mode,
                                   Granularity granularity = Granularity::PerDatum,
                                   const std::string& split_process = "");

// Scenario file: `split <process>;` followed by one or more
// `profile <name> { properties { ... } data <id>, <id>, ...; }` blocks.
// The `data` list is optional (optimizer scenarios give only profiles).
PartitionAssignment parse_scenario(std::string_view source,
                                   const std::string& filename = "<input>");

// The unique trusted process reached by the model's attack paths; errors if
// there is none or more than one.
std::string default_split_process(const SystemModel& model);

}  // namespace asurf
