#pragma once

#include <string>
#include <vector>

#include "asurf/model.hpp"

namespace asurf {

// One boundary crossing: a connection from an untrusted component to the
// trusted side, together with the trusted process it reaches.
struct AttackPath {
  std::string connection;
  std::string untrusted_end;
  std::string trusted_process;

  bool operator==(const AttackPath&) const = default;
};

// Every connection straddling the trust boundary, ordered lexicographically
// by (connection, trusted_process). A connection landing on a trusted bus is
// extended one hop to each trusted process attached to that bus. A boundary
// connection that reaches no trusted process at all is a modeling error and
// throws.
std::vector<AttackPath> enumerate_attack_paths(const SystemModel& model);

}  // namespace asurf
