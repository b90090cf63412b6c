#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "asurf/model.hpp"
#include "asurf/parser.hpp"

namespace asurf {

enum class BranchDevice { Line, Switch, Breaker, TransformerTap };

struct Bus {
  std::string name;
  double load_kw = 0.0;
  std::optional<std::string> substation;
};

struct Branch {
  std::string name;
  std::string from;
  std::string to;
  BranchDevice device = BranchDevice::Line;
  std::optional<std::string> controlled_by;  // data identifier
};

// A coordinated tap manipulation: driving both the in-substation tap and the
// upstream tap past the voltage limit trips the substation breaker, so the
// physical effect equals opening that breaker.
struct TapAttackRule {
  std::string substation;
  std::string in_substation_tap;
  std::string upstream_tap;
};

struct GridGraph {
  std::vector<Bus> buses;
  std::vector<Branch> branches;
  std::string source_bus;
  std::vector<TapAttackRule> tap_rules;

  const Bus* find_bus(const std::string& n) const;
  const Branch* find_branch(const std::string& n) const;
  double total_load_kw() const;
};

// Line-oriented text format:
//   bus <name> load=<kw> [substation=<id>]
//   branch <name> <from> <to> kind=<line|switch|breaker|transformer_tap>
//          [controls=<data-id>]
//   source <bus>
//   tap_rule <substation> <inner-data> <outer-data>
// `--` starts a comment. Throws ParseError on malformed lines or unresolved
// references.
GridGraph parse_grid(std::string_view source,
                     const std::string& filename = "<input>");

// Structural checks beyond parse-time resolution; currently: the graph must
// be connected from source_bus with every branch in service.
std::vector<Diagnostic> validate_grid(const GridGraph& grid);

// Total load on buses no longer reachable from the source once the listed
// branches are opened. Only switches and breakers are remotely operable.
double loss_of_load(const GridGraph& grid, const std::set<std::string>& open);

// Loss of load when the rule's substation breaker trips.
double tap_attack_loss(const GridGraph& grid, const TapAttackRule& rule);

// imp(d) for every remotely controllable datum: singleton loss_of_load for
// each controlled switch/breaker, tap_attack_loss for each tap rule (keyed
// by the in-substation tap datum).
std::map<std::string, double> compute_impact_table(const GridGraph& grid);

// compute_impact_table packaged with load columns (total - loss), drop-in
// for a parsed impact CSV.
ImpactTable grid_impact_table(const GridGraph& grid);

std::string to_string(BranchDevice d);

}  // namespace asurf
