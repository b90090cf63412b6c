#include "asurf/grid.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace asurf {

const Bus* GridGraph::find_bus(const std::string& n) const {
  for (const auto& b : buses)
    if (b.name == n) return &b;
  return nullptr;
}

const Branch* GridGraph::find_branch(const std::string& n) const {
  for (const auto& b : branches)
    if (b.name == n) return &b;
  return nullptr;
}

double GridGraph::total_load_kw() const {
  double sum = 0.0;
  for (const auto& b : buses) sum += b.load_kw;
  return sum;
}

namespace {

// name -> index of reachable buses with `open` branches removed
std::set<std::string> reachable(const GridGraph& g,
                                const std::set<std::string>& open) {
  std::set<std::string> seen;
  if (!g.find_bus(g.source_bus)) return seen;
  std::deque<std::string> work{g.source_bus};
  seen.insert(g.source_bus);
  while (!work.empty()) {
    std::string cur = work.front();
    work.pop_front();
    for (const auto& br : g.branches) {
      if (open.count(br.name)) continue;
      const std::string* next = nullptr;
      if (br.from == cur) next = &br.to;
      else if (br.to == cur) next = &br.from;
      else continue;
      if (seen.insert(*next).second) work.push_back(*next);
    }
  }
  return seen;
}

std::pair<std::string, std::string> split_kv(const std::string& tok) {
  size_t eq = tok.find('=');
  if (eq == std::string::npos) return {tok, ""};
  return {tok.substr(0, eq), tok.substr(eq + 1)};
}

}  // namespace

GridGraph parse_grid(std::string_view source, const std::string& filename) {
  GridGraph g;
  std::istringstream in{std::string(source)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError({filename, lineno, 1}, msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (size_t c = line.find("--"); c != std::string::npos) line.resize(c);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;

    const std::string& head = toks[0];
    if (head == "bus") {
      if (toks.size() < 3) throw fail("expected: bus <name> load=<kw> [substation=<id>]");
      Bus b;
      b.name = toks[1];
      if (g.find_bus(b.name)) throw fail("duplicate bus '" + b.name + "'");
      bool have_load = false;
      for (size_t i = 2; i < toks.size(); ++i) {
        auto [k, v] = split_kv(toks[i]);
        if (k == "load") {
          try {
            size_t used = 0;
            b.load_kw = std::stod(v, &used);
            if (used != v.size()) throw std::invalid_argument(v);
          } catch (const std::exception&) {
            throw fail("bad load value '" + v + "'");
          }
          if (b.load_kw < 0) throw fail("load must be >= 0");
          have_load = true;
        } else if (k == "substation") {
          b.substation = v;
        } else {
          throw fail("unknown bus field '" + k + "'");
        }
      }
      if (!have_load) throw fail("bus '" + b.name + "' is missing load=<kw>");
      g.buses.push_back(std::move(b));
    } else if (head == "branch") {
      if (toks.size() < 5)
        throw fail("expected: branch <name> <from> <to> kind=<kind> [controls=<id>]");
      Branch b;
      b.name = toks[1];
      if (g.find_branch(b.name)) throw fail("duplicate branch '" + b.name + "'");
      b.from = toks[2];
      b.to = toks[3];
      bool have_kind = false;
      for (size_t i = 4; i < toks.size(); ++i) {
        auto [k, v] = split_kv(toks[i]);
        if (k == "kind") {
          if (v == "line") b.device = BranchDevice::Line;
          else if (v == "switch") b.device = BranchDevice::Switch;
          else if (v == "breaker") b.device = BranchDevice::Breaker;
          else if (v == "transformer_tap") b.device = BranchDevice::TransformerTap;
          else throw fail("unknown branch kind '" + v + "'");
          have_kind = true;
        } else if (k == "controls") {
          b.controlled_by = v;
        } else {
          throw fail("unknown branch field '" + k + "'");
        }
      }
      if (!have_kind) throw fail("branch '" + b.name + "' is missing kind=<kind>");
      if (b.controlled_by && b.device == BranchDevice::Line)
        throw fail("a plain line cannot be remotely controlled");
      g.branches.push_back(std::move(b));
    } else if (head == "source") {
      if (toks.size() != 2) throw fail("expected: source <bus>");
      if (!g.source_bus.empty()) throw fail("duplicate source line");
      g.source_bus = toks[1];
    } else if (head == "tap_rule") {
      if (toks.size() != 4)
        throw fail("expected: tap_rule <substation> <inner-data> <outer-data>");
      if (toks[2] == toks[3])
        throw fail("tap rule must name two distinct tap data items");
      g.tap_rules.push_back({toks[1], toks[2], toks[3]});
    } else {
      throw fail("unknown directive '" + head + "'");
    }
  }

  if (g.source_bus.empty())
    throw ParseError({filename, lineno, 1}, "missing source line");
  if (!g.find_bus(g.source_bus))
    throw ParseError({filename, lineno, 1},
                     "source bus '" + g.source_bus + "' is not declared");
  for (const auto& b : g.branches) {
    if (!g.find_bus(b.from))
      throw ParseError({filename, lineno, 1},
                       "branch '" + b.name + "' references unknown bus '" + b.from + "'");
    if (!g.find_bus(b.to))
      throw ParseError({filename, lineno, 1},
                       "branch '" + b.name + "' references unknown bus '" + b.to + "'");
  }
  return g;
}

std::vector<Diagnostic> validate_grid(const GridGraph& g) {
  std::vector<Diagnostic> diags;
  auto all_closed = reachable(g, {});
  for (const auto& b : g.buses)
    if (!all_closed.count(b.name))
      diags.push_back({Severity::Error, b.name, "disconnected",
                       "bus '" + b.name + "' is unreachable from the source with "
                       "all branches in service"});
  std::sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.location, a.rule) < std::tie(b.location, b.rule);
  });
  return diags;
}

double loss_of_load(const GridGraph& g, const std::set<std::string>& open) {
  for (const auto& name : open) {
    const Branch* br = g.find_branch(name);
    if (!br) throw Error("unknown branch '" + name + "'");
    if (br->device != BranchDevice::Switch && br->device != BranchDevice::Breaker)
      throw Error("branch '" + name + "' (" + to_string(br->device) +
                  ") is not remotely controllable");
  }
  auto live = reachable(g, open);
  double served = 0.0;
  for (const auto& b : g.buses)
    if (live.count(b.name)) served += b.load_kw;
  return g.total_load_kw() - served;
}

double tap_attack_loss(const GridGraph& g, const TapAttackRule& rule) {
  if (rule.in_substation_tap == rule.upstream_tap)
    throw Error("tap rule must name two distinct tap data items");
  std::set<std::string> sub_buses;
  for (const auto& b : g.buses)
    if (b.substation && *b.substation == rule.substation)
      sub_buses.insert(b.name);
  if (sub_buses.empty())
    throw Error("unknown substation '" + rule.substation + "'");

  // The breaker trip isolates the substation: open every breaker on its buses.
  std::set<std::string> breakers;
  for (const auto& br : g.branches)
    if (br.device == BranchDevice::Breaker &&
        (sub_buses.count(br.from) || sub_buses.count(br.to)))
      breakers.insert(br.name);
  if (breakers.empty())
    throw Error("substation '" + rule.substation + "' has no breaker branch");
  return loss_of_load(g, breakers);
}

std::map<std::string, double> compute_impact_table(const GridGraph& g) {
  std::map<std::string, double> out;
  for (const auto& br : g.branches) {
    if (!br.controlled_by) continue;
    if (br.device != BranchDevice::Switch && br.device != BranchDevice::Breaker)
      continue;  // taps only matter through tap rules
    double loss = loss_of_load(g, {br.name});
    if (!out.emplace(*br.controlled_by, loss).second)
      throw Error("datum '" + *br.controlled_by +
                  "' controls more than one branch");
  }
  for (const auto& rule : g.tap_rules) {
    double loss = tap_attack_loss(g, rule);
    if (!out.emplace(rule.in_substation_tap, loss).second)
      throw Error("datum '" + rule.in_substation_tap +
                  "' appears in more than one impact entry");
  }
  return out;
}

ImpactTable grid_impact_table(const GridGraph& g) {
  ImpactTable t;
  double total = g.total_load_kw();
  for (const auto& [name, loss] : compute_impact_table(g)) {
    t.loss_kw[name] = loss;
    t.load_kw[name] = total - loss;
  }
  return t;
}

std::string to_string(BranchDevice d) {
  switch (d) {
    case BranchDevice::Line: return "line";
    case BranchDevice::Switch: return "switch";
    case BranchDevice::Breaker: return "breaker";
    case BranchDevice::TransformerTap: return "transformer_tap";
  }
  return "?";
}

}  // namespace asurf
