#include "asurf/partition.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "asurf/paths.hpp"
#include "lexer_impl.hpp"

namespace asurf {

namespace {

std::vector<std::string> intersect(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

const Component& split_target(const SystemModel& model, const std::string& name) {
  const Component* p = model.find_component(name);
  if (!p) throw Error("split process '" + name + "' does not exist");
  if (p->kind != ComponentKind::Process)
    throw Error("split target '" + name + "' is not a process");
  if (p->trust != Trust::Trusted)
    throw Error("split target '" + name + "' is not trusted");
  if (!p->privilege_ref || !model.find_privilege(*p->privilege_ref))
    throw Error("split process '" + name + "' has no privilege to partition");
  return *p;
}

struct Derived {
  SystemModel model;
  std::vector<Diagnostic> warnings;
};

// Builds the model where `split_process` is replaced by one process per
// group and boundary connections are rerouted by data ownership. With
// check_coverage the groups must partition the privilege exactly; without
// it (greedy's incremental search) uncovered data is simply left
// unassigned.
Derived derive_model(const SystemModel& model, const PartitionAssignment& asg,
                     bool check_coverage) {
  const Component& target = split_target(model, asg.split_process);
  const Privilege& priv = *model.find_privilege(*target.privilege_ref);
  std::vector<std::string> universe = priv.data;  // finalize keeps this sorted

  Derived out;
  auto warn = [&](const std::string& loc, const std::string& rule,
                  const std::string& msg) {
    out.warnings.push_back({Severity::Warning, loc, rule, msg});
  };

  std::map<std::string, int> owner_count;
  for (const auto& g : asg.groups) {
    if (g.data.empty())
      warn(g.profile.name, "empty-group", "group is assigned no data");
    for (const auto& d : g.data) {
      if (!std::binary_search(universe.begin(), universe.end(), d))
        throw Error("datum '" + d + "' is not in the privilege of '" +
                    asg.split_process + "'");
      if (++owner_count[d] > 1)
        throw Error("datum '" + d + "' is assigned to more than one group");
    }
  }
  if (check_coverage) {
    for (const auto& d : universe)
      if (!owner_count.count(d))
        throw Error("datum '" + d + "' is covered by no group; the groups must "
                    "partition the privilege");
  }

  // Boundary connections that reach the split process.
  std::map<std::string, std::string> boundary;  // connection -> untrusted end
  auto paths = enumerate_attack_paths(model);
  for (const auto& p : paths)
    if (p.trusted_process == asg.split_process)
      boundary[p.connection] = p.untrusted_end;
  for (const auto& p : paths)
    if (p.trusted_process != asg.split_process && boundary.count(p.connection))
      throw Error("connection '" + p.connection +
                  "' reaches several trusted processes; cannot split");

  SystemModel& derived = out.model;
  derived.name = model.name;
  derived.data_items = model.data_items;

  for (const auto& c : model.components)
    if (c.name != asg.split_process) derived.components.push_back(c);
  for (const auto& p : model.privileges) {
    bool still_used = false;
    for (const auto& c : derived.components)
      if (c.privilege_ref == p.name) still_used = true;
    if (p.name != *target.privilege_ref || still_used)
      derived.privileges.push_back(p);
  }

  for (const auto& g : asg.groups) {
    if (derived.find_component(g.profile.name))
      throw Error("profile name '" + g.profile.name +
                  "' collides with an existing component");
    std::string priv_name = "v_" + g.profile.name;
    if (derived.find_privilege(priv_name))
      throw Error("privilege name '" + priv_name + "' already exists");

    Component proc;
    proc.name = g.profile.name;
    proc.kind = ComponentKind::Process;
    proc.trust = Trust::Trusted;
    proc.security = g.profile.process;
    proc.method_count =
        g.profile.method_count ? g.profile.method_count : target.method_count;
    proc.privilege_ref = priv_name;
    derived.components.push_back(std::move(proc));

    Privilege gp;
    gp.name = priv_name;
    gp.data = g.data;
    std::sort(gp.data.begin(), gp.data.end());
    derived.privileges.push_back(std::move(gp));
  }

  for (const auto& c : model.connections) {
    auto bit = boundary.find(c.name);
    if (bit != boundary.end()) {
      bool owned_any = false;
      size_t owned = 0;
      for (const auto& g : asg.groups) {
        auto carried = intersect(c.carried_data, g.data);
        owned += carried.size();
        if (carried.empty()) continue;
        owned_any = true;
        Connection c2 = c;
        c2.name = c.name + "__" + g.profile.name;
        if (c2.from == bit->second)
          c2.to = g.profile.name;
        else
          c2.from = g.profile.name;
        c2.carried_data = std::move(carried);
        c2.carried_declared = true;
        if (g.profile.connection) c2.security = *g.profile.connection;
        derived.connections.push_back(std::move(c2));
      }
      if (owned < c.carried_data.size())
        warn(c.name, "unowned-data",
             "carried data outside every group was dropped from the reroute");
      if (!owned_any)
        warn(c.name, "dead-reroute",
             "boundary connection carries no assigned data and was removed");
    } else if (c.from == asg.split_process || c.to == asg.split_process) {
      // Internal channel: one copy per group, carrying that group's share.
      for (const auto& g : asg.groups) {
        Connection c2 = c;
        c2.name = c.name + "__" + g.profile.name;
        if (c2.from == asg.split_process)
          c2.from = g.profile.name;
        else
          c2.to = g.profile.name;
        c2.carried_data = intersect(c.carried_data, g.data);
        c2.carried_declared = true;
        derived.connections.push_back(std::move(c2));
      }
    } else {
      Connection c2 = c;
      c2.carried_declared = true;  // freeze: derived model drops the flows
      derived.connections.push_back(std::move(c2));
    }
  }

  auto diags = validate(derived);
  for (const auto& d : diags)
    if (d.severity == Severity::Error)
      throw Error("derived model is invalid at '" + d.location +
                  "': " + d.message);
  return out;
}

PartitionResult evaluate(const SystemModel& model, const PartitionAssignment& asg,
                         bool check_coverage) {
  Derived derived = derive_model(model, asg, check_coverage);
  PartitionResult result;
  result.assignment = asg;
  result.derived = std::move(derived.model);
  result.warnings = std::move(derived.warnings);
  result.report = total_attack_surface(result.derived);
  result.tasm = result.report.tasm;
  return result;
}

}  // namespace

PartitionResult evaluate_partition(const SystemModel& model,
                                   const PartitionAssignment& assignment) {
  return evaluate(model, assignment, /*check_coverage=*/true);
}

std::string default_split_process(const SystemModel& model) {
  std::set<std::string> reached;
  for (const auto& p : enumerate_attack_paths(model))
    reached.insert(p.trusted_process);
  if (reached.empty())
    throw Error("no attack paths: nothing to split");
  if (reached.size() > 1)
    throw Error("several processes are reached by attack paths; name the split "
                "process explicitly");
  return *reached.begin();
}

PartitionResult optimize_partition(const SystemModel& model, int k,
                                   const std::vector<SecurityProfile>& profiles,
                                   SearchMode mode, Granularity granularity,
                                   const std::string& split_process) {
  if (k < 1) throw Error("k must be >= 1");
  if (k > (int)profiles.size())
    throw Error("infeasible k: only " + std::to_string(profiles.size()) +
                " profiles available");
  std::string target =
      split_process.empty() ? default_split_process(model) : split_process;
  const Component& proc = split_target(model, target);
  const Privilege& priv = *model.find_privilege(*proc.privilege_ref);

  // Assignable units.
  std::vector<std::pair<std::string, std::vector<std::string>>> units;
  if (granularity == Granularity::PerDatum) {
    for (const auto& d : priv.data) units.push_back({d, {d}});
  } else {
    std::map<std::string, std::vector<std::string>> by_prefix;
    for (const auto& d : priv.data)
      by_prefix[d.substr(0, d.find('_'))].push_back(d);
    for (auto& [prefix, members] : by_prefix)
      units.push_back({prefix, std::move(members)});
  }
  const int n = (int)units.size();

  auto make_assignment = [&](const std::vector<int>& unit_to_group,
                             int assigned_count) {
    PartitionAssignment asg;
    asg.split_process = target;
    for (int g = 0; g < k; ++g) asg.groups.push_back({profiles[g], {}});
    for (int i = 0; i < assigned_count; ++i) {
      auto& data = asg.groups[unit_to_group[i]].data;
      data.insert(data.end(), units[i].second.begin(), units[i].second.end());
    }
    for (auto& g : asg.groups) std::sort(g.data.begin(), g.data.end());
    return asg;
  };

  if (mode == SearchMode::Exhaustive) {
    if (n > 12)
      throw Error("exhaustive search is limited to 12 assignable groups, got " +
                  std::to_string(n));
    std::vector<int> a(n, 0);
    std::vector<int> best;
    double best_tasm = 0.0;
    for (;;) {
      double tasm = evaluate(model, make_assignment(a, n), true).tasm;
      if (best.empty() || tasm < best_tasm) {
        best = a;
        best_tasm = tasm;
      }
      // next assignment vector in lexicographic order
      int i = n - 1;
      while (i >= 0 && a[i] == k - 1) a[i--] = 0;
      if (i < 0) break;
      ++a[i];
    }
    if (best.empty()) {  // n == 0: only the all-empty assignment exists
      best.assign(n, 0);
    }
    return evaluate(model, make_assignment(best, n), true);
  }

  // Greedy: units in descending impact (ties by name), seed one per group,
  // then place each remaining unit where TASM grows least.
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<double> impact(n);
  for (int i = 0; i < n; ++i) impact[i] = data_impact(model, units[i].second);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (impact[x] != impact[y]) return impact[x] > impact[y];
    return units[x].first < units[y].first;
  });
  {
    std::vector<std::pair<std::string, std::vector<std::string>>> sorted;
    for (int i : order) sorted.push_back(units[i]);
    units = std::move(sorted);
  }

  std::vector<int> a(n, 0);
  for (int i = 0; i < n; ++i) {
    if (i < k) {
      a[i] = i;
      continue;
    }
    int best_g = 0;
    double best_tasm = 0.0;
    for (int g = 0; g < k; ++g) {
      a[i] = g;
      double tasm = evaluate(model, make_assignment(a, i + 1), false).tasm;
      if (g == 0 || tasm < best_tasm) {
        best_g = g;
        best_tasm = tasm;
      }
    }
    a[i] = best_g;
  }
  return evaluate(model, make_assignment(a, n), true);
}

namespace {

void apply_profile_property(SecurityProfile& profile, const std::string& prop,
                            const detail::Token& value) {
  using detail::Tok;
  auto bad = [&](const char* vocab) -> ParseError {
    return ParseError(value.span, "value " + detail::describe(value) +
                                      " is outside the vocabulary for " + prop +
                                      " (" + vocab + ")");
  };
  auto as_bool = [&]() {
    if (value.kind == Tok::Ident && value.text == "true") return true;
    if (value.kind == Tok::Ident && value.text == "false") return false;
    throw bad("true, false");
  };
  auto conn = [&]() -> ConnectionSecurity& {
    if (!profile.connection) profile.connection = ConnectionSecurity{};
    return *profile.connection;
  };
  const std::string& v = value.text;

  if (prop == "Security::Encryption") {
    if (v == "AES") conn().encryption = Encryption::AES;
    else if (v == "TripleDES") conn().encryption = Encryption::TripleDES;
    else if (v == "DES") conn().encryption = Encryption::DES;
    else if (v == "Null") conn().encryption = Encryption::Null;
    else throw bad("AES, TripleDES, DES, Null");
  } else if (prop == "Security::KeyExchange") {
    if (v == "Bits2048") conn().key_exchange = KeyExchange::Bits2048;
    else if (v == "Bits1024") conn().key_exchange = KeyExchange::Bits1024;
    else if (v == "Bits512") conn().key_exchange = KeyExchange::Bits512;
    else if (v == "Null") conn().key_exchange = KeyExchange::Null;
    else throw bad("Bits2048, Bits1024, Bits512, Null");
  } else if (prop == "Security::HashFunction") {
    if (v == "SHA2") conn().hash_function = HashFunction::SHA2;
    else if (v == "SHA1") conn().hash_function = HashFunction::SHA1;
    else if (v == "MD5") conn().hash_function = HashFunction::MD5;
    else if (v == "Null") conn().hash_function = HashFunction::Null;
    else throw bad("SHA2, SHA1, MD5, Null");
  } else if (prop == "Security::MediaType") {
    if (v == "Wired") conn().media_type = MediaType::Wired;
    else if (v == "Wireless") conn().media_type = MediaType::Wireless;
    else throw bad("Wired, Wireless");
  } else if (prop == "Security::ASLR") {
    profile.process.aslr = as_bool();
  } else if (prop == "Security::DEP") {
    profile.process.dep = as_bool();
  } else if (prop == "Security::CodeSigning") {
    profile.process.code_signing = as_bool();
  } else if (prop == "Security::Is64Bit") {
    profile.process.is_64_bit = as_bool();
  } else if (prop == "Security::CFI") {
    profile.process.cfi = as_bool();
  } else if (prop == "Security::MethodCount") {
    if (value.kind != Tok::Number || value.text.find('.') != std::string::npos)
      throw ParseError(value.span, "method count must be a nonnegative integer");
    profile.method_count = std::stoi(value.text);
  } else {
    throw ParseError(value.span, "unknown profile property '" + prop + "'");
  }
}

}  // namespace

PartitionAssignment parse_scenario(std::string_view source,
                                   const std::string& filename) {
  using detail::Tok;
  using detail::Token;
  detail::TokenStream ts(source, filename);

  PartitionAssignment asg;
  ts.expect_keyword("split");
  asg.split_process = ts.expect(Tok::Ident, "process name").text;
  ts.expect(Tok::Semi);

  while (!ts.at(Tok::End)) {
    ts.expect_keyword("profile");
    PartitionGroup group;
    group.profile.name = ts.expect(Tok::Ident, "profile name").text;
    ts.expect(Tok::LBrace);
    for (;;) {
      if (ts.at_keyword("data")) {
        ts.take();
        group.data.push_back(ts.expect(Tok::Ident, "identifier").text);
        while (ts.at(Tok::Comma)) {
          ts.take();
          group.data.push_back(ts.expect(Tok::Ident, "identifier").text);
        }
        ts.expect(Tok::Semi);
      } else if (ts.at_keyword("properties")) {
        ts.take();
        ts.expect(Tok::LBrace);
        while (!ts.at(Tok::RBrace)) {
          Token ns = ts.expect(Tok::Ident, "property name");
          ts.expect(Tok::ColonColon);
          Token leaf = ts.expect(Tok::Ident, "property name");
          std::string prop = ns.text + "::" + leaf.text;
          ts.expect(Tok::FatArrow);
          Token value = ts.take();
          ts.expect(Tok::Semi);
          apply_profile_property(group.profile, prop, value);
        }
        ts.expect(Tok::RBrace);
      } else {
        break;
      }
    }
    ts.expect(Tok::RBrace);
    std::sort(group.data.begin(), group.data.end());
    group.data.erase(std::unique(group.data.begin(), group.data.end()),
                     group.data.end());
    asg.groups.push_back(std::move(group));
  }
  if (asg.groups.empty())
    throw ParseError({filename, 1, 1}, "scenario declares no profiles");
  return asg;
}

}  // namespace asurf
