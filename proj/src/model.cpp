#include "asurf/model.hpp"

#include <map>
#include <set>

namespace asurf {

namespace {

template <typename T>
const T* find_by_name(const std::vector<T>& items, const std::string& n) {
  for (const auto& it : items)
    if (it.name == n) return &it;
  return nullptr;
}

void sort_unique(std::vector<std::string>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

const Component* SystemModel::find_component(const std::string& n) const {
  return find_by_name(components, n);
}
const Connection* SystemModel::find_connection(const std::string& n) const {
  return find_by_name(connections, n);
}
const DataItem* SystemModel::find_data(const std::string& n) const {
  return find_by_name(data_items, n);
}
const Privilege* SystemModel::find_privilege(const std::string& n) const {
  return find_by_name(privileges, n);
}

// Union of flow data over flows whose hop sequence traverses the connection
// in either direction.
static std::vector<std::string> derived_carried(const SystemModel& m,
                                                const Connection& c) {
  std::set<std::string> out;
  for (const auto& f : m.flows) {
    for (size_t i = 0; i + 1 < f.hops.size(); ++i) {
      const std::string& a = f.hops[i];
      const std::string& b = f.hops[i + 1];
      if ((a == c.from && b == c.to) || (a == c.to && b == c.from)) {
        out.insert(f.data.begin(), f.data.end());
        break;
      }
    }
  }
  return {out.begin(), out.end()};
}

void finalize(SystemModel& model) {
  for (auto& p : model.privileges) sort_unique(p.data);
  for (auto& f : model.flows) sort_unique(f.data);
  for (auto& c : model.connections) {
    if (c.carried_declared)
      sort_unique(c.carried_data);
    else
      c.carried_data = derived_carried(model, c);
  }
}

std::vector<Diagnostic> validate(const SystemModel& m) {
  std::vector<Diagnostic> diags;
  auto error = [&](const std::string& loc, const std::string& rule,
                   const std::string& msg) {
    diags.push_back({Severity::Error, loc, rule, msg});
  };
  auto warning = [&](const std::string& loc, const std::string& rule,
                     const std::string& msg) {
    diags.push_back({Severity::Warning, loc, rule, msg});
  };

  auto check_dups = [&](auto& items, const std::string& what) {
    std::map<std::string, int> seen;
    for (const auto& it : items) ++seen[it.name];
    for (const auto& [n, count] : seen)
      if (count > 1)
        error(n, "duplicate-identifier",
              "duplicate " + what + " name '" + n + "'");
  };
  check_dups(m.components, "component");
  check_dups(m.data_items, "data item");
  check_dups(m.privileges, "privilege");

  auto data_exists = [&](const std::string& n) {
    return m.find_data(n) != nullptr;
  };

  for (const auto& c : m.components) {
    bool proc = c.kind == ComponentKind::Process;
    bool prog = c.kind == ComponentKind::Subprogram;
    if (c.method_count && !(proc || prog))
      error(c.name, "method-count-kind",
            "method count on a component that is not a process or subprogram");
    if (c.method_count && *c.method_count < 0)
      error(c.name, "negative-method-count", "method count must be >= 0");
    if (c.security && !proc)
      error(c.name, "security-kind",
            "process security flags on a non-process component");
    if (c.privilege_ref) {
      if (!proc)
        error(c.name, "privilege-ref-kind",
              "privilege attached to a non-process component");
      else if (!m.find_privilege(*c.privilege_ref))
        error(c.name, "unresolved-privilege",
              "unknown privilege '" + *c.privilege_ref + "'");
    }
    if ((proc || prog) && c.trust == Trust::Trusted && !c.method_count)
      warning(c.name, "missing-method-count",
              "no method count declared; exposure defaults to 0");
  }

  for (const auto& c : m.connections) {
    if (!m.find_component(c.from))
      error(c.name, "unresolved-endpoint",
            "unresolved endpoint '" + c.from + "'");
    if (!m.find_component(c.to))
      error(c.name, "unresolved-endpoint", "unresolved endpoint '" + c.to + "'");
    if (c.from == c.to)
      error(c.name, "self-loop", "connection endpoints must differ");
    std::set<std::string> seen;
    for (const auto& d : c.carried_data) {
      if (!seen.insert(d).second)
        error(c.name, "duplicate-data-ref", "datum '" + d + "' carried twice");
      if (!data_exists(d))
        error(c.name, "unresolved-data", "unknown datum '" + d + "'");
    }
    if (c.carried_declared) {
      auto derived = derived_carried(m, c);
      if (!derived.empty() && derived != c.carried_data)
        warning(c.name, "carried-override",
                "declared carried data overrides the set derived from flows");
    }
  }

  for (const auto& d : m.data_items) {
    if (d.impact_kw < 0.0)
      error(d.name, "negative-impact", "impact must be >= 0 kW");
  }

  for (const auto& p : m.privileges) {
    for (const auto& d : p.data)
      if (!data_exists(d))
        error(p.name, "unresolved-data", "unknown datum '" + d + "'");
  }

  for (const auto& f : m.flows) {
    for (const auto& h : f.hops)
      if (!m.find_component(h))
        error(f.name, "unresolved-hop", "unknown component '" + h + "'");
    for (const auto& d : f.data)
      if (!data_exists(d))
        error(f.name, "unresolved-data", "unknown datum '" + d + "'");
    for (size_t i = 0; i + 1 < f.hops.size(); ++i) {
      const std::string& a = f.hops[i];
      const std::string& b = f.hops[i + 1];
      bool connected = false;
      for (const auto& c : m.connections)
        if ((c.from == a && c.to == b) || (c.from == b && c.to == a)) {
          connected = true;
          break;
        }
      if (!connected && m.find_component(a) && m.find_component(b))
        error(f.name, "flow-gap",
              "no connection between '" + a + "' and '" + b + "'");
    }
  }

  std::sort(diags.begin(), diags.end(),
            [](const Diagnostic& a, const Diagnostic& b) {
              return std::tie(a.location, a.rule, a.message) <
                     std::tie(b.location, b.rule, b.message);
            });
  return diags;
}

double data_impact(const SystemModel& m, const std::vector<std::string>& ids) {
  std::set<std::string> unique(ids.begin(), ids.end());
  double sum = 0.0;
  for (const auto& id : unique) {
    const DataItem* d = m.find_data(id);
    if (!d) throw Error("unresolved data identifier '" + id + "'");
    sum += d->impact_kw;
  }
  return sum;
}

std::string to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Process: return "process";
    case ComponentKind::Device: return "device";
    case ComponentKind::Bus: return "bus";
    case ComponentKind::System: return "system";
    case ComponentKind::Subprogram: return "subprogram";
  }
  return "?";
}

std::string to_string(Trust t) {
  return t == Trust::Trusted ? "trusted" : "untrusted";
}

std::string to_string(Encryption e) {
  switch (e) {
    case Encryption::AES: return "AES";
    case Encryption::TripleDES: return "TripleDES";
    case Encryption::DES: return "DES";
    case Encryption::Null: return "Null";
  }
  return "?";
}

std::string to_string(KeyExchange k) {
  switch (k) {
    case KeyExchange::Bits2048: return "Bits2048";
    case KeyExchange::Bits1024: return "Bits1024";
    case KeyExchange::Bits512: return "Bits512";
    case KeyExchange::Null: return "Null";
  }
  return "?";
}

std::string to_string(HashFunction h) {
  switch (h) {
    case HashFunction::SHA2: return "SHA2";
    case HashFunction::SHA1: return "SHA1";
    case HashFunction::MD5: return "MD5";
    case HashFunction::Null: return "Null";
  }
  return "?";
}

std::string to_string(MediaType m) {
  return m == MediaType::Wired ? "Wired" : "Wireless";
}

std::string to_string(Severity s) {
  return s == Severity::Error ? "error" : "warning";
}

}  // namespace asurf
