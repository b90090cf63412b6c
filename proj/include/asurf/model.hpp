#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace asurf {

class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class ComponentKind { Process, Device, Bus, System, Subprogram };
enum class Trust { Trusted, Untrusted };

enum class Encryption { AES, TripleDES, DES, Null };
enum class KeyExchange { Bits2048, Bits1024, Bits512, Null };
enum class HashFunction { SHA2, SHA1, MD5, Null };
enum class MediaType { Wired, Wireless };

// Channel protection factors. Default-constructed is the most exposed
// configuration (no crypto, wireless), which is also the fallback for
// connections that declare no security block.
struct ConnectionSecurity {
  Encryption encryption = Encryption::Null;
  KeyExchange key_exchange = KeyExchange::Null;
  HashFunction hash_function = HashFunction::Null;
  MediaType media_type = MediaType::Wireless;

  bool operator==(const ConnectionSecurity&) const = default;
};

// Exploit mitigations of a process. Default is all-off (most exposed).
struct ProcessSecurity {
  bool aslr = false;
  bool dep = false;
  bool code_signing = false;
  bool is_64_bit = false;
  bool cfi = false;

  bool operator==(const ProcessSecurity&) const = default;
};

struct DataItem {
  enum class Source { Declared, Computed };

  std::string name;
  double impact_kw = 0.0;  // loss of load if this datum is maliciously actuated
  Source source = Source::Declared;

  bool operator==(const DataItem&) const = default;
};

struct Component {
  std::string name;
  ComponentKind kind = ComponentKind::Device;
  Trust trust = Trust::Trusted;
  std::optional<ProcessSecurity> security;  // processes only
  std::optional<int> method_count;          // processes/subprograms only
  std::optional<std::string> privilege_ref; // processes only

  bool operator==(const Component&) const = default;
};

struct Connection {
  std::string name;
  std::string from;
  std::string to;
  std::optional<ConnectionSecurity> security;
  // Effective carried set, sorted and unique. Either declared in the source
  // (carried_declared) or derived by finalize() as the union of flow data
  // traversing this connection.
  std::vector<std::string> carried_data;
  bool carried_declared = false;

  bool operator==(const Connection&) const = default;
};

struct Privilege {
  std::string name;
  std::vector<std::string> data;  // sorted, unique

  bool operator==(const Privilege&) const = default;
};

struct Flow {
  std::string name;
  std::vector<std::string> hops;  // ordered component names
  std::vector<std::string> data;  // sorted, unique

  bool operator==(const Flow&) const = default;
};

struct SystemModel {
  std::string name;
  std::vector<Component> components;
  std::vector<Connection> connections;
  std::vector<DataItem> data_items;
  std::vector<Privilege> privileges;
  std::vector<Flow> flows;

  bool operator==(const SystemModel&) const = default;

  const Component* find_component(const std::string& n) const;
  const Connection* find_connection(const std::string& n) const;
  const DataItem* find_data(const std::string& n) const;
  const Privilege* find_privilege(const std::string& n) const;
};

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string location;  // component/connection/data/privilege/flow name
  std::string rule;
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

// Fills in derived carried_data for connections without a declared set and
// normalizes all identifier sets (sort + unique). Call after building a
// model programmatically; the parser calls it for you.
void finalize(SystemModel& model);

// Checks every structural invariant. Empty result means the model is clean.
// Deterministic: diagnostics are sorted by (location, rule, message).
std::vector<Diagnostic> validate(const SystemModel& model);

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) {
    return d.severity == Severity::Error;
  });
}

// Sum of imp(d) over a set of data identifiers (set semantics: duplicates
// in `ids` count once). Throws Error on an unresolved identifier.
double data_impact(const SystemModel& model, const std::vector<std::string>& ids);

std::string to_string(ComponentKind k);
std::string to_string(Trust t);
std::string to_string(Encryption e);
std::string to_string(KeyExchange k);
std::string to_string(HashFunction h);
std::string to_string(MediaType m);
std::string to_string(Severity s);

}  // namespace asurf
