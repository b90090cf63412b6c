// Shared helpers for the unit and acceptance tests: fixture access, toy
// model builders, random model generators, and an independently written
// naive surface evaluator used as an oracle.
#pragma once

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "asurf/model.hpp"
#include "asurf/paths.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// A star of untrusted devices, each with its own connection to one trusted
// process holding a privilege over all the data.
inline asurf::SystemModel star_model(int n_devices, double datum_kw,
                                     asurf::ConnectionSecurity cs,
                                     asurf::ProcessSecurity ps, int method_count) {
  using namespace asurf;
  SystemModel m;
  m.name = "Star";
  Component fep;
  fep.name = "FEP";
  fep.kind = ComponentKind::Process;
  fep.trust = Trust::Trusted;
  fep.security = ps;
  fep.method_count = method_count;
  fep.privilege_ref = "v_fep";
  m.components.push_back(fep);
  Privilege priv;
  priv.name = "v_fep";
  for (int i = 0; i < n_devices; ++i) {
    std::string id = "d" + std::to_string(i);
    m.data_items.push_back({id, datum_kw, DataItem::Source::Declared});
    priv.data.push_back(id);
    Component dev;
    dev.name = "U" + std::to_string(i);
    dev.kind = ComponentKind::Device;
    dev.trust = Trust::Untrusted;
    m.components.push_back(dev);
    Connection c;
    c.name = "c" + std::to_string(i);
    c.from = dev.name;
    c.to = "FEP";
    c.security = cs;
    c.carried_data = {id};
    c.carried_declared = true;
    m.connections.push_back(c);
  }
  m.privileges.push_back(priv);
  finalize(m);
  return m;
}

inline asurf::ConnectionSecurity full_channel() {
  return {asurf::Encryption::AES, asurf::KeyExchange::Bits2048,
          asurf::HashFunction::SHA2, asurf::MediaType::Wired};
}

inline asurf::ProcessSecurity full_process() {
  return {true, true, true, true, true};
}

// Random model: up to 4 boundary connections into one trusted process, up
// to 8 data items, random channel security and mitigation flags.
inline asurf::SystemModel random_model(std::mt19937& rng) {
  using namespace asurf;
  std::uniform_int_distribution<int> nd_dist(1, 8), np_dist(1, 4);
  std::uniform_real_distribution<double> kw(0.0, 1000.0);
  std::uniform_int_distribution<int> four(0, 3), two(0, 1), m_dist(0, 20);

  SystemModel m;
  m.name = "Rand";
  int nd = nd_dist(rng), np = np_dist(rng);
  for (int i = 0; i < nd; ++i)
    m.data_items.push_back({"d" + std::to_string(i), kw(rng),
                            DataItem::Source::Declared});

  Component fep;
  fep.name = "P";
  fep.kind = ComponentKind::Process;
  fep.trust = Trust::Trusted;
  fep.security = ProcessSecurity{bool(two(rng)), bool(two(rng)), bool(two(rng)),
                                 bool(two(rng)), bool(two(rng))};
  fep.method_count = m_dist(rng);
  fep.privilege_ref = "v";
  m.components.push_back(fep);

  Privilege priv;
  priv.name = "v";
  for (int i = 0; i < nd; ++i)
    if (two(rng) || i == 0) priv.data.push_back("d" + std::to_string(i));
  m.privileges.push_back(priv);

  for (int p = 0; p < np; ++p) {
    Component dev;
    dev.name = "U" + std::to_string(p);
    dev.kind = ComponentKind::Device;
    dev.trust = Trust::Untrusted;
    m.components.push_back(dev);
    Connection c;
    c.name = "c" + std::to_string(p);
    c.from = dev.name;
    c.to = "P";
    c.security = ConnectionSecurity{
        static_cast<Encryption>(four(rng)), static_cast<KeyExchange>(four(rng)),
        static_cast<HashFunction>(four(rng)), static_cast<MediaType>(two(rng))};
    for (int i = 0; i < nd; ++i)
      if (two(rng) || i == p % nd) c.carried_data.push_back("d" + std::to_string(i));
    c.carried_declared = true;
    m.connections.push_back(c);
  }
  finalize(m);
  return m;
}

// Single-FEP model for partition tests: one device + connection per datum,
// every impact strictly positive, privilege covering all data.
inline asurf::SystemModel random_single_fep(std::mt19937& rng, int max_data = 6) {
  using namespace asurf;
  std::uniform_int_distribution<int> nd_dist(2, max_data);
  std::uniform_real_distribution<double> kw(1.0, 1000.0);
  std::uniform_int_distribution<int> four(0, 3), two(0, 1), m_dist(1, 20);

  int nd = nd_dist(rng);
  SystemModel m = star_model(nd, 1.0,
                             ConnectionSecurity{static_cast<Encryption>(four(rng)),
                                                static_cast<KeyExchange>(four(rng)),
                                                static_cast<HashFunction>(four(rng)),
                                                static_cast<MediaType>(two(rng))},
                             ProcessSecurity{bool(two(rng)), bool(two(rng)),
                                             bool(two(rng)), bool(two(rng)),
                                             bool(two(rng))},
                             m_dist(rng));
  for (auto& d : m.data_items) d.impact_kw = kw(rng);
  return m;
}

// Independent re-derivation of the surface metric, written against the
// published formulas rather than the library internals.
inline double naive_tasm(const asurf::SystemModel& m) {
  using namespace asurf;
  static const int enc_score[] = {3, 2, 1, 0};    // AES, 3DES, DES, none
  static const int kex_score[] = {3, 2, 1, 0};    // 2048, 1024, 512, none
  static const int hash_score[] = {3, 2, 1, 0};   // SHA-2, SHA-1, MD5, none

  auto impact_of = [&](const std::vector<std::string>& ids) {
    std::set<std::string> uniq(ids.begin(), ids.end());
    double sum = 0.0;
    for (const auto& id : uniq)
      for (const auto& d : m.data_items)
        if (d.name == id) sum += d.impact_kw;
    return sum;
  };
  auto comp = [&](const std::string& n) -> const Component* {
    for (const auto& c : m.components)
      if (c.name == n) return &c;
    return nullptr;
  };

  // (connection, untrusted end, process) triples, deduplicated.
  std::set<std::tuple<std::string, std::string, std::string>> paths;
  for (const auto& c : m.connections) {
    const Component* a = comp(c.from);
    const Component* b = comp(c.to);
    if (a->trust == b->trust) continue;
    const Component* t = a->trust == Trust::Trusted ? a : b;
    const Component* u = a->trust == Trust::Trusted ? b : a;
    if (t->kind == ComponentKind::Process) {
      paths.insert({c.name, u->name, t->name});
    } else if (t->kind == ComponentKind::Bus) {
      for (const auto& link : m.connections) {
        std::string other;
        if (link.from == t->name) other = link.to;
        else if (link.to == t->name) other = link.from;
        else continue;
        const Component* p = comp(other);
        if (p && p->kind == ComponentKind::Process && p->trust == Trust::Trusted)
          paths.insert({c.name, u->name, p->name});
      }
    }
  }

  double tasm = 0.0;
  for (const auto& [cn, un, pn] : paths) {
    const Connection* c = nullptr;
    for (const auto& x : m.connections)
      if (x.name == cn) c = &x;
    const Component* p = comp(pn);

    int tc = 0;
    if (c->security) {
      tc = enc_score[int(c->security->encryption)] +
           kex_score[int(c->security->key_exchange)] +
           hash_score[int(c->security->hash_function)] +
           (c->security->media_type == MediaType::Wired ? 1 : 0);
    }
    double as_c = impact_of(c->carried_data) / (1.0 + tc);

    int tp = 0;
    if (p->security) {
      const auto& s = *p->security;
      tp = s.aslr + s.dep + s.code_signing + s.is_64_bit + s.cfi;
    }
    int mcount = p->method_count ? *p->method_count : 0;
    double imp_p = 0.0;
    for (const auto& pr : m.privileges)
      if (p->privilege_ref && pr.name == *p->privilege_ref)
        imp_p = impact_of(pr.data);
    double as_p = double(mcount) / (1.0 + tp) * imp_p;

    tasm += as_c + as_p;
  }
  return tasm;
}

// All models reachable from `m` by strengthening exactly one security
// mechanism one step: enabling one mitigation flag or raising one channel
// factor to the next rung of its ladder.
inline std::vector<asurf::SystemModel> single_step_upgrades(
    const asurf::SystemModel& m) {
  using namespace asurf;
  std::vector<SystemModel> out;
  for (size_t i = 0; i < m.connections.size(); ++i) {
    ConnectionSecurity sec = m.connections[i].security
                                 ? *m.connections[i].security
                                 : ConnectionSecurity{};
    auto push = [&](ConnectionSecurity next) {
      SystemModel v = m;
      v.connections[i].security = next;
      out.push_back(std::move(v));
    };
    ConnectionSecurity s = sec;
    switch (sec.encryption) {
      case Encryption::Null: s.encryption = Encryption::DES; push(s); break;
      case Encryption::DES: s.encryption = Encryption::TripleDES; push(s); break;
      case Encryption::TripleDES: s.encryption = Encryption::AES; push(s); break;
      case Encryption::AES: break;
    }
    s = sec;
    switch (sec.key_exchange) {
      case KeyExchange::Null: s.key_exchange = KeyExchange::Bits512; push(s); break;
      case KeyExchange::Bits512: s.key_exchange = KeyExchange::Bits1024; push(s); break;
      case KeyExchange::Bits1024: s.key_exchange = KeyExchange::Bits2048; push(s); break;
      case KeyExchange::Bits2048: break;
    }
    s = sec;
    switch (sec.hash_function) {
      case HashFunction::Null: s.hash_function = HashFunction::MD5; push(s); break;
      case HashFunction::MD5: s.hash_function = HashFunction::SHA1; push(s); break;
      case HashFunction::SHA1: s.hash_function = HashFunction::SHA2; push(s); break;
      case HashFunction::SHA2: break;
    }
    if (sec.media_type == MediaType::Wireless) {
      s = sec;
      s.media_type = MediaType::Wired;
      push(s);
    }
  }
  for (size_t i = 0; i < m.components.size(); ++i) {
    if (m.components[i].kind != asurf::ComponentKind::Process) continue;
    ProcessSecurity base =
        m.components[i].security ? *m.components[i].security : ProcessSecurity{};
    for (bool ProcessSecurity::* flag :
         {&ProcessSecurity::aslr, &ProcessSecurity::dep,
          &ProcessSecurity::code_signing, &ProcessSecurity::is_64_bit,
          &ProcessSecurity::cfi}) {
      if (base.*flag) continue;
      SystemModel v = m;
      ProcessSecurity sec = base;
      sec.*flag = true;
      v.components[i].security = sec;
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace testutil
