#include "asurf/metrics.hpp"

namespace asurf {

int encryption_score(Encryption e) {
  switch (e) {
    case Encryption::AES: return 3;
    case Encryption::TripleDES: return 2;
    case Encryption::DES: return 1;
    case Encryption::Null: return 0;
  }
  return 0;
}

int key_exchange_score(KeyExchange k) {
  switch (k) {
    case KeyExchange::Bits2048: return 3;
    case KeyExchange::Bits1024: return 2;
    case KeyExchange::Bits512: return 1;
    case KeyExchange::Null: return 0;
  }
  return 0;
}

int hash_function_score(HashFunction h) {
  switch (h) {
    case HashFunction::SHA2: return 3;
    case HashFunction::SHA1: return 2;
    case HashFunction::MD5: return 1;
    case HashFunction::Null: return 0;
  }
  return 0;
}

int media_type_score(MediaType m) {
  return m == MediaType::Wired ? 1 : 0;
}

int connection_t(const ConnectionSecurity& sec) {
  return encryption_score(sec.encryption) + key_exchange_score(sec.key_exchange) +
         hash_function_score(sec.hash_function) + media_type_score(sec.media_type);
}

double connection_exposure(const ConnectionSecurity& sec) {
  return 1.0 / (1.0 + connection_t(sec));
}

int process_t(const ProcessSecurity& sec) {
  return int(sec.aslr) + int(sec.dep) + int(sec.code_signing) +
         int(sec.is_64_bit) + int(sec.cfi);
}

double process_exposure(const ProcessSecurity& sec, int method_count) {
  if (method_count < 0) throw Error("method count must be >= 0");
  return double(method_count) / (1.0 + process_t(sec));
}

double channel_impact(const SystemModel& model, const Connection& conn) {
  return data_impact(model, conn.carried_data);
}

double process_impact(const SystemModel& model, const Component& proc) {
  if (!proc.privilege_ref)
    throw Error("process '" + proc.name + "' has no privilege");
  const Privilege* priv = model.find_privilege(*proc.privilege_ref);
  if (!priv)
    throw Error("process '" + proc.name + "' references unknown privilege '" +
                *proc.privilege_ref + "'");
  return data_impact(model, priv->data);
}

SurfaceReport total_attack_surface(const SystemModel& model) {
  SurfaceReport report;
  for (const AttackPath& path : enumerate_attack_paths(model)) {
    const Connection* conn = model.find_connection(path.connection);
    const Component* proc = model.find_component(path.trusted_process);

    PathScore s;
    s.path = path;

    ConnectionSecurity csec =
        conn->security ? *conn->security : ConnectionSecurity{};
    s.t_c = connection_t(csec);
    s.exp_c = connection_exposure(csec);
    s.imp_c_kw = channel_impact(model, *conn);
    s.as_c = s.exp_c * s.imp_c_kw;

    ProcessSecurity psec = proc->security ? *proc->security : ProcessSecurity{};
    s.t_p = process_t(psec);
    s.exp_p = process_exposure(psec, proc->method_count.value_or(0));
    s.imp_p_kw = process_impact(model, *proc);
    s.as_p = s.exp_p * s.imp_p_kw;

    s.total = s.as_c + s.as_p;
    report.tasm += s.as_c;
    report.tasm += s.as_p;
    report.paths.push_back(s);
  }
  return report;
}

}  // namespace asurf
