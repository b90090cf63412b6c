#pragma once

#include <vector>

#include "asurf/model.hpp"
#include "asurf/paths.hpp"

namespace asurf {

// Factor scores for channel protection. Stronger mechanisms score higher:
// AES 3, 3DES 2, DES 1, none 0; likewise for key size and hash strength;
// wired media scores 1, wireless 0.
int encryption_score(Encryption e);
int key_exchange_score(KeyExchange k);
int hash_function_score(HashFunction h);
int media_type_score(MediaType m);

// t_c: sum of the four factor scores, 0..10.
int connection_t(const ConnectionSecurity& sec);

// exp_c = 1 / (1 + t_c), in (1/11, 1].
double connection_exposure(const ConnectionSecurity& sec);

// t_p: number of enabled mitigations, 0..5.
int process_t(const ProcessSecurity& sec);

// exp_p = M / (1 + t_p).
double process_exposure(const ProcessSecurity& sec, int method_count);

// imp_c: summed impact of the data carried on the connection.
double channel_impact(const SystemModel& model, const Connection& conn);

// imp_p: summed impact of the data covered by the process's privilege.
// Throws if the process has no privilege.
double process_impact(const SystemModel& model, const Component& proc);

struct PathScore {
  AttackPath path;
  int t_c = 0;
  double exp_c = 0.0;
  double imp_c_kw = 0.0;
  double as_c = 0.0;
  int t_p = 0;
  double exp_p = 0.0;
  double imp_p_kw = 0.0;
  double as_p = 0.0;
  double total = 0.0;  // as_c + as_p
};

struct SurfaceReport {
  std::vector<PathScore> paths;
  double tasm = 0.0;
};

// One PathScore per attack path in the canonical path order; tasm is the
// sum of per-path totals accumulated in that fixed order (as_c then as_p),
// so repeated runs are bit-identical.
SurfaceReport total_attack_surface(const SystemModel& model);

}  // namespace asurf
