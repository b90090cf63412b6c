#include "asurf/paths.hpp"

#include <algorithm>

namespace asurf {

std::vector<AttackPath> enumerate_attack_paths(const SystemModel& m) {
  std::vector<AttackPath> out;

  for (const auto& c : m.connections) {
    const Component* a = m.find_component(c.from);
    const Component* b = m.find_component(c.to);
    if (!a || !b) throw Error("connection '" + c.name + "' has unresolved endpoints");
    if (a->trust == b->trust) continue;

    const Component* untrusted = a->trust == Trust::Untrusted ? a : b;
    const Component* trusted = a->trust == Trust::Untrusted ? b : a;

    if (trusted->kind == ComponentKind::Process) {
      out.push_back({c.name, untrusted->name, trusted->name});
      continue;
    }

    if (trusted->kind == ComponentKind::Bus) {
      // Extend through the bus to every trusted process attached to it.
      // Depth is exactly one: connection -> bus -> process.
      bool reached = false;
      for (const auto& link : m.connections) {
        const std::string* other = nullptr;
        if (link.from == trusted->name)
          other = &link.to;
        else if (link.to == trusted->name)
          other = &link.from;
        else
          continue;
        const Component* p = m.find_component(*other);
        if (p && p->kind == ComponentKind::Process && p->trust == Trust::Trusted) {
          out.push_back({c.name, untrusted->name, p->name});
          reached = true;
        }
      }
      if (!reached)
        throw Error("dead boundary edge: connection '" + c.name +
                    "' reaches no trusted process");
      continue;
    }

    throw Error("dead boundary edge: connection '" + c.name +
                "' reaches no trusted process");
  }

  std::sort(out.begin(), out.end(), [](const AttackPath& x, const AttackPath& y) {
    return std::tie(x.connection, x.trusted_process) <
           std::tie(y.connection, y.trusted_process);
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace asurf
