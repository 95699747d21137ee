#include "dlmc/enumeration.hpp"

#include <string>

namespace dlmc {

std::int64_t checked_state_count(const DiscreteDomain& domain, std::int64_t cap) {
  std::int64_t n = 1;
  for (int i = 0; i < domain.dim(); ++i) {
    if (n > cap / domain.n_values()) {
      throw EnumerationCapError(
          "state space " + std::to_string(domain.n_values()) + "^" +
          std::to_string(domain.dim()) + " exceeds enumeration cap " +
          std::to_string(cap) + "; use a sampling-based estimate instead");
    }
    n *= domain.n_values();
  }
  return n;
}

std::int64_t state_index(const DiscreteDomain& domain, const State& s) {
  check_state(domain, s);
  std::int64_t idx = 0;
  for (int i = 0; i < domain.dim(); ++i) idx = idx * domain.n_values() + s.codes[i];
  return idx;
}

State state_at(const DiscreteDomain& domain, std::int64_t index) {
  State s;
  s.codes.assign(domain.dim(), 0);
  for (int i = domain.dim() - 1; i >= 0; --i) {
    s.codes[i] = static_cast<std::int32_t>(index % domain.n_values());
    index /= domain.n_values();
  }
  return s;
}

void for_each_state(const DiscreteDomain& domain,
                    const std::function<void(std::int64_t, const State&)>& fn,
                    std::int64_t cap) {
  StateEnumeration en(domain, cap);
  State s;
  std::int64_t i = 0;
  while (en.next(s)) fn(i++, s);
}

}  // namespace dlmc
