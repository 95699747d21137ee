#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "dlmc/domain.hpp"

namespace dlmc {

// Default ceiling on S^d for exhaustive enumeration (keeps exact-oracle runs
// around a minute at desk scale).
inline constexpr std::int64_t kDefaultStateCap = std::int64_t{1} << 24;

struct EnumerationCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Total state count S^d; throws EnumerationCapError when it exceeds `cap`,
// telling the caller to fall back to sampling.
std::int64_t checked_state_count(const DiscreteDomain& domain,
                                 std::int64_t cap = kDefaultStateCap);

// Lexicographic index <-> state bijection (coordinate 0 most significant,
// so the last coordinate varies fastest).
std::int64_t state_index(const DiscreteDomain& domain, const State& s);
State state_at(const DiscreteDomain& domain, std::int64_t index);

// Yields every state exactly once in lexicographic order.
class StateEnumeration {
 public:
  explicit StateEnumeration(const DiscreteDomain& domain,
                            std::int64_t cap = kDefaultStateCap)
      : domain_(domain), total_(checked_state_count(domain, cap)) {}

  std::int64_t size() const { return total_; }

  // Returns false when exhausted; otherwise writes the next state.
  bool next(State& out) {
    if (cursor_ >= total_) return false;
    out = state_at(domain_, cursor_++);
    return true;
  }

 private:
  DiscreteDomain domain_;
  std::int64_t total_;
  std::int64_t cursor_ = 0;
};

void for_each_state(const DiscreteDomain& domain,
                    const std::function<void(std::int64_t, const State&)>& fn,
                    std::int64_t cap = kDefaultStateCap);

}  // namespace dlmc
