#pragma once

#include "excdiv/forest.hpp"

namespace fixtures {

// Shared hand-verifiable anchors. prox entries are 1-based here and
// converted to the library's 0-based storage.
inline excdiv::ProximityForest make(int s,
                                    std::vector<std::pair<int, std::vector<int>>> prox) {
  excdiv::ProximityForest f;
  f.s = s;
  f.prox.assign(s, {});
  for (auto& [i, ps] : prox) {
    for (int& j : ps) --j;
    f.prox[i - 1] = ps;
  }
  excdiv::validate(f);
  return f;
}

inline excdiv::ProximityForest chain1() { return make(1, {}); }
inline excdiv::ProximityForest chain3() { return make(3, {{2, {1}}, {3, {2}}}); }
inline excdiv::ProximityForest sat3() { return make(3, {{2, {1}}, {3, {1, 2}}}); }
inline excdiv::ProximityForest pair4() { return make(4, {{2, {1}}, {4, {3}}}); }

}  // namespace fixtures
