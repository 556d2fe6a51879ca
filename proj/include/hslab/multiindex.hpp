#pragma once

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "hslab/common.hpp"

namespace hslab {

// Multi-index alpha in N^d. Lexicographic ordering from std::vector makes it
// usable as a map key; the serialized form is comma-separated, "2,0,0".
using MultiIndex = std::vector<int>;

inline int mi_order(const MultiIndex& a) {
  return std::accumulate(a.begin(), a.end(), 0);
}

inline std::string mi_format(const MultiIndex& a) {
  std::ostringstream os;
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) os << ',';
    os << a[i];
  }
  return os.str();
}

inline MultiIndex mi_parse(const std::string& s, int expected_dims = -1) {
  MultiIndex a;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    size_t pos = 0;
    int v;
    try {
      v = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw InputError("bad multi-index component '" + tok + "' in '" + s + "'");
    }
    if (pos != tok.size() || v < 0)
      throw InputError("bad multi-index component '" + tok + "' in '" + s + "'");
    a.push_back(v);
  }
  if (a.empty()) throw InputError("empty multi-index '" + s + "'");
  if (expected_dims >= 0 && static_cast<int>(a.size()) != expected_dims)
    throw InputError("multi-index '" + s + "' has " + std::to_string(a.size()) +
                     " components, expected " + std::to_string(expected_dims));
  return a;
}

// All alpha in N^dims with |alpha| == k, lexicographically sorted.
inline std::vector<MultiIndex> mi_with_order(int dims, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dims, 0);
  // Recursive enumeration without recursion: distribute k over dims slots.
  std::vector<int> rem(dims + 1, 0);
  auto emit = [&](auto&& self, int slot, int left) -> void {
    if (slot == dims - 1) {
      cur[slot] = left;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[slot] = v;
      self(self, slot + 1, left - v);
    }
  };
  (void)rem;
  if (dims > 0) emit(emit, 0, k);
  return out;
}

inline std::vector<MultiIndex> mi_up_to_order(int dims, int k) {
  std::vector<MultiIndex> out;
  for (int j = 0; j <= k; ++j) {
    auto part = mi_with_order(dims, j);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// xi^alpha for xi in C^d.
inline Complex mi_power(const std::vector<Complex>& xi, const MultiIndex& a) {
  Complex p{1.0, 0.0};
  for (size_t i = 0; i < a.size(); ++i)
    for (int k = 0; k < a[i]; ++k) p *= xi[i];
  return p;
}

}  // namespace hslab
