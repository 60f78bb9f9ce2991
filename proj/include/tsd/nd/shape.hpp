#pragma once

#include <functional>
#include <vector>

#include "tsd/config.hpp"
#include "tsd/nd/partition.hpp"

namespace tsd::nd {

// Per-class token count, with bot (-1) standing for any count in the medium
// band [q(phi), |V_i| - q(phi)].
struct shape {
  static constexpr int bot = -1;
  std::vector<int> entries;

  bool operator==(const shape& o) const { return entries == o.entries; }
  bool operator<(const shape& o) const { return entries < o.entries; }
};

inline shape shape_of(const vertex_type_partition& p, const configuration& r, long long qphi) {
  shape s;
  s.entries.resize(p.size());
  std::vector<int> count(p.size(), 0);
  for (vertex v : r) ++count[p.class_of[v]];
  for (int i = 0; i < p.size(); ++i) {
    long long size_i = static_cast<long long>(p.classes[i].size());
    if (qphi <= count[i] && count[i] <= size_i - qphi)
      s.entries[i] = shape::bot;
    else
      s.entries[i] = count[i];
  }
  return s;
}

// Candidate entries for one class, in enumeration order: low exact counts,
// then bot if the medium band is nonempty, then high exact counts.
inline std::vector<int> class_entries(long long class_size, long long qphi) {
  std::vector<int> out;
  for (long long c = 0; c <= class_size && c < qphi; ++c) out.push_back(static_cast<int>(c));
  if (qphi <= class_size - qphi) out.push_back(shape::bot);
  for (long long c = std::max<long long>(class_size - qphi + 1, 0); c <= class_size; ++c)
    if (c >= qphi)  // low values already listed
      out.push_back(static_cast<int>(c));
  return out;
}

// Can some count vector realizing the shape sum to k?
inline bool shape_admissible(const vertex_type_partition& p, const shape& s, long long qphi,
                             int k) {
  long long lo = 0, hi = 0;
  for (int i = 0; i < p.size(); ++i) {
    long long size_i = static_cast<long long>(p.classes[i].size());
    if (s.entries[i] == shape::bot) {
      lo += qphi;
      hi += size_i - qphi;
    } else {
      lo += s.entries[i];
      hi += s.entries[i];
    }
  }
  return lo <= k && k <= hi;
}

// Streams every admissible shape in lexicographic order of class_entries.
// Count is bounded by (2 q(phi) + 1)^ell before the admissibility filter.
inline void enumerate_shapes(const vertex_type_partition& p, long long qphi, int k,
                             const std::function<bool(const shape&)>& visit) {
  const int ell = p.size();
  std::vector<std::vector<int>> options(ell);
  for (int i = 0; i < ell; ++i)
    options[i] = class_entries(static_cast<long long>(p.classes[i].size()), qphi);

  shape cur;
  cur.entries.assign(ell, 0);
  bool stop = false;
  std::function<void(int)> rec = [&](int i) {
    if (stop) return;
    if (i == ell) {
      if (shape_admissible(p, cur, qphi, k))
        if (!visit(cur)) stop = true;
      return;
    }
    for (int e : options[i]) {
      cur.entries[i] = e;
      rec(i + 1);
      if (stop) return;
    }
  };
  if (ell == 0) {
    if (k == 0) visit(cur);
    return;
  }
  rec(0);
}

}  // namespace tsd::nd
