#ifndef ACCTLENS_INTERNAL_RANK_TOP_H_
#define ACCTLENS_INTERNAL_RANK_TOP_H_

#include <algorithm>

namespace acctlens {

template <typename Map>
RankedList RankTop(const Map& counts, RankMetric metric,
                   std::uint64_t universe, std::size_t limit) {
  RankedList list;
  list.metric = metric;
  list.universe = universe;
  list.entries.reserve(counts.size());
  for (const auto& [label, count] : counts) {
    list.entries.push_back({std::string(label), static_cast<std::uint64_t>(count)});
  }
  const auto before = [](const RankedEntry& a, const RankedEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.label < b.label;
  };
  if (list.entries.size() > limit) {
    std::partial_sort(list.entries.begin(), list.entries.begin() + limit,
                      list.entries.end(), before);
    list.entries.resize(limit);
  } else {
    std::sort(list.entries.begin(), list.entries.end(), before);
  }
  return list;
}

}  // namespace acctlens

#endif  // ACCTLENS_INTERNAL_RANK_TOP_H_
