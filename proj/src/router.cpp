#include <algorithm>
#include <cassert>

#include "skein/diagram.hpp"

namespace skein {

namespace {

// One endpoint leg living in the evolving strand row during word assembly.
struct Leg {
  int strand;     // 1-based priority index into the sorted pair list
  int final_top;  // top position this leg ends at, -1 for bottom legs
};

// Crossing slice moving the strands at 1-based positions p, p+1 past each
// other, typed so the earlier-priority strand is the over pass.
Slice typed_crossing(int p, int left_strand, int right_strand) {
  return left_strand < right_strand ? over_slice(p) : under_slice(p);
}

}  // namespace

SliceWord canonical_word(const BasisDiagram& b) {
  const Connector& c = b.conn;
  int m = c.source;
  int n = c.slots();
  SliceWord w;
  w.source = m;

  // closed loops first, each born and capped at the left edge
  for (int64_t j : b.bubbles) {
    w.slices.push_back(cup_slice(1));
    w.slices.push_back(dot_slice(1, j));
    w.slices.push_back(cap_slice(1));
  }

  // dots whose designated endpoint is on the source row (verticals and caps)
  for (int slot = 0; slot < m; slot++)
    for (int k = 0; k < c.strands(); k++)
      if (c.pairs[k].first == slot && !c.is_cup(k)) {
        auto it = b.dots.find(k + 1);
        if (it != b.dots.end()) w.slices.push_back(dot_slice(slot + 1, it->second));
      }

  // the source row, one leg per bottom slot
  std::vector<Leg> row;
  for (int slot = 0; slot < m; slot++) {
    int k = 0;
    while (c.pairs[k].first != slot && c.pairs[k].second != slot) k++;
    row.push_back({k + 1, -1});
  }

  auto find_leg = [&](int strand, int from) {
    for (size_t i = from; i < row.size(); i++)
      if (row[i].strand == strand) return static_cast<int>(i);
    return -1;
  };

  // caps, by descending left endpoint: the right leg walks left until the
  // legs are adjacent, then the pair is capped off
  std::vector<int> caps;
  for (int k = 0; k < c.strands(); k++)
    if (c.is_cap(k)) caps.push_back(k);
  std::sort(caps.begin(), caps.end(),
            [&](int a, int bb) { return c.pairs[a].first > c.pairs[bb].first; });
  for (int k : caps) {
    int pl = find_leg(k + 1, 0);
    int pr = find_leg(k + 1, pl + 1);
    assert(pl >= 0 && pr > pl);
    for (int r = pr; r > pl + 1; r--) {
      w.slices.push_back(
          typed_crossing(r, row[r - 1].strand, row[r].strand));
      std::swap(row[r - 1], row[r]);
    }
    w.slices.push_back(cap_slice(pl + 1));
    row.erase(row.begin() + pl, row.begin() + pl + 2);
  }

  // the survivors are vertical strands; sort them into top order with an
  // insertion-sort braid (adjacent swaps = inversions, so the braid is
  // reduced)
  for (auto& leg : row) {
    int k = leg.strand - 1;
    leg.final_top = n - c.pairs[k].second;
  }
  for (size_t i = 1; i < row.size(); i++)
    for (size_t j = i; j > 0 && row[j - 1].final_top > row[j].final_top; j--) {
      w.slices.push_back(typed_crossing(static_cast<int>(j),
                                        row[j - 1].strand, row[j].strand));
      std::swap(row[j - 1], row[j]);
    }

  // cups in priority order: each is born with its legs adjacent at the left
  // leg's sorted position, then the right leg walks right into place
  std::vector<int> cups;
  for (int k = 0; k < c.strands(); k++)
    if (c.is_cup(k)) cups.push_back(k);
  std::sort(cups.begin(), cups.end(),
            [&](int a, int bb) { return c.pairs[a].first < c.pairs[bb].first; });
  for (int k : cups) {
    int j1 = n - c.pairs[k].second;  // left leg top position
    int j2 = n - c.pairs[k].first;   // right leg top position (designated)
    int p = 0;
    while (p < static_cast<int>(row.size()) && row[p].final_top < j1) p++;
    w.slices.push_back(cup_slice(p + 1));
    row.insert(row.begin() + p, {k + 1, j1});
    row.insert(row.begin() + p + 1, {k + 1, j2});
    int r = p + 1;
    while (r + 1 < static_cast<int>(row.size()) &&
           row[r + 1].final_top < j2) {
      w.slices.push_back(
          typed_crossing(r + 1, row[r].strand, row[r + 1].strand));
      std::swap(row[r], row[r + 1]);
      r++;
    }
  }

  // dots at top designated endpoints (cups), left to right
  for (size_t i = 0; i < row.size(); i++) {
    const Leg& leg = row[i];
    int k = leg.strand - 1;
    if (c.is_cup(k) && c.pairs[k].first == n - leg.final_top) {
      auto it = b.dots.find(k + 1);
      if (it != b.dots.end())
        w.slices.push_back(dot_slice(static_cast<int>(i) + 1, it->second));
    }
  }

  assert(w.target() == c.target);
  return w;
}

}  // namespace skein
