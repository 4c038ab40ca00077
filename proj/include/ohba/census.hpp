#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ohba/canonical.hpp"
#include "ohba/constructions.hpp"
#include "ohba/graph.hpp"
#include "ohba/list_assignment.hpp"
#include "ohba/solver.hpp"

namespace ohba {

// ---------------------------------------------------------------------------
// Structure recognition

/// Roles and blocks exhibiting the structured form of a bad assignment of
/// K_{4,2*(k-1)}.
struct StructureWitness {
  std::array<int, 4> big_part{};  // u1, v1, x1, y1
  std::vector<int> a_side;        // u_i for each 2-part, in part order
  std::vector<int> b_side;        // v_i
  Unique4Spec blocks;

  std::string describe() const {
    std::ostringstream os;
    os << "unique4 a1=" << blocks.a1 << " a3=" << blocks.a3 << " roles=" << big_part[0] << ','
       << big_part[1] << ',' << big_part[2] << ',' << big_part[3];
    return os.str();
  }
};

/// Searches role assignments of the 4-part (24 orders) and orientations of the
/// 2-parts (which also covers swapping A and B) for the structured form.
inline std::optional<StructureWitness> structure_match_unique4(const Graph& g,
                                                               const ListAssignment& lists) {
  const ShapeInfo info = require_shape(g, TargetShape::four_two);
  require_defined_on(g, lists);
  const int k = info.k;
  if (!lists.exact() || lists.k() != k) {
    throw Error(Error::Kind::invalid_input, "structure recognition needs lists of size exactly k");
  }
  int big = 0;
  std::vector<int> pairs;
  for (int p = 0; p < g.part_count(); ++p) {
    if (g.part_size(p) == 4) big = p; else pairs.push_back(p);
  }
  std::array<int, 4> roles{};
  {
    const auto vs = members(g.part_vertices(big));
    std::copy(vs.begin(), vs.end(), roles.begin());
  }
  std::sort(roles.begin(), roles.end());
  const int m = static_cast<int>(pairs.size());
  do {
    const ColorSet lu = lists.list(roles[0]), lv = lists.list(roles[1]);
    const ColorSet lx = lists.list(roles[2]), ly = lists.list(roles[3]);
    const ColorSet a1 = lu & lv, a2 = lx & ly, a3 = lu & ly, a4 = lv & lx;
    const ColorSet b1 = lu & lx, b2 = lv & ly;
    for (std::uint32_t orient = 0; orient < (1U << m); ++orient) {
      StructureWitness w;
      w.big_part = roles;
      for (int i = 0; i < m; ++i) {
        const int first = g.first_vertex(pairs[i]);
        const bool flip = (orient >> i) & 1U;
        w.a_side.push_back(first + (flip ? 1 : 0));
        w.b_side.push_back(first + (flip ? 0 : 1));
      }
      const ColorSet a = lists.list(w.a_side.front());
      const ColorSet b = lists.list(w.b_side.front());
      if (a & b) continue;
      bool uniform = true;
      for (int i = 0; i < m && uniform; ++i) {
        uniform = lists.list(w.a_side[i]) == a && lists.list(w.b_side[i]) == b;
      }
      if (!uniform) continue;
      if ((a1 | a2 | a3 | a4) != a || (b1 | b2) != b) continue;
      if (popcount(a1) + popcount(a2) + popcount(a3) + popcount(a4) != k) continue;  // disjoint
      if (b1 & b2) continue;
      if (popcount(a1) != popcount(a2) || popcount(a3) != popcount(a4) ||
          popcount(b1) != popcount(b2)) {
        continue;
      }
      if (lu != (a1 | a3 | b1) || lv != (a1 | a4 | b2) || lx != (a2 | a4 | b1) ||
          ly != (a2 | a3 | b2)) {
        continue;
      }
      w.blocks = Unique4Spec{k, popcount(a1), popcount(a3), {a1, a2, a3, a4}, {b1, b2}};
      return w;
    }
  } while (std::next_permutation(roles.begin(), roles.end()));
  return std::nullopt;
}

/// |C| = 3k/2 and no 3-part has a color common to all three lists.
inline bool condition_match_unique3(const Graph& g, const ListAssignment& lists) {
  const ShapeInfo info = require_shape(g, TargetShape::three_one);
  require_defined_on(g, lists);
  if (2 * popcount(lists.colors()) != 3 * info.k) return false;
  for (int p = 0; p < g.part_count(); ++p) {
    if (g.part_size(p) == 3 && common_colors(lists, g.part_vertices(p))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Incidence-pattern enumeration

/// Restrictions on enumerated patterns.
struct Constraints {
  std::optional<int> min_colors;
  std::optional<int> max_colors;
  bool necessary_filter = false;  // must pass necessary_bad_filter (target shapes)
  bool empty_triples = false;     // no color on all three vertices of a 3-part

  std::string describe() const {
    std::string s = "exact-lists";
    if (min_colors) s += " min-colors=" + std::to_string(*min_colors);
    if (max_colors) s += " max-colors=" + std::to_string(*max_colors);
    if (necessary_filter) s += " necessary-filter";
    if (empty_triples) s += " empty-triples";
    return s;
  }
};

/// Rough log10 of the number of labelled assignments, for guard messages.
inline double labelled_log10(std::span<const int> coverage, int palette) {
  double total = 0;
  for (int f : coverage) {
    total += (std::lgamma(palette + 1.0) - std::lgamma(f + 1.0) - std::lgamma(palette - f + 1.0)) /
             std::log(10.0);
  }
  return total;
}

/// Refuses sweeps that cannot finish at desk scale.
inline void guard_pattern_scale(std::span<const int> coverage, const Constraints& c) {
  int total = 0;
  for (int f : coverage) total += f;
  const bool small = total <= 20;
  const bool capped = c.max_colors && *c.max_colors <= 8;
  if (small || capped) return;
  const int palette = c.max_colors.value_or(total);
  std::ostringstream os;
  os << "incidence sweep refused: total list size " << total << ", about 10^"
     << static_cast<int>(labelled_log10(coverage, std::min(palette, kPaletteSize)))
     << " labelled assignments; add a color cap of at most 8";
  throw Error(Error::Kind::resource, os.str());
}

/// Enumerates list assignments with |L(v)| = coverage[v] up to color renaming.
///
/// A color is its holder set L^{-1}(c); a pattern is a multiset of nonempty
/// holder sets covering each vertex exactly coverage[v] times. Holder sets are
/// emitted in nondecreasing (lowest vertex, mask) order, which forces the next
/// set to contain the lowest vertex still needing colors. Colors are numbered
/// 0.. in that order. The sink returns false to stop early.
template <typename Sink>
void enumerate_patterns(const Graph& g, std::span<const int> coverage, const Constraints& c,
                        Sink&& sink) {
  const int n = g.size();
  if (static_cast<int>(coverage.size()) != n) {
    throw Error(Error::Kind::invalid_input, "coverage must be given for every vertex");
  }
  guard_pattern_scale(coverage, c);
  if (c.necessary_filter) require_shape(g);

  auto mask_allowed = [&](VertexSet m) {
    for (int p = 0; p < g.part_count(); ++p) {
      const VertexSet part = g.part_vertices(p);
      if (c.necessary_filter) {
        if ((m & ~part) == 0) return false;
        if (g.part_size(p) >= 2 && (m & part) == part) return false;
      }
      if (c.empty_triples && g.part_size(p) == 3 && (m & part) == part) return false;
    }
    return true;
  };

  const int palette_cap = std::min(c.max_colors.value_or(kPaletteSize), kPaletteSize);
  std::vector<int> need(coverage.begin(), coverage.end());
  for (int f : need) {
    if (f < 0) throw Error(Error::Kind::invalid_input, "negative coverage");
  }
  const int min_coverage = need.empty() ? 0 : *std::min_element(need.begin(), need.end());
  std::vector<std::uint16_t> chosen;
  bool stop = false;

  auto emit = [&]() {
    const int colors = static_cast<int>(chosen.size());
    if (c.min_colors && colors < *c.min_colors) return;
    std::vector<ColorSet> lists(n, 0);
    for (int i = 0; i < colors; ++i) {
      for (int v : members(static_cast<VertexSet>(chosen[i]))) lists[v] |= color_bit(i);
    }
    ListAssignment la(std::move(lists), min_coverage);
    if (c.necessary_filter && !necessary_bad_filter(g, la).passed()) return;
    if (!sink(la, std::span<const std::uint16_t>(chosen))) stop = true;
  };

  auto rec = [&](auto&& self, VertexSet last) -> void {
    if (stop) return;
    int low = -1;
    VertexSet open = 0;
    int biggest = 0;
    for (int v = 0; v < n; ++v) {
      if (need[v] > 0) {
        if (low < 0) low = v;
        open |= vertex_bit(v);
        biggest = std::max(biggest, need[v]);
      }
    }
    if (low < 0) {
      emit();
      return;
    }
    const int budget = palette_cap - static_cast<int>(chosen.size());
    if (biggest > budget) return;
    // Vertices that must appear in every remaining color.
    VertexSet forced = 0;
    for (int v = 0; v < n; ++v) {
      if (need[v] == budget) forced |= vertex_bit(v);
    }
    const VertexSet rest = open & ~vertex_bit(low) & ~((vertex_bit(low) << 1) - 1);
    const bool same_low = last != 0 && lowest(last) == low;
    // Enumerate subsets of rest in increasing order so masks grow numerically.
    std::vector<VertexSet> subsets;
    for (VertexSet s = 0;; s = (s - rest) & rest) {
      subsets.push_back(s);
      if (s == rest) break;
    }
    for (VertexSet s : subsets) {
      const VertexSet m = s | vertex_bit(low);
      if (same_low && m < last) continue;
      if ((m & forced) != forced) continue;
      if (!mask_allowed(m)) continue;
      for (int v : members(m)) --need[v];
      chosen.push_back(static_cast<std::uint16_t>(m));
      self(self, m);
      chosen.pop_back();
      for (int v : members(m)) ++need[v];
      if (stop) return;
    }
  };
  rec(rec, 0);
}

template <typename Sink>
void enumerate_patterns(const Graph& g, int k, const Constraints& c, Sink&& sink) {
  std::vector<int> coverage(g.size(), k);
  enumerate_patterns(g, std::span<const int>(coverage), c, std::forward<Sink>(sink));
}

/// Palette-labelled assignments of K_{3*(k/2+1),1*(k/2-1)} with |C| = 3k/2 and
/// no color common to a 3-part, over C = {0..3k/2-1}. Inside a 3-part the
/// complements of the three lists partition C into blocks of size k/2; each
/// unordered block partition appears once (in ascending block order), so
/// within-part relabelings are already factored out. Singletons range over
/// every k-subset of C.
template <typename Sink>
void enumerate_unique3_tuples(int k, Sink&& sink) {
  if (k < 2 || k % 2 != 0) throw Error(Error::Kind::invalid_input, "k must be even");
  const int h = k / 2;
  const int size = 3 * h;
  const ColorSet all = (ColorSet{1} << size) - 1;

  std::vector<std::array<ColorSet, 3>> triples;  // lists of one 3-part
  for (ColorSet first = 0; first <= all; ++first) {
    if (popcount(first) != h || !(first & 1)) continue;  // block holding color 0
    const ColorSet left = all & ~first;
    const int pivot = lowest(left);
    for (ColorSet second = left; second; second = (second - 1) & left) {
      if (popcount(second) != h || !((second >> pivot) & 1U)) continue;
      const ColorSet third = left & ~second;
      triples.push_back({all & ~first, all & ~second, all & ~third});
    }
  }
  std::vector<ColorSet> singles;
  for (ColorSet s = 0; s <= all; ++s) {
    if (popcount(s) == k) singles.push_back(s);
  }

  const Graph g = three_one::shell(k);
  const int parts3 = h + 1, parts1 = h - 1;
  double count = std::pow(static_cast<double>(triples.size()), parts3) *
                 std::pow(static_cast<double>(singles.size()), parts1);
  if (count > 5e7) {
    throw Error(Error::Kind::resource,
                "about " + std::to_string(static_cast<long long>(count)) + " tuples; refused");
  }
  std::vector<int> idx(parts3 + parts1, 0);
  std::vector<ColorSet> lists(g.size());
  while (true) {
    int v = 0;
    for (int p = 0; p < parts3; ++p) {
      for (ColorSet l : triples[idx[p]]) lists[v++] = l;
    }
    for (int p = 0; p < parts1; ++p) lists[v++] = singles[idx[parts3 + p]];
    if (!sink(ListAssignment(lists, k))) return;
    int p = static_cast<int>(idx.size()) - 1;
    while (p >= 0) {
      const std::size_t limit = p < parts3 ? triples.size() : singles.size();
      if (++idx[p] < static_cast<int>(limit)) break;
      idx[p] = 0;
      --p;
    }
    if (p < 0) return;
  }
}

// ---------------------------------------------------------------------------
// Reports

struct ClassRecord {
  std::string form;  // lowercase hex canonical form
  std::size_t members = 0;
  std::string witness;

  friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

struct CensusReport {
  std::string name;
  std::string shape;
  int k = 0;
  std::string constraints;
  std::size_t total = 0;
  std::size_t bad = 0;
  std::vector<ClassRecord> classes;  // bad isomorphism classes, sorted by form
  std::vector<std::string> alerts;   // theorem-violation alerts; empty on success
  std::optional<std::uint64_t> seed;
  std::vector<std::pair<std::string, std::string>> extra;
  double wall_ms = 0;

  std::size_t iso_classes() const { return classes.size(); }

  std::string extra_value(const std::string& key) const {
    for (const auto& [k2, v] : extra) {
      if (k2 == key) return v;
    }
    return {};
  }

  /// Equality ignoring wall time.
  bool same_content(const CensusReport& o) const {
    return name == o.name && shape == o.shape && k == o.k && constraints == o.constraints &&
           total == o.total && bad == o.bad && classes == o.classes && alerts == o.alerts &&
           seed == o.seed && extra == o.extra;
  }
};

// ---------------------------------------------------------------------------
// Classification

namespace detail {

/// Runs fn(i) for i in [0, count) on `threads` workers with static striping.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < count; i += threads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

inline bool colorable(const Graph& g, const ListAssignment& lists) {
  bool partitions_ok = g.is_complete_multipartite();
  for (int s : g.part_sizes()) partitions_ok = partitions_ok && s <= 4;
  if (partitions_ok) return is_colorable(solve_by_partitions(g, lists));
  return solve_generic(g, lists).has_value();
}

struct Verdict {
  bool bad = false;
  CanonicalForm form;
  std::string witness;
  std::vector<std::string> alerts;
};

/// Classifies one assignment; bad ones get a canonical form, a witness and
/// alerts for any violated structural expectation.
inline Verdict classify(const Graph& g, const ListAssignment& lists, const Canonicalizer& canon,
                        const std::vector<CanonicalForm>& k33_forms, bool generic) {
  Verdict out;
  out.bad = generic ? !solve_generic(g, lists).has_value() : !colorable(g, lists);
  if (!out.bad) return out;
  out.form = canon(lists);
  const auto shape = classify_shape(g);
  if (!shape) {
    out.witness = "bad";
    return out;
  }
  const auto filter = necessary_bad_filter(g, lists);
  if (!filter.passed()) {
    out.alerts.push_back(std::string("bad assignment fails necessary filter: ") +
                         to_string(filter.reason));
  }
  if (shape->shape == TargetShape::four_two) {
    if (auto w = structure_match_unique4(g, lists)) {
      out.witness = w->describe();
    } else {
      out.witness = "unstructured";
      out.alerts.push_back("bad assignment of K_{4,2*(k-1)} without structure witness");
    }
  } else if (shape->k >= 4) {
    if (condition_match_unique3(g, lists)) {
      out.witness = "unique3 colors=" + std::to_string(popcount(lists.colors())) + " triples-empty";
    } else {
      out.witness = "unmatched";
      out.alerts.push_back("bad assignment of K_{3*(k/2+1),1*(k/2-1)} fails the condition");
    }
    const auto st = assignment_stats(g, lists);
    for (const auto& t : st.max_pair_overlap) {
      if (t && *t != shape->k / 2) out.alerts.push_back("3-part overlap differs from k/2");
    }
  } else {
    out.witness = "unmatched";
    const K33Variant variants[] = {K33Variant::disjoint, K33Variant::overlap1, K33Variant::overlap2};
    for (std::size_t i = 0; i < k33_forms.size(); ++i) {
      if (k33_forms[i] == out.form) out.witness = std::string("k33 ") + to_string(variants[i]);
    }
    if (out.witness == "unmatched") out.alerts.push_back("bad K_{3,3} assignment outside the three known classes");
  }
  return out;
}

inline std::vector<CanonicalForm> k33_forms_for(const Graph& g, const Canonicalizer& canon) {
  std::vector<CanonicalForm> forms;
  if (g == build_multipartite({3, 3})) {
    for (auto v : {K33Variant::disjoint, K33Variant::overlap1, K33Variant::overlap2}) {
      forms.push_back(canon(make_k33_bad(v).lists));
    }
  }
  return forms;
}

inline std::string replay_tag(std::size_t index) { return "item " + std::to_string(index); }

/// Classifies a batch and folds the verdicts into a report, in batch order.
/// With `generic` set every verdict comes from the backtracking solver.
inline void classify_batch(const Graph& g, const std::vector<ListAssignment>& batch, int threads,
                           CensusReport& report, bool generic = false) {
  const Canonicalizer canon(g);
  const auto k33 = k33_forms_for(g, canon);
  std::vector<Verdict> verdicts(batch.size());
  parallel_for(batch.size(), threads,
               [&](std::size_t i) { verdicts[i] = classify(g, batch[i], canon, k33, generic); });
  std::map<CanonicalForm, ClassRecord> classes;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    ++report.total;
    const Verdict& v = verdicts[i];
    if (!v.bad) continue;
    ++report.bad;
    auto [it, fresh] = classes.try_emplace(v.form);
    if (fresh) {
      it->second.form = v.form.hex();
      it->second.witness = v.witness;
    }
    ++it->second.members;
    for (const auto& a : v.alerts) report.alerts.push_back(replay_tag(i) + ": " + a);
  }
  for (auto& [form, rec] : classes) report.classes.push_back(std::move(rec));
  std::sort(report.classes.begin(), report.classes.end(),
            [](const ClassRecord& a, const ClassRecord& b) { return a.form < b.form; });
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace detail

/// Enumerates every pattern satisfying the constraints, classifies each one,
/// and groups the bad ones into isomorphism classes.
inline CensusReport run_census(const Graph& g, int k, const Constraints& c, int threads = 1) {
  detail::Stopwatch clock;
  CensusReport report;
  report.name = "census";
  report.shape = shape_string(g);
  report.k = k;
  report.constraints = c.describe();
  std::vector<ListAssignment> batch;
  enumerate_patterns(g, k, c, [&](const ListAssignment& la, std::span<const std::uint16_t>) {
    batch.push_back(la);
    return true;
  });
  detail::classify_batch(g, batch, threads, report);
  report.wall_ms = clock.ms();
  return report;
}

/// Every 2-assignment of K_{3,3} up to color renaming; the bad ones must fall
/// into exactly the three known classes and use at most 5 colors.
inline CensusReport census_k33(int threads = 1) {
  detail::Stopwatch clock;
  const Graph g = build_multipartite({3, 3});
  CensusReport report = run_census(g, 2, Constraints{}, threads);
  report.name = "k33";
  std::size_t small = 0, bad_small = 0;
  enumerate_patterns(g, 2, Constraints{}, [&](const ListAssignment& la, auto) {
    if (popcount(la.colors()) <= 5) ++small;
    return true;
  });
  {
    Constraints capped;
    capped.max_colors = 5;
    enumerate_patterns(g, 2, capped, [&](const ListAssignment& la, auto) {
      if (!detail::colorable(g, la)) ++bad_small;
      return true;
    });
  }
  if (bad_small != report.bad) {
    report.alerts.push_back("bad assignments with more than 5 colors exist");
  }
  report.extra.emplace_back("patterns_with_at_most_5_colors", std::to_string(small));
  report.extra.emplace_back("bad_with_at_most_5_colors", std::to_string(bad_small));
  report.wall_ms = clock.ms();
  return report;
}

/// Every assignment of K_{3*(k/2+1),1*(k/2-1)} with |C| = 3k/2 and no color
/// common to a 3-part; each must be non-colorable with a verified certificate.
inline CensusReport census_unique3_forward(int k = 4, int threads = 1) {
  detail::Stopwatch clock;
  const Graph g = three_one::shell(k);
  CensusReport report;
  report.name = "unique3-forward";
  report.shape = shape_string(g);
  report.k = k;
  report.constraints = "colors=" + std::to_string(3 * k / 2) + " empty-triples labelled";

  std::vector<ListAssignment> batch;
  enumerate_unique3_tuples(k, [&](const ListAssignment& la) {
    batch.push_back(la);
    return true;
  });
  const Canonicalizer canon(g);
  struct Outcome {
    bool noncolorable = false;
    bool verified = false;
    std::size_t violators = 0;
    bool overlap_ok = true;
    bool filter_ok = true;
    CanonicalForm form;
  };
  std::vector<Outcome> out(batch.size());
  detail::parallel_for(batch.size(), threads, [&](std::size_t i) {
    auto verdict = solve_by_partitions(g, batch[i]);
    Outcome& o = out[i];
    if (auto* nc = std::get_if<NonColorability>(&verdict)) {
      o.noncolorable = true;
      o.violators = nc->violators.size();
      o.verified = verify_noncolorability(g, batch[i], *nc);
      for (const auto& t : assignment_stats(g, batch[i]).max_pair_overlap) {
        if (t && *t != k / 2) o.overlap_ok = false;
      }
      o.filter_ok = necessary_bad_filter(g, batch[i]).passed();
      o.form = canon(batch[i]);
    }
  });

  std::map<CanonicalForm, std::size_t> classes;
  std::size_t verified = 0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    ++report.total;
    const Outcome& o = out[i];
    if (!o.noncolorable) {
      report.alerts.push_back(detail::replay_tag(i) + ": colorable");
      continue;
    }
    ++report.bad;
    ++classes[o.form];
    if (o.verified) ++verified;
    else report.alerts.push_back(detail::replay_tag(i) + ": certificate failed verification");
    if (!o.overlap_ok) report.alerts.push_back(detail::replay_tag(i) + ": 3-part overlap differs from k/2");
    if (!o.filter_ok) report.alerts.push_back(detail::replay_tag(i) + ": fails necessary filter");
  }
  for (const auto& [form, count] : classes) {
    report.classes.push_back({form.hex(), count, "unique3 colors=" + std::to_string(3 * k / 2)});
  }
  report.extra.emplace_back("certificates_verified", std::to_string(verified));
  report.wall_ms = clock.ms();
  return report;
}

/// Every labelling of the structured assignment of K_{4,2*(k-1)} over the
/// palette {0..2k-1}, for every block split (a1, a3); each must be bad
/// according to the backtracking solver.
inline CensusReport census_unique4_forward(int k = 4, int threads = 1) {
  detail::Stopwatch clock;
  const Graph g = four_two::shell(k);
  CensusReport report;
  report.name = "unique4-forward";
  report.shape = shape_string(g);
  report.k = k;
  report.constraints = "structured all-splits all-labellings";

  std::vector<ListAssignment> batch;
  const int palette = 2 * k;
  for (int a1 = k / 2; a1 >= 0; --a1) {
    const int a3 = k / 2 - a1;
    const std::array<int, 6> sizes{a1, a1, a3, a3, k / 2, k / 2};
    // Assign each palette color a block index with the required multiplicities.
    std::vector<int> label;
    for (int b = 0; b < 6; ++b) label.insert(label.end(), sizes[b], b);
    do {
      Unique4Spec spec{k, a1, a3, {}, {}};
      for (int c = 0; c < palette; ++c) {
        if (label[c] < 4) spec.a_blocks[label[c]] |= color_bit(c);
        else spec.b_blocks[label[c] - 4] |= color_bit(c);
      }
      batch.push_back(make_unique4(spec).lists);
    } while (std::next_permutation(label.begin(), label.end()));
  }
  detail::classify_batch(g, batch, threads, report, true);
  if (report.bad != report.total) {
    report.alerts.push_back(std::to_string(report.total - report.bad) + " structured instances colorable");
  }
  report.wall_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// Choosability

struct ChoosabilityResult {
  bool choosable = true;
  std::optional<ListAssignment> witness;  // first bad assignment found
  std::size_t patterns = 0;
};

/// Sweeps every assignment with |L(v)| = f(v) up to color renaming and stops at
/// the first non-colorable one.
inline ChoosabilityResult choosability_census(const Graph& g, std::span<const int> f) {
  ChoosabilityResult out;
  enumerate_patterns(g, f, Constraints{}, [&](const ListAssignment& la, auto) {
    ++out.patterns;
    if (!solve_generic(g, la)) {
      out.choosable = false;
      out.witness = la;
      return false;
    }
    return true;
  });
  return out;
}

inline ChoosabilityResult choosability_census(const Graph& g, int k) {
  std::vector<int> f(g.size(), k);
  return choosability_census(g, std::span<const int>(f));
}

/// Canonical edge-set code of a spanning subgraph under all vertex relabelings.
inline std::uint64_t graph_iso_code(const Graph& g) {
  const int n = g.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t code = 0;
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (!g.adjacent(u, v)) continue;
        int a = perm[u], b = perm[v];
        if (a > b) std::swap(a, b);
        code |= std::uint64_t{1} << (a * n + b);
      }
    }
    best = std::min(best, code);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// Every proper spanning subgraph of K_{3,3} up to isomorphism, with its
/// 2-choosability decided by a full sweep.
inline CensusReport census_k33_subgraphs() {
  detail::Stopwatch clock;
  const Graph full = build_multipartite({3, 3});
  std::vector<Edge> edges;
  for (int u = 0; u < 3; ++u) {
    for (int v = 3; v < 6; ++v) edges.emplace_back(u, v);
  }
  std::map<std::uint64_t, Graph> classes;
  for (std::uint32_t cut = 1; cut < (1U << edges.size()); ++cut) {
    std::vector<Edge> del;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if ((cut >> i) & 1U) del.push_back(edges[i]);
    }
    Graph h = delete_edges(full, del);
    classes.try_emplace(graph_iso_code(h), std::move(h));
  }

  CensusReport report;
  report.name = "subgraphs-k33";
  report.shape = shape_string(full);
  report.k = 2;
  report.constraints = "proper-spanning-subgraphs";
  for (const auto& [code, h] : classes) {
    ++report.total;
    const auto res = choosability_census(h, 2);
    if (res.choosable) continue;
    ++report.bad;
    std::ostringstream form, witness;
    form << std::hex << code;
    witness << "deleted=";
    bool first = true;
    for (const Edge& e : h.deleted()) {
      witness << (first ? "" : ",") << e.u << '-' << e.v;
      first = false;
    }
    witness << " edges=" << h.edge_count();
    report.classes.push_back({form.str(), 1, witness.str()});
  }
  std::sort(report.classes.begin(), report.classes.end(),
            [](const ClassRecord& a, const ClassRecord& b) { return a.form < b.form; });
  report.extra.emplace_back("subgraph_classes", std::to_string(classes.size()));
  report.wall_ms = clock.ms();
  return report;
}

// ---------------------------------------------------------------------------
// Sampling the converse directions

enum class SampleProfile { unique3_converse, unique4_converse, unique4_perturb };

inline const char* to_string(SampleProfile p) {
  switch (p) {
    case SampleProfile::unique3_converse: return "unique3-converse";
    case SampleProfile::unique4_converse: return "unique4-converse";
    case SampleProfile::unique4_perturb: return "unique4-perturb";
  }
  return "?";
}

namespace detail {

inline std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline ColorSet random_subset(std::mt19937_64& rng, ColorSet from, int size) {
  auto pool = members(from);
  std::shuffle(pool.begin(), pool.end(), rng);
  ColorSet s = 0;
  for (int i = 0; i < size; ++i) s |= color_bit(pool[i]);
  return s;
}

inline ColorSet palette_of(int size) { return (ColorSet{1} << size) - 1; }

// Random exact-k lists of K_{3*(k/2+1),1*(k/2-1)} with at least 3k/2+1 colors.
// Even trials perturb a random extremal assignment by one new color; odd
// trials draw every list uniformly from a palette of 3k/2+1..3k/2+3 colors.
inline ListAssignment draw_unique3_converse(std::mt19937_64& rng, int k, bool near_extremal) {
  const int h = k / 2;
  const int base = 3 * h;
  const Graph g = three_one::shell(k);
  if (near_extremal) {
    std::vector<int> colors(base);
    std::iota(colors.begin(), colors.end(), 0);
    std::vector<ColorSet> lists;
    for (int p = 0; p < h + 1; ++p) {
      std::shuffle(colors.begin(), colors.end(), rng);
      ColorSet blocks[3] = {0, 0, 0};
      for (int i = 0; i < base; ++i) blocks[i / h] |= color_bit(colors[i]);
      for (ColorSet b : blocks) lists.push_back(palette_of(base) & ~b);
    }
    for (int p = 0; p < h - 1; ++p) lists.push_back(random_subset(rng, palette_of(base), k));
    std::uniform_int_distribution<int> pick_v(0, g.size() - 1);
    const int v = pick_v(rng);
    const auto mine = members(lists[v]);
    std::uniform_int_distribution<int> pick_c(0, static_cast<int>(mine.size()) - 1);
    lists[v] = (lists[v] & ~color_bit(mine[pick_c(rng)])) | color_bit(base);
    return ListAssignment(std::move(lists), k);
  }
  std::uniform_int_distribution<int> pick_m(base + 1, base + 3);
  while (true) {
    const int m = pick_m(rng);
    std::vector<ColorSet> lists;
    for (int v = 0; v < g.size(); ++v) lists.push_back(random_subset(rng, palette_of(m), k));
    ListAssignment la(std::move(lists), k);
    if (popcount(la.colors()) >= base + 1) return la;
  }
}

// Random exact-k lists of K_{4,2*(k-1)} drawn so that 2-parts get disjoint
// lists; returns nullopt when the draw fails the necessary filter.
inline std::optional<ListAssignment> draw_unique4_converse(std::mt19937_64& rng, int k) {
  const Graph g = four_two::shell(k);
  std::uniform_int_distribution<int> pick_m(2 * k, 2 * k + 1);
  const ColorSet palette = palette_of(pick_m(rng));
  std::vector<ColorSet> lists;
  for (int i = 0; i < 4; ++i) lists.push_back(random_subset(rng, palette, k));
  for (int i = 2; i <= k; ++i) {
    const ColorSet a = random_subset(rng, palette, k);
    lists.push_back(a);
    lists.push_back(random_subset(rng, palette & ~a, k));
  }
  ListAssignment la(std::move(lists), k);
  if (!necessary_bad_filter(g, la).passed()) return std::nullopt;
  return la;
}

// Structured assignment with random split and random labelling over
// {0..2k-1}, then one color of one list swapped for another color of
// {0..2k}.
inline ListAssignment draw_unique4_perturbed(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<int> pick_a1(0, k / 2);
  const int a1 = pick_a1(rng);
  const int a3 = k / 2 - a1;
  std::vector<int> colors(2 * k);
  std::iota(colors.begin(), colors.end(), 0);
  std::shuffle(colors.begin(), colors.end(), rng);
  Unique4Spec spec{k, a1, a3, {}, {}};
  const std::array<int, 6> sizes{a1, a1, a3, a3, k / 2, k / 2};
  int next = 0;
  for (int b = 0; b < 6; ++b) {
    for (int i = 0; i < sizes[b]; ++i) {
      const ColorSet bit = color_bit(colors[next++]);
      if (b < 4) spec.a_blocks[b] |= bit; else spec.b_blocks[b - 4] |= bit;
    }
  }
  ListAssignment la = make_unique4(spec).lists;
  std::uniform_int_distribution<int> pick_v(0, la.size() - 1);
  const int v = pick_v(rng);
  const auto mine = members(la.list(v));
  const auto others = members(palette_of(2 * k + 1) & ~la.list(v));
  std::uniform_int_distribution<int> pick_out(0, static_cast<int>(mine.size()) - 1);
  std::uniform_int_distribution<int> pick_in(0, static_cast<int>(others.size()) - 1);
  const ColorSet next_list =
      (la.list(v) & ~color_bit(mine[pick_out(rng)])) | color_bit(others[pick_in(rng)]);
  return la.with_list(v, next_list);
}

}  // namespace detail

/// Seeded sampling of a converse direction. Every trial draws from its own
/// engine seeded by (seed, trial), so results do not depend on thread count
/// and any alert can be replayed from the trial number.
inline CensusReport sample_converse(SampleProfile profile, int trials, std::uint64_t seed,
                                    int k = 4, int threads = 1) {
  if (trials <= 0) throw Error(Error::Kind::invalid_input, "trials must be positive");
  if (k < 4 || k % 2 != 0) throw Error(Error::Kind::invalid_input, "k must be even and at least 4");
  detail::Stopwatch clock;
  const Graph g = profile == SampleProfile::unique3_converse ? three_one::shell(k)
                                                             : four_two::shell(k);
  CensusReport report;
  report.name = to_string(profile);
  report.shape = shape_string(g);
  report.k = k;
  report.seed = seed;

  std::vector<ListAssignment> batch(trials);
  std::vector<std::size_t> rejected(trials, 0);
  detail::parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    std::mt19937_64 rng(detail::splitmix(seed ^ detail::splitmix(t)));
    switch (profile) {
      case SampleProfile::unique3_converse:
        batch[t] = detail::draw_unique3_converse(rng, k, t % 2 == 0);
        break;
      case SampleProfile::unique4_converse:
        while (true) {
          if (auto la = detail::draw_unique4_converse(rng, k)) {
            batch[t] = std::move(*la);
            break;
          }
          ++rejected[t];
        }
        break;
      case SampleProfile::unique4_perturb:
        batch[t] = detail::draw_unique4_perturbed(rng, k);
        break;
    }
  });

  switch (profile) {
    case SampleProfile::unique3_converse:
      report.constraints = "exact-lists min-colors=" + std::to_string(3 * k / 2 + 1);
      break;
    case SampleProfile::unique4_converse:
      report.constraints = "exact-lists necessary-filter";
      break;
    case SampleProfile::unique4_perturb:
      report.constraints = "structured one-color-perturbation";
      break;
  }

  detail::classify_batch(g, batch, threads, report);
  if (profile == SampleProfile::unique3_converse && report.bad > 0) {
    report.alerts.push_back(std::to_string(report.bad) +
                            " non-colorable samples with more than 3k/2 colors");
  }
  std::size_t total_rejected = 0;
  for (auto r : rejected) total_rejected += r;
  if (profile == SampleProfile::unique4_converse) {
    report.extra.emplace_back("rejected_draws", std::to_string(total_rejected));
  }
  report.extra.emplace_back("colorable", std::to_string(report.total - report.bad));
  report.wall_ms = clock.ms();
  return report;
}

}  // namespace ohba
