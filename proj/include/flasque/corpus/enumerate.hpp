#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "flasque/sheaf/set_sheaf.hpp"
#include "flasque/site.hpp"

namespace flasque {

/// All posets with exactly n points, one per isomorphism class, each in
/// its canonical labeling (points named p0, p1, ...). Sorted by canonical form.
std::vector<PosetPtr> posets_up_to_iso(std::size_t n);
/// Relation bits of the lexicographically smallest relabeling.
std::vector<bool> canonical_form(const FinPoset& p);
/// Poset automorphisms as point permutations (identity first).
std::vector<std::vector<Point>> automorphisms(const FinPoset& p);

/// Calls `visit` for every set sheaf on p with stalk sizes <= k, one per
/// isomorphism class. Isomorphisms are natural bijections of stalks; with
/// `identify_automorphisms`, sheaves related by an automorphism of p are
/// identified as well. The representative is the first member of its class
/// in enumeration order (sizes, then edge maps, lexicographically). Returns
/// the number of classes.
std::size_t for_each_set_sheaf_up_to_iso(const PosetPtr& p, std::size_t k,
                                         const std::function<void(const SetSheaf&)>& visit,
                                         bool identify_automorphisms = false);
std::vector<SetSheaf> set_sheaves_up_to_iso(const PosetPtr& p, std::size_t k, bool identify_automorphisms = false);
/// Number of labeled set sheaves with stalk sizes <= k.
std::size_t count_labeled_set_sheaves(const PosetPtr& p, std::size_t k);

struct CorpusInstance {
  PosetPtr site;
  SetSheaf sheaf;
};

/// Every poset with 1..n points up to iso and every set sheaf on it with
/// stalks <= k up to iso. Throws BoundError for n > 5 or k > 3 unless forced.
std::vector<CorpusInstance> enumerate_corpus(std::size_t n, std::size_t k, bool force = false);

}  // namespace flasque
