#pragma once

#include <cstddef>

#include "flasque/flabby/field_sheaf.hpp"

namespace flasque {

/// Injectivity by enumeration: for every x and every open W ⊆ U_x, every
/// map k_W -> I (a compatible family over W, found by trying all tuples of
/// stalk vectors) is the restriction of a map k_{U_x} -> I (a vector of I_x).
bool injective_by_extension(const FieldSheaf& i);

/// Posets on m points up to iso, counted by trying every relation and every
/// relabeling.
std::size_t brute_force_poset_count(std::size_t m);

/// Set sheaves with stalks <= k on all posets with 1..n points, counted by
/// trying every functor (maps on all pairs x < y) and every stalk relabeling.
std::size_t brute_force_sheaf_count(std::size_t n, std::size_t k);

}  // namespace flasque
