#include "flasque/errors.hpp"
#include "flasque/sheaf/set_sheaf.hpp"

namespace flasque {

FinPoset slice_site(const FinPoset& p, const SetSheaf& t) {
  if (!(p == t.site())) throw InputError("slice over a sheaf on a different site");
  std::vector<std::pair<Point, std::size_t>> elems;
  std::vector<std::string> names;
  for (Point x = 0; x < p.size(); ++x) {
    for (std::size_t s = 0; s < t.stalk_size(x); ++s) {
      elems.emplace_back(x, s);
      names.push_back(p.name(x) + ":" + t.label(x, s));
    }
  }
  std::vector<std::pair<Point, Point>> le;
  for (Point i = 0; i < elems.size(); ++i) {
    for (Point j = 0; j < elems.size(); ++j) {
      const auto [x, s] = elems[i];
      const auto [y, u] = elems[j];
      if (i != j && p.le(x, y) && t.apply(x, y, s) == u) le.emplace_back(i, j);
    }
  }
  return FinPoset::from_relation(elems.size(), le, std::move(names));
}

MonotoneMap slice_projection(const PosetPtr& slice, const SetSheaf& t) {
  std::vector<Point> a;
  for (Point x = 0; x < t.site().size(); ++x) {
    for (std::size_t s = 0; s < t.stalk_size(x); ++s) a.push_back(x);
  }
  if (a.size() != slice->size()) throw InputError("slice does not match the sheaf");
  return MonotoneMap(slice, t.site_ptr(), std::move(a));
}

}  // namespace flasque
