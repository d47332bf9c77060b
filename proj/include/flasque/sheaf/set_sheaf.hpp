#pragma once

#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flasque/site.hpp"

namespace flasque {

/// Function between finite sets {0..n-1} -> {0..m-1}, as a value table.
using SetMap = std::vector<std::size_t>;

/// Value of a section at points outside its domain.
inline constexpr std::size_t kUndefined = std::numeric_limits<std::size_t>::max();

/// A section over an open U: one stalk element per point of U, kUndefined
/// elsewhere.
using Section = std::vector<std::size_t>;

/// A sheaf of finite sets on a finite poset, given by its stalks F_x = F(U_x)
/// and comparison maps F_x -> F_y for x <= y.
class SetSheaf {
 public:
  SetSheaf() = default;
  /// Maps are given on Hasse edges (x, y); all composites are derived and
  /// functoriality is checked. Missing edge maps are an error unless the
  /// target stalk has exactly one element.
  SetSheaf(PosetPtr site, std::vector<std::size_t> sizes, const std::map<std::pair<Point, Point>, SetMap>& edge_maps,
           std::vector<std::vector<std::string>> labels = {});

  const FinPoset& site() const { return *site_; }
  const PosetPtr& site_ptr() const { return site_; }
  std::size_t stalk_size(Point x) const { return sizes_.at(x); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  /// Comparison map F_x -> F_y; requires x <= y.
  const SetMap& comp(Point x, Point y) const;
  std::size_t apply(Point x, Point y, std::size_t s) const { return comp(x, y)[s]; }
  const std::string& label(Point x, std::size_t s) const { return labels_.at(x).at(s); }
  const std::vector<std::vector<std::string>>& labels() const { return labels_; }

  friend bool operator==(const SetSheaf& a, const SetSheaf& b) {
    return *a.site_ == *b.site_ && a.sizes_ == b.sizes_ && a.comps_ == b.comps_;
  }

 private:
  PosetPtr site_;
  std::vector<std::size_t> sizes_;
  std::vector<SetMap> comps_;  // index x * n + y, empty unless x <= y
  std::vector<std::vector<std::string>> labels_;
};

SetSheaf constant_sheaf(const PosetPtr& p, std::size_t n);
SetSheaf terminal_sheaf(const PosetPtr& p);
SetSheaf initial_sheaf(const PosetPtr& p);
/// Stalk n at points y <= x, one element elsewhere.
SetSheaf skyscraper(const PosetPtr& p, Point x, std::size_t n);
/// Omega: stalk at x is the set of opens contained in U_x, comps intersect with U_y.
SetSheaf subobject_classifier(const PosetPtr& p);

/// All sections over U in lexicographic order.
std::vector<Section> sections(const SetSheaf& f, Open u);
std::vector<Section> global_sections(const SetSheaf& f);
/// Restriction of a section to V (V inside the section's domain).
Section restrict_section(const Section& s, Open v);
/// True when the family is compatible on U.
bool is_section(const SetSheaf& f, Open u, const Section& s);
/// Does the section over U extend to a section over W ⊇ U? Returns one extension.
std::optional<Section> extend_section(const SetSheaf& f, Open u, const Section& s, Open w);

/// Stalkwise product, element (a, b) encoded as a * |G_x| + b.
SetSheaf product(const SetSheaf& f, const SetSheaf& g);
/// Subsheaf given by a stalkwise membership predicate; must be closed under comps.
/// Returns the subsheaf and, per point, the inclusion map.
std::pair<SetSheaf, std::vector<SetMap>> subsheaf(const SetSheaf& f, const std::vector<std::vector<bool>>& keep);

/// Natural transformation between set sheaves on the same site.
struct SetMorphism {
  SetSheaf source;
  SetSheaf target;
  std::vector<SetMap> components;

  /// Validates shapes and naturality; throws InputError naming the pair x <= y.
  void validate() const;
};

SetMorphism identity_morphism(const SetSheaf& f);
bool is_mono(const SetMorphism& m);
bool is_epi(const SetMorphism& m);

/// (f_* F)(V) = F(f^{-1} V). Stalk elements at q are sections over f^{-1}(U_q) in order.
SetSheaf pushforward(const MonotoneMap& f, const SetSheaf& s);
/// (f^* G)_p = G_{f(p)}.
SetSheaf pullback(const MonotoneMap& f, const SetSheaf& g);
SetMorphism pullback(const MonotoneMap& f, const SetMorphism& m);

/// The poset of elements of T: points (x, s), (x, s) <= (y, t) iff x <= y
/// and comp(x, y)(s) = t. Points are named "x:label".
FinPoset slice_site(const FinPoset& p, const SetSheaf& t);
/// Together with the projection to P.
MonotoneMap slice_projection(const PosetPtr& slice, const SetSheaf& t);

}  // namespace flasque
