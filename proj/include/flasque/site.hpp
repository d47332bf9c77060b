#pragma once

#include <bit>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace flasque {

/// Point index inside a FinPoset.
using Point = std::size_t;

/// Maximum number of points; opens are stored as 64-bit masks.
inline constexpr std::size_t kMaxPoints = 64;

/// A subset of the points of a poset, stored as a bit mask. Whether it is
/// actually open (an up-set) is a property checked against a FinPoset.
class Open {
 public:
  constexpr Open() = default;
  constexpr explicit Open(std::uint64_t bits) : bits_(bits) {}

  static constexpr Open singleton(Point p) { return Open(std::uint64_t{1} << p); }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Point p) const { return (bits_ >> p) & 1U; }
  constexpr bool subset_of(Open o) const { return (bits_ & ~o.bits_) == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  std::vector<Point> points() const;

  constexpr Open operator|(Open o) const { return Open(bits_ | o.bits_); }
  constexpr Open operator&(Open o) const { return Open(bits_ & o.bits_); }
  constexpr Open minus(Open o) const { return Open(bits_ & ~o.bits_); }

  friend constexpr bool operator==(Open, Open) = default;
  friend constexpr auto operator<=>(Open a, Open b) {
    if (a.size() != b.size()) return a.size() <=> b.size();
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_ = 0;
};

/// A finite poset, i.e. a finite T0 Alexandrov space. Opens are up-sets; the
/// minimal open neighbourhood of x is U_x = {y : y >= x}.
class FinPoset {
 public:
  FinPoset() = default;

  /// Builds the reflexive-transitive closure of `le` and rejects
  /// antisymmetry violations and duplicate or unknown point names.
  static FinPoset from_relation(std::vector<std::string> names,
                                const std::vector<std::pair<std::string, std::string>>& le);
  static FinPoset from_relation(std::size_t n, const std::vector<std::pair<Point, Point>>& le,
                                std::vector<std::string> names = {});

  std::size_t size() const { return names_.size(); }
  const std::string& name(Point p) const { return names_.at(p); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<Point> find(const std::string& name) const;
  Point index_of(const std::string& name) const;

  bool le(Point x, Point y) const { return (up_[x] >> y) & 1U; }
  bool lt(Point x, Point y) const { return x != y && le(x, y); }

  Open whole() const;
  /// U_x: the smallest open containing x.
  Open minimal_open(Point x) const { return Open(up_.at(x)); }
  Open down_set(Point x) const { return Open(down_.at(x)); }
  bool is_open(Open u) const;
  /// Smallest open containing the given points.
  Open up_closure(Open s) const;

  /// Immediate successors (x < y with nothing in between).
  const std::vector<Point>& covers(Point x) const { return covers_[x]; }
  /// All Hasse edges (x, y) with y covering x, sorted.
  std::vector<std::pair<Point, Point>> hasse_edges() const;
  /// A linear extension: every point appears after all points below it.
  const std::vector<Point>& linear_extension() const { return linear_; }

  /// Number of points in the longest chain minus one (0 for an antichain).
  std::size_t height() const;
  std::vector<Point> minimal_points() const;
  std::vector<Point> maximal_points() const;

  /// Induced subposet on `u` (points keep their names, order is increasing index).
  FinPoset subposet(Open u) const;

  friend bool operator==(const FinPoset& a, const FinPoset& b) {
    return a.names_ == b.names_ && a.up_ == b.up_;
  }

 private:
  void finish();

  std::vector<std::string> names_;
  std::vector<std::uint64_t> up_;
  std::vector<std::uint64_t> down_;
  std::vector<std::vector<Point>> covers_;
  std::vector<Point> linear_;
};

using PosetPtr = std::shared_ptr<const FinPoset>;

inline PosetPtr share(FinPoset p) { return std::make_shared<const FinPoset>(std::move(p)); }

/// Default bound for all_opens.
inline constexpr std::size_t kDefaultOpenBound = 20;

Open minimal_open(const FinPoset& p, Point x);

/// All up-sets of P including the empty set and P itself, sorted by size and
/// then by mask. Refuses posets with more than `max_points` points.
std::vector<Open> all_opens(const FinPoset& p, std::size_t max_points = kDefaultOpenBound);

/// Opens of P contained in `u`, same order as all_opens.
std::vector<Open> opens_within(const FinPoset& p, Open u, std::size_t max_points = kDefaultOpenBound);

std::string describe(const FinPoset& p, Open u);

/// An open covering of `target`.
struct Covering {
  Open target;
  std::vector<Open> members;

  /// Members are opens contained in target whose union is target.
  bool valid(const FinPoset& p) const;
};

/// The covering of U by the minimal opens of its points.
Covering minimal_open_covering(const FinPoset& p, Open u);

/// An order-preserving (= continuous) map between finite posets.
class MonotoneMap {
 public:
  MonotoneMap(PosetPtr source, PosetPtr target, std::vector<Point> assignment);

  static MonotoneMap identity(PosetPtr p);
  /// The unique map to the one-point poset.
  static MonotoneMap to_point(PosetPtr p);

  const FinPoset& source() const { return *source_; }
  const FinPoset& target() const { return *target_; }
  const PosetPtr& source_ptr() const { return source_; }
  const PosetPtr& target_ptr() const { return target_; }
  Point operator()(Point x) const { return assignment_.at(x); }
  const std::vector<Point>& assignment() const { return assignment_; }

  Open preimage(Open v) const;
  MonotoneMap then(const MonotoneMap& g) const;

 private:
  PosetPtr source_;
  PosetPtr target_;
  std::vector<Point> assignment_;
};

/// All monotone maps between two posets, in lexicographic order of assignment.
std::vector<MonotoneMap> all_monotone_maps(const PosetPtr& source, const PosetPtr& target);

using Object = std::size_t;
using Arrow = std::size_t;

/// A finite category given by its composition table. Presheaves on it are
/// the objects of the presheaf topos used in category mode.
class FinCategory {
 public:
  struct ArrowData {
    std::string name;
    Object src;
    Object dst;
  };

  FinCategory() = default;
  /// `compose` lists triples (g, f, g∘f) by arrow index. Identities are
  /// given per object. The table is stored as given; run check_category to
  /// validate it.
  FinCategory(std::vector<std::string> objects, std::vector<ArrowData> arrows,
              std::vector<Arrow> identities,
              const std::vector<std::tuple<Arrow, Arrow, Arrow>>& compose);

  /// One-object category of a finite group given by its multiplication
  /// table (table[g][h] = g*h, element 0 the unit).
  static FinCategory from_group(const std::vector<std::string>& elements,
                                const std::vector<std::vector<std::size_t>>& table);
  /// The opposite of a poset: an arrow y -> x for every x <= y, so that
  /// presheaves on it are covariant functors on the poset (= sheaves).
  static FinCategory opposite_of(const FinPoset& p);
  /// Discrete category on the given objects.
  static FinCategory discrete(std::vector<std::string> objects);

  std::size_t object_count() const { return objects_.size(); }
  std::size_t arrow_count() const { return arrows_.size(); }
  const std::string& object_name(Object c) const { return objects_.at(c); }
  const std::vector<std::string>& object_names() const { return objects_; }
  const ArrowData& arrow(Arrow a) const { return arrows_.at(a); }
  std::optional<Arrow> find_arrow(const std::string& name) const;
  std::optional<Object> find_object(const std::string& name) const;
  Arrow identity(Object c) const { return identities_.at(c); }

  /// g∘f, if defined in the table.
  std::optional<Arrow> compose(Arrow g, Arrow f) const;
  /// Arrows with codomain c.
  const std::vector<Arrow>& arrows_into(Object c) const { return into_[c]; }
  /// Arrows from d to c.
  std::vector<Arrow> hom(Object d, Object c) const;

  /// Declared inverse of an arrow (used only by check_category).
  void claim_inverse(Arrow a, Arrow inverse);
  const std::vector<std::pair<Arrow, Arrow>>& claimed_inverses() const { return inverses_; }

  /// True when this category was built as the opposite of a poset.
  bool from_poset() const { return from_poset_; }

 private:
  std::vector<std::string> objects_;
  std::vector<ArrowData> arrows_;
  std::vector<Arrow> identities_;
  std::vector<std::vector<std::optional<Arrow>>> table_;
  std::vector<std::vector<Arrow>> into_;
  std::vector<std::pair<Arrow, Arrow>> inverses_;
  bool from_poset_ = false;
};

using CategoryPtr = std::shared_ptr<const FinCategory>;

inline CategoryPtr share(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

/// Violations of the category axioms (empty iff valid): missing or
/// ill-typed composites, associativity, identity laws, claimed inverses.
std::vector<std::string> check_category(const FinCategory& c);

}  // namespace flasque
