#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flasque/homalg/fp.hpp"
#include "flasque/homalg/smith.hpp"
#include "flasque/integer.hpp"

namespace flasque {

/// Coefficient ring: the integers (modulus 0) or Z/m.
struct Ring {
  Integer modulus = 0;

  static Ring integers() { return Ring{0}; }
  static Ring mod(const Integer& m);
  /// Parses "Z" or "Z/m".
  static Ring parse(const std::string& s);

  bool is_integers() const { return modulus == 0; }
  bool is_prime_field() const;
  /// p as a machine integer; only for prime fields.
  fp::Elem prime() const;
  std::string name() const;

  friend bool operator==(const Ring&, const Ring&) = default;
};

/// A finitely presented module R^g / (rows of `relations`). Over Z/m the
/// relations m·e_i are implicit. Elements are coordinate vectors of length g.
class FPModule {
 public:
  FPModule() : FPModule(Ring::integers(), 0, IntMatrix(0, 0)) {}
  FPModule(Ring ring, std::size_t generators, IntMatrix relations);

  static FPModule free(Ring ring, std::size_t rank);
  static FPModule zero(Ring ring) { return free(std::move(ring), 0); }
  /// R / (d).
  static FPModule cyclic(Ring ring, const Integer& d);
  static FPModule direct_sum(const std::vector<FPModule>& parts);

  const Ring& ring() const { return ring_; }
  std::size_t generators() const { return gens_; }
  const IntMatrix& relations() const { return relations_; }

  /// Columns spanning the relation lattice (or subspace over a prime field).
  IntMatrix relation_columns() const;
  bool in_relations(const IntVector& v) const;
  bool equal(const IntVector& a, const IntVector& b) const { return in_relations(a - b); }
  IntVector zero_element() const { return IntVector(gens_); }
  /// Coordinates reduced mod m (no other normalization).
  IntVector reduce(IntVector v) const;

  bool is_zero() const;
  bool is_finite() const;
  /// Nonzero invariant factors of the relation lattice that are > 1.
  IntVector torsion() const;
  std::size_t free_rank() const;
  /// Number of elements; nullopt if infinite.
  std::optional<Integer> order() const;
  /// "Z^r (+) Z/d1 (+) Z/d2 ..." in invariant-factor form, "0" for zero.
  std::string describe() const;

  friend bool operator==(const FPModule& a, const FPModule& b) {
    return a.ring_ == b.ring_ && a.gens_ == b.gens_ && a.relations_ == b.relations_;
  }

 private:
  struct Cache;
  Ring ring_;
  std::size_t gens_ = 0;
  IntMatrix relations_;
  std::shared_ptr<const Cache> cache_;
};

/// Maps between presented modules are integer matrices of shape
/// (target generators) x (source generators).
bool is_homomorphism(const IntMatrix& m, const FPModule& source, const FPModule& target);
bool maps_equal(const IntMatrix& a, const IntMatrix& b, const FPModule& target);
/// The zero map source -> target.
IntMatrix zero_map(const FPModule& source, const FPModule& target);

/// Some x with m·x = b in the target module.
std::optional<IntVector> preimage(const IntMatrix& m, const FPModule& target, const IntVector& b);
bool is_surjective(const IntMatrix& m, const FPModule& target);
bool is_injective(const IntMatrix& m, const FPModule& source, const FPModule& target);

/// Kernel module with its inclusion into the source.
struct KernelResult {
  FPModule module;
  IntMatrix inclusion;
};
KernelResult kernel(const IntMatrix& m, const FPModule& source, const FPModule& target);

/// Cokernel module with the projection from the target and a lift of its
/// generators back to the target (projection · lift = id on the cokernel).
struct CokernelResult {
  FPModule module;
  IntMatrix projection;
  IntMatrix lift;
};
CokernelResult cokernel(const IntMatrix& m, const FPModule& target);

/// Coordinates c with inclusion·c = v in `ambient`, where inclusion embeds
/// `sub` into `ambient` (as produced by kernel()).
std::optional<IntVector> coordinates(const IntMatrix& inclusion, const FPModule& ambient,
                                     const IntVector& v);

/// Enumerates the elements of a finite module in a fixed canonical order.
class ElementCoder {
 public:
  explicit ElementCoder(const FPModule& m);

  std::size_t size() const { return size_; }
  /// Representative of the i-th element; element(0) is zero.
  IntVector element(std::size_t i) const;
  std::size_t index(const IntVector& v) const;
  const FPModule& module() const { return module_; }

 private:
  FPModule module_;
  IntMatrix u_;
  IntMatrix uinv_;
  std::vector<std::size_t> active_;  // SNF positions with factor > 1
  std::vector<std::size_t> radix_;
  std::size_t size_ = 1;
};

}  // namespace flasque
