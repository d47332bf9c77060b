#include "flasque/homalg/complex.hpp"

#include <algorithm>

#include "flasque/errors.hpp"

namespace flasque {

std::string Complex::violation() const {
  if (differentials.size() + 1 != terms.size() && !(terms.empty() && differentials.empty())) {
    return "complex needs exactly one differential between consecutive terms";
  }
  for (std::size_t n = 0; n < differentials.size(); ++n) {
    if (!is_homomorphism(differentials[n], terms[n], terms[n + 1])) {
      return "d^" + std::to_string(n) + " is not a module map";
    }
    if (n + 1 < differentials.size()) {
      IntMatrix dd = differentials[n + 1] * differentials[n];
      if (!maps_equal(dd, zero_map(terms[n], terms[n + 2]), terms[n + 2])) {
        return "d^" + std::to_string(n + 1) + " o d^" + std::to_string(n) + " != 0";
      }
    }
  }
  return {};
}

std::vector<std::string> CohomologyTable::describe() const {
  std::vector<std::string> out;
  for (const auto& g : groups) out.push_back(g.describe());
  return out;
}

bool CohomologyTable::same_as(const CohomologyTable& other) const {
  auto a = describe();
  auto b = other.describe();
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, "0");
  b.resize(n, "0");
  return a == b;
}

std::string CohomologyTable::to_string() const {
  std::string s;
  auto d = describe();
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ", ";
    s += "H" + std::to_string(i) + " = " + d[i];
  }
  return s;
}

HomologyData homology_data(const IntMatrix& in, const FPModule& m, const IntMatrix& out, const FPModule& b) {
  KernelResult k = kernel(out, m, b);
  IntMatrix q(k.module.generators(), in.cols());
  for (std::size_t c = 0; c < in.cols(); ++c) {
    auto coords = coordinates(k.inclusion, m, in.column(c));
    if (!coords) throw InputError("image of incoming differential is not inside the kernel");
    for (std::size_t r = 0; r < q.rows(); ++r) q(r, c) = (*coords)[r];
  }
  CokernelResult h = cokernel(q, k.module);
  return {h.module, k.module, k.inclusion, h.projection, h.lift, m};
}

FPModule homology_at(const IntMatrix& in, const FPModule& m, const IntMatrix& out, const FPModule& b) {
  return homology_data(in, m, out, b).module;
}

std::optional<IntVector> HomologyData::class_of(const IntVector& cycle) const {
  auto coords = coordinates(cycles, ambient, cycle);
  if (!coords) return std::nullopt;
  return module.reduce(projection * *coords);
}

IntVector HomologyData::representative(std::size_t i) const { return cycles * lift.column(i); }

CohomologyTable cohomology(const Complex& c) {
  if (auto v = c.violation(); !v.empty()) throw InputError(v);
  CohomologyTable t;
  for (std::size_t n = 0; n < c.terms.size(); ++n) {
    const FPModule& m = c.terms[n];
    IntMatrix in = n == 0 ? IntMatrix(m.generators(), 0) : c.differentials[n - 1];
    FPModule zero = FPModule::zero(m.ring());
    IntMatrix out = n < c.differentials.size() ? c.differentials[n] : IntMatrix(0, m.generators());
    const FPModule& b = n < c.differentials.size() ? c.terms[n + 1] : zero;
    t.groups.push_back(homology_at(in, m, out, b));
  }
  return t;
}

}  // namespace flasque
