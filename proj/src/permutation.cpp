#include "pqcurve/permutation.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace pqcurve {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= size() || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("Permutation: images are not a bijection");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int k) {
  std::vector<int> v(static_cast<std::size_t>(k));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::from_cycles(int k, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> v(static_cast<std::size_t>(k));
  std::iota(v.begin(), v.end(), 0);
  for (const auto& c : cycles)
    for (std::size_t j = 0; j < c.size(); ++j) v[static_cast<std::size_t>(c[j])] = c[(j + 1) % c.size()];
  return Permutation(std::move(v));
}

Permutation Permutation::then(const Permutation& next) const {
  std::vector<int> v(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) v[x] = next(images_[x]);
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> v(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) v[static_cast<std::size_t>(images_[x])] = static_cast<int>(x);
  return Permutation(std::move(v));
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != static_cast<int>(x)) return false;
  return true;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < size(); ++start) {
    if (seen[static_cast<std::size_t>(start)]) continue;
    std::vector<int> cyc;
    for (int x = start; !seen[static_cast<std::size_t>(x)]; x = (*this)(x)) {
      seen[static_cast<std::size_t>(x)] = true;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

int Permutation::cycle_count() const { return static_cast<int>(cycles().size()); }

CycleType Permutation::cycle_type() const {
  std::vector<int> parts;
  for (const auto& c : cycles()) parts.push_back(static_cast<int>(c.size()));
  return CycleType(std::move(parts));
}

std::string Permutation::str() const {
  std::ostringstream os;
  bool any = false;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    any = true;
    os << "(";
    for (std::size_t j = 0; j < c.size(); ++j) os << (j ? " " : "") << c[j] + 1;
    os << ")";
  }
  if (!any) os << "()";
  return os.str();
}

Permutation product(const std::vector<Permutation>& perms, int k) {
  Permutation acc = Permutation::identity(k);
  for (const auto& p : perms) acc = acc.then(p);
  return acc;
}

}  // namespace pqcurve
