#pragma once

#include <string>
#include <vector>

#include "pqcurve/ratfunc.hpp"

namespace pqcurve {

/// Bijection of {0, ..., k-1}; acts on the right, so (a.then(b))(x) = b(a(x)).
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument unless images is a bijection.
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int k);
  /// From 0-based cycles, e.g. {{0, 1}, {2, 3, 4}} on k points.
  static Permutation from_cycles(int k, const std::vector<std::vector<int>>& cycles);

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& images() const { return images_; }

  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  bool is_identity() const;

  std::vector<std::vector<int>> cycles() const;
  int cycle_count() const;
  CycleType cycle_type() const;

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.images_ == b.images_; }
  /// 1-based cycle notation, "()" for the identity.
  std::string str() const;

 private:
  std::vector<int> images_;
};

/// Left-to-right product p_1 then p_2 ... then p_r.
Permutation product(const std::vector<Permutation>& perms, int k);

}  // namespace pqcurve
