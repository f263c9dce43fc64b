#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace archegraph {

// Bijection on [0, n). image(i) is sigma(i).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> map);  // validates bijectivity

  static Permutation identity(std::size_t n);

  std::size_t size() const noexcept { return map_.size(); }
  int operator()(std::size_t i) const { return map_[i]; }
  int image(std::size_t i) const;  // bounds-checked
  std::span<const int> map() const noexcept { return map_; }

  bool is_identity() const noexcept;

  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;

  std::string to_string() const;

 private:
  std::vector<int> map_;
};

// (sigma o tau)(i) = sigma(tau(i)).
Permutation compose(const Permutation& sigma, const Permutation& tau);
Permutation invert(const Permutation& sigma);
std::size_t num_cycles(const Permutation& sigma);
std::size_t num_fixed_points(const Permutation& sigma);
// Swaps the images of i and j.
Permutation apply_transposition(const Permutation& sigma, std::size_t i, std::size_t j);

}  // namespace archegraph
