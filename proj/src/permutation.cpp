#include "archegraph/permutation.hpp"

#include <numeric>
#include <sstream>

#include "archegraph/error.hpp"

namespace archegraph {

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
  std::vector<char> seen(map_.size(), 0);
  for (int v : map_) {
    if (v < 0 || static_cast<std::size_t>(v) >= map_.size()) {
      throw InputError("permutation image " + std::to_string(v) + " out of range");
    }
    if (seen[v]) throw InputError("permutation repeats image " + std::to_string(v));
    seen[v] = 1;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> map(n);
  std::iota(map.begin(), map.end(), 0);
  Permutation p;
  p.map_ = std::move(map);
  return p;
}

int Permutation::image(std::size_t i) const {
  if (i >= map_.size()) throw InputError("permutation index " + std::to_string(i) + " out of range");
  return map_[i];
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != static_cast<int>(i)) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < map_.size(); ++i) os << (i ? "," : "") << map_[i];
  os << ')';
  return os.str();
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw InputError("compose: length mismatch");
  std::vector<int> out(sigma.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sigma(tau(i));
  return Permutation(std::move(out));
}

Permutation invert(const Permutation& sigma) {
  std::vector<int> out(sigma.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[sigma(i)] = static_cast<int>(i);
  return Permutation(std::move(out));
}

std::size_t num_cycles(const Permutation& sigma) {
  std::vector<char> seen(sigma.size(), 0);
  std::size_t cycles = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (std::size_t j = i; !seen[j]; j = sigma(j)) seen[j] = 1;
  }
  return cycles;
}

std::size_t num_fixed_points(const Permutation& sigma) {
  std::size_t fixed = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i) fixed += sigma(i) == static_cast<int>(i);
  return fixed;
}

Permutation apply_transposition(const Permutation& sigma, std::size_t i, std::size_t j) {
  if (i >= sigma.size() || j >= sigma.size()) {
    throw InputError("transposition index out of range");
  }
  std::vector<int> out(sigma.map().begin(), sigma.map().end());
  std::swap(out[i], out[j]);
  return Permutation(std::move(out));
}

}  // namespace archegraph
