#ifndef GLIM_RNG_HPP
#define GLIM_RNG_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace glim {

// Deterministic 64-bit generator (splitmix64). We do not use the standard
// distributions because their output is not pinned across library
// implementations; every draw here is reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform value in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1).
  double unit();

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// All randomness in the project flows from one seed through named streams:
// each construction stage pulls its own stream so adding a stage never
// perturbs the draws of another.
Rng named_stream(std::uint64_t seed, std::string_view name);
Rng named_stream(std::uint64_t seed, std::string_view name, std::uint64_t index);

}  // namespace glim

#endif
