#include "glim/rng.hpp"

#include "glim/errors.hpp"

namespace glim {
namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::uint64_t Rng::next() {
  state_ += 0x9e3779b97f4a7c15ull;
  return mix64(state_);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw UsageError("Rng::below: bound must be positive");
  // Mask down to the bit width of bound, then reject. Unbiased and cheap.
  std::uint64_t mask = ~0ull;
  std::uint64_t top = bound - 1;
  int lz = 0;
  while (lz < 63 && !(top >> (63 - lz) & 1ull)) ++lz;
  mask >>= lz;
  if (top == 0) return 0;
  for (;;) {
    std::uint64_t r = next() & mask;
    if (r < bound) return r;
  }
}

double Rng::unit() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

Rng named_stream(std::uint64_t seed, std::string_view name) {
  return Rng(mix64(seed ^ mix64(fnv1a(name))));
}

Rng named_stream(std::uint64_t seed, std::string_view name, std::uint64_t index) {
  return Rng(mix64(mix64(seed ^ mix64(fnv1a(name))) + index));
}

}  // namespace glim
