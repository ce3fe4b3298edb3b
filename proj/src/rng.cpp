#include "spdc/rng.hpp"

#include <array>

namespace spdc {

std::uint64_t child_seed(std::uint64_t base_seed, std::uint64_t index) {
  return splitmix64(splitmix64(base_seed) ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

Generator make_generator(std::uint64_t seed) {
  std::array<std::uint32_t, 4> words{};
  std::uint64_t state = seed;
  for (std::size_t i = 0; i < words.size(); i += 2) {
    state = splitmix64(state);
    words[i] = static_cast<std::uint32_t>(state);
    words[i + 1] = static_cast<std::uint32_t>(state >> 32);
  }
  std::seed_seq seq(words.begin(), words.end());
  return Generator(seq);
}

}  // namespace spdc
