#include "pmcsn/rng.hpp"

namespace pmcsn {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index,
                          std::string_view label) noexcept {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ fnv1a64(label));
  return splitmix64(h ^ splitmix64(index));
}

RngStream make_stream(std::uint64_t master, std::uint64_t index,
                      std::string_view label) {
  return RngStream(derive_seed(master, index, label));
}

}  // namespace pmcsn
