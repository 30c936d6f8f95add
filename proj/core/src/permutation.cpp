#include <limits>
#include <numeric>

#include "stegvault/bytes.hpp"
#include "stegvault/errors.hpp"
#include "stegvault/prng.hpp"
#include "stegvault/stego.hpp"

namespace stegvault::stego {

PermutationSpec PermutationSpec::for_cover(const covers::CoverObject& cover, std::uint64_t key_number,
                                           const crypto::Salt& salt) {
  const std::uint64_t count = cover.carrier_count();
  return {key_number, salt, count > covers::kHeaderCarriers ? count - covers::kHeaderCarriers : 0};
}

std::vector<std::uint32_t> derive_permutation(const PermutationSpec& spec) {
  if (spec.domain_size > std::numeric_limits<std::uint32_t>::max()) {
    throw ConfigError("permutation domain exceeds 2^32 slots");
  }
  std::vector<std::uint32_t> order(static_cast<std::size_t>(spec.domain_size));
  std::iota(order.begin(), order.end(), std::uint32_t{0});

  SplitMix64 rng(spec.key_number ^ load_le64(spec.perm_salt.data()));
  for (std::size_t i = order.size(); i-- > 1;) {
    const std::size_t j = static_cast<std::size_t>(rng.next() % (i + 1));
    std::swap(order[i], order[j]);
  }
  return order;
}

}  // namespace stegvault::stego
