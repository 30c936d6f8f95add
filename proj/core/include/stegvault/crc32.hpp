#pragma once

#include <cstdint>

#include "stegvault/bytes.hpp"

namespace stegvault {

// CRC-32 (IEEE 802.3): reflected polynomial 0xEDB88320, init and final XOR
// 0xFFFFFFFF.
std::uint32_t crc32(ByteView data) noexcept;

// Incremental form; crc32(a ++ b) == crc32_update(crc32_update(0, a), b).
std::uint32_t crc32_update(std::uint32_t crc, ByteView data) noexcept;

}  // namespace stegvault
