#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stegvault/covers.hpp"

namespace stegvault::metrics {

struct DistortionReport {
  double mse = 0.0;
  double psnr_db = 0.0;  // +infinity when mse == 0
  std::uint64_t bytes_changed = 0;
  int max_abs_delta = 0;
  std::uint64_t changed_outside_carriers = 0;

  // Human-readable, one field per line.
  std::string to_text() const;
  // Machine-readable key=value lines.
  std::string to_kv() const;
};

// MSE over the carrier region: carrier bytes for 8-bit covers (MAX 255),
// whole signed samples for 16-bit PCM (MAX 65535). Throws ConfigError when
// the objects differ in kind or layout.
DistortionReport distortion(const covers::CoverObject& cover, const covers::CoverObject& stego);

struct ByteDiff {
  std::uint64_t offset;
  std::uint8_t cover_byte;
  std::uint8_t stego_byte;
  friend bool operator==(const ByteDiff&, const ByteDiff&) = default;
};

// Every differing byte in file order. Throws AuditError when a difference lies
// outside the carriers or above the k low bits, ConfigError on shape mismatch.
std::vector<ByteDiff> lsb_diff_report(const covers::CoverObject& cover,
                                      const covers::CoverObject& stego, int k);

double psnr_from_mse(double mse, double max_value) noexcept;

}  // namespace stegvault::metrics
