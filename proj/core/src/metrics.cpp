#include "stegvault/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "stegvault/errors.hpp"

namespace stegvault::metrics {

namespace {

std::vector<bool> carrier_mask(const covers::CoverObject& c) {
  std::vector<bool> mask(c.raw().size(), false);
  for (const std::uint32_t off : c.carriers()) mask[off] = true;
  return mask;
}

void require_same_shape(const covers::CoverObject& a, const covers::CoverObject& b) {
  if (!a.same_shape(b)) throw ConfigError("cover and stego objects differ in kind or layout");
}

std::string format_psnr(double psnr) {
  if (std::isinf(psnr)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", psnr);
  return buf;
}

std::string format_mse(double mse) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", mse);
  return buf;
}

}  // namespace

double psnr_from_mse(double mse, double max_value) noexcept {
  if (mse <= 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(max_value * max_value / mse);
}

DistortionReport distortion(const covers::CoverObject& cover, const covers::CoverObject& stego) {
  require_same_shape(cover, stego);
  const Bytes& a = cover.raw();
  const Bytes& b = stego.raw();
  const auto& carriers = cover.carriers();

  DistortionReport r;
  double sum_sq = 0.0;
  double max_value = 255.0;
  if (cover.kind() == covers::CoverKind::kWavPcm16) {
    max_value = 65535.0;
    for (const std::uint32_t off : carriers) {
      const auto sa = static_cast<std::int16_t>(load_le16(&a[off]));
      const auto sb = static_cast<std::int16_t>(load_le16(&b[off]));
      const double d = static_cast<double>(sa) - sb;
      sum_sq += d * d;
    }
  } else {
    for (const std::uint32_t off : carriers) {
      const double d = static_cast<double>(a[off]) - b[off];
      sum_sq += d * d;
    }
  }
  r.mse = carriers.empty() ? 0.0 : sum_sq / static_cast<double>(carriers.size());
  r.psnr_db = psnr_from_mse(r.mse, max_value);

  const auto mask = carrier_mask(cover);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    ++r.bytes_changed;
    r.max_abs_delta = std::max(r.max_abs_delta, std::abs(int{a[i]} - int{b[i]}));
    if (!mask[i]) ++r.changed_outside_carriers;
  }
  return r;
}

std::vector<ByteDiff> lsb_diff_report(const covers::CoverObject& cover, const covers::CoverObject& stego, int k) {
  if (k != 1 && k != 2) throw ConfigError("bits per carrier must be 1 or 2");
  require_same_shape(cover, stego);
  const Bytes& a = cover.raw();
  const Bytes& b = stego.raw();
  const auto mask = carrier_mask(cover);
  const unsigned high_bits = ~((1u << k) - 1u) & 0xFFu;

  std::vector<ByteDiff> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    if (!mask[i]) throw AuditError("byte " + std::to_string(i) + " changed outside the carrier region");
    if ((a[i] ^ b[i]) & high_bits) {
      throw AuditError("byte " + std::to_string(i) + " changed above the " + std::to_string(k) + " low bits");
    }
    diffs.push_back({i, a[i], b[i]});
  }
  return diffs;
}

std::string DistortionReport::to_text() const {
  std::string s;
  s += "MSE:                      " + format_mse(mse) + "\n";
  s += "PSNR (dB):                " + format_psnr(psnr_db) + "\n";
  s += "bytes changed:            " + std::to_string(bytes_changed) + "\n";
  s += "max abs delta:            " + std::to_string(max_abs_delta) + "\n";
  s += "changed outside carriers: " + std::to_string(changed_outside_carriers) + "\n";
  return s;
}

std::string DistortionReport::to_kv() const {
  std::string s;
  s += "mse=" + format_mse(mse) + "\n";
  s += "psnr_db=" + format_psnr(psnr_db) + "\n";
  s += "bytes_changed=" + std::to_string(bytes_changed) + "\n";
  s += "max_abs_delta=" + std::to_string(max_abs_delta) + "\n";
  s += "changed_outside_carriers=" + std::to_string(changed_outside_carriers) + "\n";
  return s;
}

}  // namespace stegvault::metrics
