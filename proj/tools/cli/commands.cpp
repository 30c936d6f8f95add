#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "bench.hpp"
#include "exit_codes.hpp"
#include "stegvault/covers.hpp"
#include "stegvault/errors.hpp"
#include "stegvault/metrics.hpp"
#include "stegvault/pipeline.hpp"
#include "stegvault/rsa.hpp"
#include "stegvault/session.hpp"
#include "stegvault/stego.hpp"

namespace stegvault::cli {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const CapacityError*>(&e)) return kExitCapacity;
  if (dynamic_cast<const UnsupportedCoverError*>(&e)) return kExitUnsupportedCover;
  if (dynamic_cast<const IntegrityError*>(&e)) return kExitIntegrity;
  if (dynamic_cast<const KeyError*>(&e)) return kExitIntegrity;
  if (dynamic_cast<const NotStegoError*>(&e)) return kExitNotStego;
  if (dynamic_cast<const UnsafePathError*>(&e)) return kExitUnsafePath;
  if (dynamic_cast<const FormatError*>(&e)) return kExitMalformed;
  if (dynamic_cast<const AuditError*>(&e)) return kExitAudit;
  if (dynamic_cast<const IoError*>(&e)) return kExitIo;
  if (dynamic_cast<const ConfigError*>(&e)) return kExitUsage;
  return kExitInternal;
}

namespace {

std::string hex32(std::uint32_t v) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08x", v);
  return buf;
}

std::uint64_t fresh_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

covers::CoverObject load_cover(const fs::path& path) { return covers::parse_cover(pipeline::read_file(path)); }

// Accepts plain byte counts or K/M suffixes (powers of 1024).
std::uint64_t parse_size(const std::string& text) {
  std::size_t used = 0;
  const unsigned long long value = std::stoull(text, &used);
  std::string suffix = text.substr(used);
  for (auto& c : suffix) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (suffix.empty() || suffix == "B") return value;
  if (suffix == "K" || suffix == "KIB" || suffix == "KB") return value * 1024;
  if (suffix == "M" || suffix == "MIB" || suffix == "MB") return value * 1024 * 1024;
  throw ConfigError("bad size '" + text + "'");
}

void shred(const fs::path& path) {
  if (fs::is_directory(path)) {
    for (const auto& item : fs::recursive_directory_iterator(path)) {
      if (item.is_regular_file()) pipeline::write_file(item.path(), Bytes(static_cast<std::size_t>(item.file_size()), 0));
    }
    fs::remove_all(path);
  } else {
    pipeline::write_file(path, Bytes(static_cast<std::size_t>(fs::file_size(path)), 0));
    fs::remove(path);
  }
}

struct KeygenArgs {
  int bits = 1024;
  std::string pub_path;
  std::string priv_path;
  std::optional<std::uint64_t> seed;
};

struct EmbedArgs {
  std::string cover;
  std::vector<std::string> inputs;
  std::string output;
  std::string key_file;
  std::string pub_key;
  std::string archive_out;
  std::uint64_t key_number = 0;
  int k = 1;
  std::string cipher = "des-hybrid";
  std::optional<std::uint64_t> seed;
  bool shred = false;
};

struct ExtractArgs {
  std::string stego;
  std::string output;
  std::string key_file;
  std::string priv_key;
  std::string archive_out;
  std::uint64_t key_number = 0;
};

struct DiffArgs {
  std::string cover;
  std::string stego;
  int k = 1;
  std::string format = "text";
};

struct BenchArgs {
  std::vector<std::string> sizes = {"100K", "843K"};
  std::vector<std::string> modes = {"hybrid", "rsa-direct", "des-only"};
  int repetitions = 1;
  int rsa_bits = 512;
  int k = 2;
  std::uint64_t seed = 1;
  std::string csv;
};

int cmd_keygen(const KeygenArgs& a, std::ostream& out, std::ostream& err) {
  if (!crypto::is_supported_rsa_bits(a.bits)) {
    err << "stegvault keygen: --bits must be one of 512, 768, 1024, 2048\n";
    return kExitUsage;
  }
  const auto kp = crypto::rsa_keygen(a.bits, a.seed.value_or(fresh_seed()));
  pipeline::write_file(a.pub_path, crypto::serialize_public_key(kp.public_key()));
  pipeline::write_file(a.priv_path, crypto::serialize_private_key(kp.private_key()));
  out << "generated " << a.bits << "-bit RSA key pair\n";
  out << "fingerprint: " << hex32(crypto::fingerprint(kp.n)) << "\n";
  return kExitOk;
}

int cmd_embed(const EmbedArgs& a, std::ostream& out, std::ostream& err) {
  const auto cipher = pipeline::parse_cipher(a.cipher);
  if (!cipher) {
    err << "stegvault embed: --cipher must be des-hybrid or none\n";
    return kExitUsage;
  }
  if (*cipher == pipeline::Cipher::kDesHybrid && (a.key_file.empty() || a.pub_key.empty())) {
    err << "stegvault embed: des-hybrid needs --key-file (output) and --pub-key\n";
    return kExitUsage;
  }

  const auto cover = load_cover(a.cover);
  const std::vector<fs::path> inputs(a.inputs.begin(), a.inputs.end());
  const auto entries = pipeline::collect_entries(inputs);

  std::optional<crypto::RsaPublicKey> pub;
  if (*cipher == pipeline::Cipher::kDesHybrid) pub = crypto::parse_public_key(pipeline::read_file(a.pub_key));

  pipeline::EmbedParams params;
  params.key_number = a.key_number;
  params.k = a.k;
  params.cipher = *cipher;
  params.rng_seed = a.seed;
  const auto result = pipeline::embed_entries(cover, entries, pub, params);

  pipeline::write_file(a.output, result.stego);
  if (result.key_file) pipeline::write_file(a.key_file, *result.key_file);
  if (!a.archive_out.empty()) pipeline::write_file(a.archive_out, result.archive);

  out << "cover: " << a.cover << " (" << covers::to_string(cover.kind()) << ", " << cover.carrier_count()
      << " carriers)\n";
  out << "files: " << entries.size() << ", archive " << result.archive.size() << " bytes\n";
  out << "capacity used: " << result.payload_bytes << "/" << result.capacity_bytes << " bytes (k=" << a.k << ")\n";
  out << "PSNR: " << (std::isinf(result.distortion.psnr_db) ? std::string("inf")
                                                           : std::to_string(result.distortion.psnr_db))
      << " dB\n";

  if (a.shred) {
    for (const auto& input : inputs) shred(input);
    out << "inputs shredded\n";
  }
  out << "hiding done\n";
  return kExitOk;
}

int cmd_extract(const ExtractArgs& a, std::ostream& out, std::ostream&) {
  const auto stego_obj = load_cover(a.stego);
  std::optional<crypto::KeyFile> key_file;
  std::optional<crypto::RsaPrivateKey> priv;
  if (!a.key_file.empty()) {
    if (!fs::is_regular_file(a.key_file)) throw KeyError("key file not found: " + a.key_file);
    key_file = crypto::KeyFile::parse(pipeline::read_file(a.key_file));
  }
  if (!a.priv_key.empty()) priv = crypto::parse_private_key(pipeline::read_file(a.priv_key));

  const auto result = pipeline::extract_entries(stego_obj, key_file, priv, a.key_number);
  out << "total length of data received: " << result.header.payload_len << " bytes\n";

  pipeline::write_entries(a.output, result.entries);
  if (!a.archive_out.empty()) pipeline::write_file(a.archive_out, result.archive);
  out << "files written: " << result.entries.size() << " under " << a.output << "\n";
  out << "unhide done\n";
  return kExitOk;
}

int cmd_capacity(const std::string& path, int k, std::ostream& out) {
  const auto cover = load_cover(path);
  const auto cap = covers::capacity(cover, k);
  out << "kind: " << covers::to_string(cover.kind()) << "\n";
  out << "carriers: " << cap.carrier_count << "\n";
  out << "header cost: " << cap.header_cost_bytes << " carriers\n";
  out << "payload capacity (k=" << k << "): " << cap.payload_capacity_bytes << " bytes\n";
  return kExitOk;
}

int cmd_inspect(const std::string& path, std::ostream& out) {
  const auto cover = load_cover(path);
  stego::StegoHeader h;
  try {
    h = stego::read_header(cover);
  } catch (const NotStegoError&) {
    out << "no stego header found\n";
    return kExitNotStego;
  }
  out << "magic: SVH1\n";
  out << "version: " << int{h.version} << "\n";
  out << "k: " << int{h.bits_per_carrier} << "\n";
  out << "flags: 0x" << hex32(h.flags).substr(6) << (h.encrypted() ? " (encrypted)" : " (plain)") << "\n";
  out << "payload_len: " << h.payload_len << "\n";
  out << "payload_crc32: " << hex32(h.payload_crc32) << "\n";
  out << "capacity: " << covers::payload_capacity(cover.carrier_count(), h.bits_per_carrier) << " bytes\n";
  return kExitOk;
}

int cmd_diff(const DiffArgs& a, std::ostream& out) {
  const auto cover = load_cover(a.cover);
  const auto stego_obj = load_cover(a.stego);
  const auto report = metrics::distortion(cover, stego_obj);
  out << (a.format == "kv" ? report.to_kv() : report.to_text());
  try {
    const auto diffs = metrics::lsb_diff_report(cover, stego_obj, a.k);
    out << (a.format == "kv" ? "audit=ok\n" : "audit: OK (" + std::to_string(diffs.size()) + " bytes within low " +
                                                  std::to_string(a.k) + " bits)\n");
  } catch (const AuditError& e) {
    out << (a.format == "kv" ? "audit=failed\n" : std::string("audit: FAILED (") + e.what() + ")\n");
    return kExitAudit;
  }
  return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig cfg;
  for (const auto& s : a.sizes) cfg.sizes.push_back(parse_size(s));
  for (const auto& m : a.modes) {
    const auto mode = parse_bench_mode(m);
    if (!mode) {
      err << "stegvault bench: unknown mode '" << m << "' (hybrid, rsa-direct, des-only)\n";
      return kExitUsage;
    }
    cfg.modes.push_back(*mode);
  }
  for (const auto size : cfg.sizes) {
    if (size == 0) {
      err << "stegvault bench: sizes must be at least 1 byte\n";
      return kExitUsage;
    }
  }
  if (!crypto::is_supported_rsa_bits(a.rsa_bits)) {
    err << "stegvault bench: --rsa-bits must be one of 512, 768, 1024, 2048\n";
    return kExitUsage;
  }
  cfg.repetitions = a.repetitions;
  cfg.rsa_bits = a.rsa_bits;
  cfg.k = a.k;
  cfg.seed = a.seed;

  const auto samples = run_bench(cfg);
  out << bench_table(samples);
  const std::string csv = bench_csv(samples);
  if (a.csv == "-") {
    out << csv;
  } else if (!a.csv.empty()) {
    pipeline::write_file(a.csv, as_bytes(csv));
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hide encrypted file archives in the low bits of BMP and WAV covers", "stegvault"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "stegvault 1.0.0");

  KeygenArgs keygen;
  auto* kg = app.add_subcommand("keygen", "Generate an RSA key pair (SVP1 public / SVS1 private)");
  kg->add_option("--bits", keygen.bits, "Modulus size: 512, 768, 1024 or 2048")->required();
  kg->add_option("--pub", keygen.pub_path, "Public key output path")->required();
  kg->add_option("--priv", keygen.priv_path, "Private key output path")->required();
  kg->add_option("--rng-seed", keygen.seed, "Deterministic seed");

  EmbedArgs embed;
  auto* em = app.add_subcommand("embed", "Pack, encrypt and hide files in a cover");
  em->add_option("--cover", embed.cover, "Cover file (24-bit BMP or PCM WAV)")->required()->check(CLI::ExistingFile);
  em->add_option("--input", embed.inputs, "Files or directories to hide")->required()->expected(1, -1);
  em->add_option("--output", embed.output, "Stego file to write")->required();
  em->add_option("--key-file", embed.key_file, "Key file to write (SVK1)");
  em->add_option("--pub-key", embed.pub_key, "Recipient public key (SVP1)");
  em->add_option("--key-number", embed.key_number, "Shared key number")->required();
  em->add_option("-k,--bits-per-carrier", embed.k, "Low bits used per carrier byte")->check(CLI::IsMember({1, 2}));
  em->add_option("--cipher", embed.cipher, "des-hybrid (default) or none");
  em->add_option("--rng-seed", embed.seed, "Deterministic seed for the session secret");
  em->add_option("--archive-out", embed.archive_out, "Also write the plaintext SVA1 archive");
  em->add_flag("--shred", embed.shred, "Overwrite and delete the inputs after a successful embed");

  ExtractArgs extract;
  auto* ex = app.add_subcommand("extract", "Recover hidden files from a stego object");
  ex->add_option("--stego", extract.stego, "Stego file")->required()->check(CLI::ExistingFile);
  ex->add_option("--output", extract.output, "Destination directory")->required();
  ex->add_option("--key-file", extract.key_file, "Key file written by embed");
  ex->add_option("--priv-key", extract.priv_key, "Private key (SVS1)");
  ex->add_option("--key-number", extract.key_number, "Shared key number")->required();
  ex->add_option("--archive-out", extract.archive_out, "Also write the decrypted SVA1 archive");

  std::string cap_cover;
  int cap_k = 1;
  auto* cp = app.add_subcommand("capacity", "Show payload capacity of a cover");
  cp->add_option("--cover", cap_cover, "Cover file")->required()->check(CLI::ExistingFile);
  cp->add_option("-k,--bits-per-carrier", cap_k, "Low bits per carrier")->check(CLI::IsMember({1, 2}));

  std::string inspect_path;
  auto* in = app.add_subcommand("inspect", "Print the stego header without decrypting");
  in->add_option("--stego", inspect_path, "Stego file")->required()->check(CLI::ExistingFile);

  DiffArgs diff;
  auto* df = app.add_subcommand("diff", "Distortion report and LSB audit of cover vs stego");
  df->add_option("--cover", diff.cover, "Original cover")->required()->check(CLI::ExistingFile);
  df->add_option("--stego", diff.stego, "Stego object")->required()->check(CLI::ExistingFile);
  df->add_option("-k,--bits-per-carrier", diff.k, "Low bits allowed to change")->check(CLI::IsMember({1, 2}));
  df->add_option("--format", diff.format, "text or kv")->check(CLI::IsMember({"text", "kv"}));

  BenchArgs bench;
  auto* bn = app.add_subcommand("bench", "Time encrypt+embed+extract+decrypt per cipher mode");
  bn->add_option("--sizes", bench.sizes, "Payload sizes (bytes, or with K/M suffix)")->delimiter(',');
  bn->add_option("--modes", bench.modes, "hybrid, rsa-direct, des-only")->delimiter(',');
  bn->add_option("--repetitions", bench.repetitions, "Runs per (size, mode)")->check(CLI::PositiveNumber);
  bn->add_option("--rsa-bits", bench.rsa_bits, "RSA modulus size");
  bn->add_option("-k,--bits-per-carrier", bench.k, "Low bits per carrier")->check(CLI::IsMember({1, 2}));
  bn->add_option("--rng-seed", bench.seed, "Seed for keys and payloads");
  bn->add_option("--csv", bench.csv, "CSV output path ('-' for stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (dynamic_cast<const CLI::CallForVersion*>(&e) ? e.what() : app.help()) << "\n";
      if (dynamic_cast<const CLI::CallForHelp*>(&e) && app.get_subcommands().size() == 1) {
        out << app.get_subcommands().front()->help();
      }
      return kExitOk;
    }
    err << "stegvault: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*kg) return cmd_keygen(keygen, out, err);
    if (*em) return cmd_embed(embed, out, err);
    if (*ex) return cmd_extract(extract, out, err);
    if (*cp) return cmd_capacity(cap_cover, cap_k, out);
    if (*in) return cmd_inspect(inspect_path, out);
    if (*df) return cmd_diff(diff, out);
    if (*bn) return cmd_bench(bench, out, err);
  } catch (const CapacityError& e) {
    err << "stegvault: capacity error: need " << e.need() << " bytes, have " << e.have() << " bytes\n";
    return kExitCapacity;
  } catch (const IntegrityError& e) {
    err << "stegvault: integrity failure: wrong key number or key file (" << e.what() << ")\n";
    return kExitIntegrity;
  } catch (const KeyError& e) {
    err << "stegvault: integrity failure: wrong key number or key file (" << e.what() << ")\n";
    return kExitIntegrity;
  } catch (const std::exception& e) {
    err << "stegvault: error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace stegvault::cli
