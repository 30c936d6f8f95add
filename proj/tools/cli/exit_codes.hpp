#pragma once

#include <exception>

namespace stegvault::cli {

// Process exit statuses; part of the scripted interface.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitIo = 2,
  kExitCapacity = 3,
  kExitUnsupportedCover = 4,
  kExitIntegrity = 5,  // wrong key number, wrong or missing key file
  kExitNotStego = 6,
  kExitUnsafePath = 7,
  kExitMalformed = 8,  // truncated or structurally invalid input file
  kExitAudit = 9,
  kExitInternal = 70,
};

int exit_code_for(const std::exception& e) noexcept;

}  // namespace stegvault::cli
