#pragma once

// surgery-sieve command line front end, callable in-process.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sieve::cli {

enum ExitCode : int { ok = 0, usage_error = 1, consistency_error = 2 };

// args excludes the program name. Writes one JSON document to out on success,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace sieve::cli
