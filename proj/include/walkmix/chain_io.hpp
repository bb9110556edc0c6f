#pragma once

#include <string>

#include "walkmix/chain.hpp"

namespace walkmix {

struct ChainFileOptions {
  /// Rescale rows whose sum is off by at most 1e-6; anything worse is still
  /// rejected. Off by default so data errors are not silently repaired.
  bool normalize_rows = false;
};

/// Chain files are JSON documents: {"n": 2, "p": [[...], [...]], "labels": [...]}
/// with "labels" optional. Diagnostics name the first violated constraint
/// with row/column coordinates.
MarkovChain parse_chain_text(const std::string& text, const ChainFileOptions& options = {});
MarkovChain read_chain_file(const std::string& path, const ChainFileOptions& options = {});
std::string chain_to_text(const MarkovChain& chain);

/// Shortest representation that round-trips a double (17 significant digits).
std::string format_full(double v);

}  // namespace walkmix
