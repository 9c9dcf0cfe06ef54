#pragma once

#include <cstdint>
#include <string>

namespace gsyn {

// FNV-1a over the raw bytes; used to tie solutions and traces to the exact
// input file they were computed from.
uint64_t fnv1a64(const std::string& bytes);

std::string digest_hex(const std::string& bytes);

} // namespace gsyn
