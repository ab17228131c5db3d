#pragma once

#include <cstddef>

// Declarations for the embedded copies of data/catalog/*.alg and
// expectations.json. The definitions live in a source file generated at build
// time by cmake/embed_data.cmake, so the binaries carry the registry with
// them and never depend on a runtime data path.
namespace rk::detail {

struct EmbeddedFile {
  const char* name;  // base file name, e.g. "L6_10.alg"
  const char* text;  // exact file payload
};

extern const EmbeddedFile kCatalogFiles[];
extern const std::size_t kCatalogFileCount;
extern const char* const kExpectationsJson;

}  // namespace rk::detail
