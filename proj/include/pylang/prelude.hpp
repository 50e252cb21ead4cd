#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pylang {

// A routine every program would otherwise have to hand-write: string/integer
// conversion, splitting, sorting, min/max, substring search, slicing. Each
// lives in prelude/<name>.pyl as a single `function <name>(...)` and is
// embedded into the library at build time.
struct PreludeRoutine {
  std::string name;
  int arity = 0;
  std::string doc;
  std::string source;
};

const std::vector<PreludeRoutine>& prelude_routines();
const PreludeRoutine* find_prelude_routine(std::string_view name);

namespace detail {
struct PreludeAsset {
  const char* name;
  const char* source;
};
extern const PreludeAsset kPreludeAssets[];
extern const int kPreludeAssetCount;
}  // namespace detail

}  // namespace pylang
