#include "pylang/prelude.hpp"

#include <stdexcept>

namespace pylang {

namespace {

struct Meta {
  const char* name;
  int arity;
  const char* doc;
};

// Listing order here is the order `prelude list` prints.
constexpr Meta kMeta[] = {
    {"str_to_int", 1,
     "Parses an optionally signed decimal string; returns the unassigned-index "
     "sentinel on malformed input."},
    {"int_to_str", 1, "Renders an integer as its decimal string."},
    {"split_lines", 1,
     "Splits text on newlines; a trailing newline adds no empty element."},
    {"split_tokens", 1, "Splits text on runs of spaces; never yields empty tokens."},
    {"sort", 2, "Sorts a[0..n-1] ascending in place (insertion sort)."},
    {"min", 2, "Smallest of a[0..n-1]; sentinel when n is 0."},
    {"max", 2, "Largest of a[0..n-1]; sentinel when n is 0."},
    {"contains", 2, "1 if needle occurs in haystack, else 0."},
    {"slice", 3, "Fresh array holding a[i..j-1], reindexed from 0."},
};

}  // namespace

const std::vector<PreludeRoutine>& prelude_routines() {
  static const std::vector<PreludeRoutine> routines = [] {
    std::vector<PreludeRoutine> v;
    for (const Meta& m : kMeta) {
      const char* source = nullptr;
      for (int i = 0; i < detail::kPreludeAssetCount; ++i) {
        if (std::string_view(detail::kPreludeAssets[i].name) == m.name) {
          source = detail::kPreludeAssets[i].source;
          break;
        }
      }
      if (!source)
        throw std::logic_error(std::string("prelude asset missing: ") + m.name);
      v.push_back(PreludeRoutine{m.name, m.arity, m.doc, source});
    }
    if (static_cast<int>(v.size()) != detail::kPreludeAssetCount)
      throw std::logic_error("prelude metadata out of sync with embedded assets");
    return v;
  }();
  return routines;
}

const PreludeRoutine* find_prelude_routine(std::string_view name) {
  for (const auto& r : prelude_routines())
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace pylang
