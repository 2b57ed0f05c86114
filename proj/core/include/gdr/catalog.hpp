#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gdr/format_spec.hpp"

namespace gdr::format {

struct CatalogEntry {
  FormatSpec spec;
  std::vector<std::string> hot_words;  // lowercase context words
};

/// Ordered, id-unique collection of format specs.
class Catalog {
public:
  void add(CatalogEntry entry);

  const CatalogEntry* find(std::string_view category_id) const;
  const CatalogEntry& at(std::string_view category_id) const;
  CatalogEntry* find_mutable(std::string_view category_id);

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::vector<std::string> ids() const;
  std::size_t size() const { return entries_.size(); }

  /// Subset preserving order; throws InputError naming the known ids when
  /// any requested id is missing.
  Catalog subset(const std::vector<std::string>& category_ids) const;

private:
  std::vector<CatalogEntry> entries_;
};

/// The built-in desk-scale catalog: 24 publicly documented formats, 16 of
/// them numeric-only, with Luhn, mod-97, and weighted-sum checksums where
/// the real scheme is public.
const Catalog& builtin_catalog();

/// Parses a catalog DSL file: one spec per line, '#' comments, blank lines
/// ignored.
Catalog parse_catalog(std::string_view text);
Catalog load_catalog(const std::filesystem::path& path);

/// Parses a hot-word file (`category_id: word[, word]*` per line) into an
/// existing catalog. Unknown ids raise InputError.
void load_hot_words(Catalog& catalog, std::string_view text);
void load_hot_words_file(Catalog& catalog, const std::filesystem::path& path);

}  // namespace gdr::format
