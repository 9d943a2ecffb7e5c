#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stablecentres/forms.hpp"
#include "stablecentres/grouptable.hpp"
#include "stablecentres/matfq.hpp"
#include "stablecentres/rational.hpp"
#include "stablecentres/types.hpp"

namespace stc {

struct BuildOptions {
  std::optional<std::filesystem::path> cache_dir;
  unsigned threads = 1;
  std::uint64_t limit = 30'000'000;
};

GroupTable build_group(Family family, unsigned q, int n, const BuildOptions& opt = {});

struct ClassInfo {
  std::size_t rep = 0;  // ordinal of the least packed element
  std::uint64_t size = 0;
  BigInt centralizer;
  Multipartition type;      // over the entry field
  Multipartition modified;
  StableLabel label;
};

struct ClassTable {
  std::shared_ptr<const GroupTable> group;
  std::vector<std::uint32_t> class_of;  // parallel to group->elems
  std::vector<ClassInfo> classes;
  // Members of class c are members[offsets[c] .. offsets[c+1]).
  std::vector<std::uint32_t> members;
  std::vector<std::size_t> offsets;

  std::size_t count() const { return classes.size(); }
  Mat rep(std::size_t c) const { return group->element(classes[c].rep); }
  std::optional<std::size_t> find_label(const StableLabel& l) const;
  std::optional<std::size_t> class_of_matrix(const Mat& m) const;
};

ClassTable conjugacy_classes(std::shared_ptr<const GroupTable> g, unsigned threads = 1);

// Full scan of the group.
std::uint64_t centralizer_size(const GroupTable& g, const Mat& x);
std::vector<std::size_t> centralizer_elements(const GroupTable& g, const Mat& x);

// Class of block_embed(rep, step) in the next rank.
std::map<std::size_t, std::size_t> stable_match(const ClassTable& cn, const ClassTable& cn1);

// Ordinal of the inverse of every element.
std::vector<std::uint32_t> inverse_table(const GroupTable& g);

std::string cache_stem(Family family, unsigned q, int n);
std::uint64_t group_checksum(const GroupTable& g);
void cache_store(const std::filesystem::path& path, const GroupTable& g);
GroupTable cache_load_group(const std::filesystem::path& path);
void cache_store(const std::filesystem::path& path, const ClassTable& c);
// Rebuilds per-class data from the stored class array.
ClassTable cache_load_classes(const std::filesystem::path& path, std::shared_ptr<const GroupTable> g);

// Builds or loads both tables, using the cache directory when given.
ClassTable load_or_build(Family family, unsigned q, int n, const BuildOptions& opt = {});

}  // namespace stc
