#include "stablecentres/groups.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <fstream>
#include <functional>
#include <numeric>
#include <thread>

#include <unistd.h>

#include "fastmat.hpp"
#include "parallel.hpp"
#include "stablecentres/errors.hpp"

namespace stc {
using detail::parallel_for;

namespace {

GroupTable build_gl(unsigned q, int n, const BuildOptions& opt) {
  const Field& f = field_of_order(q);
  GroupTable t;
  t.family = Family::GL;
  t.q = q;
  t.n = n;
  t.N = n;
  t.F = &f;
  t.words = packed_words(f, n, n);
  if (group_order(Family::GL, q, n) > opt.limit) throw Error(ErrorCode::LimitExceeded, "group order exceeds limit");
  if (n == 0) {
    t.elems.assign(t.words, 0);
    return t;
  }
  std::size_t nv = 1;
  for (int i = 0; i < n; ++i) nv *= f.size();
  if (nv > 4096) throw Error(ErrorCode::LimitExceeded, "row space too large");
  // Vector index = sum_j entry_j |F|^j.
  std::vector<std::vector<Scalar>> vec(nv, std::vector<Scalar>(n));
  for (std::size_t v = 0; v < nv; ++v) {
    std::size_t x = v;
    for (int j = 0; j < n; ++j) {
      vec[v][j] = static_cast<Scalar>(x % f.size());
      x /= f.size();
    }
  }
  auto index_of = [&](const std::vector<Scalar>& e) {
    std::size_t x = 0;
    for (int j = n; j-- > 0;) x = x * f.size() + e[j];
    return x;
  };
  std::vector<std::uint32_t> vadd(nv * nv), vscale(static_cast<std::size_t>(f.size()) * nv);
  for (std::size_t a = 0; a < nv; ++a)
    for (std::size_t b = 0; b < nv; ++b) {
      std::vector<Scalar> e(n);
      for (int j = 0; j < n; ++j) e[j] = f.add(vec[a][j], vec[b][j]);
      vadd[a * nv + b] = static_cast<std::uint32_t>(index_of(e));
    }
  for (Scalar c = 0; c < f.size(); ++c)
    for (std::size_t a = 0; a < nv; ++a) {
      std::vector<Scalar> e(n);
      for (int j = 0; j < n; ++j) e[j] = f.mul(c, vec[a][j]);
      vscale[c * nv + a] = static_cast<std::uint32_t>(index_of(e));
    }
  // Packed contribution of vector v placed in row i.
  const std::size_t W = t.words;
  std::vector<std::uint64_t> rowpat(static_cast<std::size_t>(n) * nv * W, 0);
  for (int i = 0; i < n; ++i)
    for (std::size_t v = 0; v < nv; ++v) {
      Mat m(f, n, n);
      for (int j = 0; j < n; ++j) m.at(i, j) = vec[v][j];
      pack_into(m, rowpat.data() + (static_cast<std::size_t>(i) * nv + v) * W);
    }

  struct Worker {
    std::vector<std::uint64_t> out;
  };
  std::vector<std::size_t> firsts;
  for (std::size_t v = 1; v < nv; ++v) firsts.push_back(v);
  const unsigned nt = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(firsts.size())));
  std::vector<Worker> workers(nt);
  auto run = [&](unsigned tid) {
    auto& out = workers[tid].out;
    std::vector<std::vector<char>> span(n + 1, std::vector<char>(nv, 0));
    std::vector<std::vector<std::uint32_t>> members(n + 1);
    std::vector<std::uint64_t> acc((n + 1) * W, 0);
    span[0][0] = 1;
    members[0] = {0};
    std::function<void(int)> dfs = [&](int depth) {
      if (depth == n) {
        out.insert(out.end(), acc.begin() + depth * W, acc.begin() + (depth + 1) * W);
        return;
      }
      for (std::size_t v = 1; v < nv; ++v) {
        if (span[depth][v]) continue;
        if (depth == 0 && (v - 1) % nt != tid) continue;
        auto& ns = span[depth + 1];
        auto& nm = members[depth + 1];
        std::fill(ns.begin(), ns.end(), 0);
        nm.clear();
        for (Scalar c = 0; c < f.size(); ++c) {
          std::uint32_t cv = vscale[c * nv + v];
          for (std::uint32_t s : members[depth]) {
            std::uint32_t x = vadd[s * nv + cv];
            if (!ns[x]) {
              ns[x] = 1;
              nm.push_back(x);
            }
          }
        }
        for (std::size_t w = 0; w < W; ++w)
          acc[(depth + 1) * W + w] = acc[depth * W + w] | rowpat[(static_cast<std::size_t>(depth) * nv + v) * W + w];
        dfs(depth + 1);
      }
    };
    dfs(0);
  };
  if (nt == 1) {
    run(0);
  } else {
    std::vector<std::thread> th;
    for (unsigned i = 0; i < nt; ++i) th.emplace_back(run, i);
    for (auto& x : th) x.join();
  }
  std::size_t total = 0;
  for (auto& w : workers) total += w.out.size();
  t.elems.reserve(total);
  for (auto& w : workers) {
    t.elems.insert(t.elems.end(), w.out.begin(), w.out.end());
    std::vector<std::uint64_t>().swap(w.out);
  }
  t.sort_unique();
  return t;
}

constexpr char kMagic[4] = {'F', 'H', 'Q', 'C'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const void* data, std::size_t len, std::uint64_t h = 1469598103934665603ull) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

template <class T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw Error(ErrorCode::CacheCorrupt, "truncated cache file");
  return v;
}

void read_header(std::istream& is) {
  char m[4];
  is.read(m, 4);
  if (!is || std::memcmp(m, kMagic, 4) != 0) throw Error(ErrorCode::CacheCorrupt, "bad magic");
  auto v = get<std::uint32_t>(is);
  if (v != kVersion) throw Error(ErrorCode::VersionMismatch, "cache version " + std::to_string(v));
}

void atomic_write(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
  std::filesystem::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    body(os);
    if (!os) throw Error(ErrorCode::InvalidInput, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

void GroupTable::sort_unique() {
  if (words == 1) {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    return;
  }
  const std::size_t cnt = size();
  std::vector<std::size_t> idx(cnt);
  std::iota(idx.begin(), idx.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    for (std::size_t w = words; w-- > 0;)
      if (elems[a * words + w] != elems[b * words + w]) return elems[a * words + w] < elems[b * words + w];
    return false;
  };
  std::sort(idx.begin(), idx.end(), less);
  std::vector<std::uint64_t> out;
  out.reserve(elems.size());
  for (std::size_t k = 0; k < cnt; ++k) {
    if (k > 0 && !less(idx[k - 1], idx[k])) continue;
    out.insert(out.end(), elems.begin() + idx[k] * words, elems.begin() + (idx[k] + 1) * words);
  }
  elems.swap(out);
}

GroupTable build_group(Family family, unsigned q, int n, const BuildOptions& opt) {
  std::filesystem::path path;
  if (opt.cache_dir) {
    path = *opt.cache_dir / (cache_stem(family, q, n) + ".grp");
    if (std::filesystem::exists(path)) return cache_load_group(path);
  }
  if (group_order(family, q, n) > opt.limit) throw Error(ErrorCode::LimitExceeded, "group order exceeds limit");
  GroupTable t;
  if (family == Family::GL) {
    t = build_gl(q, n, opt);
  } else {
    EnumerateOptions eo;
    eo.limit = opt.limit;
    eo.threads = opt.threads;
    t = enumerate_isometry_group(standard_gram(family, n, q), eo);
  }
  if (opt.cache_dir) cache_store(path, t);
  return t;
}

std::vector<std::uint32_t> inverse_table(const GroupTable& g) {
  detail::FastKernel k(*g.F, g.N);
  std::vector<std::uint32_t> inv(g.size());
  std::vector<std::uint64_t> key(g.words);
  for (std::size_t i = 0; i < g.size(); ++i) {
    detail::FastBuf a, b;
    k.unpack(g.packed(i), a);
    if (!k.inv(a, b)) throw Error(ErrorCode::Singular, "group element is singular");
    k.pack(b, key.data());
    auto j = g.find(key.data());
    if (!j) throw Error(ErrorCode::NotInGroup, "inverse missing from table");
    inv[i] = static_cast<std::uint32_t>(*j);
  }
  return inv;
}

ClassTable conjugacy_classes(std::shared_ptr<const GroupTable> gp, unsigned threads) {
  const GroupTable& g = *gp;
  ClassTable ct;
  ct.group = gp;
  const std::size_t sz = g.size();
  const std::uint32_t unset = ~std::uint32_t(0);
  ct.class_of.assign(sz, unset);
  const std::string tm1 = t_minus_1_key(g.F->p());

  if (g.family == Family::GL) {
    // Per-thread dictionaries of distinct types keep memory at one id per element.
    const unsigned nt = std::clamp(threads, 1u, 255u);
    std::vector<std::map<Multipartition, std::uint32_t>> dict(nt);
    std::vector<std::vector<Multipartition>> local(nt);
    std::vector<std::uint8_t> owner(sz, 0);
    parallel_for(nt, sz, [&](unsigned tid, std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        Multipartition t = g.N == 0 ? Multipartition() : type_of(g.element(i));
        auto [it, fresh] = dict[tid].emplace(std::move(t), static_cast<std::uint32_t>(local[tid].size()));
        if (fresh) local[tid].push_back(it->first);
        ct.class_of[i] = it->second;
        owner[i] = static_cast<std::uint8_t>(tid);
      }
    });
    std::vector<Multipartition> sorted;
    for (auto& v : local) sorted.insert(sorted.end(), v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::vector<std::uint32_t>> remap(nt);
    for (unsigned t = 0; t < nt; ++t)
      for (const auto& m : local[t])
        remap[t].push_back(static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), m) - sorted.begin()));
    for (std::size_t i = 0; i < sz; ++i) ct.class_of[i] = remap[owner[i]][ct.class_of[i]];
    ct.classes.resize(sorted.size());
    for (auto& c : ct.classes) c.rep = sz;
    for (std::size_t i = 0; i < sz; ++i) {
      auto& c = ct.classes[ct.class_of[i]];
      if (c.rep == sz) c.rep = i;
      ++c.size;
    }
    for (std::size_t c = 0; c < sorted.size(); ++c) ct.classes[c].type = sorted[c];
  } else {
    auto inv = inverse_table(g);
    const bool one_word = g.words == 1;
    const bool binary = one_word && g.F->size() == 2 && g.N <= 8;
    std::unique_ptr<detail::PackedIndex> index;
    if (one_word) index = std::make_unique<detail::PackedIndex>(g.elems);
    detail::FastKernel k(*g.F, g.N);
    detail::Bin8 bin(std::max(1, g.N));
    const std::size_t e2 = static_cast<std::size_t>(g.N * g.N);
    std::vector<std::uint8_t> all;
    if (!binary) {
      all.resize(sz * e2);
      for (std::size_t i = 0; i < sz; ++i) k.unpack(g.packed(i), all.data() + i * e2);
    }
    std::uint32_t next = 0;
    for (std::size_t r = 0; r < sz; ++r) {
      if (ct.class_of[r] != unset) continue;
      const std::uint32_t cid = next++;
      std::vector<std::vector<std::uint32_t>> found(std::max(1u, threads));
      std::atomic<bool> missing{false};
      parallel_for(threads, sz, [&](unsigned tid, std::size_t lo, std::size_t hi) {
        detail::FastBuf tmp, c;
        std::vector<std::uint64_t> key(g.words);
        auto& out = found[tid];
        for (std::size_t x = lo; x < hi; ++x) {
          std::uint32_t j;
          if (binary) {
            std::uint64_t conj = bin.mul(bin.mul(g.elems[x], g.elems[r]), g.elems[inv[x]]);
            j = index->find(conj);
          } else {
            k.mul(all.data() + x * e2, all.data() + r * e2, tmp);
            k.mul(tmp, all.data() + static_cast<std::size_t>(inv[x]) * e2, c);
            k.pack(c, key.data());
            if (one_word) {
              j = index->find(key[0]);
            } else {
              auto o = g.find(key.data());
              j = o ? static_cast<std::uint32_t>(*o) : ~0u;
            }
          }
          if (j == ~0u) {
            missing = true;
            return;
          }
          out.push_back(j);
        }
      });
      if (missing) throw Error(ErrorCode::NotInGroup, "conjugate missing from table");
      ClassInfo info;
      info.rep = r;
      for (auto& v : found)
        for (auto j : v)
          if (ct.class_of[j] == unset) {
            ct.class_of[j] = cid;
            ++info.size;
          }
      ct.classes.push_back(std::move(info));
    }
    for (auto& c : ct.classes) c.type = g.N == 0 ? Multipartition() : type_of(g.element(c.rep));
  }

  // Labels: index among classes sharing a type, ordered by representative.
  std::map<Multipartition, int> seen;
  std::vector<std::size_t> order(ct.classes.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ct.classes[a].rep < ct.classes[b].rep; });
  const BigInt order_g = BigInt(sz);
  for (std::size_t c : order) {
    auto& info = ct.classes[c];
    info.centralizer = order_g / info.size;
    info.modified = to_modified(info.type, tm1);
    info.label.family = g.family;
    info.label.q = g.q;
    info.label.nu = info.modified;
    info.label.index = g.family == Family::GL ? 0 : seen[info.type]++;
  }

  ct.offsets.assign(ct.classes.size() + 1, 0);
  for (auto c : ct.class_of) ++ct.offsets[c + 1];
  for (std::size_t c = 0; c < ct.classes.size(); ++c) ct.offsets[c + 1] += ct.offsets[c];
  ct.members.resize(sz);
  std::vector<std::size_t> fill(ct.offsets.begin(), ct.offsets.end() - 1);
  for (std::size_t i = 0; i < sz; ++i) ct.members[fill[ct.class_of[i]]++] = static_cast<std::uint32_t>(i);
  return ct;
}

std::optional<std::size_t> ClassTable::find_label(const StableLabel& l) const {
  for (std::size_t c = 0; c < classes.size(); ++c)
    if (classes[c].label == l) return c;
  return std::nullopt;
}

std::optional<std::size_t> ClassTable::class_of_matrix(const Mat& m) const {
  auto i = group->find(m);
  if (!i) return std::nullopt;
  return class_of[*i];
}

std::vector<std::size_t> centralizer_elements(const GroupTable& g, const Mat& x) {
  if (!g.find(x)) throw Error(ErrorCode::NotInGroup, "element not in group");
  std::vector<std::size_t> out;
  if (g.N == 0) return {0};
  detail::FastKernel k(*g.F, g.N);
  detail::FastBuf a, b;
  k.from_mat(x, a);
  for (std::size_t i = 0; i < g.size(); ++i) {
    k.unpack(g.packed(i), b);
    if (k.commutes(a, b)) out.push_back(i);
  }
  return out;
}

std::uint64_t centralizer_size(const GroupTable& g, const Mat& x) { return centralizer_elements(g, x).size(); }

std::map<std::size_t, std::size_t> stable_match(const ClassTable& cn, const ClassTable& cn1) {
  const auto& g0 = *cn.group;
  const auto& g1 = *cn1.group;
  if (g0.family != g1.family || g0.q != g1.q || g1.n != g0.n + 1)
    throw Error(ErrorCode::InvalidInput, "stable_match needs consecutive ranks of one family");
  std::map<std::size_t, std::size_t> m;
  const int step = g1.N - g0.N;
  for (std::size_t c = 0; c < cn.count(); ++c) {
    Mat e = g0.N == 0 ? Mat::identity(*g1.F, g1.N) : block_embed(cn.rep(c), step);
    auto d = cn1.class_of_matrix(e);
    if (!d) throw Error(ErrorCode::EmbeddingNotInGroup, "embedded representative not in the larger group");
    m[c] = *d;
  }
  return m;
}

std::string cache_stem(Family family, unsigned q, int n) {
  return family_name(family) + "_q" + std::to_string(q) + "_n" + std::to_string(n);
}

std::uint64_t group_checksum(const GroupTable& g) {
  return fnv1a(g.elems.data(), g.elems.size() * sizeof(std::uint64_t));
}

void cache_store(const std::filesystem::path& path, const GroupTable& g) {
  atomic_write(path, [&](std::ostream& os) {
    os.write(kMagic, 4);
    put(os, kVersion);
    put<std::uint64_t>(os, g.size());
    put<std::uint32_t>(os, static_cast<std::uint32_t>(g.family));
    put<std::uint32_t>(os, g.q);
    put<std::int32_t>(os, g.n);
    put<std::int32_t>(os, g.N);
    put<std::uint32_t>(os, g.F->p());
    put<std::uint32_t>(os, g.F->k());
    put<std::uint64_t>(os, g.words);
    os.write(reinterpret_cast<const char*>(g.elems.data()),
             static_cast<std::streamsize>(g.elems.size() * sizeof(std::uint64_t)));
    put<std::uint64_t>(os, group_checksum(g));
  });
}

GroupTable cache_load_group(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::CacheCorrupt, "cannot open " + path.string());
  read_header(is);
  GroupTable g;
  auto count = get<std::uint64_t>(is);
  g.family = static_cast<Family>(get<std::uint32_t>(is));
  g.q = get<std::uint32_t>(is);
  g.n = get<std::int32_t>(is);
  g.N = get<std::int32_t>(is);
  auto p = get<std::uint32_t>(is);
  auto k = get<std::uint32_t>(is);
  g.words = get<std::uint64_t>(is);
  if (g.words == 0 || g.words > 64 || count > (std::uint64_t(1) << 32))
    throw Error(ErrorCode::CacheCorrupt, "implausible header");
  g.F = &field_make(p, k);
  if (g.words != packed_words(*g.F, g.N, g.N)) throw Error(ErrorCode::CacheCorrupt, "word count mismatch");
  g.elems.resize(count * g.words);
  is.read(reinterpret_cast<char*>(g.elems.data()), static_cast<std::streamsize>(g.elems.size() * sizeof(std::uint64_t)));
  if (!is) throw Error(ErrorCode::CacheCorrupt, "truncated element block");
  auto sum = get<std::uint64_t>(is);
  if (sum != group_checksum(g)) throw Error(ErrorCode::CacheCorrupt, "checksum mismatch");
  return g;
}

void cache_store(const std::filesystem::path& path, const ClassTable& c) {
  atomic_write(path, [&](std::ostream& os) {
    os.write(kMagic, 4);
    put(os, kVersion);
    put<std::uint64_t>(os, c.class_of.size());
    put<std::uint64_t>(os, group_checksum(*c.group));
    put<std::uint64_t>(os, c.classes.size());
    os.write(reinterpret_cast<const char*>(c.class_of.data()),
             static_cast<std::streamsize>(c.class_of.size() * sizeof(std::uint32_t)));
    put<std::uint64_t>(os, fnv1a(c.class_of.data(), c.class_of.size() * sizeof(std::uint32_t)));
  });
}

ClassTable cache_load_classes(const std::filesystem::path& path, std::shared_ptr<const GroupTable> gp) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::CacheCorrupt, "cannot open " + path.string());
  read_header(is);
  auto count = get<std::uint64_t>(is);
  auto gsum = get<std::uint64_t>(is);
  auto ncls = get<std::uint64_t>(is);
  if (count != gp->size() || gsum != group_checksum(*gp)) throw Error(ErrorCode::CacheCorrupt, "class file does not match group");
  ClassTable ct;
  ct.group = gp;
  ct.class_of.resize(count);
  is.read(reinterpret_cast<char*>(ct.class_of.data()), static_cast<std::streamsize>(count * sizeof(std::uint32_t)));
  if (!is) throw Error(ErrorCode::CacheCorrupt, "truncated class block");
  if (get<std::uint64_t>(is) != fnv1a(ct.class_of.data(), count * sizeof(std::uint32_t)))
    throw Error(ErrorCode::CacheCorrupt, "checksum mismatch");
  ct.classes.resize(ncls);
  for (auto& c : ct.classes) c.rep = count;
  for (std::size_t i = 0; i < count; ++i) {
    if (ct.class_of[i] >= ncls) throw Error(ErrorCode::CacheCorrupt, "class id out of range");
    auto& c = ct.classes[ct.class_of[i]];
    if (c.rep == count) c.rep = i;
    ++c.size;
  }
  const std::string tm1 = t_minus_1_key(gp->F->p());
  std::vector<std::size_t> order(ncls);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ct.classes[a].rep < ct.classes[b].rep; });
  std::map<Multipartition, int> seen;
  for (std::size_t c : order) {
    auto& info = ct.classes[c];
    if (info.rep == count) throw Error(ErrorCode::CacheCorrupt, "empty class");
    info.type = gp->N == 0 ? Multipartition() : type_of(gp->element(info.rep));
    info.centralizer = BigInt(count) / info.size;
    info.modified = to_modified(info.type, tm1);
    info.label = {gp->family, gp->q, info.modified, gp->family == Family::GL ? 0 : seen[info.type]++};
  }
  ct.offsets.assign(ncls + 1, 0);
  for (auto c : ct.class_of) ++ct.offsets[c + 1];
  for (std::size_t c = 0; c < ncls; ++c) ct.offsets[c + 1] += ct.offsets[c];
  ct.members.resize(count);
  std::vector<std::size_t> fill(ct.offsets.begin(), ct.offsets.end() - 1);
  for (std::size_t i = 0; i < count; ++i) ct.members[fill[ct.class_of[i]]++] = static_cast<std::uint32_t>(i);
  return ct;
}

ClassTable load_or_build(Family family, unsigned q, int n, const BuildOptions& opt) {
  auto g = std::make_shared<const GroupTable>(build_group(family, q, n, opt));
  if (opt.cache_dir) {
    auto path = *opt.cache_dir / (cache_stem(family, q, n) + ".cls");
    if (std::filesystem::exists(path)) {
      try {
        return cache_load_classes(path, g);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CacheCorrupt) throw;
      }
    }
    ClassTable ct = conjugacy_classes(g, opt.threads);
    cache_store(path, ct);
    return ct;
  }
  return conjugacy_classes(g, opt.threads);
}

}  // namespace stc
