#include "frameq/harmonic.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <thread>

#include "frameq/equivalence.hpp"
#include "frameq/frame_core.hpp"

namespace frameq {

AbelianGroup::AbelianGroup(std::vector<int> f) : factors(std::move(f)) {
  require(!factors.empty(), Errc::BadArgument, "group needs at least one factor");
  for (int x : factors) {
    require(x >= 1, Errc::BadArgument, "cyclic factors must be positive");
    require(order_ <= (1 << 24) / x, Errc::BadArgument, "group order too large");
    order_ *= x;
  }
}

std::vector<int> AbelianGroup::tuple(int index) const {
  require(0 <= index && index < order_, Errc::IndexOutOfRange, "group element out of range");
  std::vector<int> t(factors.size());
  for (int i = int(factors.size()) - 1; i >= 0; --i) {
    t[i] = index % factors[i];
    index /= factors[i];
  }
  return t;
}

int AbelianGroup::index(const std::vector<int>& tuple) const {
  require(tuple.size() == factors.size(), Errc::BadArgument, "tuple length mismatch");
  int idx = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int c = ((tuple[i] % factors[i]) + factors[i]) % factors[i];
    idx = idx * factors[i] + c;
  }
  return idx;
}

int AbelianGroup::add(int a, int b) const {
  const auto ta = tuple(a), tb = tuple(b);
  std::vector<int> t(factors.size());
  for (std::size_t i = 0; i < factors.size(); ++i) t[i] = ta[i] + tb[i];
  return index(t);
}

int AbelianGroup::neg(int a) const {
  auto t = tuple(a);
  for (std::size_t i = 0; i < factors.size(); ++i) t[i] = -t[i];
  return index(t);
}

Cplx AbelianGroup::character(int chi, int g) const {
  const auto tc = tuple(chi), tg = tuple(g);
  Real angle = 0;
  for (std::size_t i = 0; i < factors.size(); ++i)
    angle += Real(2) * std::numbers::pi_v<Real> * Real(tc[i]) * Real(tg[i]) / Real(factors[i]);
  return {std::cos(angle), std::sin(angle)};
}

SubsetJ::SubsetJ(AbelianGroup g, std::vector<int> m) : group(std::move(g)), members(std::move(m)) {
  require(!members.empty(), Errc::BadArgument, "subset must be nonempty");
  require(std::is_sorted(members.begin(), members.end()), Errc::BadArgument,
          "subset members must be sorted");
  require(std::adjacent_find(members.begin(), members.end()) == members.end(),
          Errc::BadArgument, "subset members must be distinct");
  require(members.front() >= 0 && members.back() < group.order(), Errc::IndexOutOfRange,
          "subset member out of range");
}

FrameSpec harmonic_frame(const SubsetJ& j) {
  const int n = j.group.order();
  const int d = j.d();
  CMat vectors(d, n);
  for (int chi = 0; chi < n; ++chi)
    for (int r = 0; r < d; ++r) vectors(r, chi) = j.group.character(chi, j.members[r]);
  return FrameSpec(std::move(vectors));
}

bool distinct_vector_subset(const AbelianGroup& group, const std::vector<int>& members) {
  // Vectors for characters chi and eta coincide exactly when chi - eta
  // kills every member, so distinctness means the members generate.
  std::vector<char> reached(group.order(), 0);
  std::vector<int> stack{0};
  reached[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    const int g = stack.back();
    stack.pop_back();
    for (int m : members) {
      const int h = group.add(g, m);
      if (!reached[h]) {
        reached[h] = 1;
        ++count;
        stack.push_back(h);
      }
    }
  }
  return count == group.order();
}

namespace {

using Mask = std::uint32_t;

bool generates_cyclic(Mask mask, int n) {
  int g = n;
  for (int i = 0; i < n; ++i)
    if (mask & (Mask(1) << i)) g = std::gcd(g, i);
  return g == 1;
}

Mask remap(Mask mask, const std::vector<int>& image) {
  Mask out = 0;
  while (mask) {
    const int i = std::countr_zero(mask);
    mask &= mask - 1;
    out |= Mask(1) << image[i];
  }
  return out;
}

// Subset order matching lexicographic order of sorted element lists: the
// lowest differing element decides, and the mask containing it is smaller.
bool subset_less(Mask a, Mask b) {
  const Mask diff = a ^ b;
  if (!diff) return false;
  return a & (diff & -diff);
}

std::vector<int> mask_to_list(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

// Element images of the group maps in play, one permutation per map.
std::vector<std::vector<int>> translation_images(int n) {
  std::vector<std::vector<int>> maps;
  for (int b = 0; b < n; ++b) {
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) img[x] = ((x - b) % n + n) % n;
    maps.push_back(std::move(img));
  }
  return maps;
}

std::vector<std::vector<int>> automorphism_images(int n) {
  std::vector<std::vector<int>> maps;
  for (int u = 1; u <= n; ++u) {
    if (std::gcd(u, n) != 1) continue;  // u == n survives only when n == 1
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) img[x] = int((std::int64_t(u) * x) % n);
    maps.push_back(std::move(img));
  }
  return maps;
}

std::vector<std::vector<int>> affine_images(int n) {
  std::vector<std::vector<int>> maps;
  for (const auto& a : automorphism_images(n))
    for (const auto& t : translation_images(n)) {
      std::vector<int> img(n);
      for (int x = 0; x < n; ++x) img[x] = t[a[x]];
      maps.push_back(std::move(img));
    }
  return maps;
}

struct OrbitScan {
  int count = 0;
  std::vector<Mask> reps;  // least member per orbit, in subset order
};

OrbitScan scan_orbits(int n, int d, const std::vector<std::vector<int>>& maps,
                      SubsetUniverse universe) {
  require(1 <= d && d <= n && n <= 30, Errc::BadArgument, "need 1 <= d <= n <= 30");
  const bool restrict = universe == SubsetUniverse::distinct_vector_frames;
  std::vector<Mask> forms;
  const Mask limit = Mask(1) << n;
  // Walk all d-subsets in mask order via the lowest-bit increment trick.
  Mask mask = (Mask(1) << d) - 1;
  while (mask < limit) {
    if (!restrict || generates_cyclic(mask, n)) {
      Mask best = 0;
      bool have = false;
      for (const auto& img : maps) {
        const Mask m = remap(mask, img);
        if (restrict && !generates_cyclic(m, n)) continue;
        if (!have || subset_less(m, best)) {
          best = m;
          have = true;
        }
      }
      forms.push_back(best);
    }
    const Mask low = mask & -mask;
    const Mask ripple = mask + low;
    mask = ripple | (((mask ^ ripple) >> 2) / low);
  }
  std::sort(forms.begin(), forms.end(), subset_less);
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return OrbitScan{int(forms.size()), std::move(forms)};
}

}  // namespace

int translation_orbit_count(int n, int d, SubsetUniverse u) {
  return scan_orbits(n, d, translation_images(n), u).count;
}

int automorphism_orbit_count(int n, int d, SubsetUniverse u) {
  return scan_orbits(n, d, automorphism_images(n), u).count;
}

int affine_orbit_count(int n, int d, SubsetUniverse u) {
  return scan_orbits(n, d, affine_images(n), u).count;
}

int translation_orbit_count(const AbelianGroup& group, int d, SubsetUniverse u) {
  const int n = group.order();
  require(1 <= d && d <= n && n <= 30, Errc::BadArgument, "need 1 <= d <= n <= 30");
  std::vector<std::vector<int>> maps;
  for (int b = 0; b < n; ++b) {
    std::vector<int> img(n);
    for (int x = 0; x < n; ++x) img[x] = group.add(x, group.neg(b));
    maps.push_back(std::move(img));
  }
  const bool restrict = u == SubsetUniverse::distinct_vector_frames;
  std::vector<Mask> forms;
  const Mask limit = Mask(1) << n;
  Mask mask = (Mask(1) << d) - 1;
  while (mask < limit) {
    const bool admissible = !restrict || distinct_vector_subset(group, mask_to_list(mask));
    if (admissible) {
      Mask best = 0;
      bool have = false;
      for (const auto& img : maps) {
        const Mask m = remap(mask, img);
        if (restrict && !distinct_vector_subset(group, mask_to_list(m))) continue;
        if (!have || subset_less(m, best)) {
          best = m;
          have = true;
        }
      }
      forms.push_back(best);
    }
    const Mask low = mask & -mask;
    const Mask ripple = mask + low;
    mask = ripple | (((mask ^ ripple) >> 2) / low);
  }
  std::sort(forms.begin(), forms.end(), subset_less);
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  return int(forms.size());
}

std::vector<std::vector<int>> automorphism_orbit_reps(int n, int d, SubsetUniverse u) {
  std::vector<std::vector<int>> out;
  for (Mask m : scan_orbits(n, d, automorphism_images(n), u).reps) out.push_back(mask_to_list(m));
  return out;
}

std::vector<std::vector<int>> affine_orbit_reps(int n, int d, SubsetUniverse u) {
  std::vector<std::vector<int>> out;
  for (Mask m : scan_orbits(n, d, affine_images(n), u).reps) out.push_back(mask_to_list(m));
  return out;
}

namespace {

int worker_count(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("FRAMEQ_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && cap < long(hw)) hw = unsigned(cap);
  }
  return int(std::min<std::size_t>(hw, std::max<std::size_t>(jobs, 1)));
}

// Pairwise merge outcomes between orbit representatives: 1 = same class,
// 0 = different, 2 = search gave up.  Checked in parallel, merged serially.
ExactCount merge_classes(const std::vector<GramMatrix>& grams, bool unitary_only,
                         std::uint64_t budget, const Tolerance& tol, bool& complete) {
  const int r = int(grams.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) pairs.emplace_back(i, j);

  std::vector<char> outcome(pairs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next.fetch_add(1); k < pairs.size(); k = next.fetch_add(1)) {
      const Verdict v = projective_equiv_reindex(grams[pairs[k].first], grams[pairs[k].second],
                                                 tol, budget, unitary_only);
      outcome[k] = v.equivalent ? 1 : (v.status == "unknown" ? 2 : 0);
    }
  };
  const int workers = worker_count(pairs.size());
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::vector<int> parent(r);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto classes_with = [&](bool merge_unknown) {
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (outcome[k] == 1 || (merge_unknown && outcome[k] == 2)) {
        const int a = find(pairs[k].first), b = find(pairs[k].second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    int count = 0;
    for (int i = 0; i < r; ++i) count += find(i) == i;
    return count;
  };
  complete = std::find(outcome.begin(), outcome.end(), 2) == outcome.end();
  const int hi = classes_with(false);
  const int lo = complete ? hi : classes_with(true);
  return ExactCount{lo, hi};
}

}  // namespace

CensusRow census(int n, int d, CensusMode mode, std::uint64_t budget, const Tolerance& tol) {
  CensusRow row;
  row.n = n;
  row.d = d;
  row.translation_orbits = translation_orbit_count(n, d);
  row.automorphism_orbits = automorphism_orbit_count(n, d);
  row.affine_orbits = affine_orbit_count(n, d);
  if (mode == CensusMode::orbits) {
    row.status = "orbits";
    return row;
  }

  const AbelianGroup group({n});
  auto grams_for = [&](const std::vector<std::vector<int>>& reps) {
    std::vector<GramMatrix> out;
    out.reserve(reps.size());
    for (const auto& rep : reps) out.push_back(gram(harmonic_frame(SubsetJ(group, rep))));
    return out;
  };

  bool uni_done = false, proj_done = false;
  row.exact_unitary = merge_classes(
      grams_for(automorphism_orbit_reps(n, d)), true, budget, tol, uni_done);
  row.exact_projective = merge_classes(
      grams_for(affine_orbit_reps(n, d)), false, budget, tol, proj_done);
  row.status = (uni_done && proj_done) ? "exact" : "partial";
  apply_census_flags(row);
  return row;
}

void apply_census_flags(CensusRow& row) {
  row.anomaly_unitary =
      row.exact_unitary && row.exact_unitary->lo > row.automorphism_orbits;
  row.anomaly_projective =
      row.exact_projective && row.exact_projective->lo > row.affine_orbits;
}

}  // namespace frameq
