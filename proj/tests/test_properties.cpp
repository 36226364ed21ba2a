#include <doctest.h>

#include <numeric>

#include "frameq/equivalence.hpp"
#include "frameq/frame_core.hpp"
#include "frameq/harmonic.hpp"
#include "frameq/invariants.hpp"
#include "frameq/similarity.hpp"
#include "helpers.hpp"

using namespace frameq;
using namespace tq;

namespace {

constexpr Real kEps = 1e-8;

std::vector<int> random_walk(Rng& rng, int n, int len) {
  std::vector<int> w(len);
  for (int i = 0; i < len; ++i) w[i] = int(rng() % n);
  return w;
}

}  // namespace

TEST_CASE("products are gauge invariant across a thousand random cases") {
  // Each inner product picks up conj(c_j) c_k; around a closed walk the
  // factors telescope away, whatever the walk and whatever the gauge.
  Rng rng(101);
  int cases = 0;
  int failures = 0;
  while (cases < 1000) {
    const int n = 3 + int(rng() % 8);
    const GramMatrix g = gram(random_frame(rng, 2 + int(rng() % 3), n));
    const GramMatrix moved = apply_gauge(g, PhaseVector(random_phases(rng, n)));
    for (int w = 0; w < 10 && cases < 1000; ++w, ++cases) {
      const std::vector<int> walk = random_walk(rng, n, 2 + int(rng() % 5));
      if (dist(m_product(moved, walk), m_product(g, walk)) >= kEps) ++failures;
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("reversal conjugates and rotation preserves products") {
  Rng rng(103);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + int(rng() % 8);
    const GramMatrix g = gram(random_frame(rng, 2 + int(rng() % 3), n));
    std::vector<int> walk = random_walk(rng, n, 2 + int(rng() % 5));

    std::vector<int> reversed(walk.rbegin(), walk.rend());
    CHECK(dist(m_product(g, reversed), std::conj(m_product(g, walk))) < kEps);

    std::vector<int> rotated(walk.begin() + 1, walk.end());
    rotated.push_back(walk.front());
    CHECK(dist(m_product(g, rotated), m_product(g, walk)) < kEps);
  }
}

TEST_CASE("dependency projectors are idempotent hermitian projections") {
  Rng rng(107);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + int(rng() % 5);
    const int n = d + int(rng() % 5);
    const CMat p = dependency_projector(random_frame(rng, d, n)).matrix;
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-7);
    CHECK((p - p.adjoint()).cwiseAbs().maxCoeff() < kEps);
  }
}

TEST_CASE("translated subsets merge without any reindexing") {
  // Shifting the subset rescales each character vector by a unit value, so
  // the identity relabeling with a gauge always suffices.
  Rng rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + int(rng() % 10);  // up to 12 vectors
    const AbelianGroup group({n});
    const int d = 1 + int(rng() % std::min(n, 5));
    std::vector<int> members;
    {
      std::vector<int> pool(n);
      std::iota(pool.begin(), pool.end(), 0);
      do {
        std::shuffle(pool.begin(), pool.end(), rng);
        members.assign(pool.begin(), pool.begin() + d);
        std::sort(members.begin(), members.end());
      } while (!distinct_vector_subset(group, members));
    }
    const int b = int(rng() % n);
    std::vector<int> shifted;
    for (int m : members) shifted.push_back(((m - b) % n + n) % n);
    std::sort(shifted.begin(), shifted.end());

    const GramMatrix g1 = gram(harmonic_frame(SubsetJ(group, members)));
    const GramMatrix g2 = gram(harmonic_frame(SubsetJ(group, shifted)));
    const Verdict v = projective_equiv(g1, g2);
    CHECK(v.equivalent);
  }
}

TEST_CASE("orbit counts are complement symmetric") {
  // Complementation commutes with translations and with affine maps on the
  // frames that matter; the pure multiplier action needs the unrestricted
  // subset universe for the same symmetry.
  for (int n = 2; n <= 16; ++n)
    for (int d = 1; d < n; ++d) {
      CHECK(translation_orbit_count(n, d) == translation_orbit_count(n, n - d));
      CHECK(affine_orbit_count(n, d) == affine_orbit_count(n, n - d));
      CHECK(automorphism_orbit_count(n, d, SubsetUniverse::all_subsets) ==
            automorphism_orbit_count(n, n - d, SubsetUniverse::all_subsets));
    }
}
