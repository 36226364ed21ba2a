#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "frameq/types.hpp"

namespace frameq {

// Finite abelian group as a product of cyclic factors.  Elements are
// indexed 0..order-1 in mixed-radix order over the factor tuple, and the
// characters are indexed the same way.
struct AbelianGroup {
  std::vector<int> factors;

  explicit AbelianGroup(std::vector<int> f);

  int order() const { return order_; }
  std::vector<int> tuple(int index) const;
  int index(const std::vector<int>& tuple) const;
  int add(int a, int b) const;
  int neg(int a) const;
  // Value of character chi at group element g.
  Cplx character(int chi, int g) const;

 private:
  int order_ = 1;
};

// A d-element subset of the group's index set, kept sorted.
struct SubsetJ {
  AbelianGroup group;
  std::vector<int> members;

  SubsetJ(AbelianGroup g, std::vector<int> m);
  int d() const { return int(members.size()); }
};

// The frame whose vector for character chi has coordinates chi(g), g in J:
// n = |group| vectors in C^d.  Always an equal-norm tight frame.
FrameSpec harmonic_frame(const SubsetJ& j);

// True when the frame has n pairwise distinct vectors, i.e. the subset is
// contained in no proper subgroup.  Subsets failing this produce frames
// that repeat a smaller frame, and the classification counts skip them.
bool distinct_vector_subset(const AbelianGroup& group, const std::vector<int>& members);

// Which subsets an orbit count ranges over.
enum class SubsetUniverse {
  distinct_vector_frames,  // default: subsets generating the group
  all_subsets,
};

// Orbit counts of d-subsets of Z_n under translation j -> j - b, under the
// automorphisms j -> u j (u coprime to n), and under the affine maps
// composing the two.  Pure integer computation on bitmask canonical forms.
int translation_orbit_count(int n, int d,
                            SubsetUniverse u = SubsetUniverse::distinct_vector_frames);
int automorphism_orbit_count(int n, int d,
                             SubsetUniverse u = SubsetUniverse::distinct_vector_frames);
int affine_orbit_count(int n, int d,
                       SubsetUniverse u = SubsetUniverse::distinct_vector_frames);

// Translation orbits for a general abelian group.
int translation_orbit_count(const AbelianGroup& group, int d,
                            SubsetUniverse u = SubsetUniverse::distinct_vector_frames);

// Lexicographically least subset per orbit, in increasing order.
std::vector<std::vector<int>> automorphism_orbit_reps(
    int n, int d, SubsetUniverse u = SubsetUniverse::distinct_vector_frames);
std::vector<std::vector<int>> affine_orbit_reps(
    int n, int d, SubsetUniverse u = SubsetUniverse::distinct_vector_frames);

// Class count bracket from a merge search: lo assumes every undecided pair
// merges, hi assumes none does.  Equal bounds mean the count is settled.
struct ExactCount {
  int lo = 0;
  int hi = 0;
  bool exact() const { return lo == hi; }
};

struct CensusRow {
  int n = 0;
  int d = 0;
  int translation_orbits = 0;
  int automorphism_orbits = 0;
  int affine_orbits = 0;
  std::optional<ExactCount> exact_unitary;     // classes up to unitary + relabeling
  std::optional<ExactCount> exact_projective;  // classes up to unitary + phases + relabeling
  bool anomaly_unitary = false;
  bool anomaly_projective = false;
  std::string status = "orbits";  // "orbits" | "exact" | "partial"
};

enum class CensusMode { orbits, exact };

// One classification row for the frames of n vectors in C^d coming from
// Z_n.  Orbit mode fills the three orbit counts.  Exact mode additionally
// runs the relabeling search between orbit representatives: automorphism
// orbits merged under permutation-only Gram equality give exact_unitary,
// affine orbits merged under the projective search give exact_projective.
// Pairs whose search exceeds the node budget widen the brackets instead of
// guessing.  FRAMEQ_THREADS caps the worker threads used for the pair
// checks; the merge order is deterministic regardless.
CensusRow census(int n, int d, CensusMode mode, std::uint64_t budget = 10'000'000,
                 const Tolerance& tol = {});

// Sets the anomaly flags: a settled exact count exceeding its orbit count
// signals inconsistent data (group orbits always over-count classes).
void apply_census_flags(CensusRow& row);

}  // namespace frameq
