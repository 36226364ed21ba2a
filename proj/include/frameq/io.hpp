#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "frameq/equivalence.hpp"
#include "frameq/frame_graph.hpp"
#include "frameq/harmonic.hpp"
#include "frameq/invariants.hpp"
#include "frameq/similarity.hpp"
#include "frameq/types.hpp"

// File formats.  All JSON indices are 0-based; complex scalars are [re, im]
// pairs.  Pretty renderings are 1-based and labeled as such.
//
//   frame    { "dim": d, "vectors": [[[re,im] x d] x n] }
//   gram     { "n": n, "entries": [[[re,im] x n] x n] }  row-major
//   graph    { "n": n, "edges": [[j,k], ...] }
//   products { "n": n, "norms": [..], "moduli": [[..] ..],
//              "cycles": [{ "indices": [..], "value": [re,im] }, ...] }
//   verdict  { "equivalent": bool, "status": "decided"|"unknown",
//              "phases"?: [[re,im] ..], "permutation"?: [..],
//              "witness"?: { "kind": "entry"|"cycle", "indices": [..] },
//              "q_recipe"?: { "indices": [..], "phases": [[re,im] ..] } }
//   census   CSV, header n,d,translation_orbits,automorphism_orbits,
//            affine_orbits,exact_unitary,exact_projective,status

namespace frameq {

using Json = nlohmann::json;

Json to_json(const FrameSpec& f);
Json to_json(const GramMatrix& g);
Json to_json(const FrameGraph& g);
Json to_json(const DeterminingSet& ds);
Json to_json(const Verdict& v);
Json to_json(const SimilarityVerdict& v);

// Products payload for ad-hoc index lists (full triple tables, single
// tuples): same schema as a determining set, any cycle list.
Json products_json(const GramMatrix& g,
                   const std::vector<std::pair<std::vector<int>, Cplx>>& cycles);

FrameSpec frame_from_json(const Json& j);
GramMatrix gram_from_json(const Json& j, const Tolerance& tol = {});
FrameGraph graph_from_json(const Json& j);
DeterminingSet products_from_json(const Json& j);

// Parses file content; throws ParseError with a diagnostic on bad JSON.
Json load_json(const std::string& path);

// Reads a file holding either schema; a frame is converted via its Gramian.
GramMatrix load_gram_like(const std::string& path, const Tolerance& tol = {});

std::string census_csv_header();
std::string census_csv_row(const CensusRow& row);
Json to_json(const CensusRow& row);

// Human-readable renderings, all 1-based where indices appear.
std::string pretty(const FrameSpec& f);
std::string pretty(const GramMatrix& g);
std::string pretty(const FrameGraph& g);
std::string pretty(const DeterminingSet& ds);
std::string pretty(const Verdict& v);
std::string pretty(const SimilarityVerdict& v);
std::string pretty(const CensusRow& row);

// Renders any products payload (determining sets, triple tables, single
// tuples) from its interchange form.
std::string pretty_products(const Json& products);

}  // namespace frameq
