#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "frameq/io.hpp"
#include "helpers.hpp"

using namespace frameq;
using namespace tq;

namespace {

constexpr Real kEps = 1e-12;

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/frameq_io_" + name;
  std::ofstream out(path);
  out << content;
  out.close();
  return path;
}

}  // namespace

TEST_CASE("frame json round trip") {
  Rng rng(3);
  const FrameSpec f = random_frame(rng, 3, 5);
  const Json j = to_json(f);
  CHECK(j["dim"] == 3);
  REQUIRE(j["vectors"].is_array());
  REQUIRE(j["vectors"].size() == 5);
  CHECK(j["vectors"][0].size() == 3);
  CHECK(j["vectors"][0][0].is_array());  // [re, im] pair

  const FrameSpec back = frame_from_json(j);
  CHECK((back.matrix() - f.matrix()).cwiseAbs().maxCoeff() < kEps);
}

TEST_CASE("gram json round trip") {
  Rng rng(5);
  const GramMatrix g = gram(random_frame(rng, 3, 6));
  const Json j = to_json(g);
  CHECK(j["n"] == 6);
  const GramMatrix back = gram_from_json(j);
  CHECK((back.entries() - g.entries()).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("graph json round trip") {
  const FrameGraph g = build_frame_graph(gram(mub_pair_frame()));
  const Json j = to_json(g);
  CHECK(j["n"] == 4);
  REQUIRE(j["edges"].size() == 4);
  const FrameGraph back = graph_from_json(j);
  CHECK(back.size() == g.size());
  CHECK(back.edges() == g.edges());
}

TEST_CASE("products json round trip feeds reconstruction") {
  const GramMatrix g = gram(mub_pair_frame());
  const DeterminingSet ds = determining_set(g);
  const Json j = to_json(ds);
  CHECK(j["n"] == 4);
  REQUIRE(j["cycles"].size() == 1);
  CHECK(j["cycles"][0]["indices"] == Json::array({0, 2, 1, 3}));

  const DeterminingSet back = products_from_json(j);
  CHECK((back.norms - ds.norms).cwiseAbs().maxCoeff() < kEps);
  CHECK((back.moduli - ds.moduli).cwiseAbs().maxCoeff() < kEps);
  REQUIRE(back.values.size() == 1);
  CHECK(dist(back.values[0], ds.values[0]) < kEps);

  // The parsed set carries no chord annotations, so rebuilding exercises
  // the canonical-form cycle lookup.
  const ReconstructionResult r = reconstruct_from_products(back);
  const Verdict v = projective_equiv(r.gram, g);
  CHECK(v.equivalent);
}

TEST_CASE("verdict json carries phases and witnesses") {
  const Json eq = to_json(projective_equiv(equiangular_family(Cplx{0, 1}, Cplx{1, 0}),
                                           printed_equiangular_gram()));
  CHECK(eq["equivalent"] == true);
  CHECK(eq["status"] == "decided");
  REQUIRE(eq["phases"].is_array());
  CHECK(eq["phases"].size() == 3);
  CHECK(eq["phases"][0].size() == 2);
  CHECK_FALSE(eq.contains("witness"));

  const Json entry = to_json(projective_equiv(printed_equiangular_gram(),
                                              GramMatrix(CMat::Identity(3, 3))));
  CHECK(entry["equivalent"] == false);
  REQUIRE(entry.contains("witness"));
  CHECK(entry["witness"]["kind"] == "entry");
  CHECK(entry["witness"]["indices"].size() == 2);

  const Json cyc = to_json(projective_equiv(gram(cycle_frame(4, Cplx{1, 0})),
                                            gram(cycle_frame(4, Cplx{0, 1}))));
  CHECK(cyc["equivalent"] == false);
  CHECK(cyc["witness"]["kind"] == "cycle");
  CHECK(cyc["witness"]["indices"] == Json::array({0, 1, 2, 3}));
}

TEST_CASE("reindex verdict json includes the permutation") {
  Rng rng(7);
  const GramMatrix g = gram(random_frame(rng, 2, 4));
  const GramMatrix h = permuted_gram(g, {2, 0, 3, 1});
  const Json j = to_json(projective_equiv_reindex(g, h));
  CHECK(j["equivalent"] == true);
  REQUIRE(j.contains("permutation"));
  CHECK(j["permutation"].size() == 4);

  // A starved search reports unknown rather than a verdict.
  const Json u = to_json(projective_equiv_reindex(gram(cycle_frame(5, Cplx{1, 0})),
                                                  gram(cycle_frame(5, Cplx{0, 1})),
                                                  Tolerance{}, 1));
  CHECK(u["equivalent"] == false);
  CHECK(u["status"] == "unknown");
}

TEST_CASE("similarity verdict json includes the map recipe") {
  const FrameSpec f1 = dependent_triple(Cplx{1, 0} / std::sqrt(Real(3)),
                                        Cplx{1, 0} / std::sqrt(Real(3)),
                                        Cplx{1, 0} / std::sqrt(Real(3)));
  CMat m = f1.matrix();
  m.col(2) *= Cplx{0, 1};
  const Json j = to_json(projectively_similar(f1, FrameSpec(m)));
  CHECK(j["equivalent"] == true);
  REQUIRE(j.contains("q_recipe"));
  CHECK(j["q_recipe"]["indices"].is_array());
  CHECK(j["q_recipe"]["phases"].is_array());
  CHECK(j["q_recipe"]["indices"].size() == j["q_recipe"]["phases"].size());
}

TEST_CASE("ad hoc products payload lists any cycles") {
  const GramMatrix g = printed_equiangular_gram();
  const Json j = products_json(g, {{{0, 1, 2}, Cplx{0.125, 0}}, {{0, 1}, Cplx{0.25, 0}}});
  CHECK(j["n"] == 3);
  CHECK(j["norms"].size() == 3);
  CHECK(j["moduli"][0][1] == 0.5);
  REQUIRE(j["cycles"].size() == 2);

  const std::string text = pretty_products(j);
  CHECK(text.find("(1, 2, 3)") != std::string::npos);  // 1-based rendering
  CHECK(text.find("0.125") != std::string::npos);
}

TEST_CASE("census csv header is stable") {
  CHECK(census_csv_header() ==
        "n,d,translation_orbits,automorphism_orbits,affine_orbits,"
        "exact_unitary,exact_projective,status");
}

TEST_CASE("census csv rows render brackets and flags") {
  CensusRow row;
  row.n = 8;
  row.d = 3;
  row.translation_orbits = 7;
  row.automorphism_orbits = 17;
  row.affine_orbits = 4;
  row.status = "orbits";
  CHECK(census_csv_row(row) == "8,3,7,17,4,,,orbits");

  row.exact_unitary = ExactCount{16, 16};
  row.exact_projective = ExactCount{4, 4};
  row.status = "exact";
  CHECK(census_csv_row(row) == "8,3,7,17,4,16,4,exact");

  row.exact_unitary = ExactCount{3, 16};
  row.status = "partial";
  CHECK(census_csv_row(row) == "8,3,7,17,4,3..16,4,partial");

  row.exact_unitary = ExactCount{18, 18};
  row.status = "exact";
  apply_census_flags(row);
  CHECK(census_csv_row(row) == "8,3,7,17,4,18,4,exact;anomaly_unitary");
}

TEST_CASE("census json uses scalars when settled and brackets otherwise") {
  CensusRow row;
  row.n = 6;
  row.d = 2;
  row.translation_orbits = 3;
  row.automorphism_orbits = 6;
  row.affine_orbits = 3;
  row.exact_unitary = ExactCount{6, 6};
  row.exact_projective = ExactCount{1, 3};
  row.status = "partial";
  const Json j = to_json(row);
  CHECK(j["exact_unitary"] == 6);
  CHECK(j["exact_projective"]["lo"] == 1);
  CHECK(j["exact_projective"]["hi"] == 3);
  CHECK_FALSE(j.contains("anomaly_unitary"));
}

TEST_CASE("pretty renderings are one based") {
  const GramMatrix g = gram(mub_pair_frame());
  const std::string ds = pretty(determining_set(g));
  CHECK(ds.find("cycle (1, 3, 2, 4)") != std::string::npos);

  const std::string graph = pretty(build_frame_graph(g));
  CHECK(graph.find("{1, 3}") != std::string::npos);
  CHECK(graph.find("{0,") == std::string::npos);

  const Verdict v = projective_equiv(printed_equiangular_gram(),
                                     GramMatrix(CMat::Identity(3, 3)));
  const std::string verdict = pretty(v);
  CHECK(verdict.find("equivalent: no") != std::string::npos);
  CHECK(verdict.find("witness entry (1-based): (1, 2)") != std::string::npos);

  CensusRow row;
  row.n = 8;
  row.d = 3;
  const std::string census_text = pretty(row);
  CHECK(census_text.find("n=8 d=3") != std::string::npos);
}

TEST_CASE("files load through schema sniffing") {
  Rng rng(11);
  const FrameSpec f = random_frame(rng, 2, 4);
  const std::string frame_path = write_temp("frame.json", to_json(f).dump());
  const GramMatrix via_frame = load_gram_like(frame_path);
  CHECK((via_frame.entries() - gram(f).entries()).cwiseAbs().maxCoeff() < 1e-9);

  const std::string gram_path = write_temp("gram.json", to_json(gram(f)).dump());
  const GramMatrix via_gram = load_gram_like(gram_path);
  CHECK((via_gram.entries() - gram(f).entries()).cwiseAbs().maxCoeff() < 1e-9);
  std::remove(frame_path.c_str());
  std::remove(gram_path.c_str());
}

TEST_CASE("bad files produce parse errors") {
  const std::string broken = write_temp("broken.json", "{ not json !");
  try {
    load_json(broken);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
  std::remove(broken.c_str());

  const std::string wrong = write_temp("wrong.json", "{\"foo\": 1}");
  try {
    load_gram_like(wrong);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
  std::remove(wrong.c_str());

  try {
    load_json("/tmp/frameq_io_missing_file.json");
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }
}

TEST_CASE("schema validation rejects malformed payloads") {
  try {
    frame_from_json(Json{{"dim", 2}, {"vectors", Json::array({Json::array({Json::array({1, 0})})})}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);  // vector shorter than dim
  }

  try {
    gram_from_json(Json{{"n", 2}, {"entries", Json::array({1, 2})}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParseError);
  }

  try {
    graph_from_json(Json{{"n", 3}, {"edges", Json::array({Json::array({0, 9})})}});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }

  Json bad_cycle = to_json(determining_set(gram(mub_pair_frame())));
  bad_cycle["cycles"][0]["indices"][0] = 9;
  try {
    products_from_json(bad_cycle);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfRange);
  }

  // Hermitian symmetry is enforced on parsed Gram matrices.
  Json skew{{"n", 2},
            {"entries",
             Json::array({Json::array({Json::array({1, 0}), Json::array({0.5, 0})}),
                          Json::array({Json::array({0.9, 0}), Json::array({1, 0})})})}};
  try {
    gram_from_json(skew);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotHermitian);
  }
}
