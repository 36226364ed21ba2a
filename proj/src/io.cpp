#include "frameq/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "frameq/frame_core.hpp"

namespace frameq {

namespace {

Json pair_of(Cplx z) { return Json::array({z.real(), z.imag()}); }

Cplx pair_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(Errc::ParseError, "expected a [re, im] pair, got " + j.dump());
  return {j[0].get<Real>(), j[1].get<Real>()};
}

int int_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail(Errc::ParseError, std::string("missing integer field \"") + key + "\"");
  return j[key].get<int>();
}

const Json& array_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    fail(Errc::ParseError, std::string("missing array field \"") + key + "\"");
  return j[key];
}

std::string fmt_real(Real x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string fmt_complex(Cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
  return buf;
}

std::string join_1based(const std::vector<int>& idx) {
  std::string out = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(idx[i] + 1);
  }
  return out + ")";
}

std::string exact_cell(const std::optional<ExactCount>& e) {
  if (!e) return "";
  if (e->exact()) return std::to_string(e->lo);
  return std::to_string(e->lo) + ".." + std::to_string(e->hi);
}

std::string status_cell(const CensusRow& row) {
  std::string out = row.status;
  if (row.anomaly_unitary) out += ";anomaly_unitary";
  if (row.anomaly_projective) out += ";anomaly_projective";
  return out;
}

Json verdict_core(bool equivalent, const std::optional<CVec>& phases,
                  const std::optional<std::vector<int>>& permutation,
                  const std::optional<std::pair<int, int>>& witness_entry,
                  const std::optional<std::vector<int>>& witness_cycle,
                  const std::string& status) {
  Json out;
  out["equivalent"] = equivalent;
  out["status"] = status;
  if (phases) {
    Json arr = Json::array();
    for (Eigen::Index j = 0; j < phases->size(); ++j) arr.push_back(pair_of((*phases)[j]));
    out["phases"] = std::move(arr);
  }
  if (permutation) out["permutation"] = *permutation;
  if (witness_entry)
    out["witness"] = {{"kind", "entry"},
                      {"indices", Json::array({witness_entry->first, witness_entry->second})}};
  else if (witness_cycle)
    out["witness"] = {{"kind", "cycle"}, {"indices", *witness_cycle}};
  return out;
}

std::string pretty_verdict_core(const char* yes_label, bool yes,
                                const std::optional<CVec>& phases,
                                const std::optional<std::vector<int>>& permutation,
                                const std::optional<std::pair<int, int>>& witness_entry,
                                const std::optional<std::vector<int>>& witness_cycle,
                                const std::string& status) {
  std::ostringstream out;
  out << yes_label << ": " << (yes ? "yes" : (status == "unknown" ? "unknown" : "no")) << "\n";
  if (status != "decided") out << "status: " << status << "\n";
  if (permutation) {
    out << "relabeling (1-based): ";
    for (std::size_t i = 0; i < permutation->size(); ++i)
      out << (i ? " " : "") << (*permutation)[i] + 1;
    out << "\n";
  }
  if (phases) {
    out << "phases:";
    for (Eigen::Index j = 0; j < phases->size(); ++j) out << " " << fmt_complex((*phases)[j]);
    out << "\n";
  }
  if (witness_entry)
    out << "witness entry (1-based): (" << witness_entry->first + 1 << ", "
        << witness_entry->second + 1 << ")\n";
  else if (witness_cycle)
    out << "witness cycle (1-based): " << join_1based(*witness_cycle) << "\n";
  return out.str();
}

}  // namespace

Json to_json(const FrameSpec& f) {
  Json vectors = Json::array();
  for (Eigen::Index j = 0; j < f.size(); ++j) {
    Json v = Json::array();
    for (Eigen::Index r = 0; r < f.dim(); ++r) v.push_back(pair_of(f.matrix()(r, j)));
    vectors.push_back(std::move(v));
  }
  return Json{{"dim", f.dim()}, {"vectors", std::move(vectors)}};
}

Json to_json(const GramMatrix& g) {
  Json entries = Json::array();
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < g.size(); ++k) row.push_back(pair_of(g.entry(j, k)));
    entries.push_back(std::move(row));
  }
  return Json{{"n", g.size()}, {"entries", std::move(entries)}};
}

Json to_json(const FrameGraph& g) {
  Json edges = Json::array();
  for (const auto& [j, k] : g.edges()) edges.push_back(Json::array({j, k}));
  return Json{{"n", g.size()}, {"edges", std::move(edges)}};
}

Json to_json(const DeterminingSet& ds) {
  std::vector<std::pair<std::vector<int>, Cplx>> cycles;
  for (std::size_t i = 0; i < ds.cycles.cycles.size(); ++i)
    cycles.emplace_back(ds.cycles.cycles[i].vertices, ds.values[i]);
  Json norms = Json::array();
  for (Eigen::Index j = 0; j < ds.norms.size(); ++j) norms.push_back(ds.norms[j]);
  Json moduli = Json::array();
  for (Eigen::Index j = 0; j < ds.moduli.rows(); ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < ds.moduli.cols(); ++k) row.push_back(ds.moduli(j, k));
    moduli.push_back(std::move(row));
  }
  Json cyc = Json::array();
  for (const auto& [indices, value] : cycles)
    cyc.push_back(Json{{"indices", indices}, {"value", pair_of(value)}});
  return Json{{"n", ds.size()},
              {"norms", std::move(norms)},
              {"moduli", std::move(moduli)},
              {"cycles", std::move(cyc)}};
}

Json to_json(const Verdict& v) {
  return verdict_core(v.equivalent, v.phases, v.permutation, v.witness_entry, v.witness_cycle,
                      v.status);
}

Json to_json(const SimilarityVerdict& v) {
  Json out = verdict_core(v.similar, v.phases, {}, v.witness_entry, v.witness_cycle, v.status);
  if (v.q_recipe) {
    Json phases = Json::array();
    for (Eigen::Index j = 0; j < v.q_recipe->phases.size(); ++j)
      phases.push_back(pair_of(v.q_recipe->phases[j]));
    out["q_recipe"] = {{"indices", v.q_recipe->indices}, {"phases", std::move(phases)}};
  }
  return out;
}

Json products_json(const GramMatrix& g,
                   const std::vector<std::pair<std::vector<int>, Cplx>>& cycles) {
  const Eigen::Index n = g.size();
  Json norms = Json::array();
  for (Eigen::Index j = 0; j < n; ++j) norms.push_back(g.entry(j, j).real());
  Json moduli = Json::array();
  for (Eigen::Index j = 0; j < n; ++j) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < n; ++k)
      row.push_back(j == k ? g.entry(j, j).real() : std::abs(g.entry(j, k)));
    moduli.push_back(std::move(row));
  }
  Json cyc = Json::array();
  for (const auto& [indices, value] : cycles)
    cyc.push_back(Json{{"indices", indices}, {"value", pair_of(value)}});
  return Json{{"n", n},
              {"norms", std::move(norms)},
              {"moduli", std::move(moduli)},
              {"cycles", std::move(cyc)}};
}

FrameSpec frame_from_json(const Json& j) {
  const int d = int_field(j, "dim");
  const Json& vectors = array_field(j, "vectors");
  if (d < 1 || vectors.empty()) fail(Errc::ParseError, "frame needs dim >= 1 and vectors");
  CMat m(d, Eigen::Index(vectors.size()));
  for (std::size_t c = 0; c < vectors.size(); ++c) {
    const Json& v = vectors[c];
    if (!v.is_array() || int(v.size()) != d)
      fail(Errc::ParseError, "vector " + std::to_string(c) + " does not have length dim");
    for (int r = 0; r < d; ++r) m(r, Eigen::Index(c)) = pair_from(v[std::size_t(r)]);
  }
  return FrameSpec(std::move(m));
}

GramMatrix gram_from_json(const Json& j, const Tolerance& tol) {
  const int n = int_field(j, "n");
  const Json& entries = array_field(j, "entries");
  if (n < 1 || int(entries.size()) != n) fail(Errc::ParseError, "entries must be an n x n grid");
  CMat m(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = entries[std::size_t(r)];
    if (!row.is_array() || int(row.size()) != n)
      fail(Errc::ParseError, "entries must be an n x n grid");
    for (int c = 0; c < n; ++c) m(r, c) = pair_from(row[std::size_t(c)]);
  }
  return GramMatrix(std::move(m), tol);
}

FrameGraph graph_from_json(const Json& j) {
  const int n = int_field(j, "n");
  if (n < 1) fail(Errc::ParseError, "graph needs n >= 1");
  FrameGraph g(n);
  for (const Json& e : array_field(j, "edges")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
      fail(Errc::ParseError, "each edge must be a [j, k] pair");
    g.add_edge(e[0].get<int>(), e[1].get<int>());
  }
  return g;
}

DeterminingSet products_from_json(const Json& j) {
  const int n = int_field(j, "n");
  const Json& norms = array_field(j, "norms");
  const Json& moduli = array_field(j, "moduli");
  const Json& cycles = array_field(j, "cycles");
  if (n < 1 || int(norms.size()) != n || int(moduli.size()) != n)
    fail(Errc::ParseError, "norms and moduli must have n rows");
  DeterminingSet ds;
  ds.norms.resize(n);
  for (int k = 0; k < n; ++k) {
    if (!norms[std::size_t(k)].is_number()) fail(Errc::ParseError, "norms must be real numbers");
    ds.norms[k] = norms[std::size_t(k)].get<Real>();
  }
  ds.moduli.resize(n, n);
  for (int r = 0; r < n; ++r) {
    const Json& row = moduli[std::size_t(r)];
    if (!row.is_array() || int(row.size()) != n)
      fail(Errc::ParseError, "moduli must be an n x n grid");
    for (int c = 0; c < n; ++c) {
      if (!row[std::size_t(c)].is_number()) fail(Errc::ParseError, "moduli must be real numbers");
      ds.moduli(r, c) = row[std::size_t(c)].get<Real>();
    }
  }
  for (const Json& c : cycles) {
    if (!c.is_object() || !c.contains("indices") || !c.contains("value"))
      fail(Errc::ParseError, "each cycle needs \"indices\" and \"value\"");
    Cycle cycle;
    for (const Json& idx : array_field(c, "indices")) {
      if (!idx.is_number_integer()) fail(Errc::ParseError, "cycle indices must be integers");
      const int v = idx.get<int>();
      if (v < 0 || v >= n) fail(Errc::IndexOutOfRange, "cycle index out of range");
      cycle.vertices.push_back(v);
    }
    ds.cycles.cycles.push_back(std::move(cycle));
    ds.cycles.chords.emplace_back(std::nullopt);
    ds.values.push_back(pair_from(c["value"]));
  }
  return ds;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::ParseError, "cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(Errc::ParseError, "invalid JSON in " + path);
  return j;
}

GramMatrix load_gram_like(const std::string& path, const Tolerance& tol) {
  const Json j = load_json(path);
  if (j.contains("vectors")) return gram(frame_from_json(j));
  if (j.contains("entries")) return gram_from_json(j, tol);
  fail(Errc::ParseError, path + " is neither a frame nor a Gram file");
}

std::string census_csv_header() {
  return "n,d,translation_orbits,automorphism_orbits,affine_orbits,"
         "exact_unitary,exact_projective,status";
}

std::string census_csv_row(const CensusRow& row) {
  std::ostringstream out;
  out << row.n << ',' << row.d << ',' << row.translation_orbits << ','
      << row.automorphism_orbits << ',' << row.affine_orbits << ','
      << exact_cell(row.exact_unitary) << ',' << exact_cell(row.exact_projective) << ','
      << status_cell(row);
  return out.str();
}

Json to_json(const CensusRow& row) {
  Json out{{"n", row.n},
           {"d", row.d},
           {"translation_orbits", row.translation_orbits},
           {"automorphism_orbits", row.automorphism_orbits},
           {"affine_orbits", row.affine_orbits},
           {"status", row.status}};
  auto put = [&](const char* key, const std::optional<ExactCount>& e) {
    if (!e) return;
    if (e->exact())
      out[key] = e->lo;
    else
      out[key] = Json{{"lo", e->lo}, {"hi", e->hi}};
  };
  put("exact_unitary", row.exact_unitary);
  put("exact_projective", row.exact_projective);
  if (row.anomaly_unitary) out["anomaly_unitary"] = true;
  if (row.anomaly_projective) out["anomaly_projective"] = true;
  return out;
}

std::string pretty(const FrameSpec& f) {
  std::ostringstream out;
  out << f.size() << " vectors in dimension " << f.dim() << " (columns, 1-based)\n";
  for (Eigen::Index r = 0; r < f.dim(); ++r) {
    for (Eigen::Index j = 0; j < f.size(); ++j)
      out << (j ? "  " : "") << fmt_complex(f.matrix()(r, j));
    out << "\n";
  }
  return out.str();
}

std::string pretty(const GramMatrix& g) {
  std::ostringstream out;
  out << g.size() << " x " << g.size() << " Gram matrix (rows 1-based)\n";
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    for (Eigen::Index k = 0; k < g.size(); ++k)
      out << (k ? "  " : "") << fmt_complex(g.entry(j, k));
    out << "\n";
  }
  return out.str();
}

std::string pretty(const FrameGraph& g) {
  std::ostringstream out;
  out << g.size() << " vertices, " << g.edge_count() << " edges (1-based)\n";
  for (const auto& [j, k] : g.edges()) out << "{" << j + 1 << ", " << k + 1 << "}\n";
  return out.str();
}

std::string pretty(const DeterminingSet& ds) {
  std::ostringstream out;
  out << "determining set on " << ds.size() << " vectors (indices 1-based)\n";
  out << "norms:";
  for (Eigen::Index j = 0; j < ds.norms.size(); ++j) out << " " << fmt_real(ds.norms[j]);
  out << "\nmoduli:\n";
  for (Eigen::Index j = 0; j < ds.moduli.rows(); ++j) {
    for (Eigen::Index k = 0; k < ds.moduli.cols(); ++k)
      out << (k ? "  " : "") << fmt_real(ds.moduli(j, k));
    out << "\n";
  }
  for (std::size_t i = 0; i < ds.cycles.cycles.size(); ++i)
    out << "cycle " << join_1based(ds.cycles.cycles[i].vertices) << " = "
        << fmt_complex(ds.values[i]) << "\n";
  return out.str();
}

std::string pretty_products(const Json& products) {
  std::ostringstream out;
  const int n = int_field(products, "n");
  out << "products on " << n << " vectors (indices 1-based)\n";
  out << "norms:";
  for (const Json& x : array_field(products, "norms")) out << " " << fmt_real(x.get<Real>());
  out << "\nmoduli:\n";
  for (const Json& row : array_field(products, "moduli")) {
    bool first = true;
    for (const Json& x : row) {
      out << (first ? "" : "  ") << fmt_real(x.get<Real>());
      first = false;
    }
    out << "\n";
  }
  for (const Json& c : array_field(products, "cycles")) {
    std::vector<int> idx;
    for (const Json& i : array_field(c, "indices")) idx.push_back(i.get<int>());
    out << "cycle " << join_1based(idx) << " = " << fmt_complex(pair_from(c["value"])) << "\n";
  }
  return out.str();
}

std::string pretty(const Verdict& v) {
  return pretty_verdict_core("equivalent", v.equivalent, v.phases, v.permutation,
                             v.witness_entry, v.witness_cycle, v.status);
}

std::string pretty(const SimilarityVerdict& v) {
  std::string out = pretty_verdict_core("similar", v.similar, v.phases, {}, v.witness_entry,
                                        v.witness_cycle, v.status);
  if (v.q_recipe) {
    std::ostringstream extra;
    extra << "map recipe on spanning indices " << join_1based(v.q_recipe->indices) << ", phases:";
    for (Eigen::Index j = 0; j < v.q_recipe->phases.size(); ++j)
      extra << " " << fmt_complex(v.q_recipe->phases[j]);
    extra << "\n";
    out += extra.str();
  }
  return out;
}

std::string pretty(const CensusRow& row) {
  std::ostringstream out;
  out << "n=" << row.n << " d=" << row.d << "  translation " << row.translation_orbits
      << "  automorphism " << row.automorphism_orbits << "  affine " << row.affine_orbits;
  if (row.exact_unitary) out << "  exact-unitary " << exact_cell(row.exact_unitary);
  if (row.exact_projective) out << "  exact-projective " << exact_cell(row.exact_projective);
  out << "  [" << status_cell(row) << "]";
  if (row.anomaly_projective)
    out << "\n  note: exact projective count exceeds the affine orbit estimate";
  if (row.anomaly_unitary)
    out << "\n  note: exact unitary count exceeds the automorphism orbit estimate";
  out << "\n";
  return out.str();
}

}  // namespace frameq
