#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "frameq/equivalence.hpp"
#include "frameq/frame_core.hpp"
#include "frameq/frame_graph.hpp"
#include "frameq/harmonic.hpp"
#include "frameq/invariants.hpp"
#include "frameq/io.hpp"
#include "frameq/similarity.hpp"

// Exit codes: 0 success / equivalent, 1 not equivalent, 2 malformed input,
// 3 size mismatch, 4 missing cycle product or index out of range,
// 5 undecided (search budget exhausted).
//
// All indices in files and arguments are 0-based; pretty output is 1-based
// and labeled.  The shell does no mathematics of its own: every payload is
// the serialization of one library call.

using namespace frameq;

namespace {

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::SizeMismatch:
    case Errc::DimensionMismatch:
      return 3;
    case Errc::MissingCycleProduct:
    case Errc::IndexOutOfRange:
      return 4;
    default:
      return 2;
  }
}

struct Options {
  Tolerance tol;
  std::string format;  // empty means the command's default
  std::uint64_t budget = 10'000'000;
  std::uint64_t seed = 0;  // reserved for randomized self-checks
};

void emit(const Options& opt, const Json& payload, const std::string& pretty_text) {
  if (opt.format == "pretty") {
    std::cout << pretty_text;
    return;
  }
  require(opt.format != "csv", Errc::BadArgument, "csv format applies only to census output");
  std::cout << payload.dump(2) << "\n";
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(text.substr(pos, comma - pos), &used);
    } catch (const std::exception&) {
      fail(Errc::ParseError, "expected a comma-separated integer list, got \"" + text + "\"");
    }
    if (used != comma - pos)
      fail(Errc::ParseError, "expected a comma-separated integer list, got \"" + text + "\"");
    out.push_back(value);
    pos = comma + 1;
  }
  return out;
}

std::pair<int, int> parse_range(const std::string& text) {
  const std::size_t dots = text.find("..");
  auto one = [&](const std::string& part) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      return v;
    } catch (const std::exception&) {
      fail(Errc::ParseError, "expected N or A..B, got \"" + text + "\"");
    }
  };
  if (dots == std::string::npos) {
    const int v = one(text);
    return {v, v};
  }
  const int a = one(text.substr(0, dots));
  const int b = one(text.substr(dots + 2));
  require(a <= b, Errc::ParseError, "range bounds out of order in \"" + text + "\"");
  return {a, b};
}

std::vector<int> parse_group_spec(const std::string& text) {
  std::vector<int> factors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t x = std::min(text.find('x', pos), text.size());
    try {
      std::size_t used = 0;
      const int v = std::stoi(text.substr(pos, x - pos), &used);
      if (used != x - pos || v < 1) throw std::invalid_argument(text);
      factors.push_back(v);
    } catch (const std::exception&) {
      fail(Errc::ParseError, "group must be n or n1xn2x..., got \"" + text + "\"");
    }
    pos = x + 1;
  }
  return factors;
}

std::pair<std::pair<int, int>, Cplx> parse_phase_arg(const std::string& text) {
  const std::size_t eq = text.find('=');
  if (eq == std::string::npos)
    fail(Errc::ParseError, "phase must be u,w=re,im, got \"" + text + "\"");
  const std::vector<int> edge = parse_int_list(text.substr(0, eq));
  if (edge.size() != 2)
    fail(Errc::ParseError, "phase edge must name two vertices, got \"" + text + "\"");
  const std::string rhs = text.substr(eq + 1);
  const std::size_t comma = rhs.find(',');
  if (comma == std::string::npos)
    fail(Errc::ParseError, "phase value must be re,im, got \"" + text + "\"");
  try {
    std::size_t used = 0;
    const Real re = std::stod(rhs.substr(0, comma), &used);
    if (used != comma) throw std::invalid_argument(rhs);
    const std::string imtext = rhs.substr(comma + 1);
    const Real im = std::stod(imtext, &used);
    if (used != imtext.size()) throw std::invalid_argument(rhs);
    return {{edge[0], edge[1]}, Cplx(re, im)};
  } catch (const std::exception&) {
    fail(Errc::ParseError, "phase value must be re,im, got \"" + text + "\"");
  }
}

int verdict_exit(bool yes, const std::string& status) {
  if (status == "unknown") return 5;
  return yes ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  int rc = 0;

  CLI::App app{"Frame and Gramian equivalence toolkit"};
  app.require_subcommand(1);
  app.add_option("--tol-zero", opt.tol.abs_zero, "absolute threshold for treating values as zero")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--tol-match", opt.tol.rel_match, "relative threshold for matching values")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--format", opt.format, "json | csv | pretty (csv only for census)")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--budget", opt.budget, "node budget for relabeling searches")
      ->capture_default_str();
  app.add_option("--seed", opt.seed, "seed reserved for randomized self-checks");

  std::string file_a, file_b;

  auto* cmd_gram = app.add_subcommand("gram", "Gram matrix of a frame file");
  cmd_gram->fallthrough();
  cmd_gram->add_option("frame", file_a, "frame JSON file")->required();
  cmd_gram->callback([&] {
    const FrameSpec f = frame_from_json(load_json(file_a));
    const GramMatrix g = gram(f);
    emit(opt, to_json(g), pretty(g));
  });

  auto* cmd_graph = app.add_subcommand("graph", "zero pattern of a frame or Gram file");
  cmd_graph->fallthrough();
  cmd_graph->add_option("file", file_a, "frame or Gram JSON file")->required();
  cmd_graph->callback([&] {
    const GramMatrix g = load_gram_like(file_a, opt.tol);
    const FrameGraph fg = build_frame_graph(g, opt.tol);
    emit(opt, to_json(fg), pretty(fg));
  });

  bool want_detset = false, want_triples = false;
  std::string tuple_spec;
  auto* cmd_products = app.add_subcommand("products", "closed-walk products of a frame or Gram file");
  cmd_products->fallthrough();
  cmd_products->add_option("file", file_a, "frame or Gram JSON file")->required();
  auto* flag_detset = cmd_products->add_flag("--detset", want_detset, "determining set");
  auto* flag_triples =
      cmd_products->add_flag("--triples", want_triples, "all distinct-index triple products");
  auto* flag_tuple =
      cmd_products->add_option("--tuple", tuple_spec, "one closed walk, 0-based indices j1,j2,...");
  flag_detset->excludes(flag_triples)->excludes(flag_tuple);
  flag_triples->excludes(flag_tuple);
  cmd_products->callback([&] {
    require(want_detset || want_triples || !tuple_spec.empty(), Errc::BadArgument,
            "choose one of --detset, --triples, --tuple");
    const GramMatrix g = load_gram_like(file_a, opt.tol);
    Json payload;
    if (want_detset) {
      payload = to_json(determining_set(g, opt.tol));
    } else if (want_triples) {
      std::vector<std::pair<std::vector<int>, Cplx>> cycles;
      for (const auto& [idx, value] : triple_products(g).canonical())
        if (idx[0] != idx[1] && idx[1] != idx[2] && idx[0] != idx[2])
          cycles.emplace_back(std::vector<int>{idx[0], idx[1], idx[2]}, value);
      payload = products_json(g, cycles);
    } else {
      const std::vector<int> idx = parse_int_list(tuple_spec);
      payload = products_json(g, {{idx, m_product(g, idx)}});
    }
    emit(opt, payload, pretty_products(payload));
  });

  auto* cmd_detset = app.add_subcommand("detset", "determining set of a frame or Gram file");
  cmd_detset->fallthrough();
  cmd_detset->add_option("file", file_a, "frame or Gram JSON file")->required();
  cmd_detset->callback([&] {
    const GramMatrix g = load_gram_like(file_a, opt.tol);
    const DeterminingSet ds = determining_set(g, opt.tol);
    emit(opt, to_json(ds), pretty(ds));
  });

  bool eq_projective = false, eq_reindex = false, eq_similar = false;
  auto* cmd_equiv = app.add_subcommand("equiv", "decide equivalence of two files");
  cmd_equiv->fallthrough();
  cmd_equiv->add_option("fileA", file_a, "first frame or Gram JSON file")->required();
  cmd_equiv->add_option("fileB", file_b, "second frame or Gram JSON file")->required();
  cmd_equiv->add_flag("--projective", eq_projective, "allow per-vector unit scalars");
  cmd_equiv->add_flag("--reindex", eq_reindex, "also search vertex relabelings");
  cmd_equiv->add_flag("--similar", eq_similar, "compare dependency projectors (frame files)");
  cmd_equiv->callback([&] {
    if (eq_similar) {
      require(!eq_reindex, Errc::BadArgument, "--similar does not combine with --reindex");
      const FrameSpec f1 = frame_from_json(load_json(file_a));
      const FrameSpec f2 = frame_from_json(load_json(file_b));
      if (eq_projective) {
        const SimilarityVerdict v = projectively_similar(f1, f2, opt.tol);
        emit(opt, to_json(v), pretty(v));
        rc = verdict_exit(v.similar, v.status);
      } else {
        SimilarityVerdict v;
        v.similar = similar(f1, f2, opt.tol);
        emit(opt, to_json(v), pretty(v));
        rc = verdict_exit(v.similar, v.status);
      }
      return;
    }
    const GramMatrix g1 = load_gram_like(file_a, opt.tol);
    const GramMatrix g2 = load_gram_like(file_b, opt.tol);
    Verdict v;
    if (eq_reindex) {
      v = projective_equiv_reindex(g1, g2, opt.tol, opt.budget, !eq_projective);
    } else if (eq_projective) {
      v = projective_equiv(g1, g2, opt.tol);
    } else {
      v.equivalent = unitary_equiv(g1, g2, opt.tol);
    }
    emit(opt, to_json(v), pretty(v));
    rc = verdict_exit(v.equivalent, v.status);
  });

  std::vector<std::string> phase_args;
  auto* cmd_reconstruct = app.add_subcommand("reconstruct", "Gram matrix from a products file");
  cmd_reconstruct->fallthrough();
  cmd_reconstruct->add_option("products", file_a, "products JSON file")->required();
  cmd_reconstruct->add_option("--phase", phase_args,
                              "free phase u,w=re,im for tree edge {u,w}, repeatable");
  cmd_reconstruct->callback([&] {
    const DeterminingSet ds = products_from_json(load_json(file_a));
    std::map<std::pair<int, int>, Cplx> phases;
    for (const std::string& text : phase_args) phases.insert(parse_phase_arg(text));
    const ReconstructionResult res = reconstruct_from_products(ds, phases, opt.tol);
    if (res.psd_warning)
      std::cerr << "warning: completed matrix has a negative eigenvalue beyond tolerance\n";
    emit(opt, to_json(res.gram), pretty(res.gram));
  });

  auto* cmd_similar = app.add_subcommand("similar", "projective similarity of two frame files");
  cmd_similar->fallthrough();
  cmd_similar->add_option("fileA", file_a, "first frame JSON file")->required();
  cmd_similar->add_option("fileB", file_b, "second frame JSON file")->required();
  cmd_similar->callback([&] {
    const FrameSpec f1 = frame_from_json(load_json(file_a));
    const FrameSpec f2 = frame_from_json(load_json(file_b));
    const SimilarityVerdict v = projectively_similar(f1, f2, opt.tol);
    emit(opt, to_json(v), pretty(v));
    rc = verdict_exit(v.similar, v.status);
  });

  auto* cmd_harmonic = app.add_subcommand("harmonic", "character frames and their classification");
  cmd_harmonic->fallthrough();
  cmd_harmonic->require_subcommand(1);

  std::string group_spec, subset_spec;
  auto* cmd_gen = cmd_harmonic->add_subcommand("gen", "frame from a group and index subset");
  cmd_gen->fallthrough();
  cmd_gen->add_option("--group", group_spec, "group order n or factors n1xn2x...")->required();
  cmd_gen->add_option("--subset", subset_spec, "0-based element list j1,j2,...")->required();
  cmd_gen->callback([&] {
    FrameSpec f = [&] {
      try {
        const AbelianGroup group(parse_group_spec(group_spec));
        const SubsetJ subset(group, parse_int_list(subset_spec));
        return harmonic_frame(subset);
      } catch (const Error& e) {
        fail(Errc::ParseError, e.what());
      }
    }();
    emit(opt, to_json(f), pretty(f));
  });

  std::string n_range, d_range, mode = "orbits";
  auto* cmd_census = cmd_harmonic->add_subcommand("census", "classification table over cyclic groups");
  cmd_census->fallthrough();
  cmd_census->add_option("--n", n_range, "number of vectors, N or A..B")->required();
  cmd_census->add_option("--d", d_range, "dimension, N or A..B")->required();
  cmd_census->add_option("--mode", mode, "orbits | exact")
      ->check(CLI::IsMember({"orbits", "exact"}));
  cmd_census->callback([&] {
    const auto [n_lo, n_hi] = parse_range(n_range);
    const auto [d_lo, d_hi] = parse_range(d_range);
    require(n_lo >= 1 && d_lo >= 1, Errc::ParseError, "census ranges must be positive");
    const CensusMode census_mode = mode == "exact" ? CensusMode::exact : CensusMode::orbits;
    const bool as_json = opt.format == "json";
    const bool as_pretty = opt.format == "pretty";
    if (!as_json && !as_pretty) std::cout << census_csv_header() << "\n";
    for (int n = n_lo; n <= n_hi; ++n)
      for (int d = d_lo; d <= std::min(d_hi, n); ++d) {
        const CensusRow row = census(n, d, census_mode, opt.budget, opt.tol);
        if (as_json)
          std::cout << to_json(row).dump() << "\n";
        else if (as_pretty)
          std::cout << pretty(row);
        else
          std::cout << census_csv_row(row) << "\n";
        std::cout.flush();
      }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return rc;
}
