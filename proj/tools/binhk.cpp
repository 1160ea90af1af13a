// binhk: Hilbert-Kunz computations for finitely generated binoids.
//
// Subcommands: hkf, ehk, spec, normalize, smash, partition. Results go to
// stdout (or -o FILE) as JSON, or as the CSV mirror with --format csv.
// Exit codes: 0 ok, 2 parse or input error, 3 refused, 4 resource cap.

#include <CLI11.hpp>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "binhk/hk.hpp"
#include "binhk/output.hpp"
#include "binhk/partition.hpp"
#include "binhk/spectrum.hpp"

using namespace binhk;

namespace {

constexpr int kCacheVersion = 1;

struct CliError : std::runtime_error {
  int code;
  CliError(int code_, const std::string &msg)
      : std::runtime_error(msg), code(code_) {}
};

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw CliError(2, "cannot read input file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<Coord> parse_q_range(const std::string &spec) {
  std::vector<Coord> qs;
  auto dots = spec.find("..");
  long long a, b;
  try {
    if (dots == std::string::npos) {
      a = b = std::stoll(spec);
    } else {
      a = std::stoll(spec.substr(0, dots));
      b = std::stoll(spec.substr(dots + 2));
    }
  } catch (const std::exception &) {
    throw CliError(2, "bad q range: " + spec);
  }
  if (a < 1 || b < a) throw CliError(2, "bad q range: " + spec);
  for (long long q = a; q <= b; ++q) qs.push_back(q);
  return qs;
}

void write_output(const std::string &text, const std::string &out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::trunc);
  if (!out) throw CliError(2, "cannot write output file: " + out_path);
  out << text;
}

std::string render(const Json &doc, const std::string &format) {
  return format == "csv" ? emit_csv(doc) : emit_json(doc);
}

std::string cache_path(const std::string &input, const std::string &dir) {
  std::string base = input;
  auto slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  std::string d = dir;
  if (d.empty()) {
    const char *env = std::getenv("BINHK_CACHE");
    if (env) d = env;
  }
  if (d.empty()) {
    auto s = input.find_last_of('/');
    d = s == std::string::npos ? "." : input.substr(0, s);
  }
  return d + "/" + base + ".binhk-cache.json";
}

std::string affine_signature(const AffineMonoid &m) {
  std::ostringstream os;
  os << "d=" << m.d << ";t:";
  for (long long k : m.torsion) os << k << ",";
  os << ";g:";
  for (const AffElem &g : m.generators) {
    for (const Int &x : g.free) os << x.get_str() << ",";
    os << "|";
    for (long long x : g.tor) os << x << ",";
    os << ";";
  }
  return os.str();
}

Json ehk_json(const EhkResult &r) {
  Json e = rational_json(r.value);
  e["method"] = r.method;
  e["trace"] = r.trace;
  return e;
}

Json zvec_json(const ZVec &v) {
  Json a = Json::array();
  for (const Int &x : v) a.push_back(x.fits_slong_p() ? Json((long long)x.get_si())
                                                      : Json(x.get_str()));
  return a;
}

Json elem_json(const AffElem &e) {
  Json j;
  j["free"] = zvec_json(e.free);
  Json t = Json::array();
  for (long long x : e.tor) t.push_back(x);
  j["tor"] = t;
  return j;
}

struct Options {
  std::string input, model, ideal, left, right, q_range = "1..1";
  std::string engine = "auto", method = "pipeline", format = "json", out;
  std::string cache_dir;
  int threads = 1;
  long long level_cap = 10000000;
  int box_retries = 8;
};

const Presentation &need_binoid(const Document &doc, const std::string &name) {
  auto it = doc.binoids.find(name);
  if (it == doc.binoids.end())
    throw CliError(2, "no binoid named '" + name + "' in the input");
  return it->second;
}

int run_hkf(const Options &opt) {
  Document doc = parse_document(slurp(opt.input));
  std::vector<Coord> qs = parse_q_range(opt.q_range);
  BoxCaps caps;
  caps.box_retries = opt.box_retries;
  caps.point_cap = opt.level_cap;

  bool affine_model = doc.affine.count(opt.model) > 0;
  if (opt.engine == "box" && affine_model)
    throw CliError(2, "the box engine needs a presented binoid model");
  if (opt.engine == "affine" && !affine_model && !doc.binoids.count(opt.model))
    throw CliError(2, "no model named '" + opt.model + "' in the input");

  Json result;
  result["model"] = opt.model;
  std::string sig;
  std::function<long long(Coord)> compute;

  Presentation p;
  IdealSpec ideal;
  AffineMonoid m;
  std::vector<AffElem> aideal;
  if (affine_model) {
    if (!opt.ideal.empty())
      throw CliError(2, "named ideals apply to presented models only");
    m = affine_from_input(doc.affine.at(opt.model));
    aideal.assign(m.generators.begin(), m.generators.end());
    result["ideal"] = "N+";
    sig = "affine:" + affine_signature(m);
    compute = [&](Coord q) { return hkf(m, aideal, q); };
  } else {
    p = need_binoid(doc, opt.model);
    if (opt.ideal.empty()) {
      ideal = maximal_ideal(p);
      result["ideal"] = "N+";
    } else {
      auto it = doc.ideals.find(opt.ideal);
      if (it == doc.ideals.end() || it->second.owner != opt.model)
        throw CliError(2, "no ideal named '" + opt.ideal + "' for this model");
      ideal = it->second;
      result["ideal"] = opt.ideal;
    }
    sig = "box:" + structural_signature(p, ideal);
    compute = [&](Coord q) { return hkf(p, ideal, q, caps); };
  }

  SidecarCache cache(cache_path(opt.input, opt.cache_dir), kCacheVersion);
  std::string sig_hash = fnv1a_hex(sig);
  std::vector<long long> counts(qs.size());
  std::vector<int> missing;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    std::string key = sig_hash + ":q" + std::to_string(qs[i]);
    auto hit = cache.get(key);
    if (hit && hit->is_number_integer())
      counts[i] = hit->get<long long>();
    else
      missing.push_back((int)i);
  }
  if (!missing.empty()) {
    int threads = std::max(1, opt.threads);
    std::vector<std::future<long long>> futs;
    for (std::size_t start = 0; start < missing.size();
         start += (std::size_t)threads) {
      futs.clear();
      std::size_t end = std::min(missing.size(), start + (std::size_t)threads);
      for (std::size_t k = start; k < end; ++k)
        futs.push_back(std::async(std::launch::async, compute, qs[missing[k]]));
      for (std::size_t k = start; k < end; ++k)
        counts[missing[k]] = futs[k - start].get();
    }
    for (int i : missing)
      cache.put(sig_hash + ":q" + std::to_string(qs[i]), Json(counts[i]));
  }

  Json series = Json::array();
  for (std::size_t i = 0; i < qs.size(); ++i) {
    Json row;
    row["q"] = (long long)qs[i];
    row["count"] = counts[i];
    series.push_back(row);
  }
  result["series"] = series;
  write_output(render(result, opt.format), opt.out);
  return 0;
}

int run_ehk(const Options &opt) {
  Document doc = parse_document(slurp(opt.input));
  Json result;
  result["model"] = opt.model;
  bool affine_model = doc.affine.count(opt.model) > 0;

  try {
    EhkResult r;
    if (opt.method == "volume") {
      if (!affine_model)
        throw CliError(2, "the volume method needs an affine model");
      AffineMonoid m = affine_from_input(doc.affine.at(opt.model));
      std::vector<AffElem> ideal(m.generators.begin(), m.generators.end());
      r = ehk_normal_volume(m, ideal);
    } else if (opt.method == "fit") {
      int d;
      HKSeries s;
      if (affine_model) {
        AffineMonoid m = affine_from_input(doc.affine.at(opt.model));
        std::vector<AffElem> ideal(m.generators.begin(), m.generators.end());
        d = (int)diff_lattice_coords(m).basis.size();
        long long base = std::max(2, 2 * d);
        s = hkf_series(m, ideal, {2 * base, 3 * base, 4 * base, 5 * base});
      } else {
        const Presentation &p = need_binoid(doc, opt.model);
        d = rank_dimension(p, spectrum(p));
        long long base = std::max(2, 2 * d);
        s = hkf_series(p, maximal_ideal(p),
                       {2 * base, 3 * base, 4 * base, 5 * base});
      }
      FitResult f = fit_leading_coefficient(s, d);
      r.value = f.leading;
      r.method = "fit";
      r.trace.push_back("max relative residual " +
                        std::to_string(f.max_rel_residual));
    } else if (opt.method == "pipeline") {
      if (affine_model)
        r = ehk(affine_from_input(doc.affine.at(opt.model)));
      else
        r = ehk(need_binoid(doc, opt.model));
    } else {
      throw CliError(2, "unknown method: " + opt.method);
    }
    result["ehk"] = ehk_json(r);
    write_output(render(result, opt.format), opt.out);
    return 0;
  } catch (const RefusedError &e) {
    // Refusals still report the counting series and the growth bound.
    Json refusal;
    refusal["precondition"] = "reduced and cancellative model";
    refusal["detail"] = e.what();
    refusal["bound"] = "hkf(q) <= C*q^d for a constant C";
    result["refusal"] = refusal;
    if (!affine_model) {
      const Presentation &p = need_binoid(doc, opt.model);
      Json series = Json::array();
      for (Coord q : {1, 2, 3, 4, 5, 6}) {
        Json row;
        row["q"] = (long long)q;
        row["count"] = hkf(p, maximal_ideal(p), q);
        series.push_back(row);
      }
      result["series"] = series;
    }
    write_output(render(result, opt.format), opt.out);
    return 3;
  }
}

int run_spec(const Options &opt) {
  Document doc = parse_document(slurp(opt.input));
  const Presentation &p = need_binoid(doc, opt.model);
  SpecPoset sp = spectrum(p);
  Json result;
  result["model"] = opt.model;
  Json primes = Json::array();
  for (const PrimeIdeal &pr : sp.primes) {
    Json names = Json::array();
    for (int i : pr.members) names.push_back(p.gen_names[i]);
    primes.push_back(names);
  }
  result["primes"] = primes;
  result["combinatorial_dimension"] = combinatorial_dimension(sp);
  result["rank_dimension"] = rank_dimension(p, sp);
  write_output(emit_json(result), opt.out);
  return 0;
}

int run_normalize(const Options &opt) {
  Document doc = parse_document(slurp(opt.input));
  AffineMonoid m;
  if (doc.affine.count(opt.model)) {
    m = affine_from_input(doc.affine.at(opt.model));
  } else {
    AffineConversion conv = presentation_to_affine(need_binoid(doc, opt.model));
    if (!conv.report.cancellative)
      throw CliError(3, "model is not cancellative: " + conv.report.witness);
    m = conv.monoid;
  }
  NormalizationResult nr = normalization(m);
  Json result;
  result["model"] = opt.model;
  Json gens = Json::array();
  for (const AffElem &g : nr.monoid.generators) gens.push_back(elem_json(g));
  result["normalization"] = gens;
  if (m.torsion.empty()) {
    AffElem cond = conductor_element(m);
    result["conductor"] = elem_json(cond);
    Int gen_max = 0;
    for (const AffElem &g : m.generators)
      gen_max = std::max(gen_max, aff_level(m, g));
    GapReport gr = gaps_and_primary_gaps(m, aff_level(m, cond) + gen_max);
    Json gaps = Json::array(), prim = Json::array();
    for (const AffElem &g : gr.gaps) gaps.push_back(elem_json(g));
    for (const AffElem &g : gr.primary_gaps) prim.push_back(elem_json(g));
    result["gaps"] = gaps;
    result["primary_gaps"] = prim;
    result["gaps_complete"] = gr.complete;
  }
  write_output(emit_json(result), opt.out);
  return 0;
}

int run_smash(const Options &opt) {
  Document doc = parse_document(slurp(opt.input));
  const Presentation &a = need_binoid(doc, opt.left);
  const Presentation &b = need_binoid(doc, opt.right);
  Presentation s = smash(a, b);
  Json result;
  result["model"] = opt.left + "^" + opt.right;
  Json gens = Json::array();
  for (const std::string &g : s.gen_names) gens.push_back(g);
  result["generators"] = gens;
  result["relations"] = (long long)s.relations.size();
  if (s.r >= 1) {
    Json series = Json::array();
    for (Coord q : {1, 2, 3, 4, 5}) {
      Json row;
      row["q"] = (long long)q;
      row["count"] = hkf(s, maximal_ideal(s), q);
      series.push_back(row);
    }
    result["series"] = series;
  }
  write_output(render(result, opt.format), opt.out);
  return 0;
}

int run_partition(const Options &opt) {
  Document doc = parse_document(slurp(opt.input));
  AffineMonoid m;
  if (doc.affine.count(opt.model)) {
    m = affine_from_input(doc.affine.at(opt.model));
  } else {
    AffineConversion conv = presentation_to_affine(need_binoid(doc, opt.model));
    if (!conv.report.cancellative)
      throw CliError(3, "model is not cancellative: " + conv.report.witness);
    m = torsion_freefication(conv.monoid).monoid;
  }
  Coord q = parse_q_range(opt.q_range).front();
  std::vector<QComponent> comps = components(m, q);
  IsoClassReport iso = iso_classes(comps);
  Json result;
  result["model"] = opt.model;
  result["q"] = (long long)q;
  Json comp_rows = Json::array();
  for (const QComponent &c : comps) {
    Json row;
    row["anchor"] = zvec_json(c.anchor);
    row["generators"] = (long long)c.minimal_generators.size();
    comp_rows.push_back(row);
  }
  result["components"] = comp_rows;
  Json census = Json::array();
  for (const IsoClass &c : iso.classes) {
    Json row;
    row["signature"] = fnv1a_hex(c.signature);
    row["multiplicity"] = c.multiplicity;
    row["generator_count"] = (long long)c.generator_count;
    census.push_back(row);
  }
  result["census"] = census;
  result["ambiguous"] = iso.ambiguous;
  write_output(emit_json(result), opt.out);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Hilbert-Kunz computations for finitely generated binoids"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App *cmd, bool needs_model) {
    cmd->add_option("-i,--input", opt.input, "input .bnd file")->required();
    if (needs_model)
      cmd->add_option("--model", opt.model, "model name")->required();
    cmd->add_option("-o,--output", opt.out, "output file (default stdout)");
    cmd->add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  CLI::App *hkf_cmd = app.add_subcommand("hkf", "Hilbert-Kunz function");
  add_common(hkf_cmd, true);
  hkf_cmd->add_option("--q", opt.q_range, "q or range A..B")->required();
  hkf_cmd->add_option("--ideal", opt.ideal, "ideal name (default N+)");
  hkf_cmd->add_option("--engine", opt.engine, "box or affine")
      ->check(CLI::IsMember({"auto", "box", "affine"}));
  hkf_cmd->add_option("--threads", opt.threads, "worker threads");
  hkf_cmd->add_option("--cache-dir", opt.cache_dir, "cache directory");
  hkf_cmd->add_option("--level-cap", opt.level_cap, "enumerated point cap");
  hkf_cmd->add_option("--box-retries", opt.box_retries, "stability retries");

  CLI::App *ehk_cmd = app.add_subcommand("ehk", "Hilbert-Kunz multiplicity");
  add_common(ehk_cmd, true);
  ehk_cmd->add_option("--method", opt.method, "pipeline, volume or fit")
      ->check(CLI::IsMember({"pipeline", "volume", "fit"}));

  CLI::App *spec_cmd = app.add_subcommand("spec", "prime spectrum");
  add_common(spec_cmd, true);

  CLI::App *norm_cmd = app.add_subcommand("normalize", "normalization");
  add_common(norm_cmd, true);

  CLI::App *smash_cmd = app.add_subcommand("smash", "smash product");
  add_common(smash_cmd, false);
  smash_cmd->add_option("--left", opt.left, "left model")->required();
  smash_cmd->add_option("--right", opt.right, "right model")->required();

  CLI::App *part_cmd = app.add_subcommand("partition", "q-action partition");
  add_common(part_cmd, true);
  part_cmd->add_option("--q", opt.q_range, "q value")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (hkf_cmd->parsed()) return run_hkf(opt);
    if (ehk_cmd->parsed()) return run_ehk(opt);
    if (spec_cmd->parsed()) return run_spec(opt);
    if (norm_cmd->parsed()) return run_normalize(opt);
    if (smash_cmd->parsed()) return run_smash(opt);
    if (part_cmd->parsed()) return run_partition(opt);
  } catch (const CliError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const ParseError &e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const RefusedError &e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const BoxCapExceeded &e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const ValidationError &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const GeometryError &e) {
    std::cerr << "geometry error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
