// vmds: verify, repair, build and search vector MDS storage codes.
//
// Exit status: 0 success or property holds, 1 property fails, 2 usage or
// parse error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vmds/analysis.hpp"
#include "vmds/construct.hpp"
#include "vmds/document.hpp"
#include "vmds/errors.hpp"
#include "vmds/repair.hpp"
#include "vmds/search.hpp"

namespace {

using namespace vmds;

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  buf << in.rdbuf();
  return buf.str();
}

// Writes through a sibling temp file so a failed run never leaves a partial
// output behind.
void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw UsageError("cannot write '" + path + "'");
    out << text;
    if (!out.flush()) {
      std::remove(tmp.c_str());
      throw UsageError("cannot write '" + path + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

CodeDocument load(const std::string& path) { return deserialize(read_input(path)); }

const RepairScheme& need_scheme(const CodeDocument& doc) {
  if (!doc.scheme) throw UsageError("document has no repair scheme");
  return *doc.scheme;
}

std::string pass(bool ok) { return ok ? "pass" : "fail"; }

std::string indices(const std::vector<int>& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i] + 1);
  return out + ")";
}

int cmd_verify(const std::string& path) {
  const CodeDocument doc = load(path);
  const MdsReport mds = is_mds(doc.code);
  const bool update = is_optimal_update(doc.code);
  std::optional<CheckReport> bandwidth;
  if (doc.scheme) bandwidth = is_optimal_bandwidth(doc.code, *doc.scheme);

  std::cout << "MDS: " << pass(mds.mds) << "; bandwidth: "
            << (bandwidth ? pass(bandwidth->passed()) : "n/a")
            << "; access: " << (doc.scheme ? pass(is_optimal_access(*doc.scheme)) : "n/a")
            << "; update: " << pass(update) << '\n';
  std::cout << "code (" << doc.code.n() << "," << doc.code.k() << "," << doc.code.l()
            << ") over " << doc.code.field().name() << '\n';
  if (mds.witness)
    std::cout << "  singular block rows=" << indices(mds.witness->rows)
              << " cols=" << indices(mds.witness->cols) << '\n';
  if (doc.scheme) {
    std::cout << "scheme: " << (doc.scheme->is_constant() ? "constant" : "non-constant")
              << '\n';
    std::cout << render(*bandwidth, "bandwidth");
  }
  return mds.mds && (!bandwidth || bandwidth->passed()) ? kOk : kFail;
}

std::vector<Vector> read_data(const std::string& path, const VectorMdsCode& code) {
  const std::string text = read_input(path);
  std::vector<Elem> symbols;
  std::size_t line = 1;
  std::istringstream in(text);
  for (std::string row; std::getline(in, row); ++line) {
    if (const auto hash = row.find('#'); hash != std::string::npos) row.resize(hash);
    std::istringstream tokens(row);
    for (std::string tok; tokens >> tok;) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v >= code.field().order())
        throw ParseError(line, "bad symbol '" + tok + "'");
      symbols.push_back(Elem{static_cast<std::uint32_t>(v)});
    }
  }
  const auto l = static_cast<std::size_t>(code.l());
  if (symbols.size() != static_cast<std::size_t>(code.k()) * l)
    throw ParseError(line, "expected " + std::to_string(code.k() * code.l()) +
                               " symbols, got " + std::to_string(symbols.size()));
  std::vector<Vector> out;
  for (int j = 0; j < code.k(); ++j) {
    Vector v(code.l());
    for (std::size_t x = 0; x < l; ++x) v(static_cast<Index>(x)) = symbols[j * l + x];
    out.push_back(std::move(v));
  }
  return out;
}

int cmd_repair(const std::string& path, int node, const std::string& data_path,
               std::optional<std::uint64_t> seed) {
  const CodeDocument doc = load(path);
  const RepairScheme& scheme = need_scheme(doc);
  const VectorMdsCode& code = doc.code;
  if (node < 1 || node > code.k())
    throw UsageError("--node must be in 1.." + std::to_string(code.k()));

  std::vector<Vector> systematic;
  if (!data_path.empty()) {
    systematic = read_data(data_path, code);
  } else if (seed) {
    std::mt19937_64 rng(*seed);
    std::uniform_int_distribution<std::uint32_t> symbol(0, code.field().order() - 1);
    for (int j = 0; j < code.k(); ++j) {
      Vector v(code.l());
      for (Index x = 0; x < v.size(); ++x) v(x) = Elem{symbol(rng)};
      systematic.push_back(std::move(v));
    }
  } else {
    for (int j = 0; j < code.k(); ++j)
      systematic.push_back(Vector::Constant(code.l(), code.field().zero()));
  }
  const DataState data = encode(code, systematic);
  const RepairTranscript t = repair_node(code, scheme, data, node - 1);
  std::cout << render(t);
  return t.reconstructed == data.node(node - 1) ? kOk : kFail;
}

std::vector<int> parse_keep(const std::string& list) {
  std::vector<int> out;
  std::istringstream in(list);
  for (std::string tok; std::getline(in, tok, ',');) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v - 1);
    } catch (const std::exception&) {
      throw UsageError("bad node index '" + tok + "' in --keep");
    }
  }
  return out;
}

int cmd_bounds(std::uint64_t l, std::uint64_t r, const std::string& family, bool non_constant,
               bool verbose) {
  const Family fam = parse_family(family);
  std::cout << bound_max_k(l, r, fam, !non_constant) << '\n';
  if (verbose && fam == Family::general)
    std::cout << "known construction reaches " << general_lower_bound(l, r) << '\n';
  return kOk;
}

int cmd_analyze(const std::string& path, const std::string& what, int node, int max_size) {
  const CodeDocument doc = load(path);
  const RepairScheme& scheme = need_scheme(doc);
  const Field& f = doc.code.field();
  if (what == "intersections") {
    const CheckReport r = intersection_profile(f, scheme, max_size);
    std::cout << render(r, "intersections");
    return r.passed() ? kOk : kFail;
  }
  if (what == "degrees") {
    const DegreeReport d = basis_vector_degrees(f, scheme);
    std::cout << "degrees";
    for (int v : d.degrees) std::cout << ' ' << v;
    std::cout << '\n' << render(d.report, "degrees");
    return d.report.passed() ? kOk : kFail;
  }
  if (what == "partitions") {
    CheckReport all;
    for (int m = 0; m < doc.code.k(); ++m) {
      if (node != 0 && m != node - 1) continue;
      const DiagonalStructure s = diagonal_structure_check(doc.code, scheme, m);
      std::cout << "node " << m + 1 << " meet";
      for (const auto& b : s.meet.blocks()) std::cout << ' ' << indices(b);
      std::cout << '\n';
      for (const auto& g : s.groups)
        std::cout << "  x=" << indices(g.coords) << " dim=" << g.piece_dim
                  << " max_p=" << g.max_probability << " entropy=" << g.entropy << '\n';
      all.merge(s.report);
    }
    all.finish();
    std::cout << render(all, "partitions");
    return all.passed() ? kOk : kFail;
  }
  if (what == "detcriterion") {
    const DeterminantCriterion d = determinant_criterion(doc.code, scheme);
    for (std::size_t m = 0; m < d.index_sets.size(); ++m)
      std::cout << "node " << m + 1 << " columns " << indices(d.index_sets[m]) << " f="
                << to_string(Vector(d.values.row(static_cast<Index>(m)).transpose())) << '\n';
    std::cout << render(d.report, "detcriterion");
    return d.report.passed() ? kOk : kFail;
  }
  throw UsageError("unknown diagnostic '" + what +
                   "' (intersections, degrees, partitions, detcriterion)");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector MDS storage code workbench"};
  app.require_subcommand(1);

  std::string path;
  std::string out_path;

  auto* verify = app.add_subcommand("verify", "check MDS, bandwidth, access and update");
  verify->add_option("file", path, "code document, - for stdin")->required();

  int node = 0;
  bool zero = false;
  std::optional<std::uint64_t> seed;
  std::string data_path;
  auto* repair = app.add_subcommand("repair", "simulate repair of one systematic node");
  repair->add_option("file", path, "code document with scheme")->required();
  repair->add_option("--node", node, "systematic node, 1-based")->required();
  auto* zero_flag = repair->add_flag("--zero", zero, "all-zero data (default)");
  auto* random_opt = repair->add_option("--random", seed, "random data from this seed");
  auto* data_opt = repair->add_option("--data", data_path, "file with k*l symbols");
  zero_flag->excludes(random_opt)->excludes(data_opt);
  random_opt->excludes(data_opt);

  auto* construct = app.add_subcommand("construct", "build a code and scheme");
  construct->require_subcommand(1);
  construct->add_option("-o,--output", out_path, "output file (default stdout)");
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  int r = 2;
  int t = 1;
  int k = 1;
  int l = 2;
  int d = 0;
  std::string keep;
  std::uint64_t budget = 0;
  std::uint64_t random_seed = 1;
  auto* c_fig = construct->add_subcommand("figure1", "the (6,4,2) code over GF(7)");
  auto* c_diag = construct->add_subcommand("diagonal", "diagonal code with k = log_r l");
  c_diag->add_option("--r", r)->required();
  c_diag->add_option("--t", t)->required();
  c_diag->add_option("--p", p)->required();
  c_diag->add_option("--m", m);
  c_diag->add_option("--budget", budget, "eigenvalue tables to try");
  auto* c_transform = construct->add_subcommand("transform", "constant-scheme transform");
  c_transform->add_option("file", path)->required();
  c_transform->add_option("--delete", d, "node to delete, 1-based (default k)");
  auto* c_shorten = construct->add_subcommand("shorten", "keep some systematic nodes");
  c_shorten->add_option("file", path)->required();
  c_shorten->add_option("--keep", keep, "comma-separated 1-based nodes")->required();
  auto* c_random = construct->add_subcommand("random", "random MDS code (no scheme)");
  c_random->add_option("--k", k)->required();
  c_random->add_option("--r", r)->required();
  c_random->add_option("--l", l)->required();
  c_random->add_option("--p", p)->required();
  c_random->add_option("--m", m);
  c_random->add_option("--seed", random_seed);
  for (auto* sub : {c_fig, c_diag, c_transform, c_shorten, c_random}) sub->fallthrough();

  std::uint64_t bl = 0;
  std::uint64_t br = 0;
  std::string family = "general";
  bool non_constant = false;
  bool constant = false;
  bool verbose = false;
  auto* bounds = app.add_subcommand("bounds", "upper bound on k");
  bounds->add_option("--l", bl)->required();
  bounds->add_option("--r", br)->required();
  bounds->add_option("--family", family, "general, diagonal or access");
  auto* const_flag = bounds->add_flag("--constant", constant, "constant scheme (default)");
  bounds->add_flag("--non-constant", non_constant, "schemes may vary per parity")
      ->excludes(const_flag);
  bounds->add_flag("-v,--verbose", verbose);

  std::string what;
  int max_size = 3;
  auto* analyze = app.add_subcommand("analyze", "structural diagnostics");
  analyze->add_option("file", path)->required();
  analyze->add_option("diagnostic", what, "intersections, degrees, partitions, detcriterion")
      ->required();
  analyze->add_option("--node", node, "restrict partitions to one node, 1-based");
  analyze->add_option("--max-size", max_size, "largest subset for intersections");

  int sl = 0;
  int sr = 0;
  std::uint64_t search_budget = kDefaultBudget;
  bool s_non_constant = false;
  bool s_constant = false;
  auto* search = app.add_subcommand("search", "certify the largest k over a small field");
  search->add_option("--l", sl)->required();
  search->add_option("--r", sr)->required();
  search->add_option("--p", p)->required();
  search->add_option("--m", m);
  search->add_option("--family", family, "general, diagonal or access")->required();
  auto* s_const_flag = search->add_flag("--constant", s_constant, "constant scheme (default)");
  search->add_flag("--non-constant", s_non_constant)->excludes(s_const_flag);
  search->add_option("--budget", search_budget, "enumeration budget");
  search->add_option("-o,--output", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return cmd_verify(path);
    if (*repair) return cmd_repair(path, node, data_path, seed);
    if (*bounds) return cmd_bounds(bl, br, family, non_constant, verbose);
    if (*analyze) return cmd_analyze(path, what, node, max_size);
    if (*construct) {
      std::optional<CodeAndScheme> built;
      if (*c_fig) {
        built = figure1_code();
      } else if (*c_diag) {
        built = budget ? diagonal_code(r, t, Field(p, m), budget)
                       : diagonal_code(r, t, Field(p, m));
      } else if (*c_transform) {
        const CodeDocument doc = load(path);
        built = constant_scheme_transform(doc.code, need_scheme(doc), d - 1);
      } else if (*c_shorten) {
        const CodeDocument doc = load(path);
        built = shorten(doc.code, need_scheme(doc), parse_keep(keep));
      } else {
        write_output(out_path, serialize(random_mds_code(k, r, l, Field(p, m), random_seed)));
        return kOk;
      }
      write_output(out_path, serialize(built->code, &built->scheme));
      return kOk;
    }
    if (*search) {
      const Certificate cert =
          certify_max_k(sl, sr, Field(p, m), parse_family(family), !s_non_constant, search_budget);
      write_output(out_path, render(cert));
      return cert.exhausted ? kOk : kFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidParameters& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotPrime& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const OrderTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NotPowerOfR& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFail;
  }
  return kUsage;
}
