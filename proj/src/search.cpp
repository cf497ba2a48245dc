#include "vmds/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "vmds/combinatorics.hpp"
#include "vmds/document.hpp"
#include "vmds/errors.hpp"

namespace vmds {

namespace {

// One systematic node of a canonical code: r blocks (the last one I) and its
// r repairing subspaces.
struct Candidate {
  std::vector<Matrix> blocks;
  std::vector<Subspace> scheme;
};

struct Space {
  const Field& f;
  int l;
  int r;
  Family family;
  bool constant;

  int d() const { return l / r; }
};

double power(double base, double e) { return std::pow(base, e); }

// Number of raw matrices the block enumeration walks through.
double raw_block_count(const Space& s) {
  const double q = s.f.order();
  return s.family == Family::diagonal ? power(q - 1, s.l) : power(q, s.l * s.l);
}

// Invertible blocks in lexicographic order of their entries (diagonal
// entries only for the diagonal family).
std::vector<Matrix> block_list(const Space& s) {
  const Field& f = s.f;
  const int cells = s.family == Family::diagonal ? s.l : s.l * s.l;
  const std::uint32_t low = s.family == Family::diagonal ? 1 : 0;
  std::vector<std::uint32_t> digit(static_cast<std::size_t>(cells), low);
  std::vector<Matrix> out;
  while (true) {
    Matrix m = zeros(f, s.l, s.l);
    for (int c = 0; c < cells; ++c) {
      const Elem v{digit[static_cast<std::size_t>(c)]};
      if (s.family == Family::diagonal)
        m(c, c) = v;
      else
        m(c / s.l, c % s.l) = v;
    }
    if (s.family == Family::diagonal || rank(f, m) == s.l) out.push_back(std::move(m));
    int c = cells - 1;
    while (c >= 0 && digit[static_cast<std::size_t>(c)] == f.order() - 1)
      digit[static_cast<std::size_t>(c--)] = low;
    if (c < 0) return out;
    ++digit[static_cast<std::size_t>(c)];
  }
}

// Every d-dimensional subspace of F^l (coordinate spans only for the access
// family), ordered by pivot set then free entries.
std::vector<Subspace> subspace_list(const Space& s) {
  const Field& f = s.f;
  const int d = s.d();
  std::vector<Subspace> out;
  for_each_combination(s.l, d, [&](const std::vector<int>& pivots) {
    std::vector<std::pair<int, int>> free;
    if (s.family != Family::access)
      for (int a = 0; a < d; ++a)
        for (int c = pivots[static_cast<std::size_t>(a)] + 1; c < s.l; ++c)
          if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(a, c);
    std::vector<std::uint32_t> digit(free.size(), 0);
    while (true) {
      Matrix m = zeros(f, d, s.l);
      for (int a = 0; a < d; ++a) m(a, pivots[static_cast<std::size_t>(a)]) = f.one();
      for (std::size_t e = 0; e < free.size(); ++e)
        m(free[e].first, free[e].second) = Elem{digit[e]};
      out.push_back(row_space(f, m));
      std::size_t e = free.size();
      while (e > 0 && digit[e - 1] == f.order() - 1) digit[--e] = 0;
      if (e == 0) break;
      ++digit[e - 1];
    }
    return true;
  });
  return out;
}

double subspace_count(const Space& s) {
  if (s.family == Family::access) return static_cast<double>(*binomial(s.l, s.d()));
  // Gaussian binomial [l, d]_q.
  const double q = s.f.order();
  double out = 1;
  for (int i = 0; i < s.d(); ++i)
    out *= (power(q, s.l - i) - 1) / (power(q, i + 1) - 1);
  return std::round(out);
}

double candidate_count(const Space& s, double blocks) {
  const double subs = subspace_count(s);
  return power(blocks, s.r - 1) * (s.constant ? subs : power(subs, s.r));
}

// Decodes a mixed-radix index into r-1 block choices and a scheme choice.
Candidate make_candidate(const Space& s, const std::vector<Matrix>& blocks,
                         const std::vector<Subspace>& subs, std::uint64_t index) {
  Candidate c;
  const std::uint64_t nsub = subs.size();
  std::vector<std::size_t> scheme_idx(static_cast<std::size_t>(s.r));
  if (s.constant) {
    std::fill(scheme_idx.begin(), scheme_idx.end(), index % nsub);
    index /= nsub;
  } else {
    for (int i = s.r - 1; i >= 0; --i) {
      scheme_idx[static_cast<std::size_t>(i)] = index % nsub;
      index /= nsub;
    }
  }
  std::vector<std::size_t> block_idx(static_cast<std::size_t>(s.r - 1));
  for (int i = s.r - 2; i >= 0; --i) {
    block_idx[static_cast<std::size_t>(i)] = index % blocks.size();
    index /= blocks.size();
  }
  for (auto b : block_idx) c.blocks.push_back(blocks[b]);
  c.blocks.push_back(identity(s.f, s.l));
  for (auto i : scheme_idx) c.scheme.push_back(subs[i]);
  return c;
}

Matrix stacked(const Field& f, const Candidate& owner, const Candidate& target) {
  std::vector<Matrix> parts;
  for (std::size_t i = 0; i < owner.scheme.size(); ++i)
    parts.push_back(matmul(f, owner.scheme[i].basis(), target.blocks[i]));
  return vstack(std::span<const Matrix>(parts));
}

bool repairs_itself(const Space& s, const Candidate& c) {
  return rank(s.f, stacked(s.f, c, c)) == s.l;
}

bool minor_invertible(const Space& s, const std::vector<const Candidate*>& cols,
                      const std::vector<int>& rows) {
  const Field& f = s.f;
  const auto t = static_cast<Index>(rows.size());
  if (s.family == Family::diagonal) {
    Matrix scalar(t, t);
    for (Index x = 0; x < s.l; ++x) {
      for (Index a = 0; a < t; ++a)
        for (Index b = 0; b < t; ++b)
          scalar(a, b) = cols[static_cast<std::size_t>(b)]
                             ->blocks[static_cast<std::size_t>(rows[static_cast<std::size_t>(a)])](x, x);
      if (det(f, scalar) == f.zero()) return false;
    }
    return true;
  }
  Matrix big(t * s.l, t * s.l);
  for (Index a = 0; a < t; ++a)
    for (Index b = 0; b < t; ++b)
      big.block(a * s.l, b * s.l, s.l, s.l) =
          cols[static_cast<std::size_t>(b)]->blocks[static_cast<std::size_t>(rows[static_cast<std::size_t>(a)])];
  return rank(f, big) == t * s.l;
}

bool compatible(const Space& s, const Candidate& a, const Candidate& b) {
  if (rank(s.f, stacked(s.f, a, b)) != s.d()) return false;
  if (rank(s.f, stacked(s.f, b, a)) != s.d()) return false;
  const std::vector<const Candidate*> cols{&a, &b};
  return for_each_combination(s.r, 2, [&](const std::vector<int>& rows) {
    return minor_invertible(s, cols, rows);
  });
}

// Minors of order >= 3 that include the newest column.
bool extends_mds(const Space& s, const std::vector<const Candidate*>& clique) {
  const auto size = static_cast<int>(clique.size());
  for (int t = 3; t <= std::min(s.r, size); ++t) {
    const bool ok = for_each_combination(size - 1, t - 1, [&](const std::vector<int>& pick) {
      std::vector<const Candidate*> cols;
      for (int p : pick) cols.push_back(clique[static_cast<std::size_t>(p)]);
      cols.push_back(clique.back());
      return for_each_combination(s.r, t, [&](const std::vector<int>& rows) {
        return minor_invertible(s, cols, rows);
      });
    });
    if (!ok) return false;
  }
  return true;
}

using Bits = std::vector<std::uint64_t>;

bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }
void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }
void reset(Bits& b, std::size_t i) { b[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
std::size_t popcount(const Bits& b) {
  std::size_t n = 0;
  for (auto w : b) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<Bits> adjacency(const Space& s, const std::vector<Candidate>& cands) {
  const std::size_t n = cands.size();
  const std::size_t words = (n + 63) / 64;
  std::vector<Bits> adj(n, Bits(words, 0));
  const unsigned workers = std::max(1U, std::min<unsigned>(search_threads(),
                                                           static_cast<unsigned>(n)));
  auto work = [&](unsigned id) {
    for (std::size_t i = id; i < n; i += workers)
      for (std::size_t j = i + 1; j < n; ++j)
        if (compatible(s, cands[i], cands[j])) set(adj[i], j);
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (test(adj[i], j)) set(adj[j], i);
  return adj;
}

class CliqueSearch {
public:
  CliqueSearch(const Space& s, const std::vector<Candidate>& cands,
               const std::vector<Bits>& adj, std::uint64_t budget)
      : s_(s), cands_(cands), adj_(adj), budget_(budget) {}

  void run() {
    Bits all((cands_.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < cands_.size(); ++i) set(all, i);
    std::vector<std::size_t> clique;
    visit(clique, all);
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t steps() const { return steps_; }
  bool aborted() const { return aborted_; }

private:
  void visit(std::vector<std::size_t>& clique, Bits cand) {
    if (clique.size() > best_.size()) best_ = clique;
    while (!aborted_) {
      if (clique.size() + popcount(cand) <= best_.size()) return;
      std::size_t v = 0;
      while (cand[v / 64] == 0) v += 64;
      v += static_cast<std::size_t>(std::countr_zero(cand[v / 64]));
      reset(cand, v);
      if (++steps_ > budget_) {
        aborted_ = true;
        return;
      }
      clique.push_back(v);
      std::vector<const Candidate*> cols;
      for (auto c : clique) cols.push_back(&cands_[c]);
      if (extends_mds(s_, cols)) {
        Bits next = cand;
        for (std::size_t w = 0; w < next.size(); ++w) next[w] &= adj_[v][w];
        visit(clique, std::move(next));
      }
      clique.pop_back();
    }
  }

  const Space& s_;
  const std::vector<Candidate>& cands_;
  const std::vector<Bits>& adj_;
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
  bool aborted_ = false;
  std::vector<std::size_t> best_;
};

CodeAndScheme assemble(const Space& s, const std::vector<const Candidate*>& nodes) {
  std::vector<Matrix> blocks;
  for (int i = 0; i < s.r; ++i)
    for (const Candidate* c : nodes) blocks.push_back(c->blocks[static_cast<std::size_t>(i)]);
  std::vector<std::vector<Subspace>> scheme;
  for (const Candidate* c : nodes) scheme.push_back(c->scheme);
  return {VectorMdsCode(s.f, static_cast<int>(nodes.size()), s.r, s.l, std::move(blocks)),
          RepairScheme(std::move(scheme))};
}

bool family_holds(const CodeAndScheme& c, Family family, bool constant) {
  if (constant && !c.scheme.is_constant()) return false;
  if (family == Family::diagonal && !is_optimal_update(c.code)) return false;
  if (family == Family::access && !is_optimal_access(c.scheme)) return false;
  return true;
}

bool fully_valid(const CodeAndScheme& c, Family family, bool constant) {
  return family_holds(c, family, constant) && is_mds(c.code) &&
         is_optimal_bandwidth(c.code, c.scheme).passed();
}

void check_params(int l, int r) {
  if (r < 2 || l < 2 || l % r != 0)
    throw InvalidParameters("need r >= 2, l >= 2 and r | l (got l=" + std::to_string(l) +
                            ", r=" + std::to_string(r) + ")");
  if (l > 256) throw InvalidParameters("l must not exceed 256");
}

// Random candidate for sampling mode.
Candidate random_candidate(const Space& s, std::mt19937_64& rng) {
  const Field& f = s.f;
  std::uniform_int_distribution<std::uint32_t> symbol(0, f.order() - 1);
  std::uniform_int_distribution<std::uint32_t> nonzero(1, f.order() - 1);
  auto block = [&] {
    while (true) {
      Matrix m = zeros(f, s.l, s.l);
      for (Index a = 0; a < s.l; ++a)
        for (Index b = 0; b < s.l; ++b) {
          if (s.family == Family::diagonal) {
            if (a == b) m(a, b) = Elem{nonzero(rng)};
          } else {
            m(a, b) = Elem{symbol(rng)};
          }
        }
      if (rank(f, m) == s.l) return m;
    }
  };
  auto subspace = [&] {
    if (s.family == Family::access) {
      std::vector<Index> coords(static_cast<std::size_t>(s.l));
      std::iota(coords.begin(), coords.end(), Index{0});
      std::shuffle(coords.begin(), coords.end(), rng);
      coords.resize(static_cast<std::size_t>(s.d()));
      return coordinate_span(f, Index{s.l}, coords);
    }
    while (true) {
      Matrix m(s.d(), s.l);
      for (Index a = 0; a < m.rows(); ++a)
        for (Index b = 0; b < m.cols(); ++b) m(a, b) = Elem{symbol(rng)};
      Subspace out = row_space(f, m);
      if (out.dim() == s.d()) return out;
    }
  };
  Candidate c;
  for (int i = 0; i + 1 < s.r; ++i) c.blocks.push_back(block());
  c.blocks.push_back(identity(f, s.l));
  if (s.constant) {
    c.scheme.assign(static_cast<std::size_t>(s.r), subspace());
  } else {
    for (int i = 0; i < s.r; ++i) c.scheme.push_back(subspace());
  }
  return c;
}

std::string flag(bool b) { return b ? "true" : "false"; }

} // namespace

unsigned search_threads() {
  unsigned hw = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VMDS_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min<unsigned long>(v, hw));
  }
  return hw;
}

Certificate certify_max_k(int l, int r, const Field& field, Family family,
                          bool constant_scheme, std::uint64_t budget) {
  check_params(l, r);
  const auto start = std::chrono::steady_clock::now();
  Certificate cert;
  cert.l = l;
  cert.r = r;
  cert.p = field.characteristic();
  cert.m = field.degree();
  cert.family = family;
  cert.constant_scheme = constant_scheme;
  try {
    cert.bound = bound_max_k(static_cast<std::uint64_t>(l), static_cast<std::uint64_t>(r),
                             family, constant_scheme);
  } catch (const std::overflow_error&) {
    cert.bound = UINT64_MAX;
  }

  const Space s{field, l, r, family, constant_scheme};
  const double raw = raw_block_count(s);
  bool exhaustive = l * r <= 16 && field.order() <= 11;
  std::vector<Candidate> cands;
  if (exhaustive && raw <= static_cast<double>(budget)) {
    const double total = candidate_count(s, raw);
    exhaustive = raw + total <= static_cast<double>(budget);
  } else {
    exhaustive = false;
  }

  if (exhaustive) {
    const auto blocks = block_list(s);
    const auto subs = subspace_list(s);
    const auto total = static_cast<std::uint64_t>(candidate_count(s, static_cast<double>(blocks.size())));
    cert.enumeration_count = static_cast<std::uint64_t>(raw) + total;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Candidate c = make_candidate(s, blocks, subs, idx);
      if (repairs_itself(s, c)) cands.push_back(std::move(c));
    }
    const double pairs = 0.5 * static_cast<double>(cands.size()) *
                         static_cast<double>(cands.size() - (cands.empty() ? 0 : 1));
    if (static_cast<double>(cert.enumeration_count) + pairs > static_cast<double>(budget)) {
      exhaustive = false;
      cands.clear();
    }
  }

  if (!exhaustive) {
    // Pairs of a sample of m candidates cost m^2/2; use half the budget on them.
    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ (static_cast<std::uint64_t>(l) << 32) ^
                        (static_cast<std::uint64_t>(r) << 16) ^ field.order());
    const auto sample = static_cast<std::size_t>(
        std::min(2000.0, std::floor(std::sqrt(static_cast<double>(budget)))));
    std::uint64_t drawn = 0;
    while (cands.size() < sample && drawn < budget / 4) {
      Candidate c = random_candidate(s, rng);
      ++drawn;
      if (repairs_itself(s, c)) cands.push_back(std::move(c));
    }
    cert.enumeration_count = drawn;
  }

  const auto adj = adjacency(s, cands);
  cert.candidates = cands.size();
  cert.enumeration_count += cands.empty() ? 0 : cands.size() * (cands.size() - 1) / 2;
  const std::uint64_t left =
      budget > cert.enumeration_count ? budget - cert.enumeration_count : 0;
  CliqueSearch clique(s, cands, adj, left);
  clique.run();
  cert.enumeration_count += clique.steps();
  cert.exhausted = exhaustive && !clique.aborted();

  std::vector<const Candidate*> nodes;
  for (auto i : clique.best()) nodes.push_back(&cands[i]);
  cert.witness = assemble(s, nodes);
  cert.achieved_k = static_cast<int>(nodes.size());

  if (!fully_valid(cert.witness, family, constant_scheme))
    throw std::logic_error("search witness fails the checker suite");
  if (static_cast<std::uint64_t>(cert.achieved_k) > cert.bound)
    throw std::logic_error("search found k = " + std::to_string(cert.achieved_k) +
                           " above the bound " + std::to_string(cert.bound));
  cert.elapsed_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return cert;
}

std::optional<CodeAndScheme> extend_code(const VectorMdsCode& code,
                                         const RepairScheme& scheme, Family family,
                                         bool constant_scheme, std::uint64_t budget) {
  validate_scheme(code, scheme);
  const CodeAndScheme input{code, scheme};
  if (!family_holds(input, family, constant_scheme))
    throw InvalidParameters("input is not in the " + to_string(family) +
                            (constant_scheme ? " constant-scheme" : "") + " family");
  if (!is_mds(code)) throw NotMds("input code is not MDS");
  if (const auto report = is_optimal_bandwidth(code, scheme); !report.passed())
    throw NotOptimalBandwidth(render(report, "input bandwidth"));

  const Space s{code.field(), code.l(), code.r(), family, constant_scheme};
  if (raw_block_count(s) > static_cast<double>(budget)) return std::nullopt;

  const VectorMdsCode normal = normalize_last_row(code);
  std::vector<Candidate> existing;
  for (int j = 0; j < code.k(); ++j) {
    Candidate c;
    for (int i = 0; i < code.r(); ++i) c.blocks.push_back(normal.block(i, j));
    c.scheme = scheme.node(j);
    existing.push_back(std::move(c));
  }

  const auto blocks = block_list(s);
  const auto subs = subspace_list(s);
  const auto total =
      static_cast<std::uint64_t>(candidate_count(s, static_cast<double>(blocks.size())));
  std::uint64_t spent = static_cast<std::uint64_t>(raw_block_count(s));
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    if (++spent > budget) return std::nullopt;
    Candidate c = make_candidate(s, blocks, subs, idx);
    if (!repairs_itself(s, c)) continue;
    bool ok = true;
    for (const auto& e : existing) {
      if (++spent > budget) return std::nullopt;
      if (!compatible(s, e, c)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    std::vector<Matrix> grid;
    for (int i = 0; i < code.r(); ++i) {
      for (int j = 0; j < code.k(); ++j) grid.push_back(code.block(i, j));
      grid.push_back(c.blocks[static_cast<std::size_t>(i)]);
    }
    auto nodes = scheme.nodes();
    nodes.push_back(c.scheme);
    CodeAndScheme out{VectorMdsCode(code.field(), code.k() + 1, code.r(), code.l(),
                                    std::move(grid)),
                      RepairScheme(std::move(nodes))};
    if (fully_valid(out, family, constant_scheme)) return out;
  }
  return std::nullopt;
}

std::string render(const Certificate& c) {
  std::ostringstream out;
  out << "certificate v1\n";
  out << "params " << c.l << ' ' << c.r << ' ' << c.p << ' ' << c.m << '\n';
  out << "family " << to_string(c.family) << '\n';
  out << "constant " << flag(c.constant_scheme) << '\n';
  out << "achieved_k " << c.achieved_k << '\n';
  out << "bound " << c.bound << '\n';
  out << "exhausted " << flag(c.exhausted) << '\n';
  out << "enumeration " << c.enumeration_count << '\n';
  out << "candidates " << c.candidates << '\n';
  out << "elapsed_ms " << static_cast<std::uint64_t>(std::llround(c.elapsed_ms)) << '\n';
  const Field f(c.p, c.m);
  if (c.exhausted)
    out << "note maximum over " << f.name() << " only; other fields may differ\n";
  else
    out << "note search space not exhausted; achieved_k is a lower bound over " << f.name()
        << '\n';
  out << "end\n";
  out << serialize(c.witness.code, &c.witness.scheme);
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  Certificate c;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::map<std::string, std::vector<std::string>> fields;
  bool ended = false;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::istringstream in{std::string(text.substr(pos, end - pos))};
    pos = end + 1;
    ++line_no;
    std::vector<std::string> tokens;
    for (std::string t; in >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    if (line_no == 1 || fields.empty()) {
      if (tokens != std::vector<std::string>{"certificate", "v1"})
        throw ParseError(line_no, "missing 'certificate v1' header");
      fields["certificate"] = {};
      continue;
    }
    if (tokens.front() == "end") {
      ended = true;
      break;
    }
    if (tokens.front() == "note") continue;
    fields[tokens.front()] = std::vector<std::string>(tokens.begin() + 1, tokens.end());
  }
  if (!ended) throw ParseError(line_no, "certificate block has no 'end'");

  auto get = [&](const std::string& key, std::size_t arity) -> const std::vector<std::string>& {
    const auto it = fields.find(key);
    if (it == fields.end() || it->second.size() != arity)
      throw ParseError(line_no, "certificate field '" + key + "' missing or malformed");
    return it->second;
  };
  auto num = [&](const std::string& tok) -> std::uint64_t {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad number '" + tok + "'");
    }
  };
  auto boolean = [&](const std::string& tok) {
    if (tok == "true") return true;
    if (tok == "false") return false;
    throw ParseError(line_no, "bad flag '" + tok + "'");
  };

  const auto& params = get("params", 4);
  c.l = static_cast<int>(num(params[0]));
  c.r = static_cast<int>(num(params[1]));
  c.p = static_cast<std::uint32_t>(num(params[2]));
  c.m = static_cast<std::uint32_t>(num(params[3]));
  try {
    c.family = parse_family(get("family", 1)[0]);
  } catch (const InvalidParameters& e) {
    throw ParseError(line_no, e.what());
  }
  c.constant_scheme = boolean(get("constant", 1)[0]);
  c.achieved_k = static_cast<int>(num(get("achieved_k", 1)[0]));
  c.bound = num(get("bound", 1)[0]);
  c.exhausted = boolean(get("exhausted", 1)[0]);
  c.enumeration_count = num(get("enumeration", 1)[0]);
  c.candidates = num(get("candidates", 1)[0]);
  c.elapsed_ms = static_cast<double>(num(get("elapsed_ms", 1)[0]));

  CodeDocument doc = deserialize(text.substr(std::min(pos, text.size())));
  if (!doc.scheme) throw ParseError(line_no, "certificate witness has no scheme");
  c.witness = CodeAndScheme{std::move(doc.code), std::move(*doc.scheme)};
  return c;
}

} // namespace vmds
