#include "vmds/document.hpp"

#include <charconv>
#include <map>
#include <sstream>
#include <vector>

#include "vmds/errors.hpp"

namespace vmds {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

std::uint64_t parse_uint(const Line& line, std::size_t idx) {
  const std::string& tok = line.tokens.at(idx);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw ParseError(line.number, "expected a non-negative integer, got '" + tok + "'");
  return value;
}

class Cursor {
public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}

  bool done() const { return at_ == lines_.size(); }
  const Line& peek() const { return lines_[at_]; }
  std::size_t last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

  const Line& next(std::string_view what) {
    if (done()) throw ParseError(last_line(), "unexpected end of document, expected " +
                                                  std::string(what));
    return lines_[at_++];
  }

  const Line& keyword(std::string_view word, std::size_t arity) {
    const Line& line = next(word);
    if (line.tokens.front() != word)
      throw ParseError(line.number, "expected '" + std::string(word) + "', got '" +
                                        line.tokens.front() + "'");
    if (line.tokens.size() != arity + 1)
      throw ParseError(line.number, "'" + std::string(word) + "' takes " +
                                        std::to_string(arity) + " arguments");
    return line;
  }

private:
  std::vector<Line> lines_;
  std::size_t at_ = 0;
};

Matrix read_rows(Cursor& cur, const Field& f, Index rows, Index cols) {
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Line& line = cur.next("matrix row");
    if (static_cast<Index>(line.tokens.size()) != cols)
      throw ParseError(line.number, "expected " + std::to_string(cols) + " entries, got " +
                                        std::to_string(line.tokens.size()));
    for (Index j = 0; j < cols; ++j) {
      const std::uint64_t v = parse_uint(line, static_cast<std::size_t>(j));
      if (v >= f.order())
        throw ParseError(line.number, "symbol " + std::to_string(v) + " outside " + f.name());
      m(i, j) = Elem{static_cast<std::uint32_t>(v)};
    }
  }
  return m;
}

void write_rows(std::ostringstream& out, const Matrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).value;
    out << '\n';
  }
}

std::string pair_label(std::uint64_t i, std::uint64_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

} // namespace

std::string serialize(const VectorMdsCode& code, const RepairScheme* scheme) {
  std::ostringstream out;
  out << "vmds " << kDocumentVersion << '\n';
  out << "field " << code.field().characteristic() << ' ' << code.field().degree() << '\n';
  out << "params " << code.k() << ' ' << code.r() << ' ' << code.l() << '\n';
  for (int i = 0; i < code.r(); ++i)
    for (int j = 0; j < code.k(); ++j) {
      out << "C " << i + 1 << ' ' << j + 1 << '\n';
      write_rows(out, code.block(i, j));
    }
  if (scheme != nullptr) {
    validate_scheme(code, *scheme);
    out << "scheme\n";
    for (int m = 0; m < scheme->k(); ++m)
      for (int i = 0; i < scheme->r(); ++i) {
        out << "S " << i + 1 << ' ' << m + 1 << '\n';
        write_rows(out, scheme->subspace(i, m).basis());
      }
  }
  return out.str();
}

CodeDocument deserialize(std::string_view text) {
  Cursor cur(tokenize(text));

  const Line& header = cur.next("header");
  if (header.tokens.size() != 2 || header.tokens[0] != "vmds")
    throw ParseError(header.number, "missing 'vmds <version>' header");
  if (header.tokens[1] != kDocumentVersion)
    throw ParseError(header.number, "unsupported version '" + header.tokens[1] + "'");

  const Line& field_line = cur.keyword("field", 2);
  const auto p = parse_uint(field_line, 1);
  const auto m = parse_uint(field_line, 2);
  if (p > Field::kMaxOrder || m > 16)
    throw ParseError(field_line.number, "field parameters out of range");
  std::optional<Field> field;
  try {
    field.emplace(static_cast<std::uint32_t>(p), static_cast<std::uint32_t>(m));
  } catch (const Error& e) {
    throw ParseError(field_line.number, e.what());
  }
  const Field& f = *field;

  const Line& params = cur.keyword("params", 3);
  const auto k = parse_uint(params, 1);
  const auto r = parse_uint(params, 2);
  const auto l = parse_uint(params, 3);
  if (k > 1024 || r > 1024 || l > 4096)
    throw ParseError(params.number, "parameters out of range");
  if (r < 2 || l < 2 || l % r != 0)
    throw InvariantViolation("params k=" + std::to_string(k) + " r=" + std::to_string(r) +
                             " l=" + std::to_string(l) + ": need r >= 2, l >= 2, r | l");

  std::map<std::pair<std::uint64_t, std::uint64_t>, Matrix> blocks;
  while (!cur.done() && cur.peek().tokens.front() == "C") {
    const Line& line = cur.keyword("C", 2);
    const auto i = parse_uint(line, 1);
    const auto j = parse_uint(line, 2);
    if (i < 1 || i > r || j < 1 || j > k)
      throw ParseError(line.number, "block index " + pair_label(i, j) + " out of range");
    if (blocks.contains({i, j}))
      throw ParseError(line.number, "duplicate block " + pair_label(i, j));
    Matrix c = read_rows(cur, f, static_cast<Index>(l), static_cast<Index>(l));
    if (rank(f, c) != static_cast<Index>(l))
      throw InvariantViolation("block C" + pair_label(i, j) + " is singular");
    blocks.emplace(std::pair{i, j}, std::move(c));
  }
  if (blocks.size() != r * k)
    throw ParseError(cur.last_line(), "expected " + std::to_string(r * k) + " blocks, got " +
                                          std::to_string(blocks.size()));

  std::vector<Matrix> grid;
  for (std::uint64_t i = 1; i <= r; ++i)
    for (std::uint64_t j = 1; j <= k; ++j) grid.push_back(blocks.at({i, j}));
  CodeDocument doc{VectorMdsCode(f, static_cast<int>(k), static_cast<int>(r),
                                 static_cast<int>(l), std::move(grid)),
                   std::nullopt};

  if (cur.done()) return doc;
  cur.keyword("scheme", 0);
  std::map<std::pair<std::uint64_t, std::uint64_t>, Subspace> entries;
  const Index dim = static_cast<Index>(l / r);
  while (!cur.done()) {
    const Line& line = cur.keyword("S", 2);
    const auto i = parse_uint(line, 1);
    const auto node = parse_uint(line, 2);
    if (i < 1 || i > r || node < 1 || node > k)
      throw ParseError(line.number, "subspace index " + pair_label(i, node) + " out of range");
    if (entries.contains({node, i}))
      throw ParseError(line.number, "duplicate subspace " + pair_label(i, node));
    Subspace s = row_space(f, read_rows(cur, f, dim, static_cast<Index>(l)));
    if (s.dim() != dim)
      throw InvariantViolation("subspace S" + pair_label(i, node) + " has rank " +
                               std::to_string(s.dim()) + ", expected " + std::to_string(dim));
    entries.emplace(std::pair{node, i}, std::move(s));
  }
  if (entries.size() != r * k)
    throw ParseError(cur.last_line(), "expected " + std::to_string(r * k) +
                                          " subspaces, got " + std::to_string(entries.size()));
  std::vector<std::vector<Subspace>> nodes(static_cast<std::size_t>(k));
  for (std::uint64_t node = 1; node <= k; ++node)
    for (std::uint64_t i = 1; i <= r; ++i)
      nodes[static_cast<std::size_t>(node - 1)].push_back(entries.at({node, i}));
  doc.scheme = RepairScheme(std::move(nodes));
  return doc;
}

} // namespace vmds
