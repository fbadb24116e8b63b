#pragma once

// Session documents: a ring header, named ideals and matrices, then commands.
//
//   ring p=32003 vars=[x,y,z]
//   ideal I = [x^2*y, x*y^2*z, z^3]
//   matrix M = [[x, y], [z, 0]]
//   burch-chain I --max-iter 20

#include <burch/analysis.hpp>

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace burch {

inline constexpr int kSchemaVersion = 1;

enum class DefKind { IDEAL, MATRIX };

struct Definition {
  DefKind kind = DefKind::IDEAL;
  std::string name;
  std::vector<std::vector<Polynomial>> rows;  // an ideal is a single row
  int line = 0;
};

struct Command {
  std::string name;                 // "verify big1" keeps the subcommand
  std::vector<std::string> args;    // positional names
  std::vector<std::pair<std::string, std::string>> options;  // in source order
  int line = 0;

  std::optional<std::string> option(const std::string& key) const {
    for (const auto& [k, v] : options)
      if (k == key) return v;
    return std::nullopt;
  }
  std::string text() const {
    std::string s = name;
    for (const auto& a : args) s += " " + a;
    for (const auto& [k, v] : options) s += " --" + k + " " + v;
    return s;
  }
};

struct SessionSpec {
  RingPtr ring;
  std::vector<Definition> defs;
  std::vector<Command> commands;

  const Definition* find(const std::string& name) const {
    for (const auto& d : defs)
      if (d.name == name) return &d;
    return nullptr;
  }
};

inline std::string print_session(const SessionSpec& s);

inline bool operator==(const SessionSpec& a, const SessionSpec& b) {
  if (!a.ring || !b.ring || !(*a.ring == *b.ring)) return false;
  return print_session(a) == print_session(b);
}

namespace detail {

struct CommandShape {
  int min_args;
  int max_args;
  std::set<std::string> flags;
  std::set<std::string> value_flags;  // flags whose value names a definition
};

inline const std::map<std::string, CommandShape>& command_shapes() {
  static const std::map<std::string, CommandShape> shapes = {
      {"burch-index", {1, 2, {}, {}}},
      {"burch-chain", {1, 1, {"max-iter"}, {}}},
      {"bi-n", {2, 2, {}, {}}},
      {"witnesses", {2, 2, {}, {}}},
      {"resolve", {1, 1, {"module", "quotient", "steps", "emit", "tor", "degree-bound"}, {"module", "quotient", "tor"}}},
      {"minors", {1, 1, {"module", "quotient", "steps", "window"}, {"module", "quotient"}}},
      {"verify big1", {1, 1, {"module", "quotient", "steps", "window", "max-iter"}, {"module", "quotient"}}},
      {"verify big2", {1, 1, {"module", "quotient", "steps", "window"}, {"module", "quotient"}}},
      {"verify dual2", {1, 1, {"module", "quotient", "steps", "n", "at", "column"}, {"module", "quotient", "n"}}},
      {"verify dualpos", {1, 1, {"module", "quotient", "steps"}, {"module", "quotient"}}},
      {"verify twist1", {2, 2, {"steps"}, {}}},
      {"verify duality", {2, 2, {}, {}}},
      {"fuzz", {0, 0, {"seed", "count", "max-degree", "max-gens", "binomials", "steps"}, {}}},
  };
  return shapes;
}

inline const std::set<std::string>& integer_flags() {
  static const std::set<std::string> f = {"max-iter", "steps",    "window", "at",       "column",    "seed",
                                          "count",    "max-degree", "max-gens", "binomials", "degree-bound"};
  return f;
}

inline std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

inline bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

class SessionParser {
 public:
  SessionParser(std::string_view text, std::optional<std::uint32_t> prime) : text_(text), prime_(prime) {}

  SessionSpec parse() {
    std::size_t start = 0;
    int lineno = 0;
    while (start <= text_.size()) {
      std::size_t nl = text_.find('\n', start);
      std::string_view line = text_.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
      ++lineno;
      line_ = lineno;
      handle(line);
      if (nl == std::string_view::npos) break;
      start = nl + 1;
    }
    if (!spec_.ring) throw ParseError("missing ring header", lineno, 1);
    return std::move(spec_);
  }

 private:
  void handle(std::string_view raw) {
    std::string_view line = raw;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    std::size_t lead = 0;
    while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
    if (lead == line.size()) return;
    std::string_view body = line.substr(lead);
    auto word_end = body.find_first_of(" \t");
    std::string word(body.substr(0, word_end));
    if (word == "ring") {
      if (spec_.ring) fail("duplicate ring header", lead);
      ring_header(body, lead);
      return;
    }
    if (!spec_.ring) fail("ring header must come first", lead);
    if (word == "ideal" || word == "matrix")
      definition(word == "ideal" ? DefKind::IDEAL : DefKind::MATRIX, line, lead + word.size());
    else
      command(line, lead);
  }

  void ring_header(std::string_view body, std::size_t col) {
    std::uint32_t p = kDefaultPrime;
    std::vector<std::string> vars;
    bool have_vars = false;
    std::size_t pos = 4;
    while (pos < body.size()) {
      while (pos < body.size() && std::isspace(static_cast<unsigned char>(body[pos]))) ++pos;
      if (pos == body.size()) break;
      if (body.substr(pos, 2) == "p=") {
        pos += 2;
        std::size_t s = pos;
        while (pos < body.size() && std::isdigit(static_cast<unsigned char>(body[pos]))) ++pos;
        if (s == pos || pos - s > 10) fail("bad prime", col + s);
        std::uint64_t v = std::stoull(std::string(body.substr(s, pos - s)));
        if (v >= (1ull << 31) || !is_prime(v)) fail("modulus " + std::string(body.substr(s, pos - s)) + " is not a prime below 2^31", col + s);
        p = static_cast<std::uint32_t>(v);
      } else if (body.substr(pos, 6) == "vars=[") {
        pos += 6;
        auto close = body.find(']', pos);
        if (close == std::string_view::npos) fail("missing ']'", col + pos);
        std::string_view list = body.substr(pos, close - pos);
        std::size_t s = 0;
        while (true) {
          auto comma = list.find(',', s);
          std::string name = trim(list.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s));
          if (!is_identifier(name)) fail("bad variable name '" + name + "'", col + pos + s);
          for (const auto& v : vars)
            if (v == name) fail("duplicate variable name '" + name + "'", col + pos + s);
          vars.push_back(name);
          if (comma == std::string_view::npos) break;
          s = comma + 1;
        }
        have_vars = true;
        pos = close + 1;
      } else {
        fail("expected p=<prime> or vars=[...]", col + pos);
      }
    }
    if (!have_vars) fail("ring header needs vars=[...]", col);
    if (prime_) p = *prime_;
    try {
      spec_.ring = make_ring(p, vars);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(e.what(), col);
    }
  }

  void definition(DefKind kind, std::string_view line, std::size_t pos) {
    auto eq = line.find('=', pos);
    if (eq == std::string_view::npos) fail("expected '='", pos);
    std::string name = trim(line.substr(pos, eq - pos));
    if (!is_identifier(name)) fail("bad name '" + name + "'", pos);
    if (spec_.find(name)) fail("duplicate definition of '" + name + "'", pos);
    for (const auto& v : spec_.ring->vars)
      if (v == name) fail("name '" + name + "' shadows a variable", pos);
    std::size_t p = eq + 1;
    Definition d;
    d.kind = kind;
    d.name = name;
    d.line = line_;
    if (kind == DefKind::IDEAL) {
      d.rows.push_back(poly_list(line, p));
      for (const auto& f : d.rows[0])
        if (f.is_zero()) fail("zero generator in ideal '" + name + "'", eq + 1);
    } else {
      skip(line, p);
      expect(line, p, '[');
      while (true) {
        skip(line, p);
        d.rows.push_back(poly_list(line, p));
        skip(line, p);
        if (p < line.size() && line[p] == ',') {
          ++p;
          continue;
        }
        break;
      }
      expect(line, p, ']');
      for (const auto& r : d.rows)
        if (r.size() != d.rows[0].size()) fail("matrix rows have different lengths", eq + 1);
      try {
        infer_twists(d);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        fail(e.what(), eq + 1);
      }
    }
    skip(line, p);
    if (p != line.size()) fail("trailing text", p);
    spec_.defs.push_back(std::move(d));
  }

  std::vector<Polynomial> poly_list(std::string_view line, std::size_t& p) {
    skip(line, p);
    expect(line, p, '[');
    std::vector<Polynomial> out;
    skip(line, p);
    if (p < line.size() && line[p] == ']') {
      ++p;
      return out;
    }
    while (true) {
      std::size_t s = p;
      while (p < line.size() && line[p] != ',' && line[p] != ']' && line[p] != '[') ++p;
      Polynomial f = parse_polynomial(spec_.ring, line.substr(s, p - s), line_, static_cast<int>(s));
      check_homogeneous(f, line.substr(s, p - s), s);
      out.push_back(std::move(f));
      if (p < line.size() && line[p] == ',') {
        ++p;
        continue;
      }
      break;
    }
    expect(line, p, ']');
    return out;
  }

  void check_homogeneous(const Polynomial& f, std::string_view text, std::size_t col) {
    if (f.is_homogeneous()) return;
    const Ring& R = *f.ring();
    const Term& a = f.terms().front();
    for (const auto& t : f.terms())
      if (t.mono.deg != a.mono.deg)
        fail("inhomogeneous generator '" + trim(text) + "': term " + monomial_to_string(R, t.mono) + " has degree " +
                 std::to_string(t.mono.deg) + ", term " + monomial_to_string(R, a.mono) + " has degree " +
                 std::to_string(a.mono.deg),
             col);
  }

  // row twists t_r and column degrees s_c with deg(a_rc) = s_c - t_r
  static void infer_twists(const Definition& d) {
    const std::size_t nr = d.rows.size(), nc = nr ? d.rows[0].size() : 0;
    std::vector<std::optional<int>> t(nr), s(nc);
    for (std::size_t r0 = 0; r0 < nr; ++r0) {
      if (t[r0]) continue;
      t[r0] = 0;
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t r = 0; r < nr; ++r)
          for (std::size_t c = 0; c < nc; ++c) {
            const auto& e = d.rows[r][c];
            if (e.is_zero()) continue;
            if (t[r] && !s[c]) {
              s[c] = e.degree() + *t[r];
              changed = true;
            } else if (s[c] && !t[r]) {
              t[r] = *s[c] - e.degree();
              changed = true;
            } else if (t[r] && s[c] && *s[c] - *t[r] != e.degree()) {
              throw Error("matrix is not graded at entry (" + std::to_string(r) + "," + std::to_string(c) + ")");
            }
          }
      }
    }
  }

  void command(std::string_view line, std::size_t col) {
    std::vector<std::pair<std::string, std::size_t>> toks;
    std::size_t p = col;
    while (p < line.size()) {
      while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
      if (p == line.size()) break;
      std::size_t s = p;
      while (p < line.size() && !std::isspace(static_cast<unsigned char>(line[p]))) ++p;
      toks.emplace_back(std::string(line.substr(s, p - s)), s);
    }
    Command c;
    c.line = line_;
    std::size_t i = 0;
    c.name = toks[i++].first;
    if (c.name == "verify") {
      if (i == toks.size()) fail("verify needs a subject", toks[0].second);
      c.name += " " + toks[i++].first;
    }
    const auto& shapes = command_shapes();
    auto it = shapes.find(c.name);
    if (it == shapes.end()) fail("unknown command '" + c.name + "'", toks[0].second);
    const CommandShape& shape = it->second;
    for (; i < toks.size(); ++i) {
      const auto& [tok, at] = toks[i];
      if (tok.rfind("--", 0) == 0) {
        std::string key = tok.substr(2);
        if (!shape.flags.count(key)) fail("unknown flag '" + tok + "' for " + c.name, at);
        if (c.option(key)) fail("repeated flag '" + tok + "'", at);
        if (i + 1 == toks.size()) fail("flag '" + tok + "' needs a value", at);
        const auto& [val, vat] = toks[++i];
        if (integer_flags().count(key)) {
          bool digits = !val.empty() && val.size() <= 18;
          for (char ch : val) digits = digits && std::isdigit(static_cast<unsigned char>(ch));
          if (!digits) fail("flag '" + tok + "' expects a nonnegative integer", vat);
        }
        if (shape.value_flags.count(key)) require_name(val, vat);
        if (key == "emit" && val != "minors" && val != "betti" && val != "matrices")
          fail("--emit expects minors, betti or matrices", vat);
        c.options.emplace_back(key, val);
      } else {
        require_name(tok, at);
        c.args.push_back(tok);
      }
    }
    int n = static_cast<int>(c.args.size());
    if (n < shape.min_args || n > shape.max_args)
      fail(c.name + " expects " + std::to_string(shape.min_args) +
               (shape.max_args != shape.min_args ? "-" + std::to_string(shape.max_args) : "") + " names",
           toks[0].second);
    for (const auto& a : c.args)
      if (spec_.find(a)->kind != DefKind::IDEAL) fail("'" + a + "' is not an ideal", toks[0].second);
    bool mod = c.option("module").has_value(), quo = c.option("quotient").has_value();
    if (shape.flags.count("module")) {
      if (mod == quo) fail(c.name + " needs exactly one of --module or --quotient", toks[0].second);
      if (quo && spec_.find(*c.option("quotient"))->kind != DefKind::IDEAL)
        fail("--quotient expects an ideal", toks[0].second);
    }
    if (c.option("n") && spec_.find(*c.option("n"))->kind != DefKind::IDEAL) fail("--n expects an ideal", toks[0].second);
    if (c.option("tor") && spec_.find(*c.option("tor"))->kind != DefKind::IDEAL)
      fail("--tor expects an ideal", toks[0].second);
    if (c.option("at").has_value() != c.option("column").has_value())
      fail("--at and --column go together", toks[0].second);
    spec_.commands.push_back(std::move(c));
  }

  void require_name(const std::string& name, std::size_t at) {
    if (!spec_.find(name)) fail("unknown name '" + name + "'", at);
  }

  static void skip(std::string_view line, std::size_t& p) {
    while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
  }
  void expect(std::string_view line, std::size_t& p, char ch) {
    skip(line, p);
    if (p >= line.size() || line[p] != ch) fail(std::string("expected '") + ch + "'", p);
    ++p;
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t col) {
    throw ParseError(msg, line_, static_cast<int>(col) + 1);
  }

  std::string_view text_;
  std::optional<std::uint32_t> prime_;
  SessionSpec spec_;
  int line_ = 0;
};

}  // namespace detail

/// Parses and validates a session; `prime` overrides the header modulus.
inline SessionSpec parse_session(std::string_view text, std::optional<std::uint32_t> prime = std::nullopt) {
  return detail::SessionParser(text, prime).parse();
}

inline std::string print_session(const SessionSpec& s) {
  std::ostringstream out;
  out << "ring p=" << s.ring->field.p << " vars=[";
  for (std::size_t i = 0; i < s.ring->vars.size(); ++i) out << (i ? "," : "") << s.ring->vars[i];
  out << "]\n";
  auto row = [&](const std::vector<Polynomial>& r) {
    out << "[";
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? ", " : "") << to_string(r[i]);
    out << "]";
  };
  for (const auto& d : s.defs) {
    if (d.kind == DefKind::IDEAL) {
      out << "ideal " << d.name << " = ";
      row(d.rows[0]);
    } else {
      out << "matrix " << d.name << " = [";
      for (std::size_t i = 0; i < d.rows.size(); ++i) {
        if (i) out << ", ";
        row(d.rows[i]);
      }
      out << "]";
    }
    out << "\n";
  }
  for (const auto& c : s.commands) out << c.text() << "\n";
  return out.str();
}

inline Ideal ideal_of(const SessionSpec& s, const std::string& name) {
  const Definition* d = s.find(name);
  if (!d || d->kind != DefKind::IDEAL) throw Error("'" + name + "' is not an ideal");
  return Ideal(s.ring, d->rows[0]);
}

inline GradedMatrix matrix_of(const SessionSpec& s, const std::string& name) {
  const Definition* d = s.find(name);
  if (!d) throw Error("unknown name '" + name + "'");
  const std::size_t nr = d->rows.size(), nc = nr ? d->rows[0].size() : 0;
  // row twists: lowest consistent choice, found by propagation from row 0
  std::vector<int> t(nr, 0);
  std::vector<bool> known(nr, false);
  for (std::size_t r0 = 0; r0 < nr; ++r0) {
    if (known[r0]) continue;
    known[r0] = true;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t c = 0; c < nc; ++c) {
        std::optional<int> sc;
        for (std::size_t r = 0; r < nr; ++r)
          if (known[r] && !d->rows[r][c].is_zero()) sc = d->rows[r][c].degree() + t[r];
        if (!sc) continue;
        for (std::size_t r = 0; r < nr; ++r)
          if (!known[r] && !d->rows[r][c].is_zero()) {
            t[r] = *sc - d->rows[r][c].degree();
            known[r] = true;
            changed = true;
          }
      }
    }
  }
  int lo = 0;
  for (std::size_t r = 0; r < nr; ++r) lo = std::min(lo, t[r]);
  for (auto& x : t) x -= lo;
  std::vector<std::vector<Polynomial>> cols(nc, std::vector<Polynomial>(nr, Polynomial(s.ring)));
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) cols[c][r] = d->rows[r][c];
  return GradedMatrix::from_columns(s.ring, GradedFreeModule(t), cols);
}

/// --module names an ideal (resolved as an ideal) or a matrix (its cokernel);
/// --quotient J gives R/J.
inline PresentedModule module_of(const SessionSpec& s, const Command& c) {
  if (auto q = c.option("quotient")) return PresentedModule::quotient(ideal_of(s, *q));
  auto m = c.option("module");
  if (!m) throw Error(c.name + " needs --module or --quotient");
  const Definition* d = s.find(*m);
  if (d->kind == DefKind::IDEAL) return PresentedModule::of_ideal(ideal_of(s, *m));
  return PresentedModule::cokernel(matrix_of(s, *m));
}

struct RunOptions {
  int steps = 8;
  int max_iter = 50;
  int window = kDefaultWindow;
  std::uint64_t seed = 1;
  std::optional<int> degree_bound;
};

struct RunResult {
  int exit_code = 0;
  Json document;
};

namespace detail {

inline int int_option(const Command& c, const std::string& key, int fallback) {
  auto v = c.option(key);
  return v ? static_cast<int>(std::stoll(*v)) : fallback;
}

inline Json chain_json(const BurchChain& ch) {
  Json j;
  Json steps = Json::array();
  for (const auto& s : ch.steps)
    steps.push_back({{"j", s.j},
                     {"bi", ideal_json(s.bi)},
                     {"annihilator", ideal_json(s.annihilator)},
                     {"burch", to_json(s.burch)}});
  j["steps"] = steps;
  j["first_zero"] = ch.first_zero ? Json(*ch.first_zero) : Json(nullptr);
  j["gb"] = to_json(ch.gb);
  j["bd"] = ch.bd;
  j["status"] = to_string(ch.status);
  j["depth_zero"] = ch.depth_zero;
  j["positive_depth_discrepancy"] = ch.positive_depth_discrepancy;
  return j;
}

inline Json matrix_json(const GradedMatrix& a) {
  Json rows = Json::array();
  for (int r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < a.cols(); ++c) row.push_back(to_string(a.at(r, c)));
    rows.push_back(row);
  }
  return rows;
}

inline Json resolution_json(const Resolution& res, const std::string& emit) {
  Json j;
  j["first_index"] = res.first();
  j["last_index"] = res.last();
  auto b = betti(res);
  j["ranks"] = b.ranks;
  j["twists"] = b.twists;
  if (auto t = res.terminated_at()) j["terminated_at"] = *t;
  else j["terminated_at"] = nullptr;
  if (emit == "minors") j["entry_ideals"] = ideals_mod_json(entry_ideals(res), res.ideal());
  if (emit == "matrices") {
    Json ms = Json::array();
    for (int k = res.first(); k <= res.last(); ++k) ms.push_back({{"step", k}, {"rows", matrix_json(res.A(k))}});
    j["matrices"] = ms;
  }
  return j;
}

/// First column (m, c) meeting the dual2 hypotheses for N, scanning at most
/// max_cols columns per matrix.
inline std::optional<std::pair<int, int>> dual2_column(const Ideal& I, const Resolution& res, const Ideal& N,
                                                       int max_cols = 64) {
  Ideal B = sum(bi_n(I, N), I);
  Ideal NI = sum(N, I);
  for (int m = res.first(); m <= res.last(); ++m) {
    const auto& A = res.A(m);
    for (int c = 0; c < A.cols() && c < max_cols; ++c) {
      if (column_is_zero(A, c)) continue;
      Ideal col = column_ideal(A, c, I);
      if (NI.contains(col) && !B.contains(col)) return std::make_pair(m, c);
    }
  }
  return std::nullopt;
}

inline Json run_command(const SessionSpec& s, const Command& c, const RunOptions& opt, std::vector<Report>& reports) {
  Json data = Json::object();
  const int steps = int_option(c, "steps", opt.steps);
  const int window = int_option(c, "window", opt.window);
  const int max_iter = int_option(c, "max-iter", opt.max_iter);
  auto arg = [&](std::size_t i) { return ideal_of(s, c.args[i]); };

  if (c.name == "burch-index") {
    Ideal I = arg(0);
    Length b = c.args.size() == 2 ? burch_n(I, arg(1)) : burch_index(I);
    data["burch"] = to_json(b);
    data["depth_zero"] = is_depth_zero(I);
  } else if (c.name == "burch-chain") {
    data = chain_json(bi_chain(arg(0), max_iter));
  } else if (c.name == "bi-n") {
    Ideal I = arg(0), N = arg(1);
    Ideal b = bi_n(I, N);
    data["bi_n"] = ideal_json(b);
    data["bi_n_mod_I"] = ideal_mod_json(b, I);
    data["burch_n"] = to_json(burch_n(I, N));
  } else if (c.name == "witnesses") {
    Ideal I = arg(0), N = arg(1);
    data["realization"] = polys_json(realization_witnesses(I, N).elements);
    data["realized"] = polys_json(realized_witnesses(I, N).elements);
    Json pairs = Json::array();
    for (const auto& p : realizing_pairs(I, N)) pairs.push_back({{"x_star", to_string(p.x_star)}, {"x", to_string(p.x)}});
    data["pairs"] = pairs;
  } else if (c.name == "resolve" || c.name == "minors") {
    Ideal I = arg(0);
    Resolution res = resolve(I, module_of(s, c), steps);
    std::string emit = c.name == "minors" ? "minors" : c.option("emit").value_or("betti");
    data = resolution_json(res, emit);
    if (emit == "minors") reports.push_back(periodicity_report(res, window));
    if (auto q = c.option("tor")) {
      int jm = res.last() - 1;
      auto dims = tor_dims(res, ideal_of(s, *q), jm,
                           c.option("degree-bound") ? std::optional<int>(int_option(c, "degree-bound", 0))
                                                    : opt.degree_bound);
      data["tor_dims"] = dims;
    }
  } else if (c.name == "verify big1") {
    reports.push_back(verify_big1(arg(0), module_of(s, c), steps, window, max_iter));
  } else if (c.name == "verify big2") {
    reports.push_back(verify_big2(arg(0), module_of(s, c), steps, window));
  } else if (c.name == "verify dualpos") {
    Ideal I = arg(0);
    reports.push_back(verify_dualpos(I, resolve(I, module_of(s, c), steps)));
  } else if (c.name == "verify dual2") {
    Ideal I = arg(0);
    Resolution res = resolve(I, module_of(s, c), steps);
    std::optional<std::pair<int, int>> at;
    Ideal N = Ideal::zero(s.ring);
    if (c.option("n")) {
      N = ideal_of(s, *c.option("n"));
      if (c.option("at")) at = std::make_pair(int_option(c, "at", 0), int_option(c, "column", 0));
      else at = dual2_column(I, res, N);
    } else if (auto t = find_column_trigger(I, res)) {
      N = t->N;
      at = std::make_pair(t->m, t->c);
    }
    if (at) {
      reports.push_back(verify_dual2(I, res, N, at->first, at->second));
    } else {
      Report r;
      r.subject = Subject::DUAL2;
      r.prefix_length = res.size();
      r.require("triggering column", false, "none in the prefix");
      reports.push_back(r);
    }
  } else if (c.name == "verify twist1") {
    reports.push_back(check_twist1_conditions(arg(0), arg(1), steps));
  } else if (c.name == "verify duality") {
    reports.push_back(duality_check(arg(0), arg(1)));
  } else if (c.name == "fuzz") {
    FuzzConfig cfg;
    cfg.seed = c.option("seed") ? std::stoull(*c.option("seed")) : opt.seed;
    cfg.count = int_option(c, "count", cfg.count);
    cfg.max_degree = int_option(c, "max-degree", cfg.max_degree);
    cfg.max_gens = int_option(c, "max-gens", cfg.max_gens);
    cfg.binomial_percent = int_option(c, "binomials", cfg.binomial_percent);
    cfg.steps = int_option(c, "steps", cfg.steps);
    if (cfg.max_gens < 1 || cfg.max_degree < 1) throw Error("fuzz bounds must be positive");
    FuzzSummary f = fuzz(s.ring, cfg);
    data = to_json(f);
    data["seed"] = cfg.seed;
    for (const auto& r : f.reports) reports.push_back(r);
  }
  return data;
}

}  // namespace detail

inline Json session_json(const SessionSpec& s) {
  Json j;
  j["prime"] = s.ring->field.p;
  j["vars"] = s.ring->vars;
  Json defs = Json::array();
  for (const auto& d : s.defs) {
    Json rows = Json::array();
    for (const auto& r : d.rows) rows.push_back(polys_json(r));
    defs.push_back({{"name", d.name}, {"kind", d.kind == DefKind::IDEAL ? "ideal" : "matrix"}, {"rows", rows}});
  }
  j["definitions"] = defs;
  Json cmds = Json::array();
  for (const auto& c : s.commands) cmds.push_back(c.text());
  j["commands"] = cmds;
  return j;
}

/// Runs every command in order. Exit code: 2 if any report is FALSIFIED,
/// else 3 if a resource cap was hit, else 1 on a command error, else 0.
inline RunResult run(const SessionSpec& s, const RunOptions& opt = {}) {
  RunResult out;
  out.document["schema_version"] = kSchemaVersion;
  out.document["session"] = session_json(s);
  Json results = Json::array();
  bool falsified = false, capped = false, failed = false;
  for (const auto& c : s.commands) {
    Json r;
    r["command"] = c.text();
    r["line"] = c.line;
    std::vector<Report> reports;
    try {
      r["status"] = "ok";
      r["data"] = detail::run_command(s, c, opt, reports);
    } catch (const ResourceCapError& e) {
      r["status"] = "resource_cap";
      r["error"] = e.what();
      capped = true;
    } catch (const Error& e) {
      r["status"] = "error";
      r["error"] = e.what();
      failed = true;
    }
    Json rs = Json::array();
    for (const auto& rep : reports) {
      falsified = falsified || rep.conclusion == Conclusion::FALSIFIED;
      rs.push_back(to_json(rep));
    }
    r["reports"] = rs;
    results.push_back(r);
  }
  out.document["results"] = results;
  out.exit_code = falsified ? 2 : capped ? 3 : failed ? 1 : 0;
  return out;
}

namespace detail {

// short arrays without objects print on one line
inline bool flat(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v)
    if (!(e.is_primitive() || flat(e))) return false;
  return v.dump().size() <= 100;
}

inline void render(std::ostream& os, const Json& j, const std::string& indent) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive() || flat(v)) {
        os << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        os << indent << k << ":\n";
        render(os, v, indent + "  ");
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive() || flat(v)) {
        os << indent << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      } else {
        os << indent << "-\n";
        render(os, v, indent + "  ");
      }
    }
  } else {
    os << indent << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace detail

/// Plain-text rendering of a run document; carries the same fields as the JSON.
inline std::string render_text(const Json& doc) {
  std::ostringstream os;
  os << "schema_version: " << doc["schema_version"].dump() << "\n";
  const Json& s = doc["session"];
  os << "ring: p=" << s["prime"].dump() << " vars=" << s["vars"].dump() << "\n";
  for (const auto& d : s["definitions"]) os << d["kind"].get<std::string>() << " " << d["name"].get<std::string>() << " = " << d["rows"].dump() << "\n";
  for (const auto& r : doc["results"]) {
    os << "\n== " << r["command"].get<std::string>() << " (line " << r["line"].dump() << ") ["
       << r["status"].get<std::string>() << "]\n";
    if (r.contains("error")) os << "  error: " << r["error"].get<std::string>() << "\n";
    if (r.contains("data")) detail::render(os, r["data"], "  ");
    for (const auto& rep : r["reports"]) {
      os << "  report " << rep["subject"].get<std::string>() << ": " << rep["conclusion"].get<std::string>() << "\n";
      Json rest = rep;
      rest.erase("subject");
      rest.erase("conclusion");
      detail::render(os, rest, "    ");
    }
  }
  return os.str();
}

}  // namespace burch
