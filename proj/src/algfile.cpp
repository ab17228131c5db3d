#include "rk/algfile.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace rk {

namespace {

std::string strip_comment(const std::string& line) {
  size_t pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

ParseResult fail(int line, std::string msg) {
  ParseResult r;
  r.error = ParseError{line, std::move(msg)};
  return r;
}

}  // namespace

std::optional<Vec> parse_vector_expr(const LieAlgebra& g, const std::string& expr) {
  std::string s;
  for (char c : expr)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) return std::nullopt;

  Vec v(g.dim(), Scalar(0));
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      if (s[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= s.size()) return std::nullopt;

    Scalar coeff(1);
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/'))
        ++j;
      auto c = parse_scalar(s.substr(i, j - i));
      if (!c) return std::nullopt;
      coeff = *c;
      if (j >= s.size() || s[j] != '*') return std::nullopt;
      i = j + 1;
    }

    size_t j = i;
    while (j < s.size() && s[j] != '+' && s[j] != '-') ++j;
    std::string name = s.substr(i, j - i);
    int idx = g.basis_index(name);
    if (idx < 0) return std::nullopt;
    v[idx] += coeff * sign;
    i = j;
  }
  return v;
}

std::optional<std::vector<Vec>> parse_vector_list(const LieAlgebra& g,
                                                  const std::string& exprs) {
  std::vector<Vec> out;
  std::string cur;
  std::istringstream is(exprs);
  while (std::getline(is, cur, ',')) {
    auto v = parse_vector_expr(g, cur);
    if (!v) return std::nullopt;
    out.push_back(std::move(*v));
  }
  if (out.empty()) return std::nullopt;
  return out;
}

std::string format_vector(const LieAlgebra& g, const Vec& v) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < g.dim(); ++i) {
    if (v[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (v[i] != 1) os << to_string(v[i]) << "*";
    os << g.basis_names()[i];
  }
  if (first) os << "0";
  return os.str();
}

ParseResult parse_algebra(const std::string& text) {
  std::istringstream is(text);
  std::string raw;
  int lineno = 0;

  std::optional<std::string> name;
  std::optional<int> dim;
  std::vector<std::string> basis;
  std::optional<LieAlgebra> g;
  std::map<std::pair<int, int>, int> seen_pairs;  // pair -> line

  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;

    if (kw == "name") {
      if (name) return fail(lineno, "duplicate name line");
      std::string rest = trim(line.substr(4));
      if (rest.empty()) return fail(lineno, "empty name");
      name = rest;
    } else if (kw == "dim") {
      if (dim) return fail(lineno, "duplicate dim line");
      int d;
      if (!(ls >> d) || d < 0) return fail(lineno, "bad dimension");
      std::string extra;
      if (ls >> extra) return fail(lineno, "trailing tokens after dim");
      dim = d;
    } else if (kw == "basis") {
      if (!name || !dim) return fail(lineno, "basis before name/dim");
      if (!basis.empty()) return fail(lineno, "duplicate basis line");
      basis = split_ws(trim(line.substr(5)));
      if (static_cast<int>(basis.size()) != *dim)
        return fail(lineno, "basis size does not match dim");
      for (const auto& b : basis)
        if (!valid_name(b)) return fail(lineno, "invalid basis name '" + b + "'");
      try {
        g.emplace(*name, basis);
      } catch (const std::exception& e) {
        return fail(lineno, e.what());
      }
    } else if (kw == "bracket") {
      if (!g) return fail(lineno, "bracket before basis");
      std::string bi, bj, eq;
      if (!(ls >> bi >> bj >> eq) || eq != "=")
        return fail(lineno, "expected 'bracket <bi> <bj> = <expr>'");
      int i = g->basis_index(bi), j = g->basis_index(bj);
      if (i < 0) return fail(lineno, "unknown basis name '" + bi + "'");
      if (j < 0) return fail(lineno, "unknown basis name '" + bj + "'");
      if (i >= j) return fail(lineno, "bracket pair must be in basis order");
      if (seen_pairs.count({i, j}))
        return fail(lineno, "duplicate bracket line for this pair");
      seen_pairs[{i, j}] = lineno;
      std::string expr;
      std::getline(ls, expr);
      auto v = parse_vector_expr(*g, expr);
      if (!v) return fail(lineno, "bad bracket expression");
      g->set_bracket(i, j, std::move(*v));
    } else {
      return fail(lineno, "unknown directive '" + kw + "'");
    }
  }

  if (!g) return fail(lineno, "missing name/dim/basis header");
  ValidationReport rep = g->validate();
  if (!rep.ok) {
    const auto& v = *rep.violation;
    return fail(0, "Jacobi identity fails on (" + basis[v.i] + ", " + basis[v.j] +
                       ", " + basis[v.k] + "); residual " + format_vector(*g, v.residual));
  }
  ParseResult r;
  r.algebra = std::move(g);
  return r;
}

ParseResult parse_algebra_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) return fail(0, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_algebra(ss.str());
}

std::string serialize_algebra(const LieAlgebra& g) {
  std::ostringstream os;
  os << "name " << g.name() << "\n";
  os << "dim " << g.dim() << "\n";
  os << "basis";
  for (const auto& b : g.basis_names()) os << " " << b;
  os << "\n";
  for (int i = 0; i < g.dim(); ++i)
    for (int j = i + 1; j < g.dim(); ++j) {
      Vec v = g.bracket_basis(i, j);
      if (is_zero_vec(v)) continue;
      os << "bracket " << g.basis_names()[i] << " " << g.basis_names()[j]
         << " = " << format_vector(g, v) << "\n";
    }
  return os.str();
}

std::string canonical_payload(const std::string& text) {
  std::istringstream is(text);
  std::ostringstream os;
  std::string raw;
  while (std::getline(is, raw)) {
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    os << line << "\n";
  }
  return os.str();
}

}  // namespace rk
