#include "gcred/model_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>

namespace gcred {

namespace {

struct SyntaxError {
  std::string message;
};

struct Line {
  std::size_t number = 0;
  std::string text;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool basis_atom(const std::string& id, char& kind, std::size_t& index) {
  if (id.size() < 2 || std::string("efal").find(id[0]) == std::string::npos) return false;
  for (std::size_t k = 1; k < id.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(id[k]))) return false;
  kind = id[0];
  index = std::stoul(id.substr(1));
  return true;
}

bool valid_name(const std::string& id) {
  if (id.empty() || !(std::isalpha(static_cast<unsigned char>(id[0])) || id[0] == '_')) return false;
  for (char c : id)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  char kind;
  std::size_t index;
  return !basis_atom(id, kind, index);
}

// One summand of a linear expression: coeff * atom, where the atom is a basis vector, a
// wedge of covectors, a named form, or nothing (a constant).
struct Term {
  Rational coeff;
  char kind = 'c';  // e, f, a, l, n (named form), c (constant)
  std::vector<std::size_t> indices;  // 1-based
  std::string name;
};

class Scanner {
 public:
  explicit Scanner(const std::string& s) : s_(s) {}

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::string number() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      std::size_t d = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (d == pos_) throw SyntaxError{"malformed fraction in '" + s_ + "'"};
    }
    return s_.substr(b, pos_ - b);
  }
  std::string identifier() {
    skip();
    std::size_t b = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(b, pos_ - b);
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
};

std::vector<Term> parse_terms(const std::string& text) {
  Scanner sc(text);
  std::vector<Term> out;
  if (sc.done()) throw SyntaxError{"empty expression"};
  bool first = true;
  while (!sc.done()) {
    int sign = 1;
    if (sc.accept('-')) {
      sign = -1;
    } else if (!sc.accept('+') && !first) {
      throw SyntaxError{"expected '+' or '-' in '" + text + "'"};
    }
    first = false;
    Term t;
    t.coeff = 1;
    bool has_coeff = false;
    if (std::isdigit(static_cast<unsigned char>(sc.peek()))) {
      std::string num = sc.number();
      try {
        t.coeff = parse_rational(num);
      } catch (const std::exception&) {
        throw SyntaxError{"bad number '" + num + "'"};
      }
      has_coeff = true;
      sc.accept('*');
    }
    if (sign < 0) t.coeff = -t.coeff;
    char c = sc.peek();
    if (c == '\0' || c == '+' || c == '-') {
      if (!has_coeff) throw SyntaxError{"dangling sign in '" + text + "'"};
      out.push_back(t);
      continue;
    }
    std::string id = sc.identifier();
    if (id.empty()) throw SyntaxError{std::string("unexpected character '") + c + "' in '" + text + "'"};
    char kind;
    std::size_t index;
    if (basis_atom(id, kind, index)) {
      if (index == 0) throw SyntaxError{"basis indices start at 1: '" + id + "'"};
      t.kind = kind;
      t.indices.push_back(index);
      while (kind == 'f' && sc.accept('^')) {
        std::string next = sc.identifier();
        char k2;
        std::size_t i2;
        if (!basis_atom(next, k2, i2) || k2 != 'f' || i2 == 0) {
          throw SyntaxError{"expected a covector f<i> after '^' in '" + text + "'"};
        }
        t.indices.push_back(i2);
      }
      if (kind != 'f' && sc.peek() == '^') throw SyntaxError{"wedge products take covectors f<i> only"};
    } else {
      t.kind = 'n';
      t.name = id;
    }
    out.push_back(t);
  }
  return out;
}

void check_index(const Term& t, std::size_t n, char kind) {
  for (auto i : t.indices)
    if (i > n) throw SyntaxError{std::string(1, kind) + std::to_string(i) + " exceeds dimension " + std::to_string(n)};
}

Vec<Rational> to_vector(const std::vector<Term>& terms, char kind, std::size_t n) {
  Vec<Rational> v(n, Rational(0));
  for (const auto& t : terms) {
    if (t.kind == 'c' && is_zero(t.coeff)) continue;
    if (t.kind != kind) throw SyntaxError{std::string("expected a combination of ") + kind + "<i>"};
    check_index(t, n, kind);
    v[t.indices[0] - 1] += t.coeff;
  }
  return v;
}

using FormTable = Named<Form<Rational>>;

const Form<Rational>* lookup(const FormTable& table, const std::string& name) {
  for (const auto& [k, f] : table)
    if (k == name) return &f;
  return nullptr;
}

Form<Rational> to_form(const std::vector<Term>& terms, std::size_t n, int degree, const FormTable& table) {
  std::optional<Form<Rational>> acc;
  auto add = [&](const Form<Rational>& f) {
    if (degree >= 0 && f.degree() != degree) {
      throw SyntaxError{"expected a " + std::to_string(degree) + "-form, got degree " + std::to_string(f.degree())};
    }
    if (acc && acc->degree() != f.degree()) throw SyntaxError{"mixed degrees in form expression"};
    if (acc) {
      *acc += f;
    } else {
      acc = f;
    }
  };
  for (const auto& t : terms) {
    if (t.kind == 'c') {
      if (!is_zero(t.coeff)) throw SyntaxError{"constant terms are not allowed in forms"};
      continue;
    }
    if (t.kind == 'n') {
      const auto* f = lookup(table, t.name);
      if (!f) throw SyntaxError{"unresolved name '" + t.name + "'"};
      add(t.coeff * *f);
      continue;
    }
    if (t.kind != 'f') throw SyntaxError{"forms are built from covectors f<i>"};
    check_index(t, n, 'f');
    std::vector<std::size_t> idx;
    for (auto i : t.indices) idx.push_back(i - 1);
    std::set<std::size_t> uniq(idx.begin(), idx.end());
    if (uniq.size() != idx.size()) continue;
    add(Form<Rational>::monomial(n, idx, t.coeff));
  }
  if (!acc) {
    if (degree < 0) throw SyntaxError{"cannot infer the degree of a zero form"};
    return Form<Rational>(n, degree);
  }
  return *acc;
}

Section<Rational> to_section(const std::vector<Term>& terms, std::size_t n) {
  auto s = Section<Rational>::zero(n);
  for (const auto& t : terms) {
    if (t.kind == 'c' && is_zero(t.coeff)) continue;
    if ((t.kind != 'e' && t.kind != 'f') || t.indices.size() != 1) {
      throw SyntaxError{"sections are combinations of e<i> and f<i>"};
    }
    check_index(t, n, t.kind);
    (t.kind == 'e' ? s.x : s.xi)[t.indices[0] - 1] += t.coeff;
  }
  return s;
}

struct Maplet {
  char kind;
  std::size_t index;  // 1-based
  std::string image;
};

// "e1 -> e2, e2 -> -e1"
std::vector<Maplet> parse_maplets(const std::string& text) {
  std::vector<Maplet> out;
  for (const auto& part : split(text, ',')) {
    auto arrow = part.find("->");
    if (arrow == std::string::npos) throw SyntaxError{"expected 'v -> image' in '" + part + "'"};
    std::string key = trim(part.substr(0, arrow));
    char kind;
    std::size_t index;
    if (!basis_atom(key, kind, index) || index == 0) throw SyntaxError{"expected a basis vector before '->', got '" + key + "'"};
    out.push_back({kind, index, trim(part.substr(arrow + 2))});
  }
  return out;
}

struct Assignment {
  std::string lhs;
  std::string rhs;
};

std::optional<Assignment> assignment(const std::string& text) {
  auto eq = text.find('=');
  if (eq == std::string::npos) return std::nullopt;
  return Assignment{trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
}

Rational parse_number(const std::string& text) {
  std::string t = trim(text);
  static const std::regex re(R"(^[+-]?\d+(/\d+)?$)");
  if (!std::regex_match(t, re)) throw SyntaxError{"expected a rational number, got '" + t + "'"};
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  return parse_rational(t);
}

std::size_t parse_count(const std::string& text) {
  std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw SyntaxError{"expected a non-negative integer, got '" + t + "'"};
  }
  return std::stoul(t);
}

Matrix<Rational> metric_value(const std::string& text, std::size_t dim) {
  std::string t = trim(text);
  if (t == "identity") return Matrix<Rational>::identity(dim);
  if (t.rfind("diag(", 0) == 0 && t.back() == ')') {
    auto parts = split(t.substr(5, t.size() - 6), ',');
    if (parts.size() != dim) throw SyntaxError{"diag needs " + std::to_string(dim) + " entries"};
    Matrix<Rational> g(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) g(k, k) = parse_number(parts[k]);
    return g;
  }
  throw SyntaxError{"expected 'identity' or 'diag(...)'"};
}

const std::vector<std::string> kSections = {"algebra",    "forms",     "courant",  "metric",
                                            "complex",    "generalized", "courant_algebra", "action",
                                            "connection", "structures", "expect"};

const std::set<std::string> kExpectationKeys = {
    "axioms",        "action",       "isotropic",      "free",         "exactness",  "reduce",
    "reduce_error",  "reduced_dim",  "reduced_brackets", "reduced_twist", "metric_reduce",
    "reduced_g",     "curvature",    "skt",            "skt_criterion", "reduce_skt", "hkt_criteria",
    "reduce_hkt",    "gk",           "reduce_gk"};

class Parser {
 public:
  explicit Parser(std::string name) { file_.name = std::move(name); }

  ModelFile run(const std::string& text) {
    split_sections(text);
    if (!issues_.empty()) throw ParseError(issues_);
    if (!sections_.count("algebra")) {
      issues_.push_back({0, "missing algebra section"});
      throw ParseError(issues_);
    }
    if (!algebra()) throw ParseError(issues_);
    forms();
    if (!issues_.empty()) throw ParseError(issues_);
    if (!courant()) throw ParseError(issues_);
    metric();
    complex();
    generalized();
    if (!issues_.empty()) throw ParseError(issues_);
    action();
    if (!issues_.empty()) throw ParseError(issues_);
    connection();
    structures();
    expect();
    if (!issues_.empty()) throw ParseError(issues_);
    return std::move(file_);
  }

 private:
  ModelFile file_;
  std::map<std::string, std::vector<Line>> sections_;
  std::map<std::string, std::size_t> header_line_;
  std::vector<ParseIssue> issues_;

  void issue(std::size_t line, const std::string& msg) { issues_.push_back({line, msg}); }

  std::size_t n() const { return file_.algebra.dim(); }

  void split_sections(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    std::string current;
    while (std::getline(in, raw)) {
      ++number;
      auto hash = raw.find('#');
      std::string t = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
      if (t.empty()) continue;
      if (t.front() == '[' && t.back() == ']' && t.find('=') == std::string::npos) {
        current = trim(t.substr(1, t.size() - 2));
        if (std::find(kSections.begin(), kSections.end(), current) == kSections.end()) {
          issue(number, "unknown section [" + current + "]");
        } else if (header_line_.count(current)) {
          issue(number, "duplicate section [" + current + "]");
        } else {
          header_line_[current] = number;
          sections_[current];
        }
        continue;
      }
      if (current.empty()) {
        issue(number, "content before the first section header");
        continue;
      }
      sections_[current].push_back({number, t});
    }
  }

  const std::vector<Line>& lines(const std::string& section) {
    static const std::vector<Line> none;
    auto it = sections_.find(section);
    return it == sections_.end() ? none : it->second;
  }

  template <class Fn>
  void guarded(const Line& l, Fn fn) {
    try {
      fn();
    } catch (const SyntaxError& e) {
      issue(l.number, e.message);
    } catch (const GcredError& e) {
      issue(l.number, e.what());
    } catch (const std::invalid_argument& e) {
      issue(l.number, e.what());
    }
  }

  bool algebra() {
    const auto& ls = lines("algebra");
    if (ls.empty() || words(ls.front().text).size() != 2 || words(ls.front().text)[0] != "dim") {
      issue(ls.empty() ? header_line_["algebra"] : ls.front().number, "algebra section must start with 'dim <n>'");
      return false;
    }
    std::size_t dim = 0;
    guarded(ls.front(), [&] { dim = parse_count(words(ls.front().text)[1]); });
    if (!issues_.empty()) return false;
    if (dim == 0 || dim > kMaxFormDim) {
      issue(ls.front().number, "dimension must be between 1 and " + std::to_string(kMaxFormDim));
      return false;
    }
    static const std::regex re(R"(^(?:bracket\s+)?\[\s*e(\d+)\s*,\s*e(\d+)\s*\]\s*=\s*(.+)$)");
    std::vector<BracketRelation> rels;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 1; k < ls.size(); ++k) {
      const auto& l = ls[k];
      guarded(l, [&] {
        std::smatch m;
        if (!std::regex_match(l.text, m, re)) throw SyntaxError{"expected 'bracket [ei,ej] = <vector>'"};
        std::size_t i = std::stoul(m[1]), j = std::stoul(m[2]);
        if (i == 0 || j == 0 || i > dim || j > dim) throw SyntaxError{"bracket index out of range"};
        if (i == j) throw SyntaxError{"[e" + std::to_string(i) + ",e" + std::to_string(i) + "] is zero by antisymmetry"};
        auto key = std::minmax(i, j);
        if (!seen.insert(key).second) throw SyntaxError{"bracket [e" + std::to_string(key.first) + ",e" + std::to_string(key.second) + "] given twice"};
        auto v = to_vector(parse_terms(m[3]), 'e', dim);
        rels.push_back({i - 1, j - 1, v});
      });
    }
    if (!issues_.empty()) return false;
    file_.algebra = LieAlgebra(dim, rels);
    auto violations = check_jacobi(file_.algebra);
    if (!violations.empty()) {
      const auto& v = violations.front();
      issue(header_line_["algebra"], "algebra violates Jacobi at (e" + std::to_string(v.i + 1) + ", e" +
                                         std::to_string(v.j + 1) + ", e" + std::to_string(v.k + 1) +
                                         "): jacobiator " + render_vector(v.jacobiator, 'e'));
      return false;
    }
    return true;
  }

  void forms() {
    for (const auto& l : lines("forms")) {
      guarded(l, [&] {
        auto a = assignment(l.text);
        if (!a) throw SyntaxError{"expected '<name> = <form>'"};
        if (!valid_name(a->lhs)) throw SyntaxError{"invalid form name '" + a->lhs + "'"};
        if (lookup(file_.forms, a->lhs)) throw SyntaxError{"form '" + a->lhs + "' defined twice"};
        file_.forms.emplace_back(a->lhs, to_form(parse_terms(a->rhs), n(), -1, file_.forms));
      });
    }
  }

  bool courant() {
    Form<Rational> h(n(), 3);
    std::string label = "H";
    std::size_t where = header_line_.count("courant") ? header_line_["courant"] : header_line_["algebra"];
    bool seen = false;
    for (const auto& l : lines("courant")) {
      guarded(l, [&] {
        auto a = assignment(l.text);
        if (!a || a->lhs != "twist") throw SyntaxError{"expected 'twist = <3-form>'"};
        if (seen) throw SyntaxError{"twist given twice"};
        seen = true;
        auto terms = parse_terms(a->rhs);
        h = to_form(terms, n(), 3, file_.forms);
        if (terms.size() == 1 && terms[0].kind == 'n') label = terms[0].name;
        where = l.number;
      });
    }
    if (!issues_.empty()) return false;
    auto dh = file_.algebra.d(h);
    if (!dh.is_zero_form()) {
      issue(where, "twist " + label + " = " + to_string(h) + " is not closed: dH = " + to_string(dh));
      return false;
    }
    file_.model = CourantModel(file_.algebra, h);
    return true;
  }

  void metric() {
    if (!sections_.count("metric")) return;
    Matrix<Rational> g = Matrix<Rational>::identity(n());
    Form<Rational> b(n(), 2);
    static const std::regex entry(R"(^g\s*\(\s*e(\d+)\s*,\s*e(\d+)\s*\)$)");
    std::size_t where = header_line_["metric"];
    for (const auto& l : lines("metric")) {
      guarded(l, [&] {
        auto a = assignment(l.text);
        if (!a) throw SyntaxError{"expected 'g = ...', 'g(ei,ej) = ...' or 'b = <2-form>'"};
        std::smatch m;
        if (a->lhs == "b") {
          b = to_form(parse_terms(a->rhs), n(), 2, file_.forms);
        } else if (a->lhs == "g") {
          g = metric_value(a->rhs, n());
        } else if (std::regex_match(a->lhs, m, entry)) {
          std::size_t i = std::stoul(m[1]), j = std::stoul(m[2]);
          if (i == 0 || j == 0 || i > n() || j > n()) throw SyntaxError{"metric index out of range"};
          Rational v = parse_number(a->rhs);
          g(i - 1, j - 1) = v;
          g(j - 1, i - 1) = v;
        } else {
          throw SyntaxError{"unknown metric entry '" + a->lhs + "'"};
        }
      });
    }
    if (!issues_.empty()) return;
    try {
      file_.metric = GeneralizedMetric::from_gb(g, b);
    } catch (const GcredError& e) {
      issue(where, e.what());
    }
  }

  void complex() {
    for (const auto& l : lines("complex")) {
      guarded(l, [&] {
        auto a = assignment(l.text);
        if (!a || !valid_name(a->lhs)) throw SyntaxError{"expected '<name> = e1 -> ..., e2 -> ...'"};
        if (named_operator(a->lhs)) throw SyntaxError{"operator '" + a->lhs + "' defined twice"};
        Matrix<Rational> op(n(), n());
        std::vector<bool> given(n(), false);
        for (const auto& mp : parse_maplets(a->rhs)) {
          if (mp.kind != 'e' || mp.index > n()) throw SyntaxError{"complex structures map e1..e" + std::to_string(n())};
          if (given[mp.index - 1]) throw SyntaxError{"image of e" + std::to_string(mp.index) + " given twice"};
          given[mp.index - 1] = true;
          auto v = to_vector(parse_terms(mp.image), 'e', n());
          for (std::size_t r = 0; r < n(); ++r) op(r, mp.index - 1) = v[r];
        }
        for (std::size_t k = 0; k < n(); ++k)
          if (!given[k]) throw SyntaxError{a->lhs + ": no image for e" + std::to_string(k + 1)};
        require_complex_structure(file_.algebra, op, a->lhs);
        file_.complex.emplace_back(a->lhs, op);
      });
    }
  }

  void generalized() {
    const std::size_t m = 2 * n();
    for (const auto& l : lines("generalized")) {
      guarded(l, [&] {
        auto a = assignment(l.text);
        if (!a || !valid_name(a->lhs)) throw SyntaxError{"expected '<name> = e1 -> ..., f1 -> ...'"};
        if (named_operator(a->lhs)) throw SyntaxError{"operator '" + a->lhs + "' defined twice"};
        Matrix<Rational> op(m, m);
        std::vector<bool> given(m, false);
        for (const auto& mp : parse_maplets(a->rhs)) {
          if ((mp.kind != 'e' && mp.kind != 'f') || mp.index > n()) throw SyntaxError{"bad basis section '" + std::string(1, mp.kind) + std::to_string(mp.index) + "'"};
          std::size_t col = (mp.kind == 'e' ? 0 : n()) + mp.index - 1;
          if (given[col]) throw SyntaxError{"image of " + basis_label(n(), col) + " given twice"};
          given[col] = true;
          auto v = to_section(parse_terms(mp.image), n()).coordinates();
          for (std::size_t r = 0; r < m; ++r) op(r, col) = v[r];
        }
        for (std::size_t k = 0; k < m; ++k)
          if (!given[k]) throw SyntaxError{a->lhs + ": no image for " + basis_label(n(), k)};
        if (op * op != -Matrix<Rational>::identity(m)) throw GcredError(a->lhs + " does not square to -1");
        file_.generalized.emplace_back(a->lhs, op);
      });
    }
  }

  bool named_operator(const std::string& name) const {
    return file_.find_complex(name) || file_.find_generalized(name);
  }

  void action() {
    bool has_ca = sections_.count("courant_algebra") > 0;
    if (!sections_.count("action")) {
      if (has_ca) issue(header_line_["courant_algebra"], "courant_algebra section without an action section");
      return;
    }
    std::map<std::size_t, std::pair<std::size_t, Section<Rational>>> a_images;
    std::map<std::size_t, std::pair<std::size_t, Vec<Rational>>> l_images;
    for (const auto& l : lines("action")) {
      guarded(l, [&] {
        auto a = assignment(l.text);
        char kind;
        std::size_t index;
        if (!a || !basis_atom(a->lhs, kind, index) || (kind != 'a' && kind != 'l') || index == 0) {
          throw SyntaxError{"expected 'a<i> = <section>' or 'l<i> = <1-form>'"};
        }
        auto terms = parse_terms(a->rhs);
        if (kind == 'a') {
          if (a_images.count(index)) throw SyntaxError{a->lhs + " assigned twice"};
          a_images[index] = {l.number, to_section(terms, n())};
        } else {
          if (l_images.count(index)) throw SyntaxError{a->lhs + " assigned twice"};
          l_images[index] = {l.number, to_vector(terms, 'f', n())};
        }
      });
    }
    if (!issues_.empty()) return;
    std::size_t k = a_images.size(), h = l_images.size();
    CourantAlgebra ca;
    std::size_t where = header_line_["action"];
    if (has_ca) {
      auto parsed = courant_algebra();
      if (!parsed) return;
      ca = *parsed;
      where = header_line_["courant_algebra"];
    } else {
      ca = CourantAlgebra::trivial(LieAlgebra::abelian(k), h);
    }
    std::vector<Section<Rational>> g_images;
    std::vector<Vec<Rational>> h_forms;
    for (std::size_t i = 1; i <= ca.g_dim(); ++i) {
      if (!a_images.count(i)) {
        issue(header_line_["action"], "no image for a" + std::to_string(i));
        return;
      }
      g_images.push_back(a_images[i].second);
    }
    for (std::size_t i = 1; i <= ca.h_dim(); ++i) {
      if (!l_images.count(i)) {
        issue(header_line_["action"], "no image for l" + std::to_string(i));
        return;
      }
      h_forms.push_back(l_images[i].second);
    }
    if (a_images.size() != ca.g_dim()) issue(a_images.rbegin()->second.first, "more a-images than the dimension of g");
    if (l_images.size() != ca.h_dim()) issue(l_images.rbegin()->second.first, "more l-images than the dimension of h");
    if (!issues_.empty()) return;
    try {
      file_.action = ExtendedAction(file_.model, ca, g_images, h_forms);
    } catch (const GcredError& e) {
      issue(where, e.what());
    }
  }

  std::optional<CourantAlgebra> courant_algebra() {
    static const std::regex br(R"(^bracket\s+\[\s*a(\d+)\s*,\s*a(\d+)\s*\]\s*=\s*(.+)$)");
    static const std::regex act(R"(^act\s+a(\d+)\s*:\s*(.+)$)");
    std::optional<std::size_t> g_dim, h_dim;
    std::vector<BracketRelation> rels;
    std::vector<std::pair<std::size_t, std::string>> acts;
    std::vector<std::size_t> act_lines;
    for (const auto& l : lines("courant_algebra")) {
      guarded(l, [&] {
        auto w = words(l.text);
        std::smatch m;
        if (w.size() == 2 && w[0] == "g_dim") {
          g_dim = parse_count(w[1]);
        } else if (w.size() == 2 && w[0] == "h_dim") {
          h_dim = parse_count(w[1]);
        } else if (std::regex_match(l.text, m, br)) {
          if (!g_dim) throw SyntaxError{"g_dim must precede brackets"};
          std::size_t i = std::stoul(m[1]), j = std::stoul(m[2]);
          if (i == 0 || j == 0 || i > *g_dim || j > *g_dim || i == j) throw SyntaxError{"bad bracket indices"};
          auto terms = parse_terms(m[3]);
          Vec<Rational> v(*g_dim, Rational(0));
          for (const auto& t : terms) {
            if (t.kind == 'c' && is_zero(t.coeff)) continue;
            if (t.kind != 'a') throw SyntaxError{"brackets of g are combinations of a<i>"};
            check_index(t, *g_dim, 'a');
            v[t.indices[0] - 1] += t.coeff;
          }
          rels.push_back({i - 1, j - 1, v});
        } else if (std::regex_match(l.text, m, act)) {
          acts.emplace_back(std::stoul(m[1]), m[2]);
          act_lines.push_back(l.number);
        } else {
          throw SyntaxError{"expected 'g_dim', 'h_dim', 'bracket [ai,aj] = ...' or 'act ai: l1 -> ...'"};
        }
      });
    }
    std::size_t where = header_line_["courant_algebra"];
    if (!g_dim || !h_dim) issue(where, "courant_algebra needs g_dim and h_dim");
    if (!issues_.empty()) return std::nullopt;
    LieAlgebra g(*g_dim, rels);
    auto violations = check_jacobi(g);
    if (!violations.empty()) {
      issue(where, "g violates Jacobi");
      return std::nullopt;
    }
    std::vector<Matrix<Rational>> module(*g_dim, Matrix<Rational>(*h_dim, *h_dim));
    for (std::size_t k = 0; k < acts.size(); ++k) {
      Line l{act_lines[k], acts[k].second};
      guarded(l, [&] {
        std::size_t a = acts[k].first;
        if (a == 0 || a > *g_dim) throw SyntaxError{"a" + std::to_string(a) + " is not in g"};
        for (const auto& mp : parse_maplets(acts[k].second)) {
          if (mp.kind != 'l' || mp.index > *h_dim) throw SyntaxError{"the module action maps l1..l" + std::to_string(*h_dim)};
          Vec<Rational> v(*h_dim, Rational(0));
          for (const auto& t : parse_terms(mp.image)) {
            if (t.kind == 'c' && is_zero(t.coeff)) continue;
            if (t.kind != 'l') throw SyntaxError{"module images are combinations of l<i>"};
            check_index(t, *h_dim, 'l');
            v[t.indices[0] - 1] += t.coeff;
          }
          for (std::size_t r = 0; r < *h_dim; ++r) module[a - 1](r, mp.index - 1) = v[r];
        }
      });
    }
    if (!issues_.empty()) return std::nullopt;
    try {
      return CourantAlgebra(g, *h_dim, module);
    } catch (const GcredError& e) {
      issue(where, e.what());
      return std::nullopt;
    }
  }

  void connection() {
    if (!sections_.count("connection")) return;
    if (!file_.action) {
      issue(header_line_["connection"], "connection section without an action section");
      return;
    }
    const std::size_t k = file_.action->algebra().g_dim();
    std::map<std::size_t, Vec<Rational>> theta;
    static const std::regex re(R"(^theta(\d+)$)");
    for (const auto& l : lines("connection")) {
      guarded(l, [&] {
        auto a = assignment(l.text);
        std::smatch m;
        if (!a || !std::regex_match(a->lhs, m, re)) throw SyntaxError{"expected 'theta<i> = <1-form>'"};
        std::size_t i = std::stoul(m[1]);
        if (i == 0 || i > k) throw SyntaxError{"theta" + std::to_string(i) + " does not match a generator"};
        if (theta.count(i)) throw SyntaxError{"theta" + std::to_string(i) + " given twice"};
        theta[i] = to_vector(parse_terms(a->rhs), 'f', n());
      });
    }
    if (!issues_.empty()) return;
    if (theta.size() != k) {
      issue(header_line_["connection"], "connection needs theta1..theta" + std::to_string(k));
      return;
    }
    std::vector<Vec<Rational>> out;
    for (auto& [i, v] : theta) out.push_back(v);
    file_.connection = out;
  }

  void structures() {
    for (const auto& l : lines("structures")) {
      guarded(l, [&] {
        auto w = words(l.text);
        if (w.empty()) return;
        StructureDecl d;
        d.line = l.number;
        if (w[0] == "skt") {
          if (w.size() < 2 || w.size() > 3 || (w.size() == 3 && w[2] != "plus" && w[2] != "minus")) {
            throw SyntaxError{"expected 'skt <I> [plus|minus]'"};
          }
          d.kind = StructureKind::skt;
          d.operators = {w[1]};
          if (w.size() == 3 && w[2] == "minus") d.side = Side::minus;
          require_complex(w[1]);
        } else if (w[0] == "hkt") {
          if (w.size() != 4) throw SyntaxError{"expected 'hkt <I> <J> <K>'"};
          d.kind = StructureKind::hkt;
          d.operators = {w[1], w[2], w[3]};
          for (std::size_t k = 1; k < 4; ++k) require_complex(w[k]);
        } else if (w[0] == "gk") {
          if (w.size() != 3) throw SyntaxError{"expected 'gk <I+> <I-> ' or 'gk <J1> <J2>'"};
          d.kind = StructureKind::gk;
          d.operators = {w[1], w[2]};
          bool bihermitian = file_.find_complex(w[1]) && file_.find_complex(w[2]);
          bool generalized = file_.find_generalized(w[1]) && file_.find_generalized(w[2]);
          if (!bihermitian && !generalized) {
            for (std::size_t k = 1; k < 3; ++k)
              if (!named_operator(w[k])) throw SyntaxError{"unresolved name '" + w[k] + "'"};
            throw SyntaxError{"gk takes two complex structures or two generalized structures"};
          }
          if (bihermitian && !file_.metric) throw SyntaxError{"gk with complex structures requires a [metric] section"};
        } else {
          throw SyntaxError{"unknown structure '" + w[0] + "'"};
        }
        file_.structures.push_back(d);
      });
    }
  }

  void require_complex(const std::string& name) {
    if (!file_.find_complex(name)) throw SyntaxError{"unresolved name '" + name + "'"};
    if (!file_.metric) throw SyntaxError{"structure declarations require a [metric] section"};
  }

  void expect() {
    for (const auto& l : lines("expect")) {
      guarded(l, [&] {
        auto a = assignment(l.text);
        if (!a) throw SyntaxError{"expected '<key> = <value>'"};
        if (!kExpectationKeys.count(a->lhs)) throw SyntaxError{"unknown expectation '" + a->lhs + "'"};
        if (file_.expectation(a->lhs)) throw SyntaxError{"expectation '" + a->lhs + "' given twice"};
        file_.expectations.push_back({a->lhs, a->rhs, l.number});
      });
    }
  }
};

std::string join_issues(const std::vector<ParseIssue>& issues) {
  std::string out;
  for (const auto& i : issues) {
    if (!out.empty()) out += "\n";
    out += i.line == 0 ? i.message : "line " + std::to_string(i.line) + ": " + i.message;
  }
  return out;
}

}  // namespace

ParseError::ParseError(std::vector<ParseIssue> issues) : GcredError(join_issues(issues)), issues_(std::move(issues)) {}

const Matrix<Rational>* ModelFile::find_complex(const std::string& name) const {
  for (const auto& [k, m] : complex)
    if (k == name) return &m;
  return nullptr;
}

const Matrix<Rational>* ModelFile::find_generalized(const std::string& name) const {
  for (const auto& [k, m] : generalized)
    if (k == name) return &m;
  return nullptr;
}

const Matrix<Rational>& ModelFile::complex_structure(const std::string& name) const {
  const auto* m = find_complex(name);
  if (!m) throw GcredError("no complex structure named '" + name + "'");
  return *m;
}

const Expectation* ModelFile::expectation(const std::string& key) const {
  for (const auto& e : expectations)
    if (e.key == key) return &e;
  return nullptr;
}

Form<Rational> parse_form(const std::string& text, std::size_t dim, int degree) {
  try {
    return to_form(parse_terms(text), dim, degree, {});
  } catch (const SyntaxError& e) {
    throw GcredError(e.message);
  }
}

Matrix<Rational> parse_metric_matrix(const std::string& text, std::size_t dim) {
  try {
    return metric_value(text, dim);
  } catch (const SyntaxError& e) {
    throw GcredError(e.message);
  }
}

ModelFile parse_model(const std::string& text, const std::string& name) { return Parser(name).run(text); }

ModelFile parse_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError({{0, "cannot read " + path}});
  std::stringstream ss;
  ss << in.rdbuf();
  auto slash = path.find_last_of('/');
  return parse_model(ss.str(), slash == std::string::npos ? path : path.substr(slash + 1));
}

std::string render_vector(const Vec<Rational>& v, char label) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (is_zero(v[k])) continue;
    bool negative = sgn(v[k]) < 0;
    Rational mag = negative ? Rational(-v[k]) : v[k];
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (mag != 1) out += to_string(mag) + " ";
    out += label + std::to_string(k + 1);
  }
  return out.empty() ? "0" : out;
}

std::string emit_model(const CourantModel& model, const EmitOptions& options) {
  const std::size_t n = model.dim();
  std::ostringstream out;
  if (!options.comment.empty()) out << "# " << options.comment << "\n";
  out << "[algebra]\ndim " << n << "\n";
  for (const auto& r : model.algebra().relations()) {
    out << "bracket [e" << r.i + 1 << ",e" << r.j + 1 << "] = " << render_vector(r.value, 'e') << "\n";
  }
  out << "\n[courant]\ntwist = " << to_string(model.twist()) << "\n";
  if (options.metric) {
    const auto& g = options.metric->g();
    out << "\n[metric]\n";
    if (g == Matrix<Rational>::identity(n)) {
      out << "g = identity\n";
    } else {
      out << "g = diag(";
      for (std::size_t k = 0; k < n; ++k) out << (k ? ", " : "") << to_string(g(k, k));
      out << ")\n";
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (!is_zero(g(i, j))) out << "g(e" << i + 1 << ",e" << j + 1 << ") = " << to_string(g(i, j)) << "\n";
    }
    if (!options.metric->b().is_zero_form()) out << "b = " << to_string(options.metric->b()) << "\n";
  }
  if (!options.complex.empty()) {
    out << "\n[complex]\n";
    for (const auto& [name, op] : options.complex) {
      out << name << " =";
      for (std::size_t c = 0; c < n; ++c) out << (c ? ", " : " ") << "e" << c + 1 << " -> " << render_vector(op.column(c), 'e');
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace gcred
