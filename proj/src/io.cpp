#include "gradcat/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "gradcat/linalg.hpp"

#ifndef GRADCAT_CORPUS_DIR
#define GRADCAT_CORPUS_DIR "corpus"
#endif

namespace gradcat {

using nlohmann::json;

SpecError::SpecError(ExitStatus status, std::string path, const std::string& message)
    : Error((path.empty() ? std::string("<root>") : path) + ": " + message), status_(status), path_(std::move(path)) {}

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw SpecError(ExitStatus::SchemaError, path, msg);
}

std::string at(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

const json& require(const json& j, const std::string& path, const std::string& key) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(at(path, key), "missing required field");
  return *it;
}

const json* optional_field(const json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

void allow_only(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) schema(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return it.key() == k; }))
      schema(at(path, it.key()), "unknown field");
}

std::size_t as_count(const json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) schema(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get<std::string>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

FinSet label_set(const json& j, const std::string& path) {
  std::vector<Label> out;
  std::set<Label> seen;
  const auto& arr = as_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Label l = label_from_json(arr[i], at(path, i));
    if (!seen.insert(l).second) schema(at(path, i), "duplicate label " + l.to_string());
    out.push_back(std::move(l));
  }
  return FinSet(std::move(out));
}

std::size_t index_in(const FinSet& s, const json& j, const std::string& path) {
  Label l = label_from_json(j, path);
  auto idx = s.find(l);
  if (!idx) schema(path, "label " + l.to_string() + " is not in the carrier " + s.to_string());
  return *idx;
}

FlatTerm term_from_json(const json& j, const std::string& path, const FunctorPresentation& p) {
  allow_only(j, path, {"op", "args"});
  FlatTerm t;
  t.op = as_string(require(j, path, "op"), at(path, "op"));
  auto op = p.op_index(t.op);
  if (!op) schema(at(path, "op"), "undeclared operation symbol '" + t.op + "'");
  const auto& args = as_array(require(j, path, "args"), at(path, "args"));
  for (std::size_t i = 0; i < args.size(); ++i) t.args.push_back(as_count(args[i], at(at(path, "args"), i)));
  if (t.args.size() != p.ops[*op].arity)
    schema(at(path, "args"), "operation '" + t.op + "' has arity " + std::to_string(p.ops[*op].arity) + " but " +
                                 std::to_string(t.args.size()) + " arguments were given");
  return t;
}

FunctorPresentation presentation_from_json(const json& j, const std::string& path) {
  allow_only(j, path, {"name", "ops", "eqs"});
  FunctorPresentation p;
  p.name = as_string(require(j, path, "name"), at(path, "name"));
  const auto& ops = as_array(require(j, path, "ops"), at(path, "ops"));
  std::set<std::string> syms;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string op_path = at(at(path, "ops"), i);
    allow_only(ops[i], op_path, {"sym", "arity"});
    Operation op{as_string(require(ops[i], op_path, "sym"), at(op_path, "sym")),
                 as_count(require(ops[i], op_path, "arity"), at(op_path, "arity"))};
    if (op.sym.empty()) schema(at(op_path, "sym"), "empty operation symbol");
    if (!syms.insert(op.sym).second) schema(at(op_path, "sym"), "duplicate operation symbol '" + op.sym + "'");
    p.ops.push_back(op);
  }
  std::sort(p.ops.begin(), p.ops.end(), [](const Operation& a, const Operation& b) { return a.sym < b.sym; });
  if (const json* eqs = optional_field(j, "eqs")) {
    as_array(*eqs, at(path, "eqs"));
    for (std::size_t i = 0; i < eqs->size(); ++i) {
      const std::string eq_path = at(at(path, "eqs"), i);
      allow_only((*eqs)[i], eq_path, {"lhs", "rhs"});
      Equation e{term_from_json(require((*eqs)[i], eq_path, "lhs"), at(eq_path, "lhs"), p),
                 term_from_json(require((*eqs)[i], eq_path, "rhs"), at(eq_path, "rhs"), p)};
      p.eqs.push_back(std::move(e));
    }
  }
  p.validate();
  return p;
}

Monoid monoid_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "idempotent") return Monoid::idempotent();
    if (name.rfind("cyclic:", 0) == 0) {
      try {
        std::size_t used = 0;
        const auto n = std::stoul(name.substr(7), &used);
        if (used == name.size() - 7 && n >= 1) return Monoid::cyclic(n);
      } catch (const std::exception&) {
      }
    }
    throw SpecError(ExitStatus::UnknownBuiltin, path, "unknown built-in monoid '" + name + "'");
  }
  allow_only(j, path, {"elements", "unit", "table"});
  FinSet elems = label_set(require(j, path, "elements"), at(path, "elements"));
  std::size_t unit = index_in(elems, require(j, path, "unit"), at(path, "unit"));
  const auto& rows = as_array(require(j, path, "table"), at(path, "table"));
  std::vector<std::vector<std::size_t>> table;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto rp = at(at(path, "table"), r);
    std::vector<std::size_t> row;
    const auto& cells = as_array(rows[r], rp);
    for (std::size_t c = 0; c < cells.size(); ++c) row.push_back(index_in(elems, cells[c], at(rp, c)));
    table.push_back(std::move(row));
  }
  try {
    return Monoid::make(elems, unit, std::move(table));
  } catch (const ContractViolation& e) {
    schema(at(path, "table"), e.what());
  }
}

// Subobject given by carrier labels (Set, SetP, Pos) or spanning columns (Vec).
CatMorphism subobject_from_json(const CatObject& a, const json& j, const std::string& path) {
  switch (a.cat().kind()) {
    case CatKind::Set: {
      FinSet s = label_set(j, path);
      if (!is_subset(s, a.carrier())) schema(path, "not a subset of the carrier " + a.carrier().to_string());
      return CatMorphism::from_map(CatObject::set(s), a, FinMap::inclusion(s, a.carrier()));
    }
    case CatKind::SetP: {
      FinSet s = label_set(j, path);
      if (!is_subset(s, a.carrier())) schema(path, "not a subset of the carrier " + a.carrier().to_string());
      const Label& base = a.carrier()[a.base()];
      if (!s.contains(base)) schema(path, "a pointed subset must contain the base point " + base.to_string());
      return CatMorphism::from_map(CatObject::pointed(s, base), a, FinMap::inclusion(s, a.carrier()));
    }
    case CatKind::Pos: {
      FinSet s = label_set(j, path);
      if (!is_subset(s, a.carrier())) schema(path, "not a subset of the carrier " + a.carrier().to_string());
      std::vector<char> leq(s.size() * s.size());
      for (std::size_t x = 0; x < s.size(); ++x)
        for (std::size_t y = 0; y < s.size(); ++y)
          leq[x * s.size() + y] = a.order().le(a.carrier().index_of(s[x]), a.carrier().index_of(s[y]));
      return CatMorphism::from_map(CatObject::poset_from_matrix(s, std::move(leq)), a, FinMap::inclusion(s, a.carrier()));
    }
    case CatKind::Vec: {
      const int p = a.cat().prime();
      std::vector<std::vector<int>> cols;
      const auto& arr = as_array(j, path);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto cp = at(path, i);
        const auto& v = as_array(arr[i], cp);
        if (v.size() != a.dim()) schema(cp, "expected a vector of length " + std::to_string(a.dim()));
        std::vector<int> col;
        for (std::size_t k = 0; k < v.size(); ++k) {
          if (!v[k].is_number_integer()) schema(at(cp, k), "expected an integer");
          col.push_back(static_cast<int>(((v[k].get<std::int64_t>() % p) + p) % p));
        }
        cols.push_back(std::move(col));
      }
      Matrix m = Matrix::from_columns(a.dim(), cols, p);
      if (rank(m) != cols.size()) schema(path, "spanning vectors must be linearly independent");
      return CatMorphism::from_matrix(CatObject::vec(p, cols.size()), a, m);
    }
    default:
      schema(path, "squares are supported in set, pointed, pos and vec");
  }
}

template <class Fn>
auto with_contract(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const ContractViolation& e) {
    schema(path, e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------- labels

Label label_from_json(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Label(j.get<std::int64_t>());
  if (j.is_string()) return Label(j.get<std::string>());
  if (j.is_array()) {
    Label::Tuple t;
    for (std::size_t i = 0; i < j.size(); ++i) t.push_back(label_from_json(j[i], at(path, i)));
    return Label(std::move(t));
  }
  schema(path, "a label is an integer, a string, or an array of labels");
}

json label_to_json(const Label& l) {
  if (l.is_int()) return l.as_int();
  if (l.is_string()) return l.as_string();
  json arr = json::array();
  for (const auto& x : l.as_tuple()) arr.push_back(label_to_json(x));
  return arr;
}

// ---------------------------------------------------------------- payloads

std::string FunctorSpec::name() const { return presentation ? presentation->name : builtin; }

FunctorPtr FunctorSpec::instantiate(std::uint64_t guard) const {
  if (presentation) return std::make_shared<PresentedFunctor>(*presentation, guard);
  return make_builtin(builtin, guard);
}

FunctorSpec functor_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  FunctorSpec spec;
  if (const json* b = optional_field(j, "builtin")) {
    allow_only(j, path, {"builtin"});
    spec.builtin = as_string(*b, at(path, "builtin"));
    if (!is_builtin_name(spec.builtin))
      throw SpecError(ExitStatus::UnknownBuiltin, at(path, "builtin"), "unknown built-in functor '" + spec.builtin + "'");
    return spec;
  }
  spec.presentation = with_contract(path, [&] { return presentation_from_json(j, path); });
  return spec;
}

CatId category_from_json(const json& j, const std::string& path) {
  if (j.is_string()) return category_from_json(json{{"kind", j}}, path);
  allow_only(j, path, {"kind", "p", "monoid", "arities"});
  const auto kind = as_string(require(j, path, "kind"), at(path, "kind"));
  if (kind == "set") return CatId::set();
  if (kind == "pointed") return CatId::pointed();
  if (kind == "pos") return CatId::pos();
  if (kind == "bool") return CatId::boolean();
  if (kind == "vec") {
    int p = 2;
    if (const json* pj = optional_field(j, "p")) p = static_cast<int>(as_count(*pj, at(path, "p")));
    return with_contract(at(path, "p"), [&] { return CatId::vec(p); });
  }
  if (kind == "mset") return CatId::mset(monoid_from_json(require(j, path, "monoid"), at(path, "monoid")));
  if (kind == "omega-rel") {
    std::vector<int> ar;
    const auto& arr = as_array(require(j, path, "arities"), at(path, "arities"));
    for (std::size_t i = 0; i < arr.size(); ++i)
      ar.push_back(static_cast<int>(as_count(arr[i], at(at(path, "arities"), i))));
    return with_contract(at(path, "arities"), [&] { return CatId::omega_rel(ar); });
  }
  throw SpecError(ExitStatus::UnknownBuiltin, at(path, "kind"), "unknown category instance '" + kind + "'");
}

CatObject object_from_json(const json& j, const std::string& path) {
  allow_only(j, path, {"category", "carrier", "base", "order", "atoms", "dim", "action", "relations"});
  CatId cat = category_from_json(require(j, path, "category"), at(path, "category"));
  switch (cat.kind()) {
    case CatKind::Set:
      return CatObject::set(label_set(require(j, path, "carrier"), at(path, "carrier")));
    case CatKind::SetP: {
      FinSet c = label_set(require(j, path, "carrier"), at(path, "carrier"));
      const Label base = c[index_in(c, require(j, path, "base"), at(path, "base"))];
      return CatObject::pointed(c, base);
    }
    case CatKind::Pos: {
      FinSet c = label_set(require(j, path, "carrier"), at(path, "carrier"));
      std::vector<std::pair<Label, Label>> order;
      if (const json* o = optional_field(j, "order")) {
        as_array(*o, at(path, "order"));
        for (std::size_t i = 0; i < o->size(); ++i) {
          const auto pp = at(at(path, "order"), i);
          const auto& pair = as_array((*o)[i], pp);
          if (pair.size() != 2) schema(pp, "expected a pair [a, b] meaning a <= b");
          order.emplace_back(c[index_in(c, pair[0], at(pp, 0))], c[index_in(c, pair[1], at(pp, 1))]);
        }
      }
      return with_contract(at(path, "order"), [&] { return CatObject::poset(c, order); });
    }
    case CatKind::Bool:
      return CatObject::boolean(label_set(require(j, path, "atoms"), at(path, "atoms")));
    case CatKind::Vec:
      return CatObject::vec(cat.prime(), as_count(require(j, path, "dim"), at(path, "dim")));
    case CatKind::MSet: {
      FinSet c = label_set(require(j, path, "carrier"), at(path, "carrier"));
      const auto& rows = as_array(require(j, path, "action"), at(path, "action"));
      std::vector<std::vector<std::size_t>> act;
      for (std::size_t m = 0; m < rows.size(); ++m) {
        const auto rp = at(at(path, "action"), m);
        std::vector<std::size_t> row;
        const auto& cells = as_array(rows[m], rp);
        for (std::size_t x = 0; x < cells.size(); ++x) row.push_back(index_in(c, cells[x], at(rp, x)));
        act.push_back(std::move(row));
      }
      return with_contract(at(path, "action"), [&] { return CatObject::mset(cat, c, std::move(act)); });
    }
    case CatKind::OmegaRel: {
      FinSet c = label_set(require(j, path, "carrier"), at(path, "carrier"));
      std::vector<std::vector<std::vector<std::size_t>>> rels(cat.arities().size());
      if (const json* r = optional_field(j, "relations")) {
        const auto rpath = at(path, "relations");
        if (as_array(*r, rpath).size() != rels.size())
          schema(rpath, "expected one relation per symbol (" + std::to_string(rels.size()) + ")");
        for (std::size_t s = 0; s < rels.size(); ++s) {
          const auto sp = at(rpath, s);
          const auto& tuples = as_array((*r)[s], sp);
          for (std::size_t t = 0; t < tuples.size(); ++t) {
            const auto tp = at(sp, t);
            const auto& tup = as_array(tuples[t], tp);
            if (tup.size() != static_cast<std::size_t>(cat.arities()[s]))
              schema(tp, "tuple length differs from the arity " + std::to_string(cat.arities()[s]));
            std::vector<std::size_t> idx;
            for (std::size_t k = 0; k < tup.size(); ++k) idx.push_back(index_in(c, tup[k], at(tp, k)));
            rels[s].push_back(std::move(idx));
          }
        }
      }
      return with_contract(at(path, "relations"), [&] { return CatObject::relational(cat, c, std::move(rels)); });
    }
  }
  schema(path, "unsupported category");
}

namespace {

ChainSpec chain_from_json(const json& j, const std::string& path) {
  allow_only(j, path, {"builtin", "depth"});
  ChainSpec spec;
  const auto name = as_string(require(j, path, "builtin"), at(path, "builtin"));
  auto chain = builtin_chain_from_name(name);
  if (!chain) throw SpecError(ExitStatus::UnknownBuiltin, at(path, "builtin"), "unknown built-in chain '" + name + "'");
  spec.chain = *chain;
  if (const json* d = optional_field(j, "depth")) spec.depth = as_count(*d, at(path, "depth"));
  if (spec.depth < 1 || spec.depth > 61) schema(at(path, "depth"), "depth must lie in 1..61");
  return spec;
}

SquareSpec square_from_json(const json& j, const std::string& path) {
  allow_only(j, path, {"object", "left", "right", "functor", "hom", "max_apex"});
  CatObject a = object_from_json(require(j, path, "object"), at(path, "object"));
  auto m = subobject_from_json(a, require(j, path, "left"), at(path, "left"));
  auto mp = subobject_from_json(a, require(j, path, "right"), at(path, "right"));
  SquareSpec spec{intersection_square(m, mp), std::nullopt, std::nullopt, 3};
  if (const json* f = optional_field(j, "functor")) {
    if (a.cat().kind() != CatKind::Set) schema(at(path, "functor"), "engine functors apply to set squares only");
    spec.functor = functor_from_json(*f, at(path, "functor"));
  }
  if (const json* h = optional_field(j, "hom")) {
    spec.hom = object_from_json(*h, at(path, "hom"));
    if (!(spec.hom->cat() == a.cat())) schema(at(path, "hom"), "hom object must live in the square's category");
  }
  if (const json* ma = optional_field(j, "max_apex")) spec.max_apex = as_count(*ma, at(path, "max_apex"));
  return spec;
}

SuiteConfig suite_from_json(const json& j, const std::string& path) {
  allow_only(j, path, {"name", "size", "depth", "guard", "corpus", "jobs"});
  SuiteConfig c;
  if (const json* n = optional_field(j, "name")) c.name = as_string(*n, at(path, "name"));
  if (const json* s = optional_field(j, "size")) c.size = as_count(*s, at(path, "size"));
  if (const json* d = optional_field(j, "depth")) c.depth = as_count(*d, at(path, "depth"));
  if (const json* g = optional_field(j, "guard")) c.guard = as_count(*g, at(path, "guard"));
  if (const json* k = optional_field(j, "corpus")) c.corpus = as_string(*k, at(path, "corpus"));
  if (const json* t = optional_field(j, "jobs")) c.jobs = as_count(*t, at(path, "jobs"));
  return c;
}

}  // namespace

SpecFile parse_spec_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecError(ExitStatus::ParseError, "", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("", "a spec file is a JSON object");
  const json& v = require(doc, "", "version");
  if (!v.is_number_integer()) schema("version", "expected an integer");
  SpecFile spec;
  spec.version = v.get<int>();
  if (spec.version != kSpecVersion)
    throw SpecError(ExitStatus::UnknownVersion, "version",
                    "unsupported version " + std::to_string(spec.version) + " (supported: " +
                        std::to_string(kSpecVersion) + ")");
  std::vector<std::string> payloads;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "version") continue;
    static const std::set<std::string> known{"functor", "object", "chain", "square", "suite"};
    if (!known.count(it.key())) schema(it.key(), "unknown field");
    payloads.push_back(it.key());
  }
  if (payloads.size() != 1) schema("", "expected exactly one of functor, object, chain, square, suite");
  const auto& key = payloads.front();
  const json& body = doc[key];
  if (key == "functor") spec.payload = functor_from_json(body, key);
  else if (key == "object") spec.payload = ObjectSpec{object_from_json(body, key)};
  else if (key == "chain") spec.payload = chain_from_json(body, key);
  else if (key == "square") spec.payload = square_from_json(body, key);
  else spec.payload = suite_from_json(body, key);
  return spec;
}

SpecFile parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(ExitStatus::ParseError, "", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_text(ss.str());
}

// ---------------------------------------------------------------- writing and the corpus

json presentation_to_json(const FunctorPresentation& p) {
  json ops = json::array();
  for (const auto& op : p.ops) ops.push_back({{"sym", op.sym}, {"arity", op.arity}});
  auto term = [](const FlatTerm& t) { return json{{"op", t.op}, {"args", t.args}}; };
  json eqs = json::array();
  for (const auto& e : p.eqs) eqs.push_back({{"lhs", term(e.lhs)}, {"rhs", term(e.rhs)}});
  return {{"name", p.name}, {"ops", ops}, {"eqs", eqs}};
}

std::string presentation_document(const FunctorPresentation& p) {
  json doc{{"version", kSpecVersion}, {"functor", presentation_to_json(p)}};
  return doc.dump(2) + "\n";
}

FunctorPresentation random_presentation(std::uint32_t seed) {
  std::mt19937 rng(seed);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  FunctorPresentation p;
  char buf[32];
  std::snprintf(buf, sizeof buf, "random-%02u", seed);
  p.name = buf;
  // Arities skew towards 1 and 2; at least one symbol takes arguments.
  static const std::size_t arities[] = {0, 1, 1, 2, 2};
  const std::size_t n_ops = 1 + pick(3);
  bool positive = false;
  for (std::size_t i = 0; i < n_ops; ++i) {
    std::size_t ar = arities[pick(5)];
    if (i + 1 == n_ops && !positive && ar == 0) ar = 1 + pick(2);
    positive = positive || ar > 0;
    p.ops.push_back({std::string(1, static_cast<char>('a' + i)), ar});
  }
  const std::size_t n_eqs = 1 + pick(2);
  for (std::size_t e = 0; e < n_eqs; ++e) {
    const std::size_t vars = 1 + pick(3);
    auto term = [&] {
      const auto& op = p.ops[pick(p.ops.size())];
      FlatTerm t{op.sym, {}};
      for (std::size_t k = 0; k < op.arity; ++k) t.args.push_back(pick(vars));
      return t;
    };
    FlatTerm lhs = term(), rhs = term();
    for (int retry = 0; retry < 8 && lhs.op == rhs.op && lhs.args == rhs.args; ++retry) rhs = term();
    if (lhs.op == rhs.op && lhs.args == rhs.args) continue;
    p.eqs.push_back({std::move(lhs), std::move(rhs)});
  }
  p.validate();
  return p;
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw SpecError(ExitStatus::ParseError, "", "corpus directory '" + dir + "' not found");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& f : files) {
    SpecFile spec;
    try {
      spec = parse_spec_file(f);
    } catch (const SpecError& e) {
      throw SpecError(e.status(), e.path(), fs::path(f).filename().string() + ": " + e.what());
    }
    auto* fn = std::get_if<FunctorSpec>(&spec.payload);
    if (!fn) schema("", fs::path(f).filename().string() + " does not hold a functor");
    out.push_back({fs::path(f).filename().string(), *fn});
  }
  return out;
}

std::string default_corpus_dir() {
  if (const char* env = std::getenv("GRADCAT_CORPUS")) return env;
  return GRADCAT_CORPUS_DIR;
}

}  // namespace gradcat
