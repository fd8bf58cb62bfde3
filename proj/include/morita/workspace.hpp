#pragma once

// Workspace files: one JSON document naming a field, algebras, modules,
// bimodules, ideals, contexts, gradings and catalogs. Every object is
// validated while loading; errors carry the JSON path of the offending
// field.
//
//   {"field": {"kind": "gf", "p": 2},
//    "algebras": {"T2": {"builtin": "upper_triangular", "n": 2}},
//    "modules": {"S2": {"algebra": "T2", "dim": 1, "action": [[[0]], [[0]], [[1]]]}},
//    "contexts": {"t2corner": {"corner": {"algebra": "T2", "idempotent": [0, 0, 1]}}}}
//
// Scalars are integers or strings "a" / "a/b". A corner or identity context
// named c registers its second algebra as "c.S".

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "morita/graded.hpp"

namespace morita {

using json = nlohmann::json;

template <class F>
struct ContextEntry {
  MoritaContext<F> context;
  std::string r_name, s_name;
  std::optional<Vec<F>> idempotent;  // set for corner and identity contexts
  std::string m_name, n_name;        // set for explicit contexts
};

struct GradingEntry {
  FiniteGroup group;
  std::map<std::string, std::vector<std::size_t>> degrees;
};

struct CatalogEntry {
  std::string algebra;
  std::vector<std::string> modules;
};

template <class F>
struct Workspace {
  F field;
  std::map<std::string, AlgebraRef<F>> algebras;
  std::map<std::string, LeftModule<F>> modules;
  std::map<std::string, Bimodule<F>> bimodules;
  std::map<std::string, Ideal<F>> ideals;
  std::map<std::string, ContextEntry<F>> contexts;
  std::map<std::string, GradingEntry> gradings;
  std::map<std::string, CatalogEntry> catalogs;

  std::string algebra_name(const AlgebraRef<F>& a) const {
    for (const auto& [name, b] : algebras)
      if (same_algebra(a, b)) return name;
    return "?";
  }
};

using AnyWorkspace = std::variant<Workspace<PrimeField>, Workspace<RationalField>>;

namespace detail {

[[noreturn]] inline void fail_at(const std::string& path, const std::string& what) {
  throw invalid_input(path + ": " + what);
}

inline const json& member(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object() || !j.contains(key)) fail_at(path, "missing field \"" + key + "\"");
  return j.at(key);
}

inline std::size_t count_at(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail_at(path, "expected a non-negative integer");
  return j.template get<std::size_t>();
}

inline std::string name_at(const json& j, const std::string& path) {
  if (!j.is_string()) fail_at(path, "expected a name");
  return j.template get<std::string>();
}

template <class F>
typename F::value_type scalar_at(const F& field, const json& j, const std::string& path) {
  try {
    if (j.is_number_integer()) return field.from_int(j.get<long long>());
    if (j.is_string()) return field.parse(j.template get<std::string>());
  } catch (const invalid_input& e) {
    fail_at(path, e.what());
  }
  fail_at(path, "expected an integer or a string \"a/b\"");
}

template <class F>
Vec<F> vector_at(const F& field, const json& j, std::size_t n, const std::string& path) {
  if (!j.is_array() || j.size() != n) fail_at(path, "expected a vector of length " + std::to_string(n));
  Vec<F> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(scalar_at(field, j[i], path + "/" + std::to_string(i)));
  return v;
}

template <class F>
Matrix<F> matrix_at(const F& field, const json& j, std::size_t rows, std::size_t cols, const std::string& path) {
  if (!j.is_array() || j.size() != rows) fail_at(path, "expected " + std::to_string(rows) + " rows");
  Matrix<F> m(field, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) m.set_row(r, vector_at(field, j[r], cols, path + "/" + std::to_string(r)));
  return m;
}

template <class F>
std::vector<Matrix<F>> matrices_at(const F& field, const json& j, std::size_t count, std::size_t dim,
                                   const std::string& path) {
  if (!j.is_array() || j.size() != count) fail_at(path, "expected " + std::to_string(count) + " matrices");
  std::vector<Matrix<F>> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(matrix_at(field, j[i], dim, dim, path + "/" + std::to_string(i)));
  return out;
}

inline void require_valid(const ValidationReport& r, const std::string& path) {
  if (!r.ok()) fail_at(path, r.failures.front());
}

template <class T>
const T& lookup(const std::map<std::string, T>& table, const std::string& name, const char* kind,
                const std::string& path) {
  auto it = table.find(name);
  if (it == table.end()) fail_at(path, std::string("unknown ") + kind + " \"" + name + "\"");
  return it->second;
}

template <class F>
AlgebraRef<F> parse_algebra(const F& field, const json& j, const std::string& path) {
  if (j.contains("builtin")) {
    std::string kind = name_at(j["builtin"], path + "/builtin");
    std::size_t n = j.contains("n") ? count_at(j["n"], path + "/n") : 1;
    if (kind == "ground") return std::make_shared<const Algebra<F>>(ground_algebra(field));
    if (kind == "matrix") return std::make_shared<const Algebra<F>>(matrix_algebra(field, n));
    if (kind == "upper_triangular") return std::make_shared<const Algebra<F>>(upper_triangular_algebra(field, n));
    fail_at(path + "/builtin", "unknown builtin \"" + kind + "\"");
  }
  std::size_t dim = count_at(member(j, "dim", path), path + "/dim");
  const json& mul = member(j, "mul", path);
  if (!mul.is_array() || mul.size() != dim) fail_at(path + "/mul", "expected " + std::to_string(dim) + " rows");
  std::vector<std::vector<Vec<F>>> table(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    std::string p = path + "/mul/" + std::to_string(a);
    if (!mul[a].is_array() || mul[a].size() != dim) fail_at(p, "expected " + std::to_string(dim) + " products");
    for (std::size_t b = 0; b < dim; ++b) table[a].push_back(vector_at(field, mul[a][b], dim, p + "/" + std::to_string(b)));
  }
  Vec<F> unit = vector_at(field, member(j, "unit", path), dim, path + "/unit");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array() || j["labels"].size() != dim) fail_at(path + "/labels", "expected one label per basis vector");
    for (std::size_t a = 0; a < dim; ++a) labels.push_back(name_at(j["labels"][a], path + "/labels/" + std::to_string(a)));
  }
  auto out = std::make_shared<const Algebra<F>>(field, std::move(table), std::move(unit), std::move(labels));
  require_valid(validate_algebra(*out), path);
  return out;
}

}  // namespace detail

template <class F>
Workspace<F> parse_workspace_as(const F& field, const json& doc) {
  using namespace detail;
  Workspace<F> ws{field, {}, {}, {}, {}, {}, {}, {}};
  auto section = [&](const char* key) -> const json& {
    static const json empty = json::object();
    if (!doc.contains(key)) return empty;
    if (!doc[key].is_object()) fail_at(std::string("/") + key, "expected an object of named entries");
    return doc[key];
  };
  auto algebra_ref = [&](const json& j, const std::string& path) {
    return lookup(ws.algebras, name_at(j, path), "algebra", path);
  };

  for (const auto& [name, j] : section("algebras").items())
    ws.algebras[name] = parse_algebra(field, j, "/algebras/" + name);

  // corner and identity contexts first: they register algebras c.S
  for (const auto& [name, j] : section("contexts").items()) {
    std::string path = "/contexts/" + name;
    if (j.contains("identity")) {
      AlgebraRef<F> r = algebra_ref(j["identity"], path + "/identity");
      ContextEntry<F> entry{identity_context(r), j["identity"].template get<std::string>(), j["identity"].template get<std::string>(),
                            r->unit(), "", ""};
      ws.contexts.emplace(name, std::move(entry));
    } else if (j.contains("corner")) {
      const json& c = j["corner"];
      AlgebraRef<F> r = algebra_ref(member(c, "algebra", path + "/corner"), path + "/corner/algebra");
      Vec<F> e = vector_at(field, member(c, "idempotent", path + "/corner"), r->dim(), path + "/corner/idempotent");
      if (!is_idempotent(*r, e)) fail_at(path + "/corner/idempotent", "not an idempotent");
      MoritaContext<F> ctx = corner_context(r, e);
      ws.algebras[name + ".S"] = ctx.s;
      ContextEntry<F> entry{std::move(ctx), c["algebra"].template get<std::string>(), name + ".S", e, "", ""};
      ws.contexts.emplace(name, std::move(entry));
    }
  }

  for (const auto& [name, j] : section("bimodules").items()) {
    std::string path = "/bimodules/" + name;
    AlgebraRef<F> l = algebra_ref(member(j, "algebra", path), path + "/algebra");
    AlgebraRef<F> r = algebra_ref(member(j, "right_algebra", path), path + "/right_algebra");
    std::size_t dim = count_at(member(j, "dim", path), path + "/dim");
    Bimodule<F> b{l, r, dim, matrices_at(field, member(j, "action", path), l->dim(), dim, path + "/action"),
                  matrices_at(field, member(j, "right_action", path), r->dim(), dim, path + "/right_action")};
    require_valid(validate_module(b), path);
    ws.bimodules.emplace(name, std::move(b));
  }

  for (const auto& [name, j] : section("contexts").items()) {
    if (j.contains("identity") || j.contains("corner")) continue;
    std::string path = "/contexts/" + name;
    std::string rn = name_at(member(j, "R", path), path + "/R"), sn = name_at(member(j, "S", path), path + "/S");
    std::string mn = name_at(member(j, "M", path), path + "/M"), nn = name_at(member(j, "N", path), path + "/N");
    AlgebraRef<F> r = lookup(ws.algebras, rn, "algebra", path + "/R");
    AlgebraRef<F> s = lookup(ws.algebras, sn, "algebra", path + "/S");
    const Bimodule<F>& m = lookup(ws.bimodules, mn, "bimodule", path + "/M");
    const Bimodule<F>& n = lookup(ws.bimodules, nn, "bimodule", path + "/N");
    Matrix<F> phi = matrix_at(field, member(j, "phi", path), r->dim(), m.dim * n.dim, path + "/phi");
    Matrix<F> psi = matrix_at(field, member(j, "psi", path), s->dim(), n.dim * m.dim, path + "/psi");
    MoritaContext<F> ctx = [&] {
      try {
        return make_context(r, s, m, n, phi, psi);
      } catch (const invalid_input& e) {
        fail_at(path, e.what());
      }
    }();
    require_valid(validate_context(ctx), path);
    ws.contexts.emplace(name, ContextEntry<F>{std::move(ctx), rn, sn, std::nullopt, mn, nn});
  }

  for (const auto& [name, j] : section("modules").items()) {
    std::string path = "/modules/" + name;
    if (j.contains("regular")) {
      ws.modules.emplace(name, regular_left(algebra_ref(j["regular"], path + "/regular")));
      continue;
    }
    AlgebraRef<F> a = algebra_ref(member(j, "algebra", path), path + "/algebra");
    std::size_t dim = count_at(member(j, "dim", path), path + "/dim");
    LeftModule<F> m{a, dim, matrices_at(field, member(j, "action", path), a->dim(), dim, path + "/action")};
    require_valid(validate_module(m), path);
    ws.modules.emplace(name, std::move(m));
  }

  for (const auto& [name, j] : section("ideals").items()) {
    std::string path = "/ideals/" + name;
    AlgebraRef<F> a = algebra_ref(member(j, "algebra", path), path + "/algebra");
    if (j.contains("generators")) {
      const json& g = j["generators"];
      if (!g.is_array()) fail_at(path + "/generators", "expected a list of vectors");
      std::vector<Vec<F>> gens;
      for (std::size_t i = 0; i < g.size(); ++i)
        gens.push_back(vector_at(field, g[i], a->dim(), path + "/generators/" + std::to_string(i)));
      ws.ideals.emplace(name, two_sided_ideal_closure(a, gens));
      continue;
    }
    const json& b = member(j, "basis", path);
    if (!b.is_array()) fail_at(path + "/basis", "expected a list of vectors");
    std::vector<Vec<F>> vs;
    for (std::size_t i = 0; i < b.size(); ++i) vs.push_back(vector_at(field, b[i], a->dim(), path + "/basis/" + std::to_string(i)));
    Ideal<F> ideal{a, Basis<F>::span(field, a->dim(), vs)};
    if (!is_two_sided_stable(*a, ideal.basis)) fail_at(path + "/basis", "span is not a two-sided ideal");
    ws.ideals.emplace(name, std::move(ideal));
  }

  for (const auto& [name, j] : section("gradings").items()) {
    std::string path = "/gradings/" + name;
    const json& g = member(j, "group", path);
    std::optional<FiniteGroup> group;
    try {
      if (g.contains("cyclic")) {
        group = cyclic_group(count_at(g["cyclic"], path + "/group/cyclic"));
      } else {
        const json& t = member(g, "table", path + "/group");
        if (!t.is_array()) fail_at(path + "/group/table", "expected rows");
        std::vector<std::vector<std::size_t>> table;
        for (std::size_t r = 0; r < t.size(); ++r) {
          if (!t[r].is_array()) fail_at(path + "/group/table/" + std::to_string(r), "expected a row");
          std::vector<std::size_t> row;
          for (std::size_t c = 0; c < t[r].size(); ++c)
            row.push_back(count_at(t[r][c], path + "/group/table/" + std::to_string(r) + "/" + std::to_string(c)));
          table.push_back(std::move(row));
        }
        group = FiniteGroup(std::move(table));
      }
    } catch (const invalid_input& e) {
      if (std::string(e.what()).rfind("/", 0) == 0) throw;
      fail_at(path + "/group", e.what());
    }
    GradingEntry entry{*group, {}};
    const json& d = member(j, "degrees", path);
    if (!d.is_object()) fail_at(path + "/degrees", "expected degrees per object name");
    for (const auto& [obj, degs] : d.items()) {
      std::string p = path + "/degrees/" + obj;
      if (!degs.is_array()) fail_at(p, "expected a list of group elements");
      std::vector<std::size_t> list;
      for (std::size_t i = 0; i < degs.size(); ++i) list.push_back(count_at(degs[i], p + "/" + std::to_string(i)));
      entry.degrees[obj] = std::move(list);
    }
    // every graded object must respect the grading of its algebra
    try {
      for (const auto& [obj, degs] : entry.degrees) {
        std::string p = path + "/degrees/" + obj;
        if (auto it = ws.algebras.find(obj); it != ws.algebras.end()) {
          require_valid(validate_graded(GradedAlgebra<F>{it->second, entry.group, degs}), p);
        } else if (auto mt = ws.modules.find(obj); mt != ws.modules.end()) {
          std::string an = ws.algebra_name(mt->second.algebra);
          auto at = entry.degrees.find(an);
          if (at == entry.degrees.end()) fail_at(p, "the algebra \"" + an + "\" has no degrees in this grading");
          require_valid(validate_graded(GradedAlgebra<F>{mt->second.algebra, entry.group, at->second},
                                        GradedModule<F>{mt->second, degs}),
                        p);
        } else if (!ws.bimodules.count(obj)) {
          fail_at(p, "unknown object \"" + obj + "\"");
        }
      }
    } catch (const invalid_input& e) {
      if (std::string(e.what()).rfind("/", 0) == 0) throw;
      fail_at(path, e.what());
    }
    ws.gradings.emplace(name, std::move(entry));
  }

  for (const auto& [name, j] : section("catalogs").items()) {
    std::string path = "/catalogs/" + name;
    std::string an = name_at(member(j, "algebra", path), path + "/algebra");
    AlgebraRef<F> a = lookup(ws.algebras, an, "algebra", path + "/algebra");
    CatalogEntry entry{an, {}};
    const json& ms = member(j, "modules", path);
    if (!ms.is_array()) fail_at(path + "/modules", "expected a list of module names");
    for (std::size_t i = 0; i < ms.size(); ++i) {
      std::string p = path + "/modules/" + std::to_string(i);
      std::string mn = name_at(ms[i], p);
      if (!same_algebra(lookup(ws.modules, mn, "module", p).algebra, a)) fail_at(p, "module is over another algebra");
      entry.modules.push_back(mn);
    }
    ws.catalogs.emplace(name, std::move(entry));
  }
  return ws;
}

inline AnyWorkspace parse_workspace_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw invalid_input(std::string("parse error: ") + e.what());
  }
  const json& f = detail::member(doc, "field", "");
  std::string kind = detail::name_at(detail::member(f, "kind", "/field"), "/field/kind");
  if (kind == "gf") {
    std::size_t p = detail::count_at(detail::member(f, "p", "/field"), "/field/p");
    std::optional<PrimeField> field;
    try {
      field.emplace(p);
    } catch (const invalid_input& e) {
      detail::fail_at("/field/p", e.what());
    }
    return parse_workspace_as(*field, doc);
  }
  if (kind == "rationals") return parse_workspace_as(RationalField{}, doc);
  detail::fail_at("/field/kind", "expected \"gf\" or \"rationals\"");
}

inline AnyWorkspace parse_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open workspace \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_workspace_text(buffer.str());
}

}  // namespace morita
