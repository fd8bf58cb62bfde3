#pragma once

// Command dispatch over a workspace. run() never throws: input errors map
// to exit code 2, failed verdicts to 1. The machine report is a single JSON
// document whose bytes depend only on the command, the flags and the
// workspace.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morita/workspace.hpp"

namespace morita {

struct Flags {
  std::string workspace;
  std::vector<std::string> contexts;
  std::vector<std::string> modules;
  std::string ideal;
  std::string algebra;
  std::string grading;
  std::size_t max_dim = 3;
  std::uint64_t budget = default_enumeration_budget;
  std::uint64_t seed = 0;
  bool strict_sampling = false;
};

struct RunResult {
  int exit_code = 0;
  std::string human;
  std::string machine;
};

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> list{"validate", "trace",   "strict", "torsion",      "localize",
                                             "closed",   "equiv",   "equiv-strict", "equiv-proj", "compose",
                                             "iso",      "graded-equiv", "catalog"};
  return list;
}

namespace detail {

class usage_error : public invalid_input {
 public:
  using invalid_input::invalid_input;
};

inline nlohmann::ordered_json machine_report(const std::string& command, const Flags& flags, const Report& report,
                                             bool pass) {
  nlohmann::ordered_json inputs;
  inputs["workspace"] = flags.workspace;
  inputs["context"] = flags.contexts;
  inputs["module"] = flags.modules;
  inputs["ideal"] = flags.ideal;
  inputs["algebra"] = flags.algebra;
  inputs["grading"] = flags.grading;
  inputs["max_dim"] = flags.max_dim;
  inputs["budget"] = flags.budget;
  inputs["strict_sampling"] = flags.strict_sampling;
  nlohmann::ordered_json out;
  out["command"] = command;
  out["theorem"] = report.theorem;
  out["inputs"] = inputs;
  out["seed"] = flags.seed;
  nlohmann::ordered_json facts = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.facts) facts[k] = v;
  out["facts"] = facts;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
  for (const auto& v : report.verdicts) {
    nlohmann::ordered_json e;
    e["subject"] = v.subject;
    e["check"] = v.check;
    e["pass"] = v.pass;
    if (v.sampled) e["sampled"] = true;
    if (!v.note.empty()) e["note"] = v.note;
    if (v.has_witness) e["witness"] = v.witness;
    verdicts.push_back(std::move(e));
  }
  out["verdicts"] = verdicts;
  nlohmann::ordered_json summary;
  summary["pass"] = pass;
  summary["verdicts"] = report.verdicts.size();
  summary["failures"] = report.failures();
  summary["sampled"] = report.any_sampled();
  out["summary"] = summary;
  return out;
}

inline std::string human_report(const std::string& command, const Report& report,
                                const std::vector<std::string>& headlines, bool pass, bool strict_sampling) {
  std::string out = command + (report.theorem.empty() ? "" : ": " + report.theorem) + "\n";
  for (const auto& h : headlines) out += h + "\n";
  for (const auto& [k, v] : report.facts) out += "  " + k + " = " + v + "\n";
  for (const auto& v : report.verdicts) {
    const char* tag = !v.pass ? "FAIL" : (v.sampled ? (strict_sampling ? "FAIL" : "pass*") : "PASS");
    out += std::string(tag) + " " + v.subject + ": " + v.check + (v.note.empty() ? "" : " (" + v.note + ")") + "\n";
  }
  out += "summary: " + std::string(pass ? "pass" : "fail") + " (" + std::to_string(report.verdicts.size()) +
         " verdicts, " + std::to_string(report.failures()) + " failures" +
         (report.any_sampled() ? ", * = rests on sampling" : "") + ")\n";
  return out;
}

template <class F>
const ContextEntry<F>& context_flag(const Workspace<F>& ws, const Flags& flags, std::size_t index = 0) {
  if (flags.contexts.size() <= index) throw usage_error("missing --context");
  auto it = ws.contexts.find(flags.contexts[index]);
  if (it == ws.contexts.end()) throw usage_error("unknown context \"" + flags.contexts[index] + "\"");
  return it->second;
}

template <class F>
const LeftModule<F>& module_flag(const Workspace<F>& ws, const Flags& flags, std::size_t index = 0) {
  if (flags.modules.size() <= index) throw usage_error("missing --module");
  auto it = ws.modules.find(flags.modules[index]);
  if (it == ws.modules.end()) throw usage_error("unknown module \"" + flags.modules[index] + "\"");
  return it->second;
}

/// The torsion theory named by --ideal, else the one of the context's
/// trace ideal on the module's side.
template <class F>
TorsionTheory<F> theory_flag(const Workspace<F>& ws, const Flags& flags, const AlgebraRef<F>& algebra) {
  if (!flags.ideal.empty()) {
    auto it = ws.ideals.find(flags.ideal);
    if (it == ws.ideals.end()) throw usage_error("unknown ideal \"" + flags.ideal + "\"");
    if (!same_algebra(it->second.algebra, algebra)) throw usage_error("ideal and module live over different algebras");
    return torsion_theory(it->second);
  }
  if (flags.contexts.empty()) throw usage_error("give --ideal or --context");
  const auto& ctx = context_flag(ws, flags).context;
  auto t = trace_ideals(ctx);
  if (same_algebra(ctx.r, algebra)) return torsion_theory(t.i);
  if (same_algebra(ctx.s, algebra)) return torsion_theory(t.j);
  throw usage_error("the module lives over neither algebra of the context");
}

template <class F>
std::string vector_string(const F& field, const Vec<F>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + field.to_string(v[i]);
  return out + "]";
}

template <class F>
std::string basis_string(const F& field, const Basis<F>& b) {
  std::string out = "{";
  for (std::size_t t = 0; t < b.dim(); ++t) out += (t ? "," : "") + vector_string(field, b.vector(t));
  return out + "}";
}

struct Outcome {
  Report report;
  std::vector<std::string> headlines;
};

template <class F>
EngineOptions engine_options(const Flags& flags) {
  EngineOptions opt;
  opt.budget = flags.budget;
  opt.seed = flags.seed;
  opt.policy.seed = flags.seed;
  return opt;
}

template <class F>
CatalogOptions catalog_options(const Flags& flags) {
  CatalogOptions opt;
  opt.budget = flags.budget;
  opt.seed = flags.seed;
  return opt;
}

template <class F>
Outcome run_command(const std::string& command, const Workspace<F>& ws, const Flags& flags) {
  Outcome out{Report{command, {}, {}}, {}};
  Report& report = out.report;
  const F& field = ws.field;

  if (command == "validate") {
    report.fact("field", field.name());
    for (const auto& [name, a] : ws.algebras) report.add("algebra " + name, "valid (dim " + std::to_string(a->dim()) + ")", validate_algebra(*a).ok());
    for (const auto& [name, m] : ws.modules) report.add("module " + name, "valid (dim " + std::to_string(m.dim) + ")", validate_module(m).ok());
    for (const auto& [name, b] : ws.bimodules) report.add("bimodule " + name, "valid (dim " + std::to_string(b.dim) + ")", validate_module(b).ok());
    for (const auto& [name, i] : ws.ideals) report.add("ideal " + name, "two-sided (dim " + std::to_string(i.dim()) + ")", is_two_sided_stable(*i.algebra, i.basis));
    for (const auto& [name, c] : ws.contexts) {
      ValidationReport v = validate_context(c.context);
      Verdict& verdict = report.add("context " + name, "valid", v.ok());
      if (!v.ok()) verdict.note = v.failures.front();
    }
    for (const auto& [name, g] : ws.gradings) report.add("grading " + name, "group of order " + std::to_string(g.group.order()), true);
    return out;
  }

  if (command == "trace" || command == "strict") {
    const auto& c = context_flag(ws, flags).context;
    auto t = trace_ideals(c);
    auto si = stabilize_ideal(t.i), sj = stabilize_ideal(t.j);
    report.fact("I", ideal_fact(t.i.dim(), c.r->dim(), "R", si.exponent));
    report.fact("J", ideal_fact(t.j.dim(), c.s->dim(), "S", sj.exponent));
    if (command == "trace") {
      report.fact("I basis", basis_string(field, t.i.basis));
      report.fact("J basis", basis_string(field, t.j.basis));
      report.add("I", "two-sided ideal", is_two_sided_stable(*c.r, t.i.basis));
      report.add("J", "two-sided ideal", is_two_sided_stable(*c.s, t.j.basis));
      return out;
    }
    bool strict = is_strict(c);
    out.headlines.push_back(std::string("strict: ") + (strict ? "true" : "false"));
    report.fact("strict", strict ? "true" : "false");
    report.add(flags.contexts[0], "strict", strict);
    return out;
  }

  if (command == "torsion" || command == "localize" || command == "closed") {
    const LeftModule<F>& x = module_flag(ws, flags);
    TorsionTheory<F> t = theory_flag(ws, flags, x.algebra);
    const std::string& name = flags.modules[0];
    report.fact("I", ideal_fact(t.i.dim(), t.algebra->dim(), "R", t.exponent));
    Submodule<F> tx = torsion_submodule(t, x);
    report.fact("torsion submodule", "dim " + std::to_string(tx.dim()) + " of " + std::to_string(x.dim));
    if (command == "torsion") {
      report.fact("torsion-free", tx.dim() == 0 ? "true" : "false");
      report.fact("torsion", tx.dim() == x.dim ? "true" : "false");
      LeftModule<F> q = quotient_module(x, tx.basis).module;
      report.add(name, "X/t(X) is torsion-free", is_torsion_free(t, q));
      std::vector<std::size_t> chain = ideal_power_chain(t.i, x);
      bool filtered = chain.back() == 0;
      report.add(name, "finite I-filtration iff I∞X = 0", filtered == (ideal_action_image(t.iinf, x).dim() == 0));
      return out;
    }
    if (command == "localize") {
      try {
        Localization<F> loc = localize(t, x);
        out.headlines.push_back("localized dim " + std::to_string(loc.module.dim));
        report.fact("localized", "dim " + std::to_string(loc.module.dim));
        report.add(name, "kernel of canonical map = t(X), result closed, cokernel torsion", true, loc.canonical);
      } catch (const std::logic_error& e) {
        report.add(name, "localization laws", false, false, e.what());
      }
      return out;
    }
    ClosedTest<F> closed = closed_test(t, x);
    out.headlines.push_back(std::string("closed: ") + (closed.closed ? "true" : "false"));
    report.add(name, "closed", closed.closed, closed.alpha.map);
    OracleOptions<F> oopt{flags.budget, 256, flags.seed};
    OracleVerdict inj = rel_injective_oracle(t, x, regular_left(t.algebra), oopt);
    bool criterion = is_torsion_free(t, x) && inj.value;
    report.add(name, "torsion-free and relatively injective agrees", criterion == closed.closed, !inj.exhaustive);
    if (!flags.contexts.empty()) {
      const auto& c = context_flag(ws, flags).context;
      if (same_algebra(c.r, x.algebra) && t.i == trace_ideals(c).i)
        report.add(name, "Hom(eta(R), X) bijective agrees", closed_via_eta(c, x) == closed.closed);
    }
    return out;
  }

  if (command == "equiv" || command == "equiv-strict" || command == "equiv-proj") {
    const auto& c = context_flag(ws, flags).context;
    Catalog<F> cr = build_catalog(c.r, flags.max_dim, catalog_options<F>(flags));
    Catalog<F> cs = build_catalog(c.s, flags.max_dim, catalog_options<F>(flags));
    EngineOptions opt = engine_options<F>(flags);
    if (command == "equiv") out.report = verify_kato_muller(c, cr, cs, opt);
    if (command == "equiv-strict") out.report = verify_strict_equivalence(c, cr, cs, opt);
    if (command == "equiv-proj") out.report = verify_projective_equivalence(c, cr, cs, opt);
    return out;
  }

  if (command == "compose") {
    const auto& g = context_flag(ws, flags, 0).context;
    const auto& d = context_flag(ws, flags, 1).context;
    if (!same_algebra(g.s, d.r)) throw usage_error("compose: middle algebras differ");
    MoritaContext<F> gd = compose_contexts(g, d);
    ValidationReport v = validate_context(gd);
    Verdict& valid = report.add("composite", "valid context", v.ok());
    if (!v.ok()) valid.note = v.failures.front();
    auto tg = trace_ideals(g), td = trace_ideals(d), tc = trace_ideals(gd);
    report.fact("M", "dim " + std::to_string(gd.m.dim));
    report.fact("N", "dim " + std::to_string(gd.n.dim));
    report.fact("I", std::to_string(tc.i.dim()) + "-dim");
    report.fact("J", std::to_string(tc.j.dim()) + "-dim");
    report.add("composite", "I contained in the first trace ideal", tg.i.basis.contains(tc.i.basis));
    if (is_strict(g) && is_strict(d)) report.add("composite", "strict factors give a strict composite", is_strict(gd));
    return out;
  }

  if (command == "iso") {
    SearchPolicy policy;
    policy.seed = flags.seed;
    if (flags.modules.size() >= 2) {
      const LeftModule<F>& a = module_flag(ws, flags, 0);
      const LeftModule<F>& b = module_flag(ws, flags, 1);
      if (!same_algebra(a.algebra, b.algebra)) throw usage_error("iso: modules over different algebras");
      auto iso = is_isomorphic(a, b, policy);
      out.headlines.push_back(std::string("isomorphism: ") + iso.verdict());
      if (iso.found())
        report.add(flags.modules[0] + " ~ " + flags.modules[1], "isomorphic", true, *iso.map);
      else
        report.add(flags.modules[0] + " ~ " + flags.modules[1], "isomorphic", false, !iso.exhaustive, iso.verdict());
      return out;
    }
    if (flags.contexts.size() >= 2) {
      const auto& g = context_flag(ws, flags, 0).context;
      const auto& d = context_flag(ws, flags, 1).context;
      if (!same_algebra(g.r, d.r) || !same_algebra(g.s, d.s)) throw usage_error("iso: contexts connect different algebras");
      auto iso = contexts_isomorphic(g, d, policy);
      out.headlines.push_back(std::string("isomorphism: ") + iso.verdict());
      std::string subject = flags.contexts[0] + " ~ " + flags.contexts[1];
      if (iso.found()) {
        report.add(subject, "u: M -> M'", true, iso.iso->u);
        report.add(subject, "v: N -> N'", true, iso.iso->v);
      } else {
        report.add(subject, "isomorphic", false, !iso.exhaustive, iso.verdict());
      }
      return out;
    }
    throw usage_error("iso: give two --module or two --context");
  }

  if (command == "graded-equiv") {
    const auto& entry = context_flag(ws, flags);
    if (flags.grading.empty()) throw usage_error("graded-equiv: missing --grading");
    auto git = ws.gradings.find(flags.grading);
    if (git == ws.gradings.end()) throw usage_error("unknown grading \"" + flags.grading + "\"");
    const GradingEntry& grading = git->second;
    auto degrees_of = [&](const std::string& name) {
      auto it = grading.degrees.find(name);
      if (it == grading.degrees.end()) throw usage_error("grading \"" + flags.grading + "\" has no degrees for \"" + name + "\"");
      return it->second;
    };
    GradedAlgebra<F> gr{entry.context.r, grading.group, degrees_of(entry.r_name)};
    std::optional<GradedContext<F>> gc;
    if (entry.idempotent) {
      gc = graded_corner_context(gr, *entry.idempotent);
    } else {
      GradedAlgebra<F> gs{entry.context.s, grading.group, degrees_of(entry.s_name)};
      gc = GradedContext<F>{entry.context, gr, gs, degrees_of(entry.m_name), degrees_of(entry.n_name)};
    }
    GradedCatalog<F> cr = build_graded_catalog(gc->r, flags.max_dim, catalog_options<F>(flags));
    GradedCatalog<F> cs = build_graded_catalog(gc->s, flags.max_dim, catalog_options<F>(flags));
    out.report = verify_graded_kato_muller(*gc, cr, cs);
    return out;
  }

  if (command == "catalog") {
    std::vector<std::pair<std::string, AlgebraRef<F>>> targets;
    if (!flags.algebra.empty()) {
      auto it = ws.algebras.find(flags.algebra);
      if (it == ws.algebras.end()) throw usage_error("unknown algebra \"" + flags.algebra + "\"");
      targets.emplace_back(it->first, it->second);
    } else {
      const auto& c = context_flag(ws, flags);
      targets.emplace_back(c.r_name, c.context.r);
      targets.emplace_back(c.s_name, c.context.s);
    }
    for (const auto& [name, a] : targets) {
      Catalog<F> cat = build_catalog(a, flags.max_dim, catalog_options<F>(flags));
      std::map<std::size_t, std::size_t> by_dim;
      for (const auto& m : cat.modules) ++by_dim[m.dim];
      std::string counts;
      for (const auto& [d, n] : by_dim) counts += (counts.empty() ? "" : ", ") + std::to_string(n) + " of dim " + std::to_string(d);
      report.fact("catalog " + name, cat.describe() + ": " + counts);
      bool valid = true;
      for (const auto& m : cat.modules) valid = valid && validate_module(m).ok();
      report.add("catalog " + name, std::to_string(cat.modules.size()) + " valid modules", valid,
                 cat.provenance == Provenance::sampled);
    }
    return out;
  }

  throw usage_error("unknown command \"" + command + "\"");
}

}  // namespace detail

inline RunResult run(const std::string& command, const AnyWorkspace& workspace, const Flags& flags,
                     bool human = true) {
  RunResult result;
  try {
    detail::Outcome outcome = std::visit(
        [&](const auto& ws) { return detail::run_command(command, ws, flags); }, workspace);
    bool pass = outcome.report.passed(flags.strict_sampling);
    result.exit_code = pass ? 0 : 1;
    result.machine = detail::machine_report(command, flags, outcome.report, pass).dump(2) + "\n";
    if (human) result.human = detail::human_report(command, outcome.report, outcome.headlines, pass, flags.strict_sampling);
  } catch (const budget_exceeded& e) {
    result = {2, std::string("error: ") + e.what() + "\n", {}};
  } catch (const invalid_input& e) {
    result = {2, std::string("error: ") + e.what() + "\n", {}};
  }
  if (result.exit_code == 2) {
    nlohmann::ordered_json err;
    err["command"] = command;
    err["error"] = result.human.substr(7, result.human.size() - 8);
    err["summary"] = {{"pass", false}};
    result.machine = err.dump(2) + "\n";
  }
  return result;
}

/// Loads the workspace file and runs the command; load errors exit with 2.
inline RunResult run_file(const std::string& command, const Flags& flags, bool human = true) {
  bool known = false;
  for (const auto& c : commands()) known = known || c == command;
  if (!known) {
    nlohmann::ordered_json err{{"command", command}, {"error", "unknown command"}, {"summary", {{"pass", false}}}};
    return {2, "error: unknown command \"" + command + "\"\n", err.dump(2) + "\n"};
  }
  try {
    AnyWorkspace ws = parse_workspace(flags.workspace);
    return run(command, ws, flags, human);
  } catch (const invalid_input& e) {
    nlohmann::ordered_json err{{"command", command}, {"error", e.what()}, {"summary", {{"pass", false}}}};
    return {2, std::string("error: ") + e.what() + "\n", err.dump(2) + "\n"};
  }
}

}  // namespace morita
