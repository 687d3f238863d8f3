#include <memory>
#include <sstream>

#include "context.hpp"
#include "logiclab/error.hpp"
#include "logiclab/fol.hpp"
#include "logiclab/normal_forms.hpp"

namespace logiclab::cli {

namespace {

struct FolArgs {
  std::string sig;
  std::string formula;
  std::string structure;
  std::string other;
  std::string var;
  std::string term;
  std::vector<std::string> list;
  std::vector<std::string> premises;
  std::size_t size = 2;
  std::size_t depth = 2;
  std::size_t budget = 50;
  std::uint64_t fuel = 10'000'000;
  bool equality = false;
};

// A formula argument, or @file with one formula per line.
std::vector<std::string> formula_texts(const std::string& arg) {
  if (arg.empty() || arg[0] != '@') return {arg};
  std::vector<std::string> out;
  std::istringstream in(read_file(arg.substr(1)));
  for (std::string line; std::getline(in, line);) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    out.push_back(line);
  }
  return out;
}

fol::Formula one_formula(const fol::Signature& sig, const std::string& arg) {
  const auto texts = formula_texts(arg);
  if (texts.size() != 1) {
    throw Error(ErrorKind::InvalidInput, "expected exactly one formula in " + arg);
  }
  return fol::parse_formula(sig, texts.front());
}

fol::FiniteStructure load_structure(const std::string& path) {
  return fol::parse_structure(read_file(path));
}

fol::Assignment parse_assignment(const std::vector<std::string>& bindings) {
  fol::Assignment a;
  for (const auto& b : bindings) {
    auto [name, value] = parse_binding(b);
    a[name] = parse_u64(value);
  }
  return a;
}

std::string strip_newline(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

void add_sig_option(CLI::App* cmd, const std::shared_ptr<FolArgs>& a) {
  cmd->add_option("--sig", a->sig, "Signature, e.g. rel:R/2,fun:f/1,const:c");
}

}  // namespace

void add_fol_commands(CLI::App& app, Context& ctx) {
  CLI::App* fol = app.add_subcommand("fol", "First-order formulas and finite structures");
  fol->require_subcommand(1);
  auto a = std::make_shared<FolArgs>();

  auto* parse = fol->add_subcommand("parse", "Parse and print a formula");
  add_sig_option(parse, a);
  parse->add_option("formula", a->formula, "Formula or @file")->required();
  parse->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto f = one_formula(fol::parse_signature(a->sig), a->formula);
      const auto free = fol::free_vars(f);
      ctx.emit(fol::to_string(f), Record{{"formula", fol::to_string(f)},
                                         {"free", free},
                                         {"sentence", free.empty()}});
      return 0;
    };
  });

  auto* check = fol->add_subcommand("check", "Satisfaction in a structure file under x=ELEMENT ...");
  check->add_option("structure", a->structure, "Structure file")->required();
  check->add_option("formula", a->formula, "Formula or @file")->required();
  check->add_option("assignment", a->list, "VAR=ELEMENT");
  check->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto m = load_structure(a->structure);
      const bool v = fol::satisfies(m, one_formula(m.signature, a->formula), parse_assignment(a->list));
      ctx.emit(v ? "T" : "F", Record{{"value", v}});
      return 0;
    };
  });

  auto* models = fol->add_subcommand("models", "Whether a structure satisfies every axiom");
  models->add_option("structure", a->structure, "Structure file")->required();
  models->add_option("axioms", a->list, "Sentences, or @file with one per line")->required();
  models->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto m = load_structure(a->structure);
      std::vector<fol::Formula> axioms;
      for (const auto& arg : a->list) {
        for (const auto& t : formula_texts(arg)) axioms.push_back(fol::parse_formula(m.signature, t));
      }
      const auto r = fol::models_theory(m, axioms);
      if (r.holds) {
        ctx.emit("MODEL", Record{{"model", true}});
      } else {
        const std::size_t k = *r.failing + 1;
        ctx.emit("NOT A MODEL: axiom " + std::to_string(k) + " fails: " +
                     fol::to_string(axioms[*r.failing]),
                 Record{{"model", false}, {"failing", k}});
      }
      return 0;
    };
  });

  auto* reduct = fol->add_subcommand("reduct", "Restrict a structure to a subsignature");
  reduct->add_option("structure", a->structure, "Structure file")->required();
  reduct->add_option("--sig", a->sig, "Subsignature")->required();
  reduct->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto r = fol::reduct(load_structure(a->structure), fol::parse_signature(a->sig));
      const auto text = fol::format_structure(r);
      ctx.emit(text, Record{{"structure", strip_newline(text)}});
      return 0;
    };
  });

  auto* iso = fol->add_subcommand("iso", "Search for an isomorphism between two structures");
  iso->add_option("left", a->structure, "Structure file")->required();
  iso->add_option("right", a->other, "Structure file")->required();
  iso->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto j = fol::find_isomorphism(load_structure(a->structure), load_structure(a->other));
      if (!j) {
        ctx.emit("NOT ISOMORPHIC", Record{{"isomorphic", false}});
        return 0;
      }
      std::string text = "ISOMORPHIC";
      for (std::size_t i = 0; i < j->size(); ++i) {
        text += " " + std::to_string(i) + "->" + std::to_string((*j)[i]);
      }
      ctx.emit(text, Record{{"isomorphic", true}, {"map", *j}});
      return 0;
    };
  });

  auto* subst = fol->add_subcommand("subst", "Capture-avoiding substitution of a term for a variable");
  add_sig_option(subst, a);
  subst->add_option("formula", a->formula, "Formula or @file")->required();
  subst->add_option("var", a->var, "Variable")->required();
  subst->add_option("term", a->term, "Term")->required();
  subst->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto sig = fol::parse_signature(a->sig);
      const auto f = fol::substitute(one_formula(sig, a->formula), a->var, fol::parse_term(sig, a->term));
      ctx.emit(fol::to_string(f), Record{{"formula", fol::to_string(f)}});
      return 0;
    };
  });

  auto* find = fol->add_subcommand("find", "Search for a model of a sentence of a given size");
  add_sig_option(find, a);
  find->add_option("--size", a->size, "Universe size")->check(CLI::Range(1, 64));
  find->add_option("--fuel", a->fuel, "Branch budget");
  find->add_option("sentence", a->formula, "Sentence or @file")->required();
  find->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto sig = fol::parse_signature(a->sig);
      const auto m = fol::find_model(sig, a->size, one_formula(sig, a->formula), a->fuel);
      if (!m) {
        ctx.emit("NO MODEL of size " + std::to_string(a->size), Record{{"model", nullptr}});
        return 0;
      }
      const auto text = fol::format_structure(*m);
      ctx.emit(text, Record{{"model", strip_newline(text)}});
      return 0;
    };
  });
}

void add_nf_commands(CLI::App& app, Context& ctx) {
  CLI::App* nf = app.add_subcommand("nf", "Normal forms and Herbrand's theorem");
  nf->require_subcommand(1);
  auto a = std::make_shared<FolArgs>();

  auto* nnf = nf->add_subcommand("nnf", "Negation normal form");
  add_sig_option(nnf, a);
  nnf->add_option("formula", a->formula, "Formula or @file")->required();
  nnf->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto f = nf::to_nnf(one_formula(fol::parse_signature(a->sig), a->formula));
      ctx.emit(fol::to_string(f), Record{{"formula", fol::to_string(f)}});
      return 0;
    };
  });

  auto* prenex = nf->add_subcommand("prenex", "Prenex normal form of a sentence");
  add_sig_option(prenex, a);
  prenex->add_option("sentence", a->formula, "Sentence or @file")->required();
  prenex->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto p = nf::to_prenex(one_formula(fol::parse_signature(a->sig), a->formula));
      ctx.emit(nf::to_string(p), Record{{"formula", nf::to_string(p)},
                                        {"matrix", fol::to_string(p.matrix)}});
      return 0;
    };
  });

  auto* skolem = nf->add_subcommand("skolem", "Skolem form of a sentence");
  add_sig_option(skolem, a);
  skolem->add_option("sentence", a->formula, "Sentence or @file")->required();
  skolem->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto sig = fol::parse_signature(a->sig);
      const auto s = nf::skolemize(sig, one_formula(sig, a->formula));
      std::string text = nf::to_string(s.formula);
      Record intro = Record::array();
      for (const auto& name : s.introduced) {
        const auto* info = s.signature.find(name);
        const std::size_t arity = info->kind == fol::SymbolKind::Function ? info->arity : 0;
        text += "\nintroduced " + name + "/" + std::to_string(arity);
        intro.push_back(Record{{"name", name}, {"arity", arity}});
      }
      ctx.emit(text, Record{{"formula", nf::to_string(s.formula)},
                            {"signature", fol::to_string(s.signature)},
                            {"introduced", intro}});
      return 0;
    };
  });

  auto* herbrand = nf->add_subcommand("herbrand", "Semi-decide validity by Herbrand expansion");
  add_sig_option(herbrand, a);
  herbrand->add_option("sentence", a->formula, "Sentence or @file")->required();
  herbrand->add_option("--budget", a->budget, "Maximum number of instances");
  herbrand->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto sig = fol::parse_signature(a->sig);
      const auto r = nf::herbrand_validity(sig, one_formula(sig, a->formula), a->budget);
      if (!r.valid()) {
        ctx.emit("UNKNOWN after " + std::to_string(r.instances_tried) + " instances",
                 Record{{"result", "UNKNOWN"}, {"instances", r.instances_tried}});
        return 0;
      }
      const auto cert = nf::format_certificate(*r.certificate);
      ctx.emit("VALID\n" + cert, Record{{"result", "VALID"},
                                        {"instances", r.instances_tried},
                                        {"certificate", strip_newline(cert)}});
      return 0;
    };
  });

  auto* qfree = nf->add_subcommand("qfree", "Decide validity of a quantifier-free ground formula");
  add_sig_option(qfree, a);
  qfree->add_option("formula", a->formula, "Formula or @file")->required();
  qfree->add_flag("--equality", a->equality, "Interpret = as equality");
  qfree->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto v = nf::decide_quantifier_free(one_formula(fol::parse_signature(a->sig), a->formula),
                                                a->equality);
      const std::string s(nf::to_string(v));
      ctx.emit(s, Record{{"result", s}});
      return 0;
    };
  });

  auto* universe = nf->add_subcommand("universe", "Herbrand universe up to a depth");
  add_sig_option(universe, a);
  universe->add_option("--depth", a->depth, "Maximum term depth")->check(CLI::Range(0, 6));
  universe->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      for (const auto& t : nf::herbrand_universe(fol::parse_signature(a->sig), a->depth)) {
        ctx.emit(fol::to_string(t), Record{{"term", fol::to_string(t)}, {"depth", fol::depth(t)}});
      }
      return 0;
    };
  });

  auto* mp = nf->add_subcommand("mp", "Check a modus ponens step");
  add_sig_option(mp, a);
  mp->add_option("--premise", a->premises, "Premise (repeatable)");
  mp->add_option("conclusion", a->formula, "Conclusion")->required();
  mp->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto sig = fol::parse_signature(a->sig);
      std::vector<fol::Formula> premises;
      for (const auto& p : a->premises) premises.push_back(one_formula(sig, p));
      const bool ok = nf::check_mp_step(premises, one_formula(sig, a->formula));
      ctx.emit(ok ? "VALID STEP" : "INVALID STEP", Record{{"valid", ok}});
      return 0;
    };
  });
}

}  // namespace logiclab::cli
