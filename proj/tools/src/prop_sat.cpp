#include <memory>

#include "context.hpp"
#include "logiclab/error.hpp"
#include "logiclab/prop.hpp"
#include "logiclab/sat.hpp"

namespace logiclab::cli {

namespace {

const char* tf(bool b) { return b ? "T" : "F"; }

prop::Evaluation parse_evaluation(const std::vector<std::string>& bindings) {
  prop::Evaluation e;
  for (const auto& b : bindings) {
    auto [name, value] = parse_binding(b);
    if (value == "T" || value == "1" || value == "true") {
      e[name] = true;
    } else if (value == "F" || value == "0" || value == "false") {
      e[name] = false;
    } else {
      throw Error(ErrorKind::InvalidInput, "truth value must be T or F in '" + b + "'");
    }
  }
  return e;
}

prop::TruthFunction parse_truth_function(const std::string& text) {
  namespace f = prop::functions;
  if (text == "not" || text == "neg") return f::negation();
  if (text == "and") return f::conjunction();
  if (text == "or") return f::disjunction();
  if (text == "implies") return f::implication();
  if (text == "iff") return f::biconditional();
  if (text == "nor") return f::nor();
  if (text == "nand") return f::nand();
  // arity:bits, row 0 first
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::UnknownOperator, "unknown connective '" + text + "'");
  }
  prop::TruthFunction tf;
  tf.arity = static_cast<unsigned>(parse_u64(text.substr(0, colon)));
  const std::string bits = text.substr(colon + 1);
  if (tf.arity > prop::kMaxEnumerateArity || bits.size() != (std::size_t{1} << tf.arity) ||
      bits.find_first_not_of("01") != std::string::npos) {
    throw Error(ErrorKind::InvalidInput, "truth table '" + text + "' has the wrong shape");
  }
  for (char c : bits) tf.table.push_back(c == '1');
  return tf;
}

std::string bits_of(const prop::TruthFunction& f) {
  std::string s;
  for (bool b : f.table) s += b ? '1' : '0';
  return s;
}

struct SentenceArgs {
  std::string text;
  std::string other;
  std::vector<std::string> rest;
  std::vector<std::string> list;
  unsigned arity = 2;
  unsigned max_arity = prop::kMaxAdequacyArity;
  bool adequate_only = false;
};

}  // namespace

void add_prop_commands(CLI::App& app, Context& ctx) {
  CLI::App* prop = app.add_subcommand("prop", "Propositional sentences");
  prop->require_subcommand(1);
  auto a = std::make_shared<SentenceArgs>();

  auto* parse = prop->add_subcommand("parse", "Parse and print in canonical form");
  parse->add_option("sentence", a->text, "Sentence or @file")->required();
  parse->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto s = prop::parse(text_arg(a->text));
      const auto atoms = prop::atoms(s);
      ctx.emit(prop::to_string(s), Record{{"sentence", prop::to_string(s)},
                                          {"atoms", atoms},
                                          {"depth", prop::depth(s)}});
      return 0;
    };
  });

  auto* eval = prop->add_subcommand("eval", "Evaluate under an assignment NAME=T|F ...");
  eval->add_option("sentence", a->text, "Sentence or @file")->required();
  eval->add_option("assignment", a->rest, "NAME=T or NAME=F");
  eval->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const bool v = prop::evaluate(prop::parse(text_arg(a->text)), parse_evaluation(a->rest));
      ctx.emit(tf(v), Record{{"value", v}});
      return 0;
    };
  });

  auto* table = prop->add_subcommand("table", "Truth table");
  table->add_option("sentence", a->text, "Sentence or @file")->required();
  table->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto s = prop::parse(text_arg(a->text));
      const auto atoms = prop::atoms(s);
      const auto rows = prop::truth_table(s);
      if (!ctx.json) {
        std::string header;
        for (const auto& at : atoms) header += at + " ";
        ctx.out << header << "| " << prop::to_string(s) << '\n';
      }
      for (const auto& row : rows) {
        std::string text;
        Record rec;
        for (const auto& [name, value] : row.assignment) {
          text += std::string(tf(value)) + std::string(name.size(), ' ');
          rec[name] = value;
        }
        rec["value"] = row.value;
        ctx.emit(text + "| " + tf(row.value), rec);
      }
      return 0;
    };
  });

  auto* classify = prop->add_subcommand("classify", "VALIDITY, CONTRADICTION or CONTINGENT");
  classify->add_option("sentence", a->text, "Sentence or @file")->required();
  classify->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto c = std::string(prop::to_string(prop::classify(prop::parse(text_arg(a->text)))));
      ctx.emit(c, Record{{"classification", c}});
      return 0;
    };
  });

  auto* equiv = prop->add_subcommand("equiv", "Truth-table equivalence of two sentences");
  equiv->add_option("left", a->text, "Sentence or @file")->required();
  equiv->add_option("right", a->other, "Sentence or @file")->required();
  equiv->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const bool e = prop::equivalent(prop::parse(text_arg(a->text)), prop::parse(text_arg(a->other)));
      ctx.emit(e ? "EQUIVALENT" : "NOT EQUIVALENT", Record{{"equivalent", e}});
      return 0;
    };
  });

  auto* dnf = prop->add_subcommand("dnf", "Disjunctive normal form");
  dnf->add_option("sentence", a->text, "Sentence or @file")->required();
  dnf->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto d = prop::to_string(prop::to_dnf(prop::parse(text_arg(a->text))));
      ctx.emit(d, Record{{"dnf", d}});
      return 0;
    };
  });

  auto* adequate = prop->add_subcommand(
      "adequate", "Adequacy of a set of connectives (not, and, or, implies, iff, nor, nand, or ARITY:BITS)");
  adequate->add_option("connectives", a->list, "Connectives")->required();
  adequate->add_option("--max-arity", a->max_arity, "Check arities 1..N")
      ->check(CLI::Range(1U, prop::kMaxAdequacyArity));
  adequate->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      std::vector<prop::TruthFunction> basis;
      for (const auto& c : a->list) basis.push_back(parse_truth_function(c));
      const bool ok = prop::is_adequate(basis, a->max_arity);
      ctx.emit(ok ? "ADEQUATE" : "NOT ADEQUATE", Record{{"adequate", ok}});
      return 0;
    };
  });

  auto* functions = prop->add_subcommand("functions", "Enumerate truth functions of an arity");
  functions->add_option("arity", a->arity, "Arity")->required()->check(
      CLI::Range(0U, prop::kMaxEnumerateArity));
  functions->add_flag("--adequate", a->adequate_only, "Only singly adequate functions");
  functions->add_option("--max-arity", a->max_arity, "Adequacy checks arities 1..N")
      ->check(CLI::Range(1U, prop::kMaxAdequacyArity));
  functions->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      std::size_t shown = 0;
      for (const auto& f : prop::enumerate_truth_functions(a->arity)) {
        if (a->adequate_only && !prop::is_adequate({f}, a->max_arity)) continue;
        ++shown;
        ctx.emit(bits_of(f), Record{{"arity", f.arity}, {"table", bits_of(f)}});
      }
      if (!ctx.json) ctx.out << "# " << shown << " functions\n";
      return 0;
    };
  });
}

// ---------------------------------------------------------------------------

namespace {

struct SatArgs {
  std::string instance;
  std::string witness;
  std::string mode = "backtracking";
  std::uint64_t fuel = sat::SolveOptions{}.fuel;
};

sat::Problem load_instance(const std::string& path) { return sat::parse_instance(read_file(path)); }

Record witness_record(const sat::Witness& w) {
  Record r = Record::object();
  for (const auto& [name, value] : w) r[name] = value;
  return r;
}

}  // namespace

void add_sat_commands(CLI::App& app, Context& ctx) {
  CLI::App* sat = app.add_subcommand("sat", "Combinatorial problems through propositional satisfiability");
  sat->require_subcommand(1);
  auto a = std::make_shared<SatArgs>();

  auto* solve = sat->add_subcommand("solve", "Solve an instance file; prints SAT with a witness or UNSAT");
  solve->add_option("instance", a->instance, "Instance file")->required();
  solve->add_option("--mode", a->mode, "Search strategy")
      ->check(CLI::IsMember({"exhaustive", "backtracking"}));
  solve->add_option("--fuel", a->fuel, "Backtracking budget");
  solve->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto p = load_instance(a->instance);
      sat::SolveOptions opts;
      opts.mode = a->mode == "exhaustive" ? sat::SolveMode::Exhaustive : sat::SolveMode::Backtracking;
      opts.fuel = a->fuel;
      const auto w = sat::solve(p, opts);
      if (!w) {
        ctx.emit("UNSAT", Record{{"result", "UNSAT"}});
        return 0;
      }
      Record rec{{"result", "SAT"}, {"witness", witness_record(*w)}};
      std::string text = "SAT\n" + sat::format_witness(*w);
      if (!std::holds_alternative<std::monostate>(p.tag)) {
        const auto decoded = sat::format_decoded(sat::decode_witness(p, *w));
        text += decoded;
        rec["decoded"] = decoded.substr(0, decoded.find_last_not_of('\n') + 1);
      }
      ctx.emit(text, rec);
      return 0;
    };
  });

  auto* encode = sat->add_subcommand("encode", "Print the atoms and constraints of an instance");
  encode->add_option("instance", a->instance, "Instance file")->required();
  encode->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto p = load_instance(a->instance);
      std::vector<std::string> constraints;
      for (const auto& c : p.constraints) constraints.push_back(prop::to_string(c));
      if (ctx.json) {
        ctx.emit("", Record{{"atoms", p.atoms}, {"constraints", constraints}});
        return 0;
      }
      ctx.out << "atoms " << p.atoms.size() << '\n';
      for (const auto& at : p.atoms) ctx.out << "  " << at << '\n';
      ctx.out << "constraints " << constraints.size() << '\n';
      for (const auto& c : constraints) ctx.out << "  " << c << '\n';
      return 0;
    };
  });

  auto* decode = sat->add_subcommand("decode", "Decode a witness file (NAME=T|F lines) for an instance");
  decode->add_option("instance", a->instance, "Instance file")->required();
  decode->add_option("witness", a->witness, "Witness file")->required();
  decode->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto p = load_instance(a->instance);
      const auto w = sat::parse_witness(read_file(a->witness));
      const auto decoded = sat::format_decoded(sat::decode_witness(p, w));
      ctx.emit(decoded, Record{{"decoded", decoded.substr(0, decoded.find_last_not_of('\n') + 1)}});
      return 0;
    };
  });
}

}  // namespace logiclab::cli
