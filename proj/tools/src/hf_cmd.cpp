#include <fstream>
#include <memory>

#include "context.hpp"
#include "logiclab/error.hpp"
#include "logiclab/godel.hpp"
#include "logiclab/hf.hpp"

namespace logiclab::cli {

namespace {

struct HfArgs {
  std::string first;
  std::string second;
  std::vector<std::string> list;
  std::string sig;
  std::string table;
  std::string save_table;
  std::string decode;
  std::string chi;
  std::string x;
  std::string y;
  std::uint64_t index = 0;
  std::size_t rank = 3;
  bool count = false;
  bool prop = false;
  bool codes = false;
};

hf::Environment parse_env(const std::vector<std::string>& bindings) {
  hf::Environment env;
  for (const auto& b : bindings) {
    auto [name, value] = parse_binding(b);
    env[name] = hf::parse_hfset(value);
  }
  return env;
}

// The arithmetic table, then the signature, then the variables of f.
hf::SymbolTable table_for(const fol::Signature& sig, const fol::Formula* f) {
  hf::SymbolTable t = hf::SymbolTable::arithmetic();
  t.add_signature(sig);
  if (f) {
    for (const auto& v : fol::all_vars(*f)) t.add_variable(v);
  }
  return t;
}

void save_table(const std::string& path, const hf::SymbolTable& t) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  hf::write_symbol_table(out, t);
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + std::to_string(xs[i]);
  return s;
}

}  // namespace

void add_hf_commands(CLI::App& app, Context& ctx) {
  CLI::App* hfc = app.add_subcommand("hf", "Hereditarily finite sets and arithmetization");
  hfc->require_subcommand(1);
  auto a = std::make_shared<HfArgs>();

  auto* vn = hfc->add_subcommand("vn", "List V_n in canonical order");
  vn->add_option("n", a->first, "Level 0..5")->required();
  vn->add_flag("--count", a->count, "Only print the size");
  vn->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto& v = hf::vn_universe(parse_u64(a->first));
      if (a->count) {
        ctx.emit(std::to_string(v.size()), Record{{"size", v.size()}});
        return 0;
      }
      for (const auto& s : v) ctx.emit(hf::to_string(s), Record{{"set", hf::to_string(s)}, {"rank", s.rank()}});
      return 0;
    };
  });

  auto* eval = hfc->add_subcommand(
      "eval", "Evaluate a Delta_0 formula, or search witnesses for a Sigma_1 one, under VAR=SET ...");
  eval->add_option("formula", a->first, "Formula or @file")->required();
  eval->add_option("assignment", a->list, "VAR=SET");
  eval->add_option("--rank", a->rank, "Witness search level for Sigma_1")
      ->check(CLI::Range(std::size_t{0}, hf::kMaxUniverseLevel));
  eval->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto f = hf::parse_hf_formula(text_arg(a->first));
      const auto env = parse_env(a->list);
      if (hf::is_delta0(f)) {
        const bool v = hf::eval_delta0(f, env);
        ctx.emit(v ? "T" : "F", Record{{"value", v}});
        return 0;
      }
      const auto r = hf::eval_sigma1_bounded(hf::split_sigma1(f), env, a->rank);
      const std::string verdict(hf::to_string(r.verdict));
      std::string text = verdict;
      Record w = Record::object();
      for (const auto& [name, set] : r.witnesses) {
        text += " " + name + "=" + hf::to_string(set);
        w[name] = hf::to_string(set);
      }
      ctx.emit(text, Record{{"verdict", verdict}, {"witnesses", w}});
      return 0;
    };
  });

  auto* pair = hfc->add_subcommand("pair", "The pair {{x},{x,y}}");
  pair->add_option("x", a->first, "Set")->required();
  pair->add_option("y", a->second, "Set")->required();
  pair->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto p = hf::to_string(hf::hf_pair(hf::parse_hfset(a->first), hf::parse_hfset(a->second)));
      ctx.emit(p, Record{{"pair", p}});
      return 0;
    };
  });

  auto* crt = hfc->add_subcommand("crt", "Least solution of simultaneous congruences");
  crt->add_option("--moduli", a->first, "Comma-separated moduli")->required();
  crt->add_option("--residues", a->second, "Comma-separated residues")->required();
  crt->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto x = to_string(hf::crt_solve(parse_bignat_list(a->first), parse_bignat_list(a->second)));
      ctx.emit(x, Record{{"solution", x}});
      return 0;
    };
  });

  auto* beta = hfc->add_subcommand("beta", "Beta-code a sequence, or decode one entry with --index");
  beta->add_option("values", a->first, "Comma-separated naturals");
  auto* index = beta->add_option("--index", a->index, "Entry to decode");
  beta->add_option("--x", a->x, "Code x")->needs(index);
  beta->add_option("--y", a->y, "Code y")->needs(index);
  beta->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      if (!a->x.empty() || !a->y.empty()) {
        if (a->x.empty() || a->y.empty()) {
          throw Error(ErrorKind::InvalidInput, "decoding needs both --x and --y");
        }
        const auto v = to_string(hf::beta_decode(a->index, parse_bignat(a->x), parse_bignat(a->y)));
        ctx.emit(v, Record{{"value", v}});
        return 0;
      }
      const auto code = hf::beta_encode(parse_u64_list(a->first));
      const auto xs = to_string(code.x);
      const auto ys = to_string(code.y);
      ctx.emit("x " + xs + "\ny " + ys, Record{{"x", xs}, {"y", ys}});
      return 0;
    };
  });

  auto* godel = hfc->add_subcommand("godel", "Goedel number of a formula, or decode one with --decode");
  godel->add_option("formula", a->first, "Formula or @file");
  godel->add_option("--sig", a->sig, "Signature");
  godel->add_option("--table", a->table, "Symbol table file to use");
  godel->add_option("--save-table", a->save_table, "Write the symbol table used");
  godel->add_option("--decode", a->decode, "Number to decode (or @file)");
  godel->add_flag("--prop", a->prop, "Propositional sentence instead of a first-order formula");
  godel->add_flag("--codes", a->codes, "Also print the symbol code sequence");
  godel->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      hf::SymbolTable table;
      const bool have_table = !a->table.empty();
      if (have_table) table = hf::parse_symbol_table(read_file(a->table));
      if (!a->decode.empty()) {
        if (!have_table) throw Error(ErrorKind::InvalidInput, "--decode needs --table");
        std::string text = text_arg(a->decode);
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
        const BigNat n = parse_bignat(text);
        const std::string f = a->prop ? prop::to_string(hf::godel_decode_sentence(table, n))
                                      : fol::to_string(hf::godel_decode(table, n));
        ctx.emit(f, Record{{"formula", f}});
        return 0;
      }
      if (a->first.empty()) throw Error(ErrorKind::InvalidInput, "give a formula or --decode");
      std::vector<std::uint64_t> codes;
      if (a->prop) {
        const auto s = prop::parse(text_arg(a->first));
        if (!have_table) {
          for (const auto& at : prop::atoms(s)) table.add(at, hf::GodelKind::Atom);
        }
        codes = hf::godel_codes(table, s);
      } else {
        const auto sig = fol::parse_signature(a->sig);
        const auto f = fol::parse_formula(have_table ? table.signature() : sig, text_arg(a->first));
        if (!have_table) table = table_for(sig, &f);
        codes = hf::godel_codes(table, f);
      }
      save_table(a->save_table, table);
      const auto n = to_string(prime_power_product(codes));
      ctx.emit(a->codes ? n + "\ncodes " + join(codes) : n, Record{{"number", n}, {"codes", codes}});
      return 0;
    };
  });

  auto* self = hfc->add_subcommand("self", "Substitute a formula's own numeral for its free variable");
  self->add_option("formula", a->first, "Formula with one free variable, or @file")->required();
  self->add_option("--sig", a->sig, "Signature");
  self->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto sig = fol::parse_signature(a->sig);
      const auto t0 = table_for(sig, nullptr);
      const auto rho = fol::parse_formula(t0.signature(), text_arg(a->first));
      const auto table = table_for(sig, &rho);
      const auto s = fol::to_string(hf::self_apply(table, rho));
      ctx.emit(s, Record{{"formula", s}});
      return 0;
    };
  });

  auto* diag = hfc->add_subcommand("diag", "Diagonal sentence for psi(y) with a binary relation chi");
  diag->add_option("psi", a->first, "Formula with one free variable, or @file")->required();
  diag->add_option("--sig", a->sig, "Signature; must declare chi")->required();
  diag->add_option("--chi", a->chi, "Binary relation name")->required();
  diag->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto sig = fol::parse_signature(a->sig);
      const auto t0 = table_for(sig, nullptr);
      const auto psi = fol::parse_formula(t0.signature(), text_arg(a->first));
      auto table = table_for(sig, &psi);
      const auto d = hf::diagonal_sentence(table, psi, a->chi);
      const auto sigma = fol::to_string(d.sigma);
      const auto theta = fol::to_string(d.theta);
      ctx.emit("sigma " + sigma + "\ntheta " + theta, Record{{"sigma", sigma}, {"theta", theta}});
      return 0;
    };
  });

  auto* fin = hfc->add_subcommand("fin", "Evaluate the FIN axioms on (V_n, E)");
  fin->add_option("n", a->first, "Level 1..4")->required();
  fin->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      for (const auto& c : hf::check_fin_axioms(parse_u64(a->first))) {
        ctx.emit(c.axiom + ": " + (c.holds ? "true" : "false"),
                 Record{{"axiom", c.axiom}, {"holds", c.holds}});
      }
      return 0;
    };
  });
}

}  // namespace logiclab::cli
