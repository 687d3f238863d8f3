#include <memory>
#include <sstream>

#include "context.hpp"
#include "logiclab/error.hpp"
#include "logiclab/ordinal.hpp"
#include "logiclab/turing.hpp"

namespace logiclab::cli {

namespace {

struct TmArgs {
  std::string machine;
  std::string input;
  std::string args;
  std::uint64_t fuel = 1'000'000;
  bool sequence = false;
};

// fixture:NAME or a machine file.
tm::Machine load_machine(const std::string& arg) {
  const std::string prefix = "fixture:";
  if (arg.rfind(prefix, 0) == 0) {
    const std::string name = arg.substr(prefix.size());
    for (auto& [n, m] : tm::fixtures::all()) {
      if (n == name) return m;
    }
    throw Error(ErrorKind::InvalidInput, "no fixture named '" + name + "'");
  }
  return tm::parse_machine(read_file(arg));
}

BigNat load_code(const std::string& arg) {
  std::string text = text_arg(arg);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return parse_bignat(text);
}

std::string strip_newline(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string out_of_fuel_text(std::uint64_t steps) {
  return "OUT OF FUEL after " + std::to_string(steps) + " steps";
}

}  // namespace

void add_tm_commands(CLI::App& app, Context& ctx) {
  CLI::App* tmc = app.add_subcommand("tm", "Turing machines; MACHINE is a file or fixture:NAME");
  tmc->require_subcommand(1);
  auto a = std::make_shared<TmArgs>();

  auto* run = tmc->add_subcommand("run", "Run a machine; prints the final tape");
  run->add_option("machine", a->machine, "Machine file or fixture:NAME")->required();
  auto* input = run->add_option("--input", a->input, "Input word");
  run->add_option("--args", a->args, "Natural arguments in base one, comma separated; prints the count of 1s")
      ->excludes(input);
  run->add_option("--fuel", a->fuel, "Step budget");
  run->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto m = load_machine(a->machine);
      if (!a->args.empty()) {
        const auto r = tm::compute_numeric(m, parse_u64_list(a->args), a->fuel);
        if (const auto* n = std::get_if<std::uint64_t>(&r)) {
          ctx.emit(std::to_string(*n), Record{{"result", "HALT"}, {"value", *n}});
        } else {
          const auto steps = std::get<tm::OutOfFuel>(r).steps;
          ctx.emit(out_of_fuel_text(steps), Record{{"result", "OUT_OF_FUEL"}, {"steps", steps}});
        }
        return 0;
      }
      const auto r = tm::run(m, a->input, a->fuel);
      if (const auto* h = std::get_if<tm::Halt>(&r)) {
        ctx.emit(h->output, Record{{"result", "HALT"}, {"output", h->output}, {"steps", h->steps}});
      } else {
        const auto steps = std::get<tm::OutOfFuel>(r).steps;
        ctx.emit(out_of_fuel_text(steps), Record{{"result", "OUT_OF_FUEL"}, {"steps", steps}});
      }
      return 0;
    };
  });

  auto* trace = tmc->add_subcommand("trace", "Print every configuration");
  trace->add_option("machine", a->machine, "Machine file or fixture:NAME")->required();
  trace->add_option("--input", a->input, "Input word");
  trace->add_option("--fuel", a->fuel, "Step budget");
  trace->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto configs = tm::trace(load_machine(a->machine), a->input, a->fuel);
      for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto c = tm::format_configuration(configs[i]);
        ctx.emit(std::to_string(i) + " " + c, Record{{"step", i}, {"configuration", c}});
      }
      return 0;
    };
  });

  auto* encode = tmc->add_subcommand("encode", "Arithmetic code of a machine");
  encode->add_option("machine", a->machine, "Machine file or fixture:NAME")->required();
  encode->add_flag("--sequence", a->sequence, "Also print the description sequence");
  encode->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto m = load_machine(a->machine);
      const auto code = to_string(tm::encode_machine(m));
      const auto seq = tm::describe(m);
      std::string text = code;
      if (a->sequence) {
        text += "\n";
        for (std::size_t i = 0; i < seq.size(); ++i) text += (i ? " " : "") + std::to_string(seq[i]);
      }
      ctx.emit(text, Record{{"code", code}, {"sequence", seq}});
      return 0;
    };
  });

  auto* decode = tmc->add_subcommand("decode", "Machine file from an arithmetic code");
  decode->add_option("code", a->machine, "Code or @file")->required();
  decode->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto text = tm::format_machine(tm::decode_machine(load_code(a->machine)));
      ctx.emit(text, Record{{"machine", strip_newline(text)}});
      return 0;
    };
  });

  auto* utm = tmc->add_subcommand("utm", "Run the machine with the given code on an input");
  utm->add_option("code", a->machine, "Code or @file")->required();
  utm->add_option("--input", a->input, "Input word");
  utm->add_option("--fuel", a->fuel, "Step budget");
  utm->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto r = tm::utm_run(load_code(a->machine), a->input, a->fuel);
      if (const auto* h = std::get_if<tm::UtmHalt>(&r)) {
        ctx.emit(h->output, Record{{"result", "HALT"}, {"output", h->output}, {"steps", h->steps}});
      } else if (const auto* f = std::get_if<tm::OutOfFuel>(&r)) {
        ctx.emit(out_of_fuel_text(f->steps), Record{{"result", "OUT_OF_FUEL"}, {"steps", f->steps}});
      } else {
        const auto& reason = std::get<tm::Diverges>(r).reason;
        ctx.emit("DIVERGES: " + reason, Record{{"result", "DIVERGES"}, {"reason", reason}});
      }
      return 0;
    };
  });

  auto* we = tmc->add_subcommand("we", "Inputs n <= fuel on which the coded machine halts within fuel");
  we->add_option("code", a->machine, "Code or @file")->required();
  we->add_option("--fuel", a->fuel, "Bound on inputs and steps")->check(CLI::Range(0, 100000));
  we->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto set = tm::enumerate_we(load_code(a->machine), a->fuel);
      std::string text = "{";
      for (auto n : set) text += (text.size() > 1 ? ", " : "") + std::to_string(n);
      ctx.emit(text + "}", Record{{"halts_on", set}});
      return 0;
    };
  });

  auto* fixture = tmc->add_subcommand("fixture", "Print a fixture machine, or list them");
  fixture->add_option("name", a->machine, "Fixture name");
  fixture->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      if (a->machine.empty()) {
        for (const auto& [name, m] : tm::fixtures::all()) ctx.emit(name, Record{{"name", name}});
        return 0;
      }
      const auto text = tm::format_machine(load_machine("fixture:" + a->machine));
      ctx.emit(text, Record{{"machine", strip_newline(text)}});
      return 0;
    };
  });
}

// ---------------------------------------------------------------------------

namespace {

struct OrdArgs {
  std::string left;
  std::string right;
  std::vector<std::string> list;
  std::string base = "2";
  std::uint64_t steps = 10;
};

ord::Ordinal ordinal_arg(const std::string& s) { return ord::parse_ordinal(text_arg(s)); }

const char* order_symbol(std::strong_ordering c) {
  if (c < 0) return "<";
  if (c > 0) return ">";
  return "=";
}

}  // namespace

void add_ord_commands(CLI::App& app, Context& ctx) {
  CLI::App* ordc = app.add_subcommand("ord", "Ordinals below epsilon_0 (w is omega)");
  ordc->require_subcommand(1);
  auto a = std::make_shared<OrdArgs>();

  auto binary = [&](const char* name, const char* help,
                    ord::Ordinal (*op)(const ord::Ordinal&, const ord::Ordinal&)) {
    auto* cmd = ordc->add_subcommand(name, help);
    cmd->add_option("left", a->left, "Ordinal")->required();
    cmd->add_option("right", a->right, "Ordinal")->required();
    cmd->callback([&ctx, a, op] {
      ctx.action = [&ctx, a, op] {
        const auto r = ord::to_string(op(ordinal_arg(a->left), ordinal_arg(a->right)));
        ctx.emit(r, Record{{"result", r}});
        return 0;
      };
    });
  };
  binary("add", "Ordinal sum", &ord::add);
  binary("mul", "Ordinal product", &ord::mul);
  binary("pow", "Ordinal exponentiation", &ord::pow);
  binary("sub", "The d with left + d = right", &ord::left_subtract);

  auto* cmp = ordc->add_subcommand("cmp", "Compare two ordinals");
  cmp->add_option("left", a->left, "Ordinal")->required();
  cmp->add_option("right", a->right, "Ordinal")->required();
  cmp->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const std::string s = order_symbol(ord::compare(ordinal_arg(a->left), ordinal_arg(a->right)));
      ctx.emit(s, Record{{"order", s}});
      return 0;
    };
  });

  auto* divmod = ordc->add_subcommand("divmod", "Left division: left = right*q + r with r < right");
  divmod->add_option("left", a->left, "Dividend")->required();
  divmod->add_option("right", a->right, "Divisor")->required();
  divmod->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto [q, r] = ord::divmod(ordinal_arg(a->left), ordinal_arg(a->right));
      const auto qs = ord::to_string(q);
      const auto rs = ord::to_string(r);
      ctx.emit("quotient " + qs + "\nremainder " + rs, Record{{"quotient", qs}, {"remainder", rs}});
      return 0;
    };
  });

  auto* indec = ordc->add_subcommand("indec", "Whether an ordinal is a power of w");
  indec->add_option("ordinal", a->left, "Ordinal")->required();
  indec->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const bool v = ord::is_indecomposable(ordinal_arg(a->left));
      ctx.emit(v ? "INDECOMPOSABLE" : "DECOMPOSABLE", Record{{"indecomposable", v}});
      return 0;
    };
  });

  auto* sort = ordc->add_subcommand("sort", "Sort ordinals ascending");
  sort->add_option("ordinals", a->list, "Ordinals")->required();
  sort->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      std::vector<std::pair<ord::Ordinal, std::string>> items;
      for (const auto& s : a->list) items.emplace_back(ordinal_arg(s), s);
      std::stable_sort(items.begin(), items.end(),
                       [](const auto& x, const auto& y) { return x.first < y.first; });
      for (const auto& [o, src] : items) {
        ctx.emit(ord::to_string(o), Record{{"ordinal", ord::to_string(o)}, {"input", src}});
      }
      return 0;
    };
  });

  auto* goodstein = ordc->add_subcommand("goodstein", "Goodstein sequence as CSV step,base,value,ordinal");
  goodstein->add_option("start", a->left, "Starting value")->required();
  goodstein->add_option("--base", a->base, "Starting base");
  goodstein->add_option("--steps", a->steps, "Maximum number of steps");
  goodstein->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto t = ord::goodstein_run(parse_bignat(a->left), parse_bignat(a->base), a->steps);
      const std::uint64_t last = t.rows.back().step;
      if (ctx.json) {
        for (const auto& r : t.rows) {
          ctx.emit("", Record{{"step", r.step},
                              {"base", to_string(r.base)},
                              {"value", to_string(r.value)},
                              {"ordinal", ord::to_string(r.ordinal)}});
        }
        ctx.emit("", Record{{"finished", t.finished}, {"steps", last}});
        return 0;
      }
      ctx.out << ord::format_csv(t);
      ctx.out << (t.finished ? "# finished at step " : "# unfinished after ") << last
              << (t.finished ? "" : " steps") << '\n';
      return 0;
    };
  });

  auto* expand = ordc->add_subcommand("expand", "Hereditary base expansion and its w-majorant");
  expand->add_option("value", a->left, "Natural number")->required();
  expand->add_option("--base", a->base, "Base");
  expand->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      const auto rep = ord::hereditary_expand(parse_bignat(a->left), parse_bignat(a->base));
      const auto h = ord::to_string(rep);
      const auto o = ord::to_string(ord::majorant(rep.expansion));
      ctx.emit(h + "\nmajorant " + o, Record{{"expansion", h}, {"majorant", o}});
      return 0;
    };
  });
}

}  // namespace logiclab::cli
