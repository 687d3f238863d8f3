#include "logiclab/cli.hpp"

#include <fstream>
#include <sstream>

#include "context.hpp"
#include "logiclab/error.hpp"

namespace logiclab::cli {

void Context::emit(const std::string& text, const Record& record) const {
  if (json) {
    out << record.dump() << '\n';
    return;
  }
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string text_arg(const std::string& arg) {
  if (!arg.empty() && arg[0] == '@') return read_file(arg.substr(1));
  return arg;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::uint64_t parse_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos || s.size() > 19) {
    throw Error(ErrorKind::InvalidInput, "expected a natural number, got '" + s + "'");
  }
  return std::stoull(s);
}

std::vector<std::uint64_t> parse_u64_list(const std::string& s) {
  std::vector<std::uint64_t> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_u64(part));
  return out;
}

std::vector<BigNat> parse_bignat_list(const std::string& s) {
  std::vector<BigNat> out;
  if (s.empty()) return out;
  for (const auto& part : split(s, ',')) out.push_back(parse_bignat(part));
  return out;
}

std::pair<std::string, std::string> parse_binding(const std::string& s) {
  const auto eq = s.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw Error(ErrorKind::InvalidInput, "expected name=value, got '" + s + "'");
  }
  return {s.substr(0, eq), s.substr(eq + 1)};
}

namespace {

const CLI::App* deepest(const CLI::App* app) {
  for (const CLI::App* sub : app->get_subcommands()) return deepest(sub);
  return app;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{out, err, false, {}};
  CLI::App app{"Workbench for propositional and first-order logic, Turing machines, "
               "ordinals and hereditarily finite sets.",
               "logiclab"};
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json-lines"}));
  app.require_subcommand(1);
  app.fallthrough();

  add_prop_commands(app, ctx);
  add_sat_commands(app, ctx);
  add_fol_commands(app, ctx);
  add_nf_commands(app, ctx);
  add_tm_commands(app, ctx);
  add_ord_commands(app, ctx);
  add_hf_commands(app, ctx);
  add_corpus_commands(app, ctx);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << deepest(&app)->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << deepest(&app)->help();
    return kExitUsage;
  }
  ctx.json = format == "json-lines";
  if (!ctx.action) {
    err << app.help();
    return kExitUsage;
  }
  try {
    return ctx.action();
  } catch (const Error& e) {
    err << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
  }
  return kExitDomainError;
}

}  // namespace logiclab::cli
