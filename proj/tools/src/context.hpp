#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "logiclab/bignat.hpp"

namespace logiclab::cli {

using Record = nlohmann::ordered_json;

/// Per-invocation state. A subcommand callback stores its work in `action`,
/// which runs after parsing so global flags are already known.
struct Context {
  std::ostream& out;
  std::ostream& err;
  bool json = false;
  std::function<int()> action;

  /// One result row: text in plain mode, the record in json-lines mode.
  void emit(const std::string& text, const Record& record) const;
};

/// `@path` reads the file, anything else is taken literally.
std::string text_arg(const std::string& arg);
/// Throws Error(Io) when the file cannot be read.
std::string read_file(const std::string& path);

std::vector<std::string> split(const std::string& s, char sep);
std::uint64_t parse_u64(const std::string& s);
std::vector<std::uint64_t> parse_u64_list(const std::string& s);
std::vector<BigNat> parse_bignat_list(const std::string& s);
/// "name=value" tokens.
std::pair<std::string, std::string> parse_binding(const std::string& s);

void add_prop_commands(CLI::App& app, Context& ctx);
void add_sat_commands(CLI::App& app, Context& ctx);
void add_fol_commands(CLI::App& app, Context& ctx);
void add_nf_commands(CLI::App& app, Context& ctx);
void add_tm_commands(CLI::App& app, Context& ctx);
void add_ord_commands(CLI::App& app, Context& ctx);
void add_hf_commands(CLI::App& app, Context& ctx);
void add_corpus_commands(CLI::App& app, Context& ctx);

}  // namespace logiclab::cli
