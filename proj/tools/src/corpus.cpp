#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>

#include "context.hpp"
#include "logiclab/cli.hpp"
#include "logiclab/error.hpp"

namespace logiclab::cli {

namespace fs = std::filesystem;

std::size_t CorpusReport::passed() const {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const CorpusCase& c) { return c.passed; }));
}

std::string transcript(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  std::string t = out.str();
  if (!err.str().empty()) t += "[stderr]\n" + err.str();
  return t + "[exit " + std::to_string(code) + "]\n";
}

namespace {

std::vector<std::string> case_args(const std::string& text, const std::string& dir) {
  std::vector<std::string> args;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    for (std::size_t p; (p = line.find("{dir}")) != std::string::npos;) line.replace(p, 5, dir);
    args.push_back(line);
  }
  return args;
}

std::vector<fs::path> case_files(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::Io, dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cmd") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace

CorpusReport run_corpus(const std::string& dir) {
  CorpusReport report;
  for (const auto& cmd : case_files(dir)) {
    CorpusCase c{cmd.stem().string(), false, {}};
    fs::path expected_path = cmd;
    expected_path.replace_extension(".out");
    try {
      const std::string actual = transcript(case_args(read_file(cmd.string()), dir));
      if (!fs::exists(expected_path)) {
        c.detail = "missing " + expected_path.filename().string();
      } else if (read_file(expected_path.string()) != actual) {
        c.detail = "output differs from " + expected_path.filename().string();
      } else {
        c.passed = true;
      }
    } catch (const Error& e) {
      c.detail = e.what();
    }
    report.cases.push_back(std::move(c));
  }
  return report;
}

void add_corpus_commands(CLI::App& app, Context& ctx) {
  CLI::App* corpus = app.add_subcommand("corpus", "Golden-output regression cases");
  corpus->require_subcommand(1);
  struct Args {
    std::string dir;
    bool update = false;
  };
  auto a = std::make_shared<Args>();
  auto* run = corpus->add_subcommand("run", "Run every NAME.cmd in a directory against NAME.out");
  run->add_option("dir", a->dir, "Corpus directory")->required();
  run->add_flag("--update", a->update, "Rewrite the .out files instead of comparing");
  run->callback([&ctx, a] {
    ctx.action = [&ctx, a] {
      if (a->update) {
        for (const auto& cmd : case_files(a->dir)) {
          fs::path out_path = cmd;
          out_path.replace_extension(".out");
          std::ofstream out(out_path, std::ios::binary);
          out << transcript(case_args(read_file(cmd.string()), a->dir));
          ctx.emit("WROTE " + out_path.filename().string(), Record{{"wrote", out_path.filename().string()}});
        }
        return 0;
      }
      const auto report = run_corpus(a->dir);
      for (const auto& c : report.cases) {
        ctx.emit(c.passed ? "PASS " + c.name : "FAIL " + c.name + ": " + c.detail,
                 Record{{"case", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      const std::string summary = "corpus: " + std::to_string(report.passed()) + "/" +
                                  std::to_string(report.cases.size()) + " passed";
      ctx.emit(summary, Record{{"passed", report.passed()}, {"total", report.cases.size()}});
      return report.passed() == report.cases.size() ? 0 : 1;
    };
  });
}

}  // namespace logiclab::cli
