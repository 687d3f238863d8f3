#include <istream>
#include <sstream>

#include "logiclab/error.hpp"
#include "logiclab/fol.hpp"

namespace logiclab::fol {

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, "structure line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

Element element(const std::string& word, std::size_t line) {
  if (word.empty() || word.find_first_not_of("0123456789") != std::string::npos) {
    fail(line, "expected an element, got '" + word + "'");
  }
  return std::stoull(word);
}

Tuple tuple(std::string text, std::size_t line) {
  for (char& c : text) {
    if (c == '(' || c == ')' || c == ',') c = ' ';
  }
  Tuple t;
  for (const auto& w : words(text)) t.push_back(element(w, line));
  return t;
}

std::size_t declared_arity(const std::vector<std::string>& w, std::size_t line) {
  if (w.size() != 4 || w[2] != "arity") fail(line, "expected '" + w[0] + " NAME arity k'");
  return element(w[3], line);
}

}  // namespace

FiniteStructure read_structure(std::istream& in) {
  FiniteStructure m;
  bool have_size = false;
  enum class Section { None, Rel, Fun } section = Section::None;
  std::string current;
  std::size_t arity = 0;
  std::vector<bool> filled;

  auto close_function = [&](std::size_t line) {
    if (section != Section::Fun) return;
    for (bool f : filled) {
      if (!f) fail(line, "function '" + current + "' is not total");
    }
  };

  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto w = words(raw);
    if (w.empty()) continue;
    const std::string& head = w[0];
    if (head == "size" || head == "rel" || head == "fun" || head == "const") {
      close_function(number);
      section = Section::None;
    }
    if (head == "size") {
      if (have_size) fail(number, "duplicate size line");
      if (w.size() != 2) fail(number, "expected 'size n'");
      m.size = element(w[1], number);
      if (m.size == 0) fail(number, "size must be at least 1");
      have_size = true;
      continue;
    }
    if (!have_size) fail(number, "the first line must be 'size n'");
    if (head == "rel") {
      arity = declared_arity(w, number);
      current = w[1];
      m.signature.add_relation(current, arity);
      m.relations[current];
      section = Section::Rel;
    } else if (head == "fun") {
      arity = declared_arity(w, number);
      current = w[1];
      m.signature.add_function(current, arity);
      const auto slots = table_size(m.size, arity);
      m.functions[current].assign(slots, 0);
      filled.assign(slots, false);
      section = Section::Fun;
    } else if (head == "const") {
      if (w.size() != 4 || w[2] != "=") fail(number, "expected 'const NAME = v'");
      m.signature.add_constant(w[1]);
      m.constants[w[1]] = element(w[3], number);
    } else if (section == Section::Rel) {
      Tuple t = tuple(raw, number);
      if (t.size() != arity) fail(number, "tuple length differs from arity of '" + current + "'");
      for (Element e : t) {
        if (e >= m.size) fail(number, "element outside the universe");
      }
      m.relations[current].insert(std::move(t));
    } else if (section == Section::Fun) {
      const auto arrow = raw.find("->");
      if (arrow == std::string::npos) fail(number, "expected 'args -> value'");
      Tuple args = tuple(raw.substr(0, arrow), number);
      Tuple value = tuple(raw.substr(arrow + 2), number);
      if (args.size() != arity || value.size() != 1) {
        fail(number, "malformed row for function '" + current + "'");
      }
      for (Element e : args) {
        if (e >= m.size) fail(number, "element outside the universe");
      }
      if (value[0] >= m.size) fail(number, "element outside the universe");
      const std::size_t slot = table_index(m.size, args);
      if (filled[slot]) fail(number, "duplicate row for function '" + current + "'");
      filled[slot] = true;
      m.functions[current][slot] = value[0];
    } else {
      fail(number, "unexpected '" + head + "'");
    }
  }
  close_function(number);
  if (!have_size) fail(number, "missing 'size n' line");
  validate(m);
  return m;
}

FiniteStructure parse_structure(const std::string& text) {
  std::istringstream in(text);
  return read_structure(in);
}

std::string format_structure(const FiniteStructure& m) {
  std::ostringstream out;
  out << "size " << m.size << "\n";
  auto join = [](const Tuple& t) {
    if (t.empty()) return std::string("()");
    std::string s;
    for (std::size_t i = 0; i < t.size(); ++i) s += (i ? " " : "") + std::to_string(t[i]);
    return s;
  };
  for (const auto& [name, info] : m.signature.symbols()) {
    switch (info.kind) {
      case SymbolKind::Relation:
        out << "rel " << name << " arity " << info.arity << "\n";
        for (const auto& t : m.relations.at(name)) out << join(t) << "\n";
        break;
      case SymbolKind::Function: {
        out << "fun " << name << " arity " << info.arity << "\n";
        const auto& table = m.functions.at(name);
        for (std::size_t slot = 0; slot < table.size(); ++slot) {
          Tuple args(info.arity);
          std::size_t rest = slot;
          for (std::size_t k = info.arity; k-- > 0;) {
            args[k] = rest % m.size;
            rest /= m.size;
          }
          out << join(args) << " -> " << table[slot] << "\n";
        }
        break;
      }
      case SymbolKind::Constant:
        out << "const " << name << " = " << m.constants.at(name) << "\n";
        break;
    }
  }
  return out.str();
}

}  // namespace logiclab::fol
