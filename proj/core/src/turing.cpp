#include "logiclab/turing.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <sstream>
#include <tuple>

#include "logiclab/error.hpp"

namespace logiclab::tm {

namespace {

bool printable(char c) { return c > ' ' && c < 127; }

bool valid_state_name(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return printable(c) && c != ',';
  });
}

template <typename T>
std::size_t index_of(const std::vector<T>& v, const T& x) {
  return static_cast<std::size_t>(std::find(v.begin(), v.end(), x) - v.begin());
}

}  // namespace

void validate(const Machine& m) {
  std::set<std::string> states;
  for (const auto& s : m.states) {
    if (!valid_state_name(s)) throw Error(ErrorKind::InvalidInput, "invalid state name '" + s + "'");
    if (!states.insert(s).second) throw Error(ErrorKind::InvalidInput, "duplicate state '" + s + "'");
  }
  std::set<char> symbols;
  for (char c : m.alphabet) {
    if (!printable(c)) throw Error(ErrorKind::InvalidInput, "alphabet symbols must be printable");
    if (!symbols.insert(c).second) {
      throw Error(ErrorKind::InvalidInput, std::string("duplicate symbol '") + c + "'");
    }
  }
  if (!symbols.count(kBlank)) {
    throw Error(ErrorKind::InvalidInput, "alphabet must contain the blank '~'");
  }
  if (!states.count(m.start)) {
    throw Error(ErrorKind::UnknownState, "start state '" + m.start + "' is not declared");
  }
  for (const auto& [key, act] : m.transitions) {
    if (!states.count(key.first) || !states.count(act.state)) {
      throw Error(ErrorKind::UnknownState, "transition mentions an undeclared state");
    }
    if (!symbols.count(key.second) || !symbols.count(act.symbol)) {
      throw Error(ErrorKind::InvalidInput, "transition mentions a symbol outside the alphabet");
    }
  }
}

char read(const Configuration& c) {
  auto it = c.tape.find(c.head);
  return it == c.tape.end() ? kBlank : it->second;
}

Configuration initial(const Machine& m, const std::string& input) {
  for (char c : input) {
    if (c == kBlank || index_of(m.alphabet, c) == m.alphabet.size()) {
      throw Error(ErrorKind::BadInputSymbol,
                  std::string("input symbol '") + c + "' is not a non-blank alphabet symbol");
    }
  }
  Configuration c;
  c.state = m.start;
  for (std::size_t i = 0; i < input.size(); ++i) c.tape[static_cast<long>(i)] = input[i];
  return c;
}

std::optional<Configuration> step(const Machine& m, const Configuration& c) {
  if (index_of(m.states, c.state) == m.states.size()) {
    throw Error(ErrorKind::UnknownState, "state '" + c.state + "' is not declared");
  }
  auto it = m.transitions.find({c.state, read(c)});
  if (it == m.transitions.end()) return std::nullopt;
  Configuration next = c;
  if (it->second.symbol == kBlank) {
    next.tape.erase(c.head);
  } else {
    next.tape[c.head] = it->second.symbol;
  }
  next.head += it->second.move == Move::Left ? -1 : 1;
  next.state = it->second.state;
  return next;
}

std::string output_of(const Configuration& c) {
  std::string out;
  for (const auto& [pos, sym] : c.tape) out += sym;
  return out;
}

std::string format_configuration(const Configuration& c) {
  long lo = c.head, hi = c.head;
  if (!c.tape.empty()) {
    lo = std::min(lo, c.tape.begin()->first);
    hi = std::max(hi, c.tape.rbegin()->first);
  }
  std::string out = c.state + ": ";
  for (long p = lo; p <= hi; ++p) {
    auto it = c.tape.find(p);
    const char sym = it == c.tape.end() ? kBlank : it->second;
    if (p == c.head) {
      out += '[';
      out += sym;
      out += ']';
    } else {
      out += sym;
    }
  }
  return out;
}

RunResult run(const Machine& m, const std::string& input, std::uint64_t fuel) {
  Configuration c = initial(m, input);
  for (std::uint64_t steps = 0;; ++steps) {
    auto next = step(m, c);
    if (!next) return Halt{output_of(c), steps, std::move(c)};
    if (steps == fuel) return OutOfFuel{steps};
    c = std::move(*next);
  }
}

std::vector<Configuration> trace(const Machine& m, const std::string& input, std::uint64_t fuel) {
  std::vector<Configuration> out{initial(m, input)};
  for (std::uint64_t steps = 0; steps < fuel; ++steps) {
    auto next = step(m, out.back());
    if (!next) break;
    out.push_back(std::move(*next));
  }
  return out;
}

std::string unary_input(const std::vector<std::uint64_t>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out.append(args[i], '1');
  }
  return out;
}

NumericResult compute_numeric(const Machine& m, const std::vector<std::uint64_t>& args,
                              std::uint64_t fuel) {
  if (index_of(m.alphabet, '1') == m.alphabet.size()) {
    throw Error(ErrorKind::BadInputSymbol, "numeric computation needs '1' in the alphabet");
  }
  auto r = run(m, unary_input(args), fuel);
  if (auto* h = std::get_if<Halt>(&r)) {
    return static_cast<std::uint64_t>(std::count(h->output.begin(), h->output.end(), '1'));
  }
  return std::get<OutOfFuel>(r);
}

// ---------------------------------------------------------------------------
// Coding

BigNat encode_sequence(const std::vector<std::uint64_t>& seq) {
  if (std::find(seq.begin(), seq.end(), 0U) != seq.end()) {
    throw Error(ErrorKind::InvalidInput, "sequence entries must be positive");
  }
  return prime_power_product(seq);
}

std::optional<std::vector<std::uint64_t>> decode_sequence(const BigNat& n) {
  return contiguous_prime_exponents(n);
}

std::vector<std::uint64_t> describe(const Machine& m) {
  validate(m);
  std::vector<std::uint64_t> seq{kCodeVersion, m.states.size()};
  for (const auto& s : m.states) {
    seq.push_back(s.size());
    for (char c : s) seq.push_back(static_cast<unsigned char>(c));
  }
  seq.push_back(m.alphabet.size());
  for (char c : m.alphabet) seq.push_back(static_cast<unsigned char>(c));
  seq.push_back(index_of(m.states, m.start) + 1);
  std::vector<std::array<std::uint64_t, 5>> groups;
  for (const auto& [key, act] : m.transitions) {
    groups.push_back({index_of(m.states, key.first) + 1, index_of(m.alphabet, key.second) + 1,
                      index_of(m.states, act.state) + 1, index_of(m.alphabet, act.symbol) + 1,
                      act.move == Move::Left ? 1U : 2U});
  }
  std::sort(groups.begin(), groups.end());
  for (const auto& g : groups) seq.insert(seq.end(), g.begin(), g.end());
  return seq;
}

BigNat encode_machine(const Machine& m) { return encode_sequence(describe(m)); }

namespace {

struct Description {
  std::vector<std::string> states;
  std::vector<char> symbols;
  std::size_t start = 0;  // 0-based from here on
  std::size_t blank = 0;
  std::map<std::pair<std::size_t, std::size_t>, std::tuple<std::size_t, std::size_t, bool>> delta;
};

// Parses a description sequence; on failure returns nullopt and sets why.
std::optional<Description> parse_description(const std::vector<std::uint64_t>& seq,
                                             std::string& why) {
  std::size_t pos = 0;
  auto take = [&](std::uint64_t& out) {
    if (pos >= seq.size()) return false;
    out = seq[pos++];
    return true;
  };
  auto bad = [&](const std::string& what) {
    why = what;
    return std::nullopt;
  };
  std::uint64_t version = 0, n_states = 0, n_symbols = 0, start = 0;
  if (!take(version) || version != kCodeVersion) return bad("unknown description version");
  if (!take(n_states) || n_states > seq.size()) return bad("bad state count");
  Description d;
  std::set<std::string> seen_states;
  for (std::uint64_t i = 0; i < n_states; ++i) {
    std::uint64_t len = 0;
    if (!take(len) || len > seq.size()) return bad("truncated state name");
    std::string name;
    for (std::uint64_t k = 0; k < len; ++k) {
      std::uint64_t c = 0;
      if (!take(c) || c > 126 || !printable(static_cast<char>(c))) return bad("bad state name");
      name += static_cast<char>(c);
    }
    if (!valid_state_name(name) || !seen_states.insert(name).second) return bad("bad state name");
    d.states.push_back(name);
  }
  if (!take(n_symbols) || n_symbols > seq.size()) return bad("bad symbol count");
  for (std::uint64_t i = 0; i < n_symbols; ++i) {
    std::uint64_t c = 0;
    if (!take(c) || c > 126 || !printable(static_cast<char>(c))) return bad("bad symbol");
    const char sym = static_cast<char>(c);
    if (index_of(d.symbols, sym) != d.symbols.size()) return bad("duplicate symbol");
    d.symbols.push_back(sym);
  }
  d.blank = index_of(d.symbols, kBlank);
  if (d.blank == d.symbols.size()) return bad("alphabet lacks the blank");
  if (!take(start) || start == 0 || start > n_states) return bad("bad start state");
  d.start = start - 1;
  if ((seq.size() - pos) % 5 != 0) return bad("transition list is not a multiple of five");
  std::pair<std::size_t, std::size_t> previous{0, 0};
  while (pos < seq.size()) {
    const auto* g = &seq[pos];
    pos += 5;
    if (g[0] == 0 || g[0] > n_states || g[2] == 0 || g[2] > n_states) return bad("bad state index");
    if (g[1] == 0 || g[1] > n_symbols || g[3] == 0 || g[3] > n_symbols) return bad("bad symbol index");
    if (g[4] != 1 && g[4] != 2) return bad("bad direction");
    const std::pair<std::size_t, std::size_t> key{g[0], g[1]};
    if (!d.delta.empty() && !(previous < key)) return bad("transitions not strictly sorted");
    previous = key;
    d.delta[{g[0] - 1, g[1] - 1}] = {g[2] - 1, g[3] - 1, g[4] == 1};
  }
  return d;
}

std::optional<Description> description_of(const BigNat& code, std::string& why) {
  auto seq = decode_sequence(code);
  if (!seq) {
    why = "not a product of consecutive prime powers";
    return std::nullopt;
  }
  return parse_description(*seq, why);
}

UtmResult interpret(const Description& d, const std::string& input, std::uint64_t fuel) {
  std::map<long, std::size_t> tape;
  for (std::size_t i = 0; i < input.size(); ++i) {
    const std::size_t s = index_of(d.symbols, input[i]);
    if (s == d.symbols.size() || s == d.blank) {
      return Diverges{std::string("input symbol '") + input[i] + "' is outside the coded alphabet"};
    }
    tape[static_cast<long>(i)] = s;
  }
  long head = 0;
  std::size_t state = d.start;
  for (std::uint64_t steps = 0;; ++steps) {
    auto cell = tape.find(head);
    const std::size_t sym = cell == tape.end() ? d.blank : cell->second;
    auto it = d.delta.find({state, sym});
    if (it == d.delta.end()) {
      std::string out;
      for (const auto& [p, s] : tape) out += d.symbols[s];
      return UtmHalt{out, steps};
    }
    if (steps == fuel) return OutOfFuel{steps};
    const auto& [next, write, left] = it->second;
    if (write == d.blank) {
      tape.erase(head);
    } else {
      tape[head] = write;
    }
    head += left ? -1 : 1;
    state = next;
  }
}

}  // namespace

Machine decode_machine(const BigNat& code) {
  std::string why;
  auto d = description_of(code, why);
  if (!d) throw Error(ErrorKind::NotACode, to_string(code).substr(0, 40) + " is not a machine code: " + why);
  Machine m;
  m.states = d->states;
  m.alphabet = d->symbols;
  m.start = d->states[d->start];
  for (const auto& [key, act] : d->delta) {
    const auto& [next, write, left] = act;
    m.transitions[{d->states[key.first], d->symbols[key.second]}] =
        Action{d->states[next], d->symbols[write], left ? Move::Left : Move::Right};
  }
  return m;
}

bool is_code(const BigNat& code) {
  std::string why;
  return description_of(code, why).has_value();
}

UtmResult utm_run(const BigNat& code, const std::string& input, std::uint64_t fuel) {
  std::string why;
  auto d = description_of(code, why);
  if (!d) return Diverges{"not a code: " + why};
  return interpret(*d, input, fuel);
}

std::set<std::uint64_t> enumerate_we(const BigNat& code, std::uint64_t fuel) {
  std::set<std::uint64_t> out;
  std::string why;
  auto d = description_of(code, why);
  if (!d) return out;
  for (std::uint64_t n = 0; n <= fuel; ++n) {
    if (std::holds_alternative<UtmHalt>(interpret(*d, std::string(n, '1'), fuel))) out.insert(n);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Machine files

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::InvalidInput, "machine line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace

Machine read_machine(std::istream& in) {
  Machine m;
  bool have_states = false, have_alphabet = false, have_start = false;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    auto header = [&](const char* key) {
      const std::string k = key;
      return line.compare(0, k.size(), k) == 0 ? std::optional<std::string>(line.substr(k.size()))
                                               : std::nullopt;
    };
    if (auto rest = header("states:")) {
      m.states = split_words(*rest);
      have_states = true;
    } else if (auto rest = header("alphabet:")) {
      for (const auto& w : split_words(*rest)) {
        if (w.size() != 1) fail(number, "alphabet symbols are single characters, got '" + w + "'");
        m.alphabet.push_back(w[0]);
      }
      have_alphabet = true;
    } else if (auto rest = header("start:")) {
      m.start = trim(*rest);
      have_start = true;
    } else {
      const auto comma = line.find(',');
      if (comma == std::string::npos || comma + 1 >= line.size()) fail(number, "expected 'q,s -> q',s',L|R'");
      const std::string from = line.substr(0, comma);
      const char sym = line[comma + 1];
      std::string rhs = trim(line.substr(comma + 2));
      if (rhs.compare(0, 2, "->") != 0) fail(number, "expected '->'");
      rhs = trim(rhs.substr(2));
      const auto comma2 = rhs.find(',');
      if (comma2 == std::string::npos || rhs.size() != comma2 + 4 || rhs[comma2 + 2] != ',') {
        fail(number, "expected 'q',s',L|R' after '->'");
      }
      const char dir = rhs[comma2 + 3];
      if (dir != 'L' && dir != 'R' && dir != 'l' && dir != 'r') fail(number, "direction must be L or R");
      const auto key = std::make_pair(trim(from), sym);
      if (m.transitions.count(key)) fail(number, "duplicate transition for (" + key.first + "," + sym + ")");
      m.transitions[key] = Action{rhs.substr(0, comma2), rhs[comma2 + 1],
                                  (dir == 'L' || dir == 'l') ? Move::Left : Move::Right};
    }
  }
  if (!have_states || !have_alphabet || !have_start) {
    throw Error(ErrorKind::InvalidInput, "machine file needs states:, alphabet: and start: lines");
  }
  validate(m);
  return m;
}

Machine parse_machine(const std::string& text) {
  std::istringstream in(text);
  return read_machine(in);
}

std::string format_machine(const Machine& m) {
  std::ostringstream out;
  out << "states:";
  for (const auto& s : m.states) out << ' ' << s;
  out << "\nalphabet:";
  for (char c : m.alphabet) out << ' ' << c;
  out << "\nstart: " << m.start << "\n";
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::string>> rows;
  for (const auto& [key, act] : m.transitions) {
    std::string row = key.first + "," + key.second + " -> " + act.state + "," + act.symbol + "," +
                      (act.move == Move::Left ? "L" : "R");
    rows.push_back({{index_of(m.states, key.first), index_of(m.alphabet, key.second)}, row});
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& r : rows) out << r.second << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Fixtures

namespace fixtures {

Machine identity() { return parse_machine("states: a\nalphabet: 1 ~\nstart: a\n"); }

Machine successor() {
  return parse_machine(
      "states: a b\nalphabet: 1 ~\nstart: a\n"
      "a,1 -> a,1,R\n"
      "a,~ -> b,1,R\n");
}

Machine parity() {
  return parse_machine(
      "states: a b c\nalphabet: 0 1 ~\nstart: a\n"
      "a,0 -> a,~,R\n"
      "a,1 -> b,~,R\n"
      "b,0 -> b,~,R\n"
      "b,1 -> a,~,R\n"
      "a,~ -> c,1,R\n"
      "b,~ -> c,~,R\n");
}

Machine adder() {
  return parse_machine(
      "states: a b c h\nalphabet: 1 , ~\nstart: a\n"
      "a,1 -> a,1,R\n"
      "a,, -> b,1,R\n"
      "b,1 -> b,1,R\n"
      "b,~ -> c,~,L\n"
      "c,1 -> h,~,L\n");
}

Machine monus() {
  return parse_machine(
      "states: q0 q1 q2 q3 q4 h\nalphabet: 1 , ~\nstart: q0\n"
      "q0,1 -> q0,1,R\n"
      "q0,, -> q0,,,R\n"
      "q0,~ -> q1,~,L\n"
      "q1,1 -> q2,~,L\n"
      "q1,, -> h,~,L\n"
      "q2,1 -> q2,1,L\n"
      "q2,, -> q2,,,L\n"
      "q2,~ -> q3,~,R\n"
      "q3,1 -> q0,~,R\n"
      "q3,, -> q4,~,R\n"
      "q4,1 -> q4,~,R\n");
}

Machine constant_two() {
  return parse_machine(
      "states: a b c\nalphabet: 1 ~\nstart: a\n"
      "a,1 -> a,~,R\n"
      "a,~ -> b,1,R\n"
      "b,~ -> c,1,R\n");
}

Machine looper() {
  return parse_machine(
      "states: a\nalphabet: 1 ~\nstart: a\n"
      "a,1 -> a,1,R\n"
      "a,~ -> a,~,R\n");
}

Machine even_length() {
  return parse_machine(
      "states: e o\nalphabet: 1 ~\nstart: e\n"
      "e,1 -> o,1,R\n"
      "o,1 -> e,1,R\n"
      "o,~ -> o,~,R\n");
}

std::vector<std::pair<std::string, Machine>> all() {
  return {{"identity", identity()}, {"successor", successor()}, {"parity", parity()},
          {"adder", adder()},       {"monus", monus()},         {"constant", constant_two()},
          {"loop", looper()},       {"even", even_length()}};
}

}  // namespace fixtures

}  // namespace logiclab::tm
