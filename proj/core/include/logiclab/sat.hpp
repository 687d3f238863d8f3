#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "logiclab/prop.hpp"

namespace logiclab::sat {

using Element = std::size_t;
using ElementSet = std::set<Element>;
using Family = std::vector<ElementSet>;
using Pair = std::pair<Element, Element>;

// Encoder tags carry exactly what decode_witness needs.
struct LinearExtensionTag {
  std::size_t n = 0;
  std::set<Pair> pairs;
};
struct ColoringTag {
  std::size_t vertices = 0;
  std::set<Pair> edges;  // symmetric closure, i < j and j > i both present
  std::size_t colors = 0;
};
struct TransversalTag {
  Family family;
};
struct ExactCoverTag {
  std::size_t points = 0;
  Family family;
};
struct SplittingTag {
  Family family;
};

using EncoderTag = std::variant<std::monostate, LinearExtensionTag, ColoringTag,
                                TransversalTag, ExactCoverTag, SplittingTag>;

/// A finite realizability problem: atoms plus the sentences that must all
/// be true.
struct Problem {
  std::vector<std::string> atoms;
  std::vector<prop::Sentence> constraints;
  EncoderTag tag;
};

using Witness = prop::Evaluation;

enum class SolveMode { Exhaustive, Backtracking };

struct SolveOptions {
  SolveMode mode = SolveMode::Backtracking;
  /// Backtracking decision budget.
  std::uint64_t fuel = 50'000'000;
};

inline constexpr std::size_t kMaxExhaustiveAtoms = 32;

/// Throws InvalidInput if a constraint mentions an atom outside p.atoms.
void validate(const Problem& p);

/// nullopt means UNSAT. Exhaustive mode enumerates assignments in binary
/// order with F before T; backtracking branches on the first unassigned atom,
/// T before F, pruning with three-valued evaluation of the constraints.
std::optional<Witness> solve(const Problem& p, const SolveOptions& options = {});

bool satisfies_all(const Problem& p, const Witness& w);

/// Atoms P_a_b meaning a <= b in the sought linear order.
Problem encode_linear_extension(std::size_t n, const std::set<Pair>& pairs);
/// One-hot atoms C_v_c meaning vertex v gets color c.
Problem encode_coloring(std::size_t vertices, const std::set<Pair>& edges,
                        std::size_t k);
/// Atoms F_i_x meaning the choice function maps set i to x.
Problem encode_transversal(const Family& family);
/// Atoms S_i meaning set i is in the cover.
Problem encode_exact_cover(std::size_t points, const Family& family);
/// Atoms Y_x meaning x is in the splitting set.
Problem encode_splitting(const Family& family);

struct LinearOrder {
  std::vector<Element> order;  // least first
};
struct Coloring {
  std::vector<std::size_t> colors;  // indexed by vertex
};
struct ChoiceFunction {
  std::vector<Element> choices;  // indexed by family position
};
struct Subfamily {
  std::vector<std::size_t> indices;  // increasing
};
struct SplittingSet {
  ElementSet members;
};

using Decoded =
    std::variant<LinearOrder, Coloring, ChoiceFunction, Subfamily, SplittingSet>;

/// Throws UnsatisfyingWitness if w does not satisfy p, InvalidInput if p
/// carries no encoder tag.
Decoded decode_witness(const Problem& p, const Witness& w);

/// Direct combinatorial checks, independent of the encoding.
bool is_linear_extension(std::size_t n, const std::set<Pair>& pairs,
                         const std::vector<Element>& order);
bool is_proper_coloring(std::size_t vertices, const std::set<Pair>& edges,
                        std::size_t k, const std::vector<std::size_t>& colors);
bool is_transversal(const Family& family, const std::vector<Element>& choices);
bool is_exact_cover(std::size_t points, const Family& family,
                    const std::vector<std::size_t>& indices);
bool splits(const Family& family, const ElementSet& y);

/// Line-oriented instance format: kind line, size line, one pair or set per
/// line. Throws InvalidInput with a line number on malformed input.
Problem read_instance(std::istream& in);
Problem parse_instance(const std::string& text);

std::string format_witness(const Witness& w);
/// Inverse of format_witness: `name=T` or `name=F` per line, `#` comments.
Witness parse_witness(const std::string& text);
std::string format_decoded(const Decoded& d);

}  // namespace logiclab::sat
