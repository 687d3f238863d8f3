#pragma once

// Reference implementations written independently of the library code they
// check. They favour obviousness over speed.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "logiclab/bignat.hpp"
#include "logiclab/fol.hpp"
#include "logiclab/hf.hpp"
#include "logiclab/prop.hpp"
#include "logiclab/sat.hpp"

namespace logiclab::testing {

// Propositional

bool oracle_eval(const prop::Sentence& s, const std::map<std::string, bool>& e);
std::vector<std::string> oracle_atoms(const prop::Sentence& s);
bool oracle_equivalent(const prop::Sentence& a, const prop::Sentence& b);
/// Literal, conjunction of literals, or a disjunction of those, with any
/// bracketing of the conjunctions and disjunctions.
bool oracle_is_dnf(const prop::Sentence& s);

// Combinatorial problems by exhaustive search

bool brute_linear_extension(std::size_t n, const std::set<sat::Pair>& pairs);
bool brute_coloring(std::size_t vertices, const std::set<sat::Pair>& edges, std::size_t k);
/// Distinct representatives.
bool brute_transversal(const sat::Family& family);
bool brute_exact_cover(std::size_t points, const sat::Family& family);
bool brute_splitting(const sat::Family& family);

// First-order

using OracleEnv = std::map<std::string, std::size_t>;
bool oracle_satisfies(const fol::FiniteStructure& m, const fol::Formula& f, OracleEnv env = {});

/// Every structure of the given size for the signature R/2, f/1. Stops when
/// visit returns false.
void for_each_small_structure(std::size_t size,
                              const std::function<bool(const fol::FiniteStructure&)>& visit);

// Hereditarily finite sets

/// Evaluates f as a plain first-order formula over the transitive closure
/// of the environment's values, with E read as membership.
bool naive_delta0(const fol::Formula& f, const hf::Environment& env);
std::vector<hf::HFSet> transitive_closure(const std::vector<hf::HFSet>& roots);

// Arithmetic

std::optional<std::uint64_t> brute_crt(const std::vector<std::uint64_t>& moduli,
                                       const std::vector<std::uint64_t>& residues);

// Turing machines

struct ParityRun {
  std::string output;
  std::uint64_t steps;
};
/// The parity fixture: erase the word left to right tracking parity in the
/// state, then write 1 on the first blank iff the number of 1s was even.
ParityRun parity_by_hand(const std::string& word);

}  // namespace logiclab::testing
