#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "strfix/edit_engine.hpp"

// Reference implementations kept apart from the engine: a tiny regex model
// with its own matcher, a breadth-first search over raw edit operations, and
// a cell-by-cell re-evaluation of the cost recurrence.
namespace oracle {

// Small alphabet: every class used below has a member in it, so searching
// over these symbols alone reaches the true distance.
inline const std::string kAlphabet = "ab01-";

struct Atom {
  enum class Kind { literal, digit, lower, alternatives } kind = Kind::literal;
  char symbol = 0;
  std::vector<std::string> alternatives;
};

struct Item {
  std::vector<Atom> body;
  bool repeated = false;  // (body)+
};

struct RegexModel {
  std::vector<Item> items;

  std::string syntax() const;
  std::size_t state_count() const;
  /// Accepts `s` when every repeated item is used at most `copies` times.
  bool accepts(const std::string& s, std::size_t copies) const;
  /// Copies per group the engine unrolls for a value of length n.
  std::size_t copies_for(std::size_t n) const;
};

RegexModel random_model(std::mt19937_64& rng);
std::string random_value(std::mt19937_64& rng, std::size_t max_len);

/// Fewest insert/delete/substitute operations over kAlphabet turning
/// `value` into a string the model accepts with `copies` copies per group.
/// -1 when nothing is found within `limit` operations.
int bfs_distance(const RegexModel& model, const std::string& value, std::size_t copies, int limit);

/// Smallest Levenshtein distance from `value` to any string over kAlphabet
/// the model accepts with `copies` copies per group and at most `max_len`
/// symbols. -1 when there is none.
int enumerated_distance(const RegexModel& model, const std::string& value, std::size_t copies, std::size_t max_len);

int levenshtein(const std::string& a, const std::string& b);

struct AuditResult {
  bool ok = true;
  std::string detail;
};

/// Recomputes every cost(i, j) from its delete, insert and match/substitute
/// branches and checks the stored value and move.
AuditResult audit_recurrence(const strfix::UnrolledDag& dag, const std::u32string& value,
                             const strfix::DpMatrices& dp);

}  // namespace oracle
