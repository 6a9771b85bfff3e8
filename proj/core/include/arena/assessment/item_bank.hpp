#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "arena/traits.hpp"

namespace arena::assessment {

struct BfiItem {
  int number = 0;  // 1..N
  TraitId dimension = TraitId::Openness;
  bool reverse_keyed = false;
  std::string statement_second_person;
  std::string transformed_third_person;  // completes "The player ..."
  friend bool operator==(const BfiItem&, const BfiItem&) = default;
};

/// Questionnaire items plus scoring key, loaded from a tab-separated file:
///
///   @version <string>
///   @counts O=10 C=9 E=8 A=9 N=8
///   number  dimension  reverse  second_person  third_person
///
/// Load validates the schema, contiguous numbering from 1, non-empty texts
/// and that per-dimension item counts match the @counts declaration.
class ItemBank {
public:
  static ItemBank parse(const std::string& contents);
  static ItemBank load(const std::string& path);

  const std::string& version() const noexcept { return version_; }
  const std::vector<BfiItem>& items() const noexcept { return items_; }
  const BfiItem& item(int number) const;
  std::size_t size() const noexcept { return items_.size(); }
  int declared_count(TraitId t) const { return declared_counts_.at(trait_index(t)); }

private:
  std::string version_;
  std::vector<BfiItem> items_;
  std::array<int, 5> declared_counts_{};
};

/// v -> 6 - v on the 1..5 scale. RangeError outside 1..5.
int reverse_key(int v);

/// Peer-rating option to scale value before keying: A=5 (Very Accurate) ... E=1.
int option_value(char option);
/// Inverse of option_value().
char value_option(int value);

/// Per-dimension arithmetic mean of keyed item values. `raw_values` maps item
/// number -> unkeyed value in 1..5 and must cover every item in the bank.
std::array<double, 5> score_items(const ItemBank& bank, const std::map<int, int>& raw_values);

}  // namespace arena::assessment
