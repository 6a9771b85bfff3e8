#include "arena/assessment/item_bank.hpp"

#include <algorithm>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::assessment {

namespace {

const std::vector<std::string> kHeader = {"number", "dimension", "reverse", "second_person", "third_person"};

int parse_int(const std::string& s, const std::string& what, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataFileError("item bank line " + std::to_string(line_no) + ": " + what + " '" + s + "' is not an integer");
  }
}

}  // namespace

ItemBank ItemBank::parse(const std::string& contents) {
  ItemBank bank;
  bool have_counts = false;
  bool have_header = false;
  std::size_t line_no = 0;
  for (const auto& raw : text::split_lines(contents)) {
    ++line_no;
    const std::string line = text::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.rfind("@version", 0) == 0) {
      bank.version_ = text::trim(line.substr(8));
      continue;
    }
    if (line.rfind("@counts", 0) == 0) {
      for (const auto& part : text::split(text::trim(line.substr(7)), ' ')) {
        if (part.empty()) continue;
        const auto eq = part.find('=');
        if (eq == std::string::npos) throw DataFileError("item bank @counts entry '" + part + "' lacks '='");
        const auto trait = (eq == 1 ? trait_from_code(part[0]) : std::nullopt);
        if (!trait) throw DataFileError("item bank @counts names unknown dimension '" + part.substr(0, eq) + "'");
        bank.declared_counts_[trait_index(*trait)] = parse_int(part.substr(eq + 1), "count", line_no);
      }
      have_counts = true;
      continue;
    }
    auto cols = text::split(raw, '\t');
    for (auto& c : cols) c = text::trim(c);
    if (!have_header) {
      if (cols != kHeader) throw DataFileError("item bank header must be: " + text::join(kHeader, " | "));
      have_header = true;
      continue;
    }
    if (cols.size() != kHeader.size()) {
      throw DataFileError("item bank line " + std::to_string(line_no) + " has " + std::to_string(cols.size()) +
                          " columns, expected " + std::to_string(kHeader.size()));
    }
    BfiItem item;
    item.number = parse_int(cols[0], "item number", line_no);
    const auto dim = cols[1].size() == 1 ? trait_from_code(cols[1][0]) : std::nullopt;
    if (!dim) throw DataFileError("item bank line " + std::to_string(line_no) + ": unknown dimension '" + cols[1] + "'");
    item.dimension = *dim;
    const int rev = parse_int(cols[2], "reverse flag", line_no);
    if (rev != 0 && rev != 1) throw DataFileError("item bank line " + std::to_string(line_no) + ": reverse flag must be 0 or 1");
    item.reverse_keyed = rev == 1;
    item.statement_second_person = cols[3];
    item.transformed_third_person = cols[4];
    if (item.statement_second_person.empty() || item.transformed_third_person.empty()) {
      throw DataFileError("item bank line " + std::to_string(line_no) + " has an empty statement");
    }
    bank.items_.push_back(std::move(item));
  }
  if (bank.version_.empty()) throw DataFileError("item bank has no @version line");
  if (!have_counts) throw DataFileError("item bank has no @counts line");
  if (!have_header) throw DataFileError("item bank has no header row");
  if (bank.items_.empty()) throw DataFileError("item bank has no items");

  std::sort(bank.items_.begin(), bank.items_.end(), [](const auto& a, const auto& b) { return a.number < b.number; });
  for (std::size_t i = 0; i < bank.items_.size(); ++i) {
    if (bank.items_[i].number != static_cast<int>(i) + 1) {
      throw DataFileError("item bank numbers must run 1.." + std::to_string(bank.items_.size()) + " without gaps");
    }
  }
  std::array<int, 5> actual{};
  for (const auto& item : bank.items_) ++actual[trait_index(item.dimension)];
  for (auto t : kAllTraits) {
    const auto i = trait_index(t);
    if (actual[i] != bank.declared_counts_[i]) {
      throw DataFileError("item bank declares " + std::to_string(bank.declared_counts_[i]) + " " +
                          std::string(1, trait_code(t)) + " items but lists " + std::to_string(actual[i]));
    }
    if (actual[i] == 0) throw DataFileError("item bank has no items for " + std::string(trait_name(t)));
  }
  return bank;
}

ItemBank ItemBank::load(const std::string& path) { return parse(text::read_file(path)); }

const BfiItem& ItemBank::item(int number) const {
  if (number < 1 || number > static_cast<int>(items_.size())) {
    throw NotFound("no item number " + std::to_string(number));
  }
  return items_[static_cast<std::size_t>(number - 1)];
}

int reverse_key(int v) {
  if (v < 1 || v > 5) throw RangeError("scale value " + std::to_string(v) + " is outside 1..5");
  return 6 - v;
}

int option_value(char option) {
  if (option < 'A' || option > 'E') throw RangeError(std::string("option '") + option + "' is not one of A-E");
  return 5 - (option - 'A');
}

char value_option(int value) {
  if (value < 1 || value > 5) throw RangeError("scale value " + std::to_string(value) + " is outside 1..5");
  return static_cast<char>('A' + (5 - value));
}

std::array<double, 5> score_items(const ItemBank& bank, const std::map<int, int>& raw_values) {
  std::array<double, 5> sums{};
  std::array<int, 5> counts{};
  for (const auto& item : bank.items()) {
    const auto it = raw_values.find(item.number);
    if (it == raw_values.end()) throw PreconditionError("no answer for item " + std::to_string(item.number));
    const int keyed = item.reverse_keyed ? reverse_key(it->second) : it->second;
    if (keyed < 1 || keyed > 5) throw RangeError("answer to item " + std::to_string(item.number) + " is outside 1..5");
    sums[trait_index(item.dimension)] += keyed;
    ++counts[trait_index(item.dimension)];
  }
  std::array<double, 5> out{};
  for (std::size_t i = 0; i < 5; ++i) out[i] = sums[i] / counts[i];
  return out;
}

}  // namespace arena::assessment
