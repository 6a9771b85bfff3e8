#include "arena/metrics/ground_truth.hpp"

#include <set>

#include "arena/errors.hpp"
#include "arena/text.hpp"

namespace arena::metrics {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(text::trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw DataFileError("unterminated quote in ground-truth row");
  out.push_back(text::trim(cur));
  return out;
}

double parse_number(const std::string& s, const std::string& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw DataFileError(where + ": '" + s + "' is not a number");
  }
}

}  // namespace

std::vector<GroundTruth> parse_ground_truth(const std::string& csv, const assessment::ItemBank& bank) {
  std::vector<std::string> header;
  std::vector<GroundTruth> out;
  std::set<std::string> seen;
  std::size_t line_no = 0;

  std::array<int, 5> trait_col{-1, -1, -1, -1, -1};
  std::vector<int> item_col;
  std::vector<std::pair<int, std::string>> attr_cols;
  bool item_mode = false;

  for (const auto& raw : text::split_lines(csv)) {
    ++line_no;
    if (text::trim(raw).empty() || text::trim(raw).front() == '#') continue;
    auto cols = split_csv_row(raw);
    if (header.empty()) {
      header = cols;
      if (header.empty() || header[0] != "player_id") throw DataFileError("ground-truth header must start with player_id");
      item_col.assign(bank.size(), -1);
      for (std::size_t c = 1; c < header.size(); ++c) {
        const std::string& h = header[c];
        if (h.size() == 1 && trait_from_code(h[0])) {
          trait_col[trait_index(*trait_from_code(h[0]))] = static_cast<int>(c);
        } else if (h.size() > 1 && (h[0] == 'q' || h[0] == 'Q') &&
                   h.find_first_not_of("0123456789", 1) == std::string::npos) {
          const int n = std::stoi(h.substr(1));
          if (n < 1 || n > static_cast<int>(bank.size())) throw DataFileError("ground-truth column " + h + " is not an item");
          item_col[static_cast<std::size_t>(n - 1)] = static_cast<int>(c);
          item_mode = true;
        } else {
          attr_cols.emplace_back(static_cast<int>(c), h);
        }
      }
      bool all_traits = true;
      for (int c : trait_col) all_traits = all_traits && c >= 0;
      bool all_items = true;
      for (int c : item_col) all_items = all_items && c >= 0;
      if (item_mode && !all_items) throw DataFileError("ground-truth item columns must cover q1..q" + std::to_string(bank.size()));
      if (!item_mode && !all_traits) throw DataFileError("ground-truth header needs O,C,E,A,N or q1..qN columns");
      continue;
    }
    const std::string where = "ground truth line " + std::to_string(line_no);
    if (cols.size() != header.size()) throw DataFileError(where + " has the wrong number of columns");
    GroundTruth g;
    g.player_id = cols[0];
    if (g.player_id.empty()) throw DataFileError(where + " has no player_id");
    if (!seen.insert(g.player_id).second) throw DataFileError("duplicate ground truth for player " + g.player_id);
    if (item_mode) {
      std::map<int, int> raw_values;
      for (std::size_t i = 0; i < item_col.size(); ++i) {
        const double v = parse_number(cols[static_cast<std::size_t>(item_col[i])], where);
        if (v != static_cast<int>(v) || v < 1 || v > 5) throw DataFileError(where + ": item answers must be integers 1..5");
        raw_values[static_cast<int>(i) + 1] = static_cast<int>(v);
      }
      g.scores = assessment::score_items(bank, raw_values);
    } else {
      for (auto t : kAllTraits) {
        const double v = parse_number(cols[static_cast<std::size_t>(trait_col[trait_index(t)])], where);
        if (!(v >= 1.0 && v <= 5.0)) throw DataFileError(where + ": scores must lie in [1, 5]");
        g.scores[trait_index(t)] = v;
      }
    }
    for (const auto& [c, name] : attr_cols) g.attributes[name] = cols[static_cast<std::size_t>(c)];
    out.push_back(std::move(g));
  }
  if (header.empty()) throw DataFileError("ground-truth file is empty");
  return out;
}

std::vector<GroundTruth> load_ground_truth(const std::string& path, const assessment::ItemBank& bank) {
  return parse_ground_truth(text::read_file(path), bank);
}

}  // namespace arena::metrics
