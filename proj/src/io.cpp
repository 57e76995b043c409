#include "coarsenrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "coarsenrank/ranking.hpp"

namespace coarsenrank {

namespace {

struct Line {
  int number;        // 1-based
  std::string_view text;  // without the newline (and without a trailing \r)
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view line = end == std::string_view::npos
                                ? text.substr(start)
                                : text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (end == std::string_view::npos) {
      if (!line.empty()) lines.push_back({number, line});
      break;
    }
    lines.push_back({number, line});
    start = end + 1;
    ++number;
  }
  return lines;
}

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t") == std::string_view::npos;
}

bool is_comment(std::string_view s) {
  const std::size_t i = s.find_first_not_of(" \t");
  return i != std::string_view::npos && s[i] == '#';
}

// Returns the trimmed view and the 1-based column of its first character.
std::pair<std::string_view, int> trim(std::string_view s, int base_column) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {s.substr(0, 0), base_column};
  std::size_t e = s.find_last_not_of(" \t");
  return {s.substr(b, e - b + 1), base_column + static_cast<int>(b)};
}

void check_id(std::string_view id, int line, int column) {
  for (char c : id)
    if (c == ',' || c == '>' || c == '#' || c == ' ' || c == '\t')
      throw ParseError(line, column, "invalid character in item id",
                       std::string(id));
}

double parse_double(std::string_view token, int line, int column,
                    const char* what) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line, column, std::string("invalid ") + what,
                     std::string(token));
  return value;
}

long parse_int(std::string_view token, int line, int column, const char* what) {
  long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw ParseError(line, column, std::string("invalid ") + what,
                     std::string(token));
  return value;
}

std::vector<std::pair<std::string_view, int>> split_fields(std::string_view line,
                                                           char sep) {
  std::vector<std::pair<std::string_view, int>> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t end = line.find(sep, start);
    std::string_view raw = end == std::string_view::npos
                               ? line.substr(start)
                               : line.substr(start, end - start);
    fields.emplace_back(raw, static_cast<int>(start) + 1);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return fields;
}

}  // namespace

ParseError::ParseError(int line, int column, std::string message, std::string token)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message +
                         (token.empty() ? "" : " ('" + token + "')")),
      line_(line),
      column_(column),
      message_(std::move(message)),
      token_(std::move(token)) {}

PreferenceDataset parse_preferences(std::string_view text) {
  std::vector<Preference> prefs;
  std::vector<std::string> ids;
  std::unordered_map<std::string, int> index_by_id;
  int last_line = 0;
  for (const Line& line : split_lines(text)) {
    last_line = line.number;
    if (is_blank(line.text) || is_comment(line.text)) continue;
    std::vector<int> items;
    std::unordered_set<int> seen;
    for (auto [raw, col0] : split_fields(line.text, '>')) {
      auto [token, column] = trim(raw, col0);
      if (token.empty())
        throw ParseError(line.number, column, "empty item id", "");
      check_id(token, line.number, column);
      std::string id(token);
      auto it = index_by_id.find(id);
      int index;
      if (it == index_by_id.end()) {
        index = static_cast<int>(ids.size());
        ids.push_back(id);
        index_by_id.emplace(std::move(id), index);
      } else {
        index = it->second;
      }
      if (!seen.insert(index).second)
        throw ParseError(line.number, column, "duplicate item in preference",
                         std::string(token));
      items.push_back(index);
    }
    if (items.size() < 2)
      throw ParseError(line.number, 1, "preference needs at least two items",
                       std::string(line.text));
    prefs.emplace_back(std::move(items));
  }
  if (prefs.empty())
    throw ParseError(std::max(last_line, 1), 1, "no preferences found", "");
  return PreferenceDataset(std::move(prefs), std::move(ids));
}

Ranking parse_truth(std::string_view text,
                    const std::vector<std::string>& item_ids) {
  std::unordered_map<std::string_view, int> index_by_id;
  for (int m = 0; m < static_cast<int>(item_ids.size()); ++m)
    index_by_id.emplace(item_ids[m], m);

  std::vector<int> order;
  std::vector<char> seen(item_ids.size(), 0);
  int last_line = 0;
  for (const Line& line : split_lines(text)) {
    last_line = line.number;
    if (is_blank(line.text) || is_comment(line.text)) continue;
    auto [token, column] = trim(line.text, 1);
    check_id(token, line.number, column);
    auto it = index_by_id.find(token);
    if (it == index_by_id.end())
      throw ParseError(line.number, column, "unknown item id", std::string(token));
    if (seen[it->second])
      throw ParseError(line.number, column, "duplicate item id", std::string(token));
    seen[it->second] = 1;
    order.push_back(it->second);
  }
  if (order.size() != item_ids.size()) {
    std::string missing;
    std::string first;
    for (int m = 0; m < static_cast<int>(item_ids.size()); ++m) {
      if (seen[m]) continue;
      if (first.empty()) first = item_ids[m];
      if (!missing.empty()) missing += ", ";
      missing += item_ids[m];
    }
    throw ParseError(last_line + 1, 1, "missing items: " + missing, first);
  }
  return Ranking(std::move(order));
}

Ranking parse_truth(std::string_view text, const PreferenceDataset& ds) {
  return parse_truth(text, ds.item_ids());
}

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::string write_scores(const ItemScores& theta, const PreferenceDataset& ds) {
  if (theta.size() != ds.num_items())
    throw std::invalid_argument("write_scores: score vector does not match items");
  const Ranking ranking = scores_to_ranking(theta);
  std::string out = "item,score,rank\n";
  for (int r = 0; r < ranking.size(); ++r) {
    const int item = ranking.at(r);
    out += ds.item_id(item);
    out += ',';
    out += format_double(theta[item]);
    out += ',';
    out += std::to_string(r + 1);
    out += '\n';
  }
  return out;
}

ParsedScores parse_scores(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && is_blank(lines[i].text)) ++i;
  if (i == lines.size() || lines[i].text != "item,score,rank")
    throw ParseError(i == lines.size() ? 1 : lines[i].number, 1,
                     "expected header 'item,score,rank'",
                     i == lines.size() ? "" : std::string(lines[i].text));
  ParsedScores result;
  std::unordered_set<std::string> seen;
  for (++i; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (is_blank(line.text)) continue;
    auto fields = split_fields(line.text, ',');
    if (fields.size() != 3)
      throw ParseError(line.number, 1, "expected 3 comma-separated fields",
                       std::string(line.text));
    auto [id, id_col] = trim(fields[0].first, fields[0].second);
    if (id.empty()) throw ParseError(line.number, id_col, "empty item id", "");
    check_id(id, line.number, id_col);
    if (!seen.insert(std::string(id)).second)
      throw ParseError(line.number, id_col, "duplicate item id", std::string(id));
    auto [score_tok, score_col] = trim(fields[1].first, fields[1].second);
    const double score = parse_double(score_tok, line.number, score_col, "score");
    if (!(score >= 0.0))
      throw ParseError(line.number, score_col, "negative score",
                       std::string(score_tok));
    auto [rank_tok, rank_col] = trim(fields[2].first, fields[2].second);
    const long rank = parse_int(rank_tok, line.number, rank_col, "rank");
    if (rank != static_cast<long>(result.ids.size()) + 1)
      throw ParseError(line.number, rank_col, "rank out of sequence",
                       std::string(rank_tok));
    result.ids.emplace_back(id);
    result.scores.push_back(score);
  }
  if (result.ids.empty())
    throw ParseError(lines.empty() ? 1 : lines.back().number, 1, "no scores found",
                     "");
  return result;
}

std::string write_dic_curve(const std::vector<DicPoint>& curve) {
  std::string out = "alpha,f,g,dic\n";
  for (const DicPoint& p : curve) {
    out += format_double(p.alpha);
    out += ',';
    out += format_double(p.f);
    out += ',';
    out += format_double(p.g);
    out += ',';
    out += format_double(p.dic);
    out += '\n';
  }
  return out;
}

std::vector<DicPoint> parse_dic_curve(std::string_view text) {
  const std::vector<Line> lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && is_blank(lines[i].text)) ++i;
  if (i == lines.size() || lines[i].text != "alpha,f,g,dic")
    throw ParseError(i == lines.size() ? 1 : lines[i].number, 1,
                     "expected header 'alpha,f,g,dic'",
                     i == lines.size() ? "" : std::string(lines[i].text));
  std::vector<DicPoint> curve;
  for (++i; i < lines.size(); ++i) {
    const Line& line = lines[i];
    if (is_blank(line.text)) continue;
    auto fields = split_fields(line.text, ',');
    if (fields.size() != 4)
      throw ParseError(line.number, 1, "expected 4 comma-separated fields",
                       std::string(line.text));
    double values[4];
    const char* names[4] = {"alpha", "f", "g", "dic"};
    for (int j = 0; j < 4; ++j) {
      auto [tok, col] = trim(fields[j].first, fields[j].second);
      values[j] = parse_double(tok, line.number, col, names[j]);
    }
    curve.push_back(DicPoint{values[0], values[1], values[2], values[3]});
  }
  return curve;
}

}  // namespace coarsenrank
