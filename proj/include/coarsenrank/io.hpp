#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coarsenrank/gibbs.hpp"
#include "coarsenrank/types.hpp"

namespace coarsenrank {

// Parse failure with a 1-based line/column location and the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, std::string message, std::string token);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& message() const { return message_; }
  const std::string& token() const { return token_; }

 private:
  int line_;
  int column_;
  std::string message_;
  std::string token_;
};

// Preference lines look like "a>b>c" (most preferred first). Blank lines and
// lines starting with '#' are skipped. Item ids are interned in order of first
// appearance. CRLF input is accepted; writers emit LF.
PreferenceDataset parse_preferences(std::string_view text);

// One item id per line, best first; must cover the item universe exactly.
Ranking parse_truth(std::string_view text, const std::vector<std::string>& item_ids);
Ranking parse_truth(std::string_view text, const PreferenceDataset& ds);

// CSV "item,score,rank" sorted by rank, scores at 12 significant digits.
std::string write_scores(const ItemScores& theta, const PreferenceDataset& ds);

struct ParsedScores {
  // Rank order (best first).
  std::vector<std::string> ids;
  std::vector<double> scores;
};
ParsedScores parse_scores(std::string_view text);

// CSV "alpha,f,g,dic"; +inf alphas round-trip as "inf".
std::string write_dic_curve(const std::vector<DicPoint>& curve);
std::vector<DicPoint> parse_dic_curve(std::string_view text);

// 12-significant-digit shortest-form rendering used by all writers.
std::string format_double(double value);

}  // namespace coarsenrank
