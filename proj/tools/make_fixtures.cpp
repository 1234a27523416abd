// Writes the synthetic fixture corpus used by the tests:
//   fixture_corpus.jsonl       60 items, 20 per format
//   fixture_planted.jsonl      predictions; 24 items carry one planted mutation
//   fixture_planted_counts.json  expected error totals for fixture_planted.jsonl
// Output is a pure function of the fixed seed.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"

namespace {

using Grid = std::vector<std::vector<std::string>>;

std::mt19937 rng(20230920);

std::size_t draw(std::size_t n) { return static_cast<std::size_t>(rng() % n); }

std::string integer(std::size_t lo, std::size_t hi) { return std::to_string(lo + draw(hi - lo + 1)); }

std::string one_decimal(std::size_t lo, std::size_t hi) {
  const std::size_t tenths = lo * 10 + draw((hi - lo) * 10);
  // Keep a nonzero last digit so a trailing zero can be planted later.
  const std::size_t v = tenths % 10 == 0 ? tenths + 1 : tenths;
  return std::to_string(v / 10) + "." + std::to_string(v % 10);
}

const std::vector<std::string> kTeams = {"Hawks",  "Celtics", "Nets",    "Hornets", "Bulls",
                                         "Cavaliers", "Mavericks", "Nuggets", "Pistons", "Warriors",
                                         "Rockets", "Pacers",  "Clippers", "Lakers", "Grizzlies",
                                         "Heat",   "Bucks",   "Timberwolves", "Pelicans", "Knicks"};
const std::vector<std::string> kFirst = {"Jalen", "Marcus", "Devin", "Tyrese", "Kevin", "Jaylen",
                                         "Anthony", "Chris", "Darius", "Malik", "Trae", "Zach",
                                         "Miles", "Luka", "Scottie", "Bam", "Jrue", "Cade"};
const std::vector<std::string> kLast = {"Green", "Smart", "Booker", "Maxey", "Love", "Brown",
                                        "Davis", "Paul", "Garland", "Monk", "Young", "LaVine",
                                        "Bridges", "Doncic", "Barnes", "Adebayo", "Holiday",
                                        "Cunningham", "Allen", "Murray"};

struct RawDoc {
  Grid team;    // header + rows
  Grid player;  // header + rows
};

std::string render_rows(const Grid& g) {
  std::string out;
  for (const auto& row : g) {
    out += "|";
    for (const auto& cell : row) out += " " + cell + " |";
    out += "\n";
  }
  return out;
}

std::string render_raw(const RawDoc& d) {
  return "Team:\n" + render_rows(d.team) + "\nPlayer:\n" + render_rows(d.player);
}

RawDoc make_raw(std::size_t k) {
  RawDoc d;
  d.team.push_back({"Team", "Wins", "Losses", "PTS", "FG_PCT", "REB", "AST", "TOV", "STL"});
  const std::size_t a = (2 * k) % kTeams.size();
  for (std::size_t t : {a, a + 1}) {
    d.team.push_back({kTeams[t], integer(5, 40), integer(5, 40), integer(85, 130),
                      one_decimal(38, 55) + "%", integer(30, 55), integer(15, 32), integer(8, 20),
                      integer(4, 12)});
  }
  d.player.push_back({"Player", "MIN", "PTS", "REB", "AST", "FG", "FG_PCT", "STL", "BLK"});
  const std::size_t players = 11 + k % 4;
  for (std::size_t p = 0; p < players; ++p) {
    const std::string name = kFirst[(k + p) % kFirst.size()] + " " + kLast[(3 * k + p) % kLast.size()];
    d.player.push_back({name, integer(8, 42), integer(0, 38), integer(0, 15), integer(0, 12),
                        integer(0, 14) + "-" + integer(15, 25), one_decimal(20, 70) + "%",
                        integer(0, 4), integer(0, 4)});
  }
  return d;
}

struct LatexDoc {
  std::string caption;
  std::string spec;
  Grid rows;
};

std::string render_latex(const LatexDoc& d) {
  std::string out = "\\begin{table}[h]\n\\centering\n\\caption{" + d.caption + "}\n";
  out += "\\begin{tabular}{" + d.spec + "}\n\\hline\n";
  for (const auto& row : d.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? " & " : "") + row[c];
    out += " \\\\\n";
  }
  out += "\\hline\n\\end{tabular}\n\\end{table}\n";
  return out;
}

LatexDoc make_latex(std::size_t k) {
  static const std::vector<std::string> kMethods = {"Baseline", "Ours", "CRF", "BiLSTM", "T5-base",
                                                    "BART", "Pointer", "Seq2Seq"};
  static const std::vector<std::string> kCaptions = {"Accuracy on the test split",
                                                     "Ablation results", "Per-domain F1",
                                                     "Latency in milliseconds"};
  LatexDoc d;
  const std::size_t rows = k % 4 == 0 ? 2 : 3;  // mean 2.75
  const std::size_t cols = k % 20 < 9 ? 5 : 4;   // mean 4.45
  d.caption = kCaptions[k % kCaptions.size()] + " (" + std::to_string(k + 1) + ")";
  d.spec = "l" + std::string(cols - 1, k % 2 ? 'c' : 'r');
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<std::string> row = {kMethods[(k + r) % kMethods.size()]};
    for (std::size_t c = 1; c < cols; ++c) row.push_back(one_decimal(10, 95));
    d.rows.push_back(row);
  }
  return d;
}

std::string render_html(const Grid& g, std::size_t k) {
  std::string out = "<html><body>\n<h2>Weather report " + std::to_string(k + 1) + "</h2>\n<table>\n";
  for (std::size_t r = 0; r < g.size(); ++r) {
    out += "<tr>";
    const char* tag = r == 0 ? "th" : "td";
    for (const auto& cell : g[r]) out += std::string("<") + tag + ">" + cell + "</" + tag + ">";
    out += "</tr>\n";
  }
  out += "</table>\n</body></html>\n";
  return out;
}

Grid make_html(std::size_t k) {
  static const std::vector<std::string> kCities = {"Oslo", "Lima", "Cairo", "Perth", "Quito",
                                                   "Dakar", "Hanoi", "Riga", "Porto", "Austin",
                                                   "Nairobi", "Kyoto"};
  Grid g = {{"City", "High", "Low", "Rain"}};
  for (std::size_t r = 0; r < 6; ++r) {
    g.push_back({kCities[(k + r) % kCities.size()], integer(10, 35), integer(-5, 9),
                 integer(0, 80) + "%"});
  }
  return g;
}

// Planted mutations; each touches one cell or one row.
enum class Mutation { kDeleteRow, kRenameColumn, kCorruptNumber, kReformatNumber };

struct Counts {
  std::size_t structure = 0, naming = 0, element = 0, format = 0;
};

void record(Counts& c, Mutation m) {
  switch (m) {
    case Mutation::kDeleteRow: ++c.structure; break;
    case Mutation::kRenameColumn: ++c.naming; break;
    case Mutation::kCorruptNumber: ++c.element; break;
    case Mutation::kReformatNumber: ++c.format; break;
  }
}

// g[0] is the header row.
void mutate(Grid& g, Mutation m, std::size_t k) {
  const std::size_t row = 1 + k % (g.size() - 1);
  const std::size_t col = 1 + k % (g[row].size() - 1);
  std::string& cell = g[row][col];
  switch (m) {
    case Mutation::kDeleteRow:
      g.erase(g.begin() + static_cast<std::ptrdiff_t>(row));
      break;
    case Mutation::kRenameColumn:
      g[0][col] = g[0][col] + "_total";
      break;
    case Mutation::kCorruptNumber: {
      // Shift the leading integer, keeping any suffix.
      std::size_t used = 0;
      const long v = std::stol(cell, &used);
      cell = std::to_string(v + 7) + cell.substr(used);
      break;
    }
    case Mutation::kReformatNumber:
      if (!cell.empty() && cell.back() == '%') {
        cell.pop_back();
      } else if (cell.find('.') != std::string::npos) {
        cell += "0";
      } else {
        cell += ".0";
      }
      break;
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : ".";
  std::filesystem::create_directories(dir);
  std::ofstream corpus(dir / "fixture_corpus.jsonl", std::ios::binary);
  std::ofstream planted(dir / "fixture_planted.jsonl", std::ios::binary);
  Counts counts;

  auto write_item = [&](const std::string& id, const char* format, const std::string& instruction,
                        const std::string& input, const std::string& output,
                        const std::string& prediction) {
    corpus << nlohmann::ordered_json{{"id", id},         {"instruction", instruction},
                                     {"input", input},   {"output", output},
                                     {"format", format}}.dump()
           << "\n";
    planted << nlohmann::ordered_json{{"id", id}, {"prediction", prediction}}.dump() << "\n";
  };

  const Mutation kCycle[] = {Mutation::kDeleteRow, Mutation::kRenameColumn,
                             Mutation::kCorruptNumber, Mutation::kReformatNumber};

  for (std::size_t k = 0; k < 20; ++k) {
    RawDoc d = make_raw(k);
    const std::string gold = render_raw(d);
    std::string pred = gold;
    if (k < 8) {
      const Mutation m = kCycle[k % 4];
      mutate(d.player, m, k);
      record(counts, m);
      pred = render_raw(d);
    }
    char id[32];
    std::snprintf(id, sizeof id, "raw-%02zu", k);
    write_item(id, "raw_text",
               "Generate the Team and Player box-score tables described by the game summary.",
               "The " + d.team[1][0] + " met the " + d.team[2][0] + " in a game decided late.",
               gold, pred);
  }
  for (std::size_t k = 0; k < 20; ++k) {
    LatexDoc d = make_latex(k);
    const std::string gold = render_latex(d);
    std::string pred = gold;
    if (k < 8) {
      // No header row in these tables, so renames are replaced by deletions.
      Mutation m = kCycle[k % 4];
      if (m == Mutation::kRenameColumn) m = Mutation::kDeleteRow;
      Grid rows = d.rows;
      rows.insert(rows.begin(), std::vector<std::string>(rows[0].size()));  // stand-in header
      mutate(rows, m, k);
      rows.erase(rows.begin());
      d.rows = rows;
      record(counts, m);
      pred = render_latex(d);
    }
    char id[32];
    std::snprintf(id, sizeof id, "latex-%02zu", k);
    write_item(id, "latex", "Write the LaTeX table that reports these results.",
               "Results for " + d.rows[0][0] + " and related methods.", gold, pred);
  }
  for (std::size_t k = 0; k < 20; ++k) {
    Grid g = make_html(k);
    const std::string gold = render_html(g, k);
    std::string pred = gold;
    if (k < 8) {
      const Mutation m = kCycle[(k + 1) % 4];
      mutate(g, m, k);
      record(counts, m);
      pred = render_html(g, k);
    }
    char id[32];
    std::snprintf(id, sizeof id, "html-%02zu", k);
    write_item(id, "html", "Produce an HTML table of the forecast.",
               "Forecast for " + g[1][0] + " and five other cities.", gold, pred);
  }

  std::ofstream(dir / "fixture_planted_counts.json", std::ios::binary)
      << nlohmann::ordered_json{{"structure_errors", counts.structure},
                                {"structure_naming_errors", counts.naming},
                                {"element_errors", counts.element},
                                {"element_format_errors", counts.format}}
             .dump(2)
      << "\n";
  std::cout << "wrote fixtures to " << dir.string() << "\n";
  return 0;
}
