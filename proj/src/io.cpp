#include "mcdm/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mcdm/text.hpp"

namespace mcdm {

namespace {

using Row = std::vector<std::string>;

// Splits one physical line into cells; double quotes group commas and "" escapes a quote.
Row split_csv_line(std::string_view line) {
    Row cells;
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
            cells.emplace_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    cells.emplace_back(trim(cur));
    while (!cells.empty() && cells.back().empty()) cells.pop_back();
    return cells;
}

std::string where(std::size_t block_number, const CsvBlock& block, std::size_t row, std::size_t col) {
    return "block " + std::to_string(block_number) + ", line " + std::to_string(block.first_line + row) +
           ", column " + std::to_string(col + 1);
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos && trim(s) == s) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void require_blocks(const CsvBlockFile& file, std::size_t expected, std::string_view format) {
    if (file.blocks.size() != expected) {
        throw Error(ErrorKind::BlockCountMismatch, std::string(format) + " input '" + file.source_path + "' needs " +
                                                       std::to_string(expected) + " blocks, found " +
                                                       std::to_string(file.blocks.size()));
    }
}

void require_nonnegative(const LabeledMatrix& m, std::size_t block_number) {
    for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
            if (m.values(i, j) < 0.0) {
                throw Error(ErrorKind::NegativeEntry, "block " + std::to_string(block_number) + ", row '" +
                                                          m.row_labels[static_cast<std::size_t>(i)] + "', column '" +
                                                          m.col_labels[static_cast<std::size_t>(j)] +
                                                          "' is negative");
            }
        }
    }
}

// Numeric vector stored as a single row or column (after label stripping).
std::vector<double> block_vector(const CsvBlock& block, std::size_t block_number, std::size_t expected,
                                 std::string_view what) {
    const LabeledMatrix m = block_matrix(block, block_number);
    if (m.values.rows() != 1 && m.values.cols() != 1) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " (block " + std::to_string(block_number) +
                                                      ") must be a single row or column, got " + shape(m.values));
    }
    if (static_cast<std::size_t>(m.values.size()) != expected) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " (block " + std::to_string(block_number) +
                                                      ") has " + std::to_string(m.values.size()) +
                                                      " entries, expected " + std::to_string(expected));
    }
    return {m.values.data(), m.values.data() + m.values.size()};
}

// Criterion references stored as a single row or column, optionally with a leading label cell.
std::vector<std::size_t> block_criteria(const CsvBlock& block, std::size_t block_number, std::size_t expected,
                                        const std::vector<std::string>& criteria, std::string_view what) {
    Row cells;
    if (block.rows() == 1) {
        cells = block.cells[0];
    } else if (block.cols() == 1) {
        for (const auto& r : block.cells) cells.push_back(r[0]);
    } else if (block.rows() == 2) {
        cells = block.cells[1];
    } else if (block.cols() == 2) {
        for (const auto& r : block.cells) cells.push_back(r[1]);
    } else {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " (block " + std::to_string(block_number) +
                                                      ") must be a single row or column of criterion names");
    }
    const auto resolves = [&](const std::string& cell) {
        if (std::find(criteria.begin(), criteria.end(), cell) != criteria.end()) return true;
        const auto num = parse_double(cell);
        return num && *num >= 1.0 && *num <= static_cast<double>(criteria.size()) && *num == std::floor(*num);
    };
    if (cells.size() == expected + 1 || (cells.size() > 1 && !resolves(cells.front()))) cells.erase(cells.begin());
    if (cells.size() != expected) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " (block " + std::to_string(block_number) +
                                                      ") names " + std::to_string(cells.size()) +
                                                      " criteria, expected one per state (" +
                                                      std::to_string(expected) + ")");
    }
    std::vector<std::size_t> out;
    for (const auto& cell : cells) {
        const auto it = std::find(criteria.begin(), criteria.end(), cell);
        if (it != criteria.end()) {
            out.push_back(static_cast<std::size_t>(it - criteria.begin()));
        } else if (resolves(cell)) {
            out.push_back(static_cast<std::size_t>(*parse_double(cell)) - 1);
        } else {
            throw Error(ErrorKind::UnknownCriterionLabel, std::string(what) + " (block " +
                                                              std::to_string(block_number) +
                                                              ") references unknown criterion '" + cell + "'");
        }
    }
    return out;
}

PairwiseMatrix block_pairwise(const CsvBlock& block, std::size_t block_number, std::string_view prefix) {
    const LabeledMatrix m = block_matrix(block, block_number, prefix, prefix);
    if (m.values.rows() != m.values.cols()) {
        throw Error(ErrorKind::NonSquareBlock, "block " + std::to_string(block_number) + " is " + shape(m.values) +
                                                   ", pairwise comparisons must be square");
    }
    for (Eigen::Index i = 0; i < m.values.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.values.cols(); ++j) {
            if (!(m.values(i, j) > 0.0)) {
                throw Error(ErrorKind::NonPositiveEntry, "block " + std::to_string(block_number) + ", row " +
                                                             std::to_string(i + 1) + ", column " +
                                                             std::to_string(j + 1) + " is not positive");
            }
        }
    }
    std::vector<std::string> labels = m.has_col_labels ? m.col_labels : m.row_labels;
    try {
        return PairwiseMatrix(m.values, std::move(labels));
    } catch (const Error& e) {
        throw Error(e.kind(), "block " + std::to_string(block_number) + ": " + e.what());
    }
}

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

CsvBlockFile parse_csv_blocks(std::string_view text, std::string source_path) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    CsvBlockFile file;
    file.source_path = std::move(source_path);

    CsvBlock current;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    const auto flush = [&] {
        if (current.cells.empty()) return;
        std::size_t width = 0;
        for (const auto& r : current.cells) width = std::max(width, r.size());
        for (auto& r : current.cells) r.resize(width);
        file.blocks.push_back(std::move(current));
        current = CsvBlock{};
    };
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        Row cells = split_csv_line(line);
        if (cells.empty()) {
            flush();
        } else {
            if (current.cells.empty()) current.first_line = line_no;
            current.cells.push_back(std::move(cells));
        }
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    flush();
    return file;
}

CsvBlockFile read_csv_blocks(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open '" + path.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_csv_blocks(ss.str(), path.string());
}

LabeledMatrix block_matrix(const CsvBlock& block, std::size_t block_number, std::string_view row_prefix,
                           std::string_view col_prefix) {
    const std::size_t rows = block.rows();
    const std::size_t cols = block.cols();
    const auto numeric = [&](std::size_t r, std::size_t c) { return parse_double(block.cells[r][c]).has_value(); };

    LabeledMatrix out;
    for (std::size_t c = 1; c < cols && !out.has_col_labels; ++c) out.has_col_labels = !numeric(0, c);
    if (cols == 1 && rows > 1) out.has_col_labels = !numeric(0, 0);
    const std::size_t r0 = out.has_col_labels ? 1 : 0;
    for (std::size_t r = r0; r < rows && !out.has_row_labels; ++r) out.has_row_labels = !numeric(r, 0);
    const std::size_t c0 = out.has_row_labels ? 1 : 0;

    if (r0 >= rows || c0 >= cols) {
        throw Error(ErrorKind::ParseError, "block " + std::to_string(block_number) + " (line " +
                                               std::to_string(block.first_line) + ") contains labels but no numbers");
    }
    out.values.resize(static_cast<Eigen::Index>(rows - r0), static_cast<Eigen::Index>(cols - c0));
    for (std::size_t r = r0; r < rows; ++r) {
        for (std::size_t c = c0; c < cols; ++c) {
            const auto v = parse_double(block.cells[r][c]);
            if (!v) {
                throw Error(ErrorKind::ParseError, where(block_number, block, r, c) + ": '" + block.cells[r][c] +
                                                       "' is not a number");
            }
            out.values(static_cast<Eigen::Index>(r - r0), static_cast<Eigen::Index>(c - c0)) = *v;
        }
    }
    if (out.has_col_labels) {
        out.col_labels.assign(block.cells[0].begin() + static_cast<std::ptrdiff_t>(c0), block.cells[0].end());
    } else {
        out.col_labels = default_labels(col_prefix, cols - c0);
    }
    if (out.has_row_labels) {
        for (std::size_t r = r0; r < rows; ++r) out.row_labels.push_back(block.cells[r][0]);
    } else {
        out.row_labels = default_labels(row_prefix, rows - r0);
    }
    return out;
}

AhpInput read_ahp_csv(const CsvBlockFile& file) {
    if (file.blocks.empty()) {
        throw Error(ErrorKind::BlockCountMismatch, "AHP input '" + file.source_path + "' is empty");
    }
    PairwiseMatrix criteria = block_pairwise(file.blocks[0], 1, "C");
    require_blocks(file, criteria.size() + 1, "AHP");

    std::vector<PairwiseMatrix> alternatives;
    for (std::size_t b = 1; b < file.blocks.size(); ++b) {
        alternatives.push_back(block_pairwise(file.blocks[b], b + 1, "A"));
        if (alternatives.back().size() != alternatives.front().size()) {
            throw Error(ErrorKind::DimensionMismatch, "block " + std::to_string(b + 1) + " compares " +
                                                          std::to_string(alternatives.back().size()) +
                                                          " alternatives, block 2 compares " +
                                                          std::to_string(alternatives.front().size()));
        }
    }
    return {std::move(criteria), std::move(alternatives)};
}

StratifiedModel read_smcdm_csv(const CsvBlockFile& file, ProbabilityMode mode) {
    require_blocks(file, 3, "SMCDM");
    const LabeledMatrix comparison = block_matrix(file.blocks[0], 1, "A", "C");
    const LabeledMatrix states = block_matrix(file.blocks[1], 2, "C", "S");
    require_nonnegative(comparison, 1);
    require_nonnegative(states, 2);
    if (states.values.rows() != comparison.values.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "comparison matrix (block 1) has " +
                                                      std::to_string(comparison.values.cols()) +
                                                      " criteria but the state-criteria matrix (block 2) has " +
                                                      std::to_string(states.values.rows()) + " rows");
    }
    const auto s = static_cast<std::size_t>(states.values.cols());
    std::vector<double> likelihood = block_vector(file.blocks[2], 3, s, "likelihood vector");
    for (double p : likelihood) {
        if (p < 0.0) throw Error(ErrorKind::NegativeEntry, "likelihood vector (block 3) has a negative entry");
    }
    std::vector<std::string> criteria = comparison.has_col_labels ? comparison.col_labels
                                        : states.has_row_labels   ? states.row_labels
                                                                  : comparison.col_labels;
    std::vector<std::string> state_names = states.has_col_labels ? states.col_labels : std::vector<std::string>{};
    return StratifiedModel(comparison.values, states.values, std::move(likelihood), mode, comparison.row_labels,
                           std::move(criteria), std::move(state_names));
}

SbwmModel read_sbwm_csv(const CsvBlockFile& file) {
    require_blocks(file, 6, "SBWM");
    const LabeledMatrix comparison = block_matrix(file.blocks[0], 1, "A", "C");
    const LabeledMatrix to_worst = block_matrix(file.blocks[1], 2, "C", "S");
    const LabeledMatrix to_best = block_matrix(file.blocks[2], 3, "C", "S");
    require_nonnegative(comparison, 1);
    const auto n = comparison.values.cols();
    for (const auto* m : {&to_worst, &to_best}) {
        if (m->values.rows() != n) {
            throw Error(ErrorKind::DimensionMismatch, "judgment blocks must have one row per criterion (" +
                                                          std::to_string(n) + "), got " + shape(m->values));
        }
    }
    if (to_best.values.cols() != to_worst.values.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "others-to-worst (block 2) is " + shape(to_worst.values) +
                                                      " but others-to-best (block 3) is " + shape(to_best.values));
    }
    const auto s = static_cast<std::size_t>(to_worst.values.cols());
    std::vector<std::string> criteria = comparison.has_col_labels ? comparison.col_labels
                                        : to_worst.has_row_labels ? to_worst.row_labels
                                                                  : comparison.col_labels;
    auto worst = block_criteria(file.blocks[3], 4, s, criteria, "worst criteria");
    auto best = block_criteria(file.blocks[4], 5, s, criteria, "best criteria");
    std::vector<double> likelihood = block_vector(file.blocks[5], 6, s, "likelihood vector");
    std::vector<std::string> state_names = to_worst.has_col_labels ? to_worst.col_labels : std::vector<std::string>{};
    return SbwmModel(comparison.values, to_worst.values, to_best.values, std::move(worst), std::move(best),
                     std::move(likelihood), comparison.row_labels, std::move(criteria), std::move(state_names));
}

DecisionMatrix read_decision_matrix_csv(const CsvBlockFile& file, std::vector<Direction> directions) {
    require_blocks(file, 1, "decision matrix");
    const LabeledMatrix m = block_matrix(file.blocks[0], 1, "A", "C");
    if (directions.empty()) directions.assign(static_cast<std::size_t>(m.values.cols()), Direction::Benefit);
    if (directions.size() != static_cast<std::size_t>(m.values.cols())) {
        throw Error(ErrorKind::LengthMismatch, std::to_string(directions.size()) + " directions given for " +
                                                   std::to_string(m.values.cols()) + " criteria");
    }
    return DecisionMatrix(m.values, m.row_labels, m.col_labels, std::move(directions));
}

BwmProblem read_bwm_csv(const CsvBlockFile& file) {
    require_blocks(file, 2, "BWM");
    const LabeledMatrix m = block_matrix(file.blocks[0], 1, "R", "C");
    if (m.values.rows() != 2 || !m.has_row_labels) {
        throw Error(ErrorKind::DimensionMismatch,
                    "BWM block 1 needs two labeled rows (best_to_others, others_to_worst)");
    }
    const auto n = static_cast<std::size_t>(m.values.cols());
    std::vector<double> bo, ow;
    for (Eigen::Index r = 0; r < 2; ++r) {
        const std::string label = lowercase(m.row_labels[static_cast<std::size_t>(r)]);
        std::vector<double> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = m.values(r, static_cast<Eigen::Index>(j));
        if (label.rfind("best", 0) == 0) {
            bo = std::move(row);
        } else if (label.find("worst") != std::string::npos) {
            ow = std::move(row);
        } else {
            throw Error(ErrorKind::ParseError, "BWM block 1 row '" + m.row_labels[static_cast<std::size_t>(r)] +
                                                   "' is neither best_to_others nor others_to_worst");
        }
    }
    if (bo.empty() || ow.empty()) {
        throw Error(ErrorKind::ParseError, "BWM block 1 needs both best_to_others and others_to_worst rows");
    }
    std::size_t best = n, worst = n;
    for (const auto& row : file.blocks[1].cells) {
        if (row.size() < 2) throw Error(ErrorKind::ParseError, "BWM block 2 rows must be '<best|worst>,<criterion>'");
        const auto idx = block_criteria(CsvBlock{{{row[1]}}, 0}, 2, 1, m.col_labels, "BWM best/worst")[0];
        const std::string key = lowercase(row[0]);
        if (key == "best") {
            best = idx;
        } else if (key == "worst") {
            worst = idx;
        } else {
            throw Error(ErrorKind::ParseError, "BWM block 2 row label '" + row[0] + "' must be best or worst");
        }
    }
    if (best == n || worst == n) {
        throw Error(ErrorKind::ParseError, "BWM block 2 must name both the best and the worst criterion");
    }
    return BwmProblem(std::move(bo), std::move(ow), best, worst, m.col_labels);
}

std::string write_result(const RankResult& result, OutputFormat format) {
    const std::vector<std::string> names =
        result.names.size() == result.scores.size() ? result.names : default_labels("A", result.scores.size());
    const auto ranks = result.ranks();
    if (format == OutputFormat::Csv) {
        std::string out = "name,score,rank\n";
        for (std::size_t i = 0; i < result.scores.size(); ++i) {
            out += csv_escape(names[i]) + "," + format_double(result.scores[i]) + "," + std::to_string(ranks[i]) + "\n";
        }
        return out;
    }
    nlohmann::ordered_json j;
    j["names"] = names;
    j["scores"] = result.scores;
    j["ordering"] = result.ordering;
    j["ranks"] = ranks;
    j["ties"] = result.ties;
    j["score_direction"] = std::string(to_string(result.score_direction));
    j["warnings"] = result.warnings;
    return j.dump(2) + "\n";
}

std::string write_result(const WeightVector& weights, OutputFormat format) {
    if (format == OutputFormat::Csv) {
        std::string out = "name,weight\n";
        for (std::size_t i = 0; i < weights.size(); ++i) {
            out += csv_escape(weights.criterion_names()[i]) + "," + format_double(weights[i]) + "\n";
        }
        return out;
    }
    nlohmann::ordered_json j;
    j["names"] = weights.criterion_names();
    j["weights"] = weights.weights();
    return j.dump(2) + "\n";
}

namespace {

// Header row plus data rows of a single-block CSV result.
std::vector<Row> result_rows(std::string_view text, const Row& header) {
    const CsvBlockFile file = parse_csv_blocks(text, "<result>");
    if (file.blocks.size() != 1 || file.blocks[0].cells.empty() || file.blocks[0].cells[0] != header) {
        std::string h;
        for (const auto& c : header) h += (h.empty() ? "" : ",") + c;
        throw Error(ErrorKind::ParseError, "result CSV must be one block starting with header '" + h + "'");
    }
    std::vector<Row> rows(file.blocks[0].cells.begin() + 1, file.blocks[0].cells.end());
    for (const auto& r : rows) {
        if (r.size() != header.size()) throw Error(ErrorKind::ParseError, "result CSV row has the wrong width");
    }
    return rows;
}

double require_number(const std::string& cell) {
    const auto v = parse_double(cell);
    if (!v) throw Error(ErrorKind::ParseError, "'" + cell + "' is not a number");
    return *v;
}

}  // namespace

RankResult read_rank_result(std::string_view text, OutputFormat format) {
    RankResult r;
    if (format == OutputFormat::Json) {
        try {
            const auto j = nlohmann::json::parse(text);
            r.names = j.at("names").get<std::vector<std::string>>();
            r.scores = j.at("scores").get<std::vector<double>>();
            r.ordering = j.at("ordering").get<std::vector<std::size_t>>();
            r.ties = j.at("ties").get<std::vector<std::vector<std::size_t>>>();
            r.score_direction = j.at("score_direction").get<std::string>() == "lower_is_better"
                                    ? ScoreDirection::LowerIsBetter
                                    : ScoreDirection::HigherIsBetter;
            if (j.contains("warnings")) r.warnings = j.at("warnings").get<std::vector<std::string>>();
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("result JSON: ") + e.what());
        }
        if (r.names.size() != r.scores.size() || r.ordering.size() != r.scores.size()) {
            throw Error(ErrorKind::ParseError, "result JSON arrays have inconsistent lengths");
        }
        return r;
    }

    const auto rows = result_rows(text, {"name", "score", "rank"});
    const std::size_t m = rows.size();
    r.ordering.assign(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        r.names.push_back(rows[i][0]);
        r.scores.push_back(require_number(rows[i][1]));
        const double rank = require_number(rows[i][2]);
        const auto pos = static_cast<std::size_t>(rank) - 1;
        if (rank < 1.0 || pos >= m || r.ordering[pos] != m) {
            throw Error(ErrorKind::ParseError, "result CSV ranks are not a permutation of 1.." + std::to_string(m));
        }
        r.ordering[pos] = i;
    }
    if (m > 1 && r.scores[r.ordering.front()] < r.scores[r.ordering.back()]) {
        r.score_direction = ScoreDirection::LowerIsBetter;
    }
    for (std::size_t start = 0; start < m;) {
        std::size_t end = start + 1;
        while (end < m && std::abs(r.scores[r.ordering[end]] - r.scores[r.ordering[start]]) < kTieTolerance) ++end;
        if (end - start > 1) {
            r.ties.emplace_back(r.ordering.begin() + static_cast<std::ptrdiff_t>(start),
                                r.ordering.begin() + static_cast<std::ptrdiff_t>(end));
        }
        start = end;
    }
    return r;
}

WeightVector read_weight_vector(std::string_view text, OutputFormat format) {
    if (format == OutputFormat::Json) {
        try {
            const auto j = nlohmann::json::parse(text);
            return WeightVector(j.at("weights").get<std::vector<double>>(), j.at("names").get<std::vector<std::string>>());
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorKind::ParseError, std::string("weights JSON: ") + e.what());
        }
    }
    std::vector<double> w;
    std::vector<std::string> names;
    for (const auto& row : result_rows(text, {"name", "weight"})) {
        names.push_back(row[0]);
        w.push_back(require_number(row[1]));
    }
    return WeightVector(std::move(w), std::move(names));
}

std::string write_matrix_csv(const Matrix& values, const std::vector<std::string>& row_labels,
                             const std::vector<std::string>& col_labels) {
    std::string out;
    for (const auto& c : col_labels) out += "," + csv_escape(c);
    out += "\n";
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        out += csv_escape(row_labels[static_cast<std::size_t>(i)]);
        for (Eigen::Index j = 0; j < values.cols(); ++j) out += "," + format_double(values(i, j));
        out += "\n";
    }
    return out;
}

}  // namespace mcdm
