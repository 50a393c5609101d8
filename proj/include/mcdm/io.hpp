#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mcdm/core.hpp"
#include "mcdm/pairwise.hpp"
#include "mcdm/stratified.hpp"
#include "mcdm/weighting.hpp"

namespace mcdm {

/// A maximal run of non-empty CSV rows. Rows are padded to a common width.
struct CsvBlock {
    std::vector<std::vector<std::string>> cells;
    /// 1-based line number of the block's first row in the source text.
    std::size_t first_line = 0;

    [[nodiscard]] std::size_t rows() const noexcept { return cells.size(); }
    [[nodiscard]] std::size_t cols() const noexcept { return cells.empty() ? 0 : cells.front().size(); }
};

struct CsvBlockFile {
    std::vector<CsvBlock> blocks;
    std::string source_path;
};

/**
 * Splits CSV text into blocks separated by one or more rows whose cells are
 * all empty after trimming. Accepts LF and CRLF line endings, a UTF-8 BOM and
 * double-quoted cells. Trailing empty cells of a row are dropped.
 */
CsvBlockFile parse_csv_blocks(std::string_view text, std::string source_path = "<memory>");
CsvBlockFile read_csv_blocks(const std::filesystem::path& path);

/// Numeric content of a block with its optional label row/column split off.
struct LabeledMatrix {
    Matrix values;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    bool has_row_labels = false;
    bool has_col_labels = false;
};

/**
 * The first row is a header when any of its cells past the first column is
 * not a number; the first column holds labels when any of its cells below
 * the header is not a number. Every remaining cell must parse as a number.
 * Missing labels are generated from the prefixes. `block_number` (1-based)
 * is used in diagnostics.
 */
LabeledMatrix block_matrix(const CsvBlock& block, std::size_t block_number, std::string_view row_prefix = "R",
                           std::string_view col_prefix = "C");

struct AhpInput {
    PairwiseMatrix criteria;
    std::vector<PairwiseMatrix> alternatives;
};

/// n+1 square blocks: criteria comparison followed by one alternative comparison per criterion.
AhpInput read_ahp_csv(const CsvBlockFile& file);

/// Three blocks: comparison (m x n), state criteria (n x s), likelihood (1 x s or s x 1).
StratifiedModel read_smcdm_csv(const CsvBlockFile& file, ProbabilityMode mode = ProbabilityMode::GivenProbabilities);

/**
 * Six blocks: comparison (m x n), others-to-worst (n x s), others-to-best
 * (n x s), worst criterion per state, best criterion per state, likelihood.
 * Criterion references may be names or 1-based indices.
 */
SbwmModel read_sbwm_csv(const CsvBlockFile& file);

/// One block; row labels are alternatives, column labels criteria. Empty `directions` means all Benefit.
DecisionMatrix read_decision_matrix_csv(const CsvBlockFile& file, std::vector<Direction> directions = {});

/**
 * Block 1: header of criterion names, rows labeled best_to_others and
 * others_to_worst. Block 2: rows "best,<criterion>" and "worst,<criterion>".
 */
BwmProblem read_bwm_csv(const CsvBlockFile& file);

enum class OutputFormat { Csv, Json };

/// CSV: header name,score,rank with one row per alternative in input order.
/// JSON: names, scores, ordering, ranks, ties, score_direction, warnings.
std::string write_result(const RankResult& result, OutputFormat format);
/// CSV: header name,weight. JSON: names, weights.
std::string write_result(const WeightVector& weights, OutputFormat format);

RankResult read_rank_result(std::string_view text, OutputFormat format);
WeightVector read_weight_vector(std::string_view text, OutputFormat format);

/// Labeled numeric matrix as CSV (header row of column labels, first column row labels).
std::string write_matrix_csv(const Matrix& values, const std::vector<std::string>& row_labels,
                             const std::vector<std::string>& col_labels);

}  // namespace mcdm
