#pragma once

#include <pmx/constants.hpp>
#include <pmx/matrix.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pmx {

struct BalanceCheck {
    bool balanced = false;
    int r = 0;
    std::vector<std::vector<int>> profiles; // per column, the r band counts
    int violating_column = -1;              // 0-based, when not balanced
    std::string diagnostic;
};

BalanceCheck is_r_balanced(const ZeroOneMatrix & m, int r);

struct BalancedEmbedding {
    Embedding embedding;
    std::string method; // "decomposition" or "exhaustive"
};

// Proper copy of an x-monotone cycle pattern (zero columns allowed) in an
// r-balanced host, r = pattern rows: pattern row j lands in band j.
std::optional<BalancedEmbedding> embed_xmonotone_balanced(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern);

// Proper copy via the column-1 decomposition only; nothing when that route
// finds none. The pattern must have no zero columns.
std::optional<Embedding> decomposition_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern);

enum class DichotomyBranch { dense, balanced };

// The balanced restriction computed whichever branch is returned.
struct BalancedCandidate {
    ZeroOneMatrix matrix;
    std::vector<int> row_indices; // into the input, 0-based
    std::vector<int> col_indices;
    std::vector<int> bands;       // 1-based
};

struct DichotomyResult {
    DichotomyBranch branch = DichotomyBranch::dense;
    DichotomyBranch rule_branch = DichotomyBranch::dense; // what the case split picked
    bool switched = false;        // branch differs from rule_branch
    bool precondition_met = false;
    bool invariant_holds = false;
    ZeroOneMatrix matrix;
    std::vector<int> row_indices; // into the input, 0-based
    std::vector<int> col_indices;
    std::size_t weight = 0;
    double invariant_bound = 0;   // right-hand side of the branch inequality
    std::vector<int> bands;       // balanced branch: the r-set I, 1-based
    int dense_band = -1;          // dense branch: 1-based
    int light_columns = 0;
    std::size_t imbalanced_weight = 0;
    std::size_t balanced_weight = 0;
    int r = 0;
    int s = 0;
    int k = 0;
    double c = 0;
    double nominal_k = 0;         // 2^8 r^2
    Magnitude nominal_c;          // 8 r s C(nominal_k, r)
    BalancedCandidate candidate;
};

DichotomyResult dense_or_balanced(const ZeroOneMatrix & m, int r, int s, int k, double c);

// Both branch inequalities for a given outcome, independent of which branch
// was chosen.
bool dense_invariant(const DichotomyResult & d);
bool balanced_invariant(const DichotomyResult & d);

nlohmann::json to_json(const DichotomyResult & d, bool include_matrix = true);

struct CycleLevel {
    int level = 0;
    std::vector<int> row_indices; // into the original host
    std::vector<int> col_indices;
    std::size_t weight = 0;
    bool weight_doubling = false; // w >= 2^i c (n/k^i)^{3/2}
    std::optional<DichotomyResult> dichotomy;
    std::string outcome; // embedded | dense | balanced-no-copy | exhausted
    std::string stop;
};

struct CycleTrace {
    std::vector<CycleLevel> levels;
    std::optional<Embedding> embedding; // original host coordinates, verified
};

CycleTrace cycle_driver(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, int k, double c, int depth);

nlohmann::json to_json(const CycleLevel & lv);

// All l x l matrices whose 1-entries form a single cycle of the given length
// 2l, sorted by row strings.
std::vector<ZeroOneMatrix> enumerate_cycles(int length);

} // namespace pmx
