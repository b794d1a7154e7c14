#pragma once

#include <pmx/classify.hpp>
#include <pmx/constants.hpp>
#include <pmx/count.hpp>
#include <pmx/matrix.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pmx {

struct StepOptions {
    int t = 0;            // uniformity / copy width; 0 picks it from the pattern
    int label_cap = 10000;
    bool try_embedding = true;
};

enum class StepBranch { embedded, densified };

struct StepResult {
    StepBranch branch = StepBranch::densified;
    int t = 0;
    int u = 0;
    std::optional<Embedding> embedding; // host coordinates of the step input
    std::vector<int> label;             // 1-based blocks of the label class used
    int labels_examined = 0;

    int block = -1;                  // 0-based; grid blocks are p * k + q
    IndexRange rows;
    IndexRange cols;
    BigInt count;                    // copies inside the chosen block
    BigInt total;                    // copies in the whole input
    BigInt narrow_total;             // copies inside some block
    std::vector<BigInt> block_counts;
    double log_guarantee = 0;        // log of the promised block count
    bool guarantee_met = false;

    int composed_block = -1;         // symmetric step: horizontal then vertical choice
};

// Splits the column range of a column-t-partite pattern into exactly t
// intervals, each giving every row at most one 1-entry. Returns the interval
// sizes. Throws precondition when impossible.
std::vector<int> column_intervals(const ZeroOneMatrix & pattern, int t);

// One try at the heavy-label embedding. Returns a verified embedding or
// nothing; labels_examined reports how many label classes were searched.
std::optional<Embedding> heavy_label_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, int t, int k,
                                               int label_cap, std::vector<int> * label_used, int * labels_examined);

StepResult density_increment_step(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, int u, int k,
                                  StepOptions options = {});

StepResult symmetric_increment_step(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, int k,
                                    StepOptions options = {});

nlohmann::json to_json(const StepResult & step);

enum class DriverMode { thm21, thm12, thm11 };

DriverMode parse_driver_mode(std::string_view name);
std::string_view to_string(DriverMode mode);

struct DriverParams {
    int k = 2;
    int depth = 1;
    double epsilon = 1.0;
    int t = 0;  // 0 picks it from the pattern
    int U = 0;  // thm11 only; 0 means the default ceil(10 t / eps0)
    int label_cap = 10000;
};

struct ThresholdCheck {
    std::string name;
    double lhs_log = 0;
    double rhs_log = 0;
    bool holds = false;
};

struct TraceLevel {
    int level = 0;
    IndexRange rows; // within the original host, 0-based
    IndexRange cols;
    int u = 0;
    int t = 0;
    BigInt count;
    std::vector<ThresholdCheck> checks;
    std::string branch; // embedded | densified | exhausted
    std::optional<StepResult> step;
    std::optional<Embedding> embedding; // original host coordinates
    std::string stop;                   // set on the final level
};

struct IncrementTrace {
    DriverMode mode = DriverMode::thm21;
    int k = 0;
    int t = 0;
    double z = 0; // log_k n
    std::vector<TraceLevel> levels;
    std::optional<Embedding> embedding;
    nlohmann::json checkpoint;
};

IncrementTrace run_driver(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, DriverMode mode,
                          const DriverParams & params);

nlohmann::json to_json(const ThresholdCheck & check);
nlohmann::json to_json(const TraceLevel & level);

} // namespace pmx
