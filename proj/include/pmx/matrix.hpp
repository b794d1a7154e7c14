#pragma once

#include <pmx/bits/kernels.hpp>

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pmx {

using bits::Word;

// Dense rectangular 0-1 grid. Rows are packed into 64-bit words; bits past
// cols() in the last word of a row are always zero. Indices are 0-based in
// the C++ API and 1-based in every text format and diagnostic.
class ZeroOneMatrix {
public:
    ZeroOneMatrix() = default;
    ZeroOneMatrix(int rows, int cols);

    static ZeroOneMatrix all_ones(int rows, int cols);
    static ZeroOneMatrix identity(int n);
    // One string per row over {'0','1'}.
    static ZeroOneMatrix from_strings(std::span<const std::string> rows);
    static ZeroOneMatrix from_strings(std::initializer_list<std::string_view> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t weight() const { return weight_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    bool get(int r, int c) const { return bits::test_bit(row(r), c); }
    void set(int r, int c, bool value);

    std::span<const Word> row(int r) const
    {
        return {words_.data() + static_cast<std::size_t>(r) * stride_, stride_};
    }
    std::size_t stride() const { return stride_; }

    // Replaces row r wholesale; bits beyond cols() must be clear.
    void set_row(int r, std::span<const Word> words);

    std::size_t row_weight(int r) const { return bits::popcount(row(r)); }

    ZeroOneMatrix transpose() const;
    ZeroOneMatrix submatrix(std::span<const int> row_indices, std::span<const int> col_indices) const;
    ZeroOneMatrix block(int row_begin, int row_count, int col_begin, int col_count) const;

    std::string row_string(int r) const;
    std::vector<std::string> row_strings() const;

    // Recounts 1-entries from the packed words.
    std::size_t recount_weight() const;

    friend bool operator==(const ZeroOneMatrix & a, const ZeroOneMatrix & b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::size_t stride_ = 0;
    std::size_t weight_ = 0;
    std::vector<Word> words_;
};

// Order-preserving certificate for "host contains pattern". Both maps are
// 0-based and strictly increasing.
struct Embedding {
    std::vector<int> row_map;
    std::vector<int> col_map;

    friend bool operator==(const Embedding &, const Embedding &) = default;
};

enum class BlockMode { horizontal, vertical, grid };

struct IndexRange {
    int begin = 0; // 0-based, inclusive
    int count = 0;
    int end() const { return begin + count; }
};

struct Block {
    IndexRange rows;
    IndexRange cols;
    ZeroOneMatrix matrix;
};

// Equal slices of a matrix. Grid blocks are listed row-major: block
// (p, q) sits at index p * k + q.
struct BlockPartition {
    int k = 0;
    BlockMode mode = BlockMode::horizontal;
    std::vector<Block> blocks;
};

ZeroOneMatrix parse_pattern(std::string_view text);
ZeroOneMatrix read_pattern_file(const std::string & path);
std::string format_pattern(const ZeroOneMatrix & m);

nlohmann::json to_json(const ZeroOneMatrix & m);
ZeroOneMatrix matrix_from_json(const nlohmann::json & j);
nlohmann::json to_json(const Embedding & e); // 1-based
Embedding embedding_from_json(const nlohmann::json & j);

BlockPartition partition(const ZeroOneMatrix & m, int k, BlockMode mode);
BlockMode parse_block_mode(std::string_view name);

// Edges are 1-based (left, right) pairs.
ZeroOneMatrix from_ordered_bigraph(std::span<const std::pair<int, int>> edges, int left_size, int right_size);

// "<rows>x<cols>-<hex>", the hex digits spelling the row-major bits four at a
// time, most significant first. Injective and platform independent.
std::string canonical_key(const ZeroOneMatrix & m);
ZeroOneMatrix matrix_from_key(std::string_view key);

std::ostream & operator<<(std::ostream & os, const ZeroOneMatrix & m);

} // namespace pmx
