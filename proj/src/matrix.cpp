#include <pmx/error.hpp>
#include <pmx/matrix.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>

namespace pmx {

ZeroOneMatrix::ZeroOneMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), stride_(bits::words_for(cols))
{
    if (rows < 0 || cols < 0)
        fail(ErrorKind::domain, "matrix dimensions must be nonnegative");
    words_.assign(static_cast<std::size_t>(rows) * stride_, 0);
}

ZeroOneMatrix ZeroOneMatrix::all_ones(int rows, int cols)
{
    ZeroOneMatrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        bits::fill_prefix({m.words_.data() + static_cast<std::size_t>(r) * m.stride_, m.stride_}, cols);
    m.weight_ = static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
    return m;
}

ZeroOneMatrix ZeroOneMatrix::identity(int n)
{
    ZeroOneMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.set(i, i, true);
    return m;
}

ZeroOneMatrix ZeroOneMatrix::from_strings(std::span<const std::string> rows)
{
    if (rows.empty())
        fail(ErrorKind::format, "pattern has no data rows");
    const int cols = static_cast<int>(rows.front().size());
    ZeroOneMatrix m(static_cast<int>(rows.size()), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (static_cast<int>(rows[r].size()) != cols)
            fail(ErrorKind::format, "row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                     " entries, expected " + std::to_string(cols));
        for (int c = 0; c < cols; ++c) {
            const char ch = rows[r][static_cast<std::size_t>(c)];
            if (ch == '1')
                m.set(static_cast<int>(r), c, true);
            else if (ch != '0')
                fail(ErrorKind::format, "row " + std::to_string(r + 1) + ", column " + std::to_string(c + 1) +
                         ": unexpected character '" + std::string(1, ch) + "'");
        }
    }
    return m;
}

ZeroOneMatrix ZeroOneMatrix::from_strings(std::initializer_list<std::string_view> rows)
{
    std::vector<std::string> owned(rows.begin(), rows.end());
    return from_strings(std::span<const std::string>(owned));
}

void ZeroOneMatrix::set(int r, int c, bool value)
{
    auto row_span = std::span<Word>(words_.data() + static_cast<std::size_t>(r) * stride_, stride_);
    const bool old = bits::test_bit(row_span, c);
    if (old == value)
        return;
    if (value) {
        bits::set_bit(row_span, c);
        ++weight_;
    }
    else {
        bits::clear_bit(row_span, c);
        --weight_;
    }
}

void ZeroOneMatrix::set_row(int r, std::span<const Word> words)
{
    auto dst = words_.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(r) * stride_);
    weight_ -= row_weight(r);
    std::copy(words.begin(), words.end(), dst);
    weight_ += row_weight(r);
}

ZeroOneMatrix ZeroOneMatrix::transpose() const
{
    ZeroOneMatrix t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = bits::next_set_bit(row(r), 0); c >= 0; c = bits::next_set_bit(row(r), c + 1))
            t.set(c, r, true);
    return t;
}

ZeroOneMatrix ZeroOneMatrix::submatrix(std::span<const int> row_indices, std::span<const int> col_indices) const
{
    ZeroOneMatrix s(static_cast<int>(row_indices.size()), static_cast<int>(col_indices.size()));
    for (std::size_t i = 0; i < row_indices.size(); ++i)
        for (std::size_t j = 0; j < col_indices.size(); ++j)
            if (get(row_indices[i], col_indices[j]))
                s.set(static_cast<int>(i), static_cast<int>(j), true);
    return s;
}

ZeroOneMatrix ZeroOneMatrix::block(int row_begin, int row_count, int col_begin, int col_count) const
{
    ZeroOneMatrix s(row_count, col_count);
    for (int i = 0; i < row_count; ++i) {
        auto src = row(row_begin + i);
        for (int c = bits::next_set_bit(src, col_begin); c >= 0 && c < col_begin + col_count;
             c = bits::next_set_bit(src, c + 1))
            s.set(i, c - col_begin, true);
    }
    return s;
}

std::string ZeroOneMatrix::row_string(int r) const
{
    std::string s(static_cast<std::size_t>(cols_), '0');
    for (int c = 0; c < cols_; ++c)
        if (get(r, c))
            s[static_cast<std::size_t>(c)] = '1';
    return s;
}

std::vector<std::string> ZeroOneMatrix::row_strings() const
{
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r)
        out.push_back(row_string(r));
    return out;
}

std::size_t ZeroOneMatrix::recount_weight() const
{
    std::size_t total = 0;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            total += get(r, c) ? 1 : 0;
    return total;
}

ZeroOneMatrix parse_pattern(std::string_view text)
{
    std::vector<std::string> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos)
            nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;

        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#')
            continue;
        std::string row;
        for (char ch : line) {
            if (ch == '#')
                break;
            if (ch == '0' || ch == '1')
                row.push_back(ch);
            else if (ch != ' ' && ch != '\t' && ch != '\r')
                fail(ErrorKind::format, "line " + std::to_string(line_no) + ": unexpected character '" +
                         std::string(1, ch) + "'");
        }
        if (!rows.empty() && row.size() != rows.front().size())
            fail(ErrorKind::format, "line " + std::to_string(line_no) + ": ragged row (" +
                     std::to_string(row.size()) + " entries, expected " + std::to_string(rows.front().size()) + ")");
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        fail(ErrorKind::format, "pattern has no data rows");
    return ZeroOneMatrix::from_strings(std::span<const std::string>(rows));
}

ZeroOneMatrix read_pattern_file(const std::string & path)
{
    std::ifstream in(path);
    if (!in)
        fail(ErrorKind::io, "cannot open pattern file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_pattern(buffer.str());
    }
    catch (const Error & e) {
        fail(e.kind(), path + ": " + e.what());
    }
}

std::string format_pattern(const ZeroOneMatrix & m)
{
    std::string out;
    for (int r = 0; r < m.rows(); ++r) {
        out += m.row_string(r);
        out += '\n';
    }
    return out;
}

nlohmann::json to_json(const ZeroOneMatrix & m)
{
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.row_strings()}};
}

ZeroOneMatrix matrix_from_json(const nlohmann::json & j)
{
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        fail(ErrorKind::format, "matrix JSON needs rows, cols and data");
    auto data = j.at("data").get<std::vector<std::string>>();
    auto m = ZeroOneMatrix::from_strings(std::span<const std::string>(data));
    if (m.rows() != j.at("rows").get<int>() || m.cols() != j.at("cols").get<int>())
        fail(ErrorKind::format, "matrix JSON dimensions disagree with data");
    return m;
}

nlohmann::json to_json(const Embedding & e)
{
    auto shift = [] (const std::vector<int> & v) {
        std::vector<int> out(v);
        for (auto & x : out)
            ++x;
        return out;
    };
    return {{"rowMap", shift(e.row_map)}, {"colMap", shift(e.col_map)}};
}

Embedding embedding_from_json(const nlohmann::json & j)
{
    Embedding e{j.at("rowMap").get<std::vector<int>>(), j.at("colMap").get<std::vector<int>>()};
    for (auto & x : e.row_map)
        --x;
    for (auto & x : e.col_map)
        --x;
    return e;
}

BlockPartition partition(const ZeroOneMatrix & m, int k, BlockMode mode)
{
    if (k <= 0)
        fail(ErrorKind::domain, "block count must be positive");
    const bool split_rows = mode != BlockMode::vertical;
    const bool split_cols = mode != BlockMode::horizontal;
    if (split_rows && m.rows() % k != 0)
        fail(ErrorKind::divisibility, std::to_string(k) + " does not divide the row count " + std::to_string(m.rows()));
    if (split_cols && m.cols() % k != 0)
        fail(ErrorKind::divisibility,
             std::to_string(k) + " does not divide the column count " + std::to_string(m.cols()));

    const int row_parts = split_rows ? k : 1;
    const int col_parts = split_cols ? k : 1;
    const int h = m.rows() / row_parts;
    const int w = m.cols() / col_parts;

    BlockPartition out{k, mode, {}};
    for (int p = 0; p < row_parts; ++p)
        for (int q = 0; q < col_parts; ++q) {
            IndexRange rr{p * h, h};
            IndexRange cr{q * w, w};
            out.blocks.push_back({rr, cr, m.block(rr.begin, rr.count, cr.begin, cr.count)});
        }
    return out;
}

BlockMode parse_block_mode(std::string_view name)
{
    if (name == "horizontal")
        return BlockMode::horizontal;
    if (name == "vertical")
        return BlockMode::vertical;
    if (name == "grid")
        return BlockMode::grid;
    fail(ErrorKind::input, "unknown block mode '" + std::string(name) + "'");
}

ZeroOneMatrix from_ordered_bigraph(std::span<const std::pair<int, int>> edges, int left_size, int right_size)
{
    if (left_size <= 0 || right_size <= 0)
        fail(ErrorKind::input, "vertex classes must be nonempty");
    ZeroOneMatrix m(left_size, right_size);
    for (auto [x, y] : edges) {
        if (x < 1 || x > left_size || y < 1 || y > right_size)
            fail(ErrorKind::input, "edge (" + std::to_string(x) + "," + std::to_string(y) + ") out of range");
        m.set(x - 1, y - 1, true);
    }
    return m;
}

std::string canonical_key(const ZeroOneMatrix & m)
{
    static constexpr char hex[] = "0123456789abcdef";
    std::string key = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + "-";
    const long total = static_cast<long>(m.rows()) * m.cols();
    for (long base = 0; base < total; base += 4) {
        int nibble = 0;
        for (long b = 0; b < 4; ++b) {
            nibble <<= 1;
            const long idx = base + b;
            if (idx < total && m.get(static_cast<int>(idx / m.cols()), static_cast<int>(idx % m.cols())))
                nibble |= 1;
        }
        key.push_back(hex[nibble]);
    }
    return key;
}

ZeroOneMatrix matrix_from_key(std::string_view key)
{
    auto x = key.find('x');
    auto dash = key.find('-');
    if (x == std::string_view::npos || dash == std::string_view::npos || dash < x)
        fail(ErrorKind::format, "malformed pattern key '" + std::string(key) + "'");
    int rows = 0;
    int cols = 0;
    try {
        rows = std::stoi(std::string(key.substr(0, x)));
        cols = std::stoi(std::string(key.substr(x + 1, dash - x - 1)));
    }
    catch (const std::exception &) {
        fail(ErrorKind::format, "malformed pattern key '" + std::string(key) + "'");
    }
    const long total = static_cast<long>(rows) * cols;
    auto digits = key.substr(dash + 1);
    if (rows <= 0 || cols <= 0 || static_cast<long>(digits.size()) != (total + 3) / 4)
        fail(ErrorKind::format, "malformed pattern key '" + std::string(key) + "'");
    ZeroOneMatrix m(rows, cols);
    for (std::size_t d = 0; d < digits.size(); ++d) {
        const char ch = digits[d];
        int nibble;
        if (ch >= '0' && ch <= '9')
            nibble = ch - '0';
        else if (ch >= 'a' && ch <= 'f')
            nibble = ch - 'a' + 10;
        else
            fail(ErrorKind::format, "malformed pattern key '" + std::string(key) + "'");
        for (int b = 0; b < 4; ++b) {
            const long idx = static_cast<long>(d) * 4 + b;
            if ((nibble >> (3 - b)) & 1) {
                if (idx >= total)
                    fail(ErrorKind::format, "pattern key has stray padding bits");
                m.set(static_cast<int>(idx / cols), static_cast<int>(idx % cols), true);
            }
        }
    }
    return m;
}

std::ostream & operator<<(std::ostream & os, const ZeroOneMatrix & m)
{
    return os << format_pattern(m);
}

} // namespace pmx
