#pragma once

#include <pmx/matrix.hpp>

#include <optional>
#include <span>
#include <string>

namespace pmx {

// Inclusive 0-based window of host rows a pattern row may occupy.
struct RowWindow {
    int first = 0;
    int last = 0;
};

// Exhaustive search. The certificate returned is the lexicographically least
// (row map first, then column map) among all valid ones.
std::optional<Embedding> find_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern);

// Same search with pattern row i confined to windows[i].
std::optional<Embedding> find_embedding_within(
    const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, std::span<const RowWindow> windows);

inline bool contains(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern)
{
    return find_embedding(host, pattern).has_value();
}

struct CertificateCheck {
    bool valid = false;
    std::string diagnostic; // empty when valid; 1-based indices otherwise
};

CertificateCheck check_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, const Embedding & e);

inline bool verify_embedding(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, const Embedding & e)
{
    return check_embedding(host, pattern, e).valid;
}

} // namespace pmx
