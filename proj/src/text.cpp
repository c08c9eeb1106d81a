#include "intent/text.hpp"

#include <cstdint>

namespace intent {
namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_unicode_space(std::uint32_t cp) {
    if (cp == 0x00a0 || cp == 0x1680 || cp == 0x2028 || cp == 0x2029 || cp == 0x202f ||
        cp == 0x205f || cp == 0x3000 || cp == 0x0085) {
        return true;
    }
    return cp >= 0x2000 && cp <= 0x200a;
}

// Decodes one UTF-8 codepoint starting at i; advances i past it. Invalid
// sequences are consumed one byte at a time and reported as U+FFFD.
std::uint32_t decode_utf8(std::string_view s, std::size_t& i) {
    auto byte = [&](std::size_t k) { return static_cast<std::uint8_t>(s[k]); };
    std::uint8_t b0 = byte(i);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    int len = 0;
    std::uint32_t cp = 0;
    if ((b0 & 0xe0) == 0xc0) {
        len = 2;
        cp = b0 & 0x1f;
    } else if ((b0 & 0xf0) == 0xe0) {
        len = 3;
        cp = b0 & 0x0f;
    } else if ((b0 & 0xf8) == 0xf0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++i;
        return 0xfffd;
    }
    if (i + static_cast<std::size_t>(len) > s.size()) {
        ++i;
        return 0xfffd;
    }
    for (int k = 1; k < len; ++k) {
        std::uint8_t b = byte(i + static_cast<std::size_t>(k));
        if ((b & 0xc0) != 0x80) {
            ++i;
            return 0xfffd;
        }
        cp = (cp << 6) | (b & 0x3f);
    }
    i += static_cast<std::size_t>(len);
    return cp;
}

} // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    }
    return out;
}

std::string_view trim(std::string_view s) {
    std::size_t begin = 0;
    std::size_t end = s.size();
    while (begin < end && is_ascii_space(s[begin])) ++begin;
    while (end > begin && is_ascii_space(s[end - 1])) --end;
    return s.substr(begin, end - begin);
}

std::vector<std::string> tokenize(std::string_view query_text) {
    std::string lowered = to_lower(query_text);
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    while (i < lowered.size()) {
        std::size_t start = i;
        std::uint32_t cp = decode_utf8(lowered, i);
        bool space = cp < 0x80 ? is_ascii_space(static_cast<char>(cp)) : is_unicode_space(cp);
        if (space) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.append(lowered, start, i - start);
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string extract_domain(std::string_view url) {
    std::string lowered = to_lower(std::string_view(trim(url)));
    std::string_view rest = lowered;
    std::size_t scheme = rest.find("://");
    if (scheme == std::string_view::npos) {
        return lowered;
    }
    rest.remove_prefix(scheme + 3);
    std::size_t end = rest.find_first_of("/?#");
    std::string_view authority = rest.substr(0, end);
    if (std::size_t at = authority.rfind('@'); at != std::string_view::npos) {
        authority.remove_prefix(at + 1);
    }
    if (!authority.empty() && authority.front() == '[') {
        // Bracketed IPv6 literal; keep the address, drop the port.
        std::size_t close = authority.find(']');
        if (close != std::string_view::npos) {
            return std::string(authority.substr(1, close - 1));
        }
    } else if (std::size_t colon = authority.find(':'); colon != std::string_view::npos) {
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) {
        return lowered;
    }
    if (authority.size() > 4 && authority.substr(0, 4) == "www.") {
        authority.remove_prefix(4);
    }
    return std::string(authority);
}

} // namespace intent
