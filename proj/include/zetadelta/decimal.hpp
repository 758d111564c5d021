#pragma once

// Exact decimal-literal arithmetic on digit strings. Zero ordinates at large
// heights (10^21 and beyond) do not fit a binary double, so tables are stored
// as an exact integer base plus small per-zero offsets. The subtraction that
// produces an offset happens on the decimal text, before any conversion to
// binary floating point.

#include <algorithm>
#include <charconv>
#include <string>
#include <string_view>

#include "zetadelta/errors.hpp"

namespace zetadelta::decimal {

// Non-negative decimal literal split at the decimal point.
// int_digits is canonical (no leading zeros, "0" for values < 1).
struct Literal {
    std::string int_digits;
    std::string frac_digits;
};

inline bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline std::string strip_leading_zeros(std::string_view s) {
    std::size_t i = s.find_first_not_of('0');
    if (i == std::string_view::npos) return "0";
    return std::string(s.substr(i));
}

// Parses "123.456", "123", or "123." -- no sign, no exponent.
inline Literal parse_literal(std::string_view text) {
    std::size_t dot = text.find('.');
    std::string_view ip = dot == std::string_view::npos ? text : text.substr(0, dot);
    std::string_view fp = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (!is_digits(ip)) throw InputError("not a plain decimal literal: '" + std::string(text) + "'");
    if (!fp.empty() && !is_digits(fp)) throw InputError("bad fraction digits: '" + std::string(text) + "'");
    return Literal{strip_leading_zeros(ip), std::string(fp)};
}

// -1 / 0 / +1 comparison of canonical integer digit strings.
inline int compare_integer(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    int c = a.compare(b);
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

// a < b on full literals (integer part, then fraction padded with zeros).
inline bool literal_less(const Literal& a, const Literal& b) {
    int c = compare_integer(a.int_digits, b.int_digits);
    if (c != 0) return c < 0;
    std::size_t w = std::max(a.frac_digits.size(), b.frac_digits.size());
    std::string fa = a.frac_digits, fb = b.frac_digits;
    fa.resize(w, '0');
    fb.resize(w, '0');
    return fa < fb;
}

// Exact a - b on canonical integer digit strings; requires a >= b.
inline std::string subtract_integer(const std::string& a, const std::string& b) {
    if (compare_integer(a, b) < 0) throw InputError("integer subtraction would be negative");
    std::string r;
    r.reserve(a.size());
    int borrow = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        int da = a[a.size() - 1 - i] - '0';
        int db = i < b.size() ? b[b.size() - 1 - i] - '0' : 0;
        int d = da - db - borrow;
        borrow = d < 0;
        if (borrow) d += 10;
        r.push_back(static_cast<char>('0' + d));
    }
    std::reverse(r.begin(), r.end());
    return strip_leading_zeros(r);
}

// Exact a + b on canonical integer digit strings.
inline std::string add_integer(const std::string& a, const std::string& b) {
    std::string r;
    r.reserve(std::max(a.size(), b.size()) + 1);
    int carry = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()) || carry; ++i) {
        int d = carry;
        if (i < a.size()) d += a[a.size() - 1 - i] - '0';
        if (i < b.size()) d += b[b.size() - 1 - i] - '0';
        carry = d >= 10;
        r.push_back(static_cast<char>('0' + d % 10));
    }
    std::reverse(r.begin(), r.end());
    return r.empty() ? "0" : strip_leading_zeros(r);
}

// (lit - base) as the nearest double, computed by exact decimal subtraction of
// the integer base followed by one decimal-to-binary conversion. Requires
// lit >= base; base is an integer so the fraction digits pass through intact.
inline double to_offset(const Literal& lit, const std::string& base_int_digits) {
    std::string diff = subtract_integer(lit.int_digits, base_int_digits);
    diff.push_back('.');
    diff += lit.frac_digits;
    double value = 0.0;
    std::from_chars(diff.data(), diff.data() + diff.size(), value);
    return value;
}

}  // namespace zetadelta::decimal
