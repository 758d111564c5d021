#pragma once

// Ingestion of zero-ordinate tables: plain text, one decimal literal per line,
// '#' comments and blank lines ignored (the format of the public Odlyzko /
// LMFDB exports). A table keeps the exact integer part of its first entry as
// a digit string ("base") and per-zero double offsets against that base, so
// differences of neighbouring zeros survive at any height.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "zetadelta/decimal.hpp"
#include "zetadelta/errors.hpp"

namespace zetadelta {

// Offsets above 2^40 would leave fewer than ~9 reliable decimals in a double;
// tables spanning more than that are rejected at parse time.
inline constexpr double kMaxTableSpan = 1099511627776.0;  // 2^40

struct ZeroTable {
    std::string base_digits = "0";   // exact integer part of the first zero
    std::vector<double> offsets;     // zero_k = base + offsets[k]
    std::optional<std::uint64_t> start_ordinal;  // 1-based ordinal of the first zero, when known
    std::string source;

    std::size_t size() const { return offsets.size(); }

    double base_approx() const {
        double value = 0.0;
        std::from_chars(base_digits.data(), base_digits.data() + base_digits.size(), value);
        return value;
    }

    // Ordinate as a double; exact only while base + offset fits 53 bits,
    // adequate for anything that just needs the height (densities, logs).
    double ordinate_approx(std::size_t k) const { return base_approx() + offsets[k]; }

    // Decimal rendering of zero_k with the given number of fraction digits
    // (rounded), recombining base and offset through exact digit arithmetic.
    std::string format_zero(std::size_t k, int decimals = 9) const {
        if (k >= offsets.size()) throw BoundsError("format_zero: index out of range");
        char buf[512];
        std::snprintf(buf, sizeof buf, "%.*f", decimals, offsets[k]);
        decimal::Literal lit = decimal::parse_literal(buf);
        std::string whole = decimal::add_integer(base_digits, lit.int_digits);
        return whole + "." + lit.frac_digits;
    }
};

// Constant-time view of a contiguous run of a table.
struct ZeroWindow {
    const ZeroTable* table = nullptr;
    std::size_t start_index = 0;
    std::size_t count = 0;

    double offset(std::size_t i) const { return table->offsets[start_index + i]; }
    double ordinate_approx(std::size_t i) const { return table->ordinate_approx(start_index + i); }
};

enum class TableFormat { plain, auto_detect };

namespace detail {

inline bool is_blank_or_comment(const std::string& line) {
    for (char c : line) {
        if (c == '#') return true;
        if (c != ' ' && c != '\t' && c != '\r') return false;
    }
    return true;
}

inline std::string trim(const std::string& line) {
    std::size_t b = line.find_first_not_of(" \t\r");
    std::size_t e = line.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : line.substr(b, e - b + 1);
}

}  // namespace detail

// Parses one decimal literal per line. Offsets are produced by exact decimal
// subtraction of the first entry's integer part, so offsets[0] lies in [0,1)
// and the sequence must be strictly increasing.
inline ZeroTable parse_zero_table(std::istream& in, TableFormat = TableFormat::auto_detect,
                                  std::string source = "") {
    ZeroTable table;
    table.source = std::move(source);
    std::string line;
    std::size_t line_no = 0;
    decimal::Literal prev;
    bool have_prev = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::is_blank_or_comment(line)) continue;
        decimal::Literal lit;
        try {
            lit = decimal::parse_literal(detail::trim(line));
        } catch (const InputError& e) {
            throw ParseError(line_no, e.what());
        }
        if (!have_prev) {
            table.base_digits = lit.int_digits;
        } else if (!decimal::literal_less(prev, lit)) {
            throw OrderError(table.offsets.size(), "zero ordinates must be strictly increasing");
        }
        double off = decimal::to_offset(lit, table.base_digits);
        if (off > kMaxTableSpan)
            throw InputError("table spans more than 2^40 ordinate units; split it");
        table.offsets.push_back(off);
        prev = std::move(lit);
        have_prev = true;
    }
    if (table.offsets.empty()) throw EmptyInputError("no zero ordinates in input");
    return table;
}

struct ValidationReport {
    struct Violation {
        std::size_t index;
        std::string message;
    };
    std::size_t count = 0;
    std::optional<double> min_gap;
    std::optional<double> max_gap;
    std::optional<double> mean_gap;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

// Read-only invariant check; violations are reported, never thrown.
inline ValidationReport validate(const ZeroTable& table) {
    ValidationReport rep;
    rep.count = table.size();
    for (std::size_t i = 0; i < table.size(); ++i) {
        double o = table.offsets[i];
        if (!std::isfinite(o))
            rep.violations.push_back({i, "offset is not finite"});
        else if (o < 0)
            rep.violations.push_back({i, "offset is negative"});
    }
    if (!table.offsets.empty() && std::isfinite(table.offsets[0]) && table.offsets[0] >= 1.0)
        rep.violations.push_back({0, "first offset not in [0,1); base is not the first zero's integer part"});
    double sum = 0.0;
    std::size_t gaps = 0;
    for (std::size_t i = 1; i < table.size(); ++i) {
        double gap = table.offsets[i] - table.offsets[i - 1];
        if (!std::isfinite(gap)) continue;
        if (gap <= 0) {
            rep.violations.push_back({i, "not increasing over previous entry"});
            continue;
        }
        if (!rep.min_gap || gap < *rep.min_gap) rep.min_gap = gap;
        if (!rep.max_gap || gap > *rep.max_gap) rep.max_gap = gap;
        sum += gap;
        ++gaps;
    }
    if (gaps > 0) rep.mean_gap = sum / static_cast<double>(gaps);
    return rep;
}

inline ZeroWindow window(const ZeroTable& table, std::size_t start_index, std::size_t count) {
    if (count < 2) throw BoundsError("window needs at least 2 zeros");
    if (start_index > table.size() || count > table.size() - start_index)
        throw BoundsError("window [" + std::to_string(start_index) + ", +" + std::to_string(count) +
                          ") exceeds table of " + std::to_string(table.size()));
    return ZeroWindow{&table, start_index, count};
}

// Expected zeros per unit ordinate at height t: ln(t/2pi)/(2pi). Multiplying
// raw differences near t by this unfolds them to unit mean spacing.
inline double mean_density(double ordinate) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (!(ordinate > two_pi)) throw DomainError("mean_density needs ordinate > 2*pi");
    return std::log(ordinate / two_pi) / two_pi;
}

}  // namespace zetadelta
