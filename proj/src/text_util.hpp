#pragma once

// Internal helpers for the plain-text formats: strict field-level number
// parsing (std::from_chars, whole-field consumption) and shortest
// round-trip formatting for doubles (std::to_chars).

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace courtfilter::detail {

/// Splits on `sep` without trimming; an empty input yields one empty field.
std::vector<std::string_view> split(std::string_view text, char sep);

/// Iterates LF / CRLF lines; a trailing newline does not produce an
/// extra empty line. A UTF-8 BOM on the first line is dropped.
class LineReader {
public:
    explicit LineReader(std::string_view text) : rest_(text) {}

    /// Returns the next line (without terminator), or nullopt at end.
    std::optional<std::string_view> next();

    /// 1-based number of the line most recently returned.
    std::size_t line_number() const { return line_number_; }

private:
    std::string_view rest_;
    std::size_t line_number_ = 0;
    bool first_ = true;
};

std::optional<std::int64_t> parse_int(std::string_view field);
std::optional<double> parse_double(std::string_view field);

/// Shortest representation that round-trips through parse_double.
std::string format_double(double value);

std::string_view trim(std::string_view s);

}  // namespace courtfilter::detail
