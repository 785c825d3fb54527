#pragma once

#include <optional>
#include <string>
#include <tuple>

namespace evento {

/// A date at day, month, or year granularity.
struct NormalizedDate {
    int year = 0;
    std::optional<int> month;
    std::optional<int> day; // requires month

    std::string to_string() const; // YYYY, YYYY-MM, or YYYY-MM-DD

    /// Inclusive (year, month, day) bounds covered by this date at its
    /// granularity.
    std::tuple<int, int, int> range_start() const;
    std::tuple<int, int, int> range_end() const;

    bool operator==(const NormalizedDate& other) const = default;
};

/// True when the spans covered by the two dates overlap (a month-granular
/// date intersects any interval touching that month).
bool dates_intersect(const NormalizedDate& a, const NormalizedDate& from,
                     const NormalizedDate& to);

/// Normalizes Italian date expressions of the shapes "<day> <month> <year>",
/// "<month> <year>" and "<year>"; anything else is unnormalizable.
std::optional<NormalizedDate> normalize_italian_date(const std::string& text);

/// YYYY[-MM[-DD]].
std::optional<NormalizedDate> parse_iso_date(const std::string& text);

} // namespace evento
